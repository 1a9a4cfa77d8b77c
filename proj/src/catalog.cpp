#include "catalog.hpp"

#include "diagonal.hpp"
#include "error.hpp"

#include <charconv>
#include <random>

namespace univsim {

namespace {

long parse_int(const std::string& s, const std::string& what) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail(Errc::invalid_argument, what + " must be an integer, got '" + s + "'");
    return v;
}

Bits parse_mask(const std::string& s, std::size_t n) {
    if (s.size() != n) fail(Errc::invalid_argument, "subset mask needs " + std::to_string(n) + " digits");
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] != '0' && s[i] != '1') fail(Errc::invalid_argument, "subset mask digits are 0 or 1");
        if (s[i] == '1') b.set(i);
    }
    return b;
}

void arity(const std::vector<std::string>& args, std::size_t lo, std::size_t hi, const std::string& kind) {
    if (args.size() < lo || args.size() > hi)
        fail(Errc::invalid_argument, "preset " + kind + " takes " + std::to_string(lo) +
                                         (hi > lo ? " to " + std::to_string(hi) : std::string()) + " arguments");
}

// bot <= l, r <= top
Preorder diamond() {
    FinSet X = FinSet::make("X", {"bot", "l", "r", "top"});
    return Preorder::closure(X, {{1, 0}, {2, 0}, {3, 1}, {3, 2}});
}

// points on a line at 0, 1, 2, 4
FiniteMetric line_metric() {
    FiniteMetric m;
    m.points = FinSet::make("Q", {"a", "b", "c", "d"});
    std::vector<long long> pos{0, 1, 2, 4};
    m.d.assign(4, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m.d[i][j] = Rational(pos[i] > pos[j] ? pos[i] - pos[j] : pos[j] - pos[i]);
    return m;
}

}  // namespace

const std::vector<std::string>& preset_kinds() {
    static const std::vector<std::string> k{"nogo-spin", "cantor", "lookup", "dense", "cofinal"};
    return k;
}

Preset nogo_spin_preset(const std::string& name, int n, int k) {
    if (n < 1 || n > 8) fail(Errc::invalid_argument, "nogo-spin needs 1 <= n <= 8");
    if (k < 1 || k > n) fail(Errc::invalid_argument, "nogo-spin needs 1 <= k <= n");
    std::vector<SpinSystem> sys;
    for (int i = 0; i <= n; ++i) sys.push_back(field_system(i));
    Preset p;
    p.kind = "nogo-spin";
    p.spin = build_spin_tcc(name, sys);
    const SpinTcc& st = *p.spin;
    p.inst = st.inst;
    std::vector<std::string> pl;
    std::vector<long> img;
    for (int i = 1; i <= k; ++i) {
        pl.push_back("p" + std::to_string(i));
        img.push_back(i);
    }
    FinSet P = FinSet::make(name + ".P", pl);
    const std::size_t nc = p.inst.C().size();
    std::vector<long> sc;
    for (std::size_t q = 0; q < P.size(); ++q) {
        std::size_t cx = st.system_complex[static_cast<std::size_t>(img[q])];
        long first = -1;
        for (std::size_t c = 0; c < nc && first < 0; ++c)
            if (st.configs[c].complex == cx) first = static_cast<long>(c);
        for (std::size_t c = 0; c < nc; ++c) sc.push_back(first);
    }
    p.sims.emplace_back("s", make_simulator(FinRel::from_function(P, p.inst.T(), img),
                                            FinRel::from_function(FinSet::product(P, p.inst.C()), p.inst.C(), sc),
                                            p.inst));
    p.phi = reduced_spectrum_size(st);
    p.note = "field systems field0..field" + std::to_string(n) + "; compiler image field1..field" + std::to_string(k);
    return p;
}

Preset lookup_preset(const std::string& name, std::size_t n, bool partial) {
    if (n < 1 || n > 3) fail(Errc::invalid_argument, "lookup needs 1 <= n <= 3");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    FinSet C = FinSet::make(name + ".C", labels), B = FinSet::make(name + ".B", labels);
    auto tabs = all_tables(n, n, partial);
    std::vector<std::string> names;
    for (const auto& t : tabs) names.push_back(table_name(t));
    Preset p;
    p.kind = "lookup";
    p.inst = lookup_machines(name, C, B, names, tabs);
    if (auto su = find_singleton_universal(p.inst)) p.sims.emplace_back("su", *su);
    p.note = std::string(partial ? "partial" : "total") + " lookup tables over " + std::to_string(n) + " symbols";
    return p;
}

Preset build_preset(const std::string& name, const std::string& kind, const std::vector<std::string>& args) {
    Preset p;
    if (kind == "nogo-spin") {
        arity(args, 2, 2, kind);
        p = nogo_spin_preset(name, static_cast<int>(parse_int(args[0], "n")), static_cast<int>(parse_int(args[1], "k")));
    } else if (kind == "cantor") {
        arity(args, 1, 1, kind);
        long n = parse_int(args[0], "n");
        if (n < 1 || n > 3) fail(Errc::invalid_argument, "cantor needs 1 <= n <= 3");
        p.kind = kind;
        TccInstance c = cantor_instance(static_cast<std::size_t>(n));
        p.inst = TccInstance::make(name, c.T(), c.C(), c.B(), c.eval(), c.brel());
        p.note = "all subsets of " + std::to_string(n) + " contexts, characteristic evaluation";
    } else if (kind == "lookup") {
        arity(args, 1, 2, kind);
        bool partial = false;
        if (args.size() == 2) {
            if (args[1] != "partial" && args[1] != "total") fail(Errc::invalid_argument, "lookup mode is partial or total");
            partial = args[1] == "partial";
        }
        long n = parse_int(args[0], "n");
        if (n < 1) fail(Errc::invalid_argument, "lookup needs 1 <= n <= 3");
        p = lookup_preset(name, static_cast<std::size_t>(n), partial);
    } else if (kind == "dense") {
        arity(args, 0, 1, kind);
        FiniteMetric m = line_metric();
        Bits q = args.empty() ? parse_mask("1011", 4) : parse_mask(args[0], 4);
        CatalogInstance ci = dense_metric_instance(name, m, q, {Rational(3, 2), Rational(3)});
        p.kind = kind;
        p.inst = ci.inst;
        p.sims.emplace_back("s", ci.sim);
        p.note = ci.note;
    } else if (kind == "cofinal") {
        arity(args, 0, 1, kind);
        Preorder x = diamond();
        Bits m = args.empty() ? parse_mask("0110", 4) : parse_mask(args[0], 4);
        CatalogInstance ci = cofinal_instance(name, x, m);
        p.kind = kind;
        p.inst = ci.inst;
        p.sims.emplace_back("s", ci.sim);
        p.note = ci.note;
    } else {
        fail(Errc::invalid_argument, "unknown preset kind '" + kind + "'");
    }
    return p;
}

TccInstance random_instance(const std::string& name, std::size_t nt, std::size_t nc, std::size_t nb,
                            std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    auto labels = [](const std::string& pre, std::size_t n) {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < n; ++i) l.push_back(pre + std::to_string(i));
        return l;
    };
    FinSet T = FinSet::make(name + ".T", labels("t", nt));
    FinSet C = nc ? FinSet::make(name + ".C", labels("c", nc)) : FinSet::unit();
    FinSet B = FinSet::make(name + ".B", labels("b", nb));
    std::uniform_int_distribution<long> val(-1, static_cast<long>(nb) - 1);
    std::vector<long> ev(T.size() * C.size());
    for (auto& v : ev) v = val(rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::bernoulli_distribution coin(0.3);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (i != j && coin(rng)) edges.emplace_back(i, j);
    return TccInstance::make(name, T, C, B, FinRel::from_function(FinSet::product(T, C), B, ev),
                             Preorder::closure(B, edges));
}

std::vector<CatalogEntry> regression_catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&](const std::string& name, const Preset& p) {
        CatalogEntry e{name, p.inst, {}};
        e.sims.emplace_back("trivial", trivial_simulator(p.inst));
        for (const auto& [suffix, s] : p.sims) e.sims.emplace_back(suffix, s);
        out.push_back(std::move(e));
    };
    add("lookup2", lookup_preset("lookup2", 2, false));
    add("lookup2p", lookup_preset("lookup2p", 2, true));
    add("cantor1", build_preset("cantor1", "cantor", {"1"}));
    add("cantor2", build_preset("cantor2", "cantor", {"2"}));
    add("cofinal", build_preset("cofinal", "cofinal", {}));
    add("dense", build_preset("dense", "dense", {}));
    add("spin", nogo_spin_preset("spin", 2, 1));

    TccInstance r = random_instance("random", 3, 2, 3, 7);
    out.push_back({"random", r, {{"trivial", trivial_simulator(r)}}});
    TccInstance in = intrinsify(lookup_preset("lk1", 1, true).inst);
    out.push_back({"intrinsic", in, {{"trivial", trivial_simulator(in)}}});
    return out;
}

}  // namespace univsim
