// Acceptance run: one line per criterion, PASS or FAIL, with the measured time against a pinned limit.
//
// Exit status is 0 when every criterion passes or fails only in a documented way (a known gap,
// printed as FAIL with the reason).  --strict turns documented failures into a nonzero exit too.

#include "catalog.hpp"
#include "diagonal.hpp"
#include "dsl.hpp"
#include "gen.hpp"
#include "instances.hpp"
#include "laws.hpp"
#include "model.hpp"
#include "simcat.hpp"
#include "tcfunctor.hpp"

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

using namespace univsim;
using namespace testkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    bool documented = false;  // fails only where the limitation is known and explained
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_s;
    std::function<Outcome()> run;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

// ---- oracles on pair sets ----

PRel behavior_oracle(const FinRel& f, const TccInstance& inst) { return p_compose(to_p(inst.eval()), to_p(f)); }

bool ambient_oracle(const FinRel& f, const FinRel& g, const TccInstance& inst) {
    return imitates_oracle(behavior_oracle(f, inst), behavior_oracle(g, inst), geq_of(inst.brel()));
}

// g agrees with f wherever g is defined
bool restricts_oracle(const PRel& f, const PRel& g) {
    for (std::size_t a = 0; a < g.n; ++a) {
        auto G = image_of(g, a);
        if (!G.empty() && G != image_of(f, a)) return false;
    }
    return true;
}

PRel domain_oracle(const PRel& f) {
    PRel d{f.n, f.n, {}};
    for (auto [a, x] : f.p) d.p.insert({a, a});
    return d;
}

bool functional_oracle(const PRel& f) {
    for (std::size_t a = 0; a < f.n; ++a)
        if (image_of(f, a).size() > 1) return false;
    return true;
}

bool cofinal_oracle(const Geq& g, std::uint64_t mask) {
    for (std::size_t x = 0; x < g.size(); ++x) {
        bool hit = false;
        for (std::size_t m = 0; m < g.size(); ++m)
            if ((mask >> m & 1) && g[m][x]) hit = true;
        if (!hit) return false;
    }
    return true;
}

FinRel partial_identity(std::mt19937& rng, const FinSet& a) {
    std::bernoulli_distribution coin(0.7);
    FinRel d(a, a);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (coin(rng)) d.set(i, i);
    return d;
}

std::vector<FinSet> small_domains() {
    return {FinSet::unit(), named_set("A2", 2, "a"), named_set("A3", 3, "a")};
}

std::vector<FinRel> maps_into(const FinSet& dom, const FinSet& cod, ParamDomain d) {
    std::vector<FinRel> out;
    for (Odometer od(std::vector<std::size_t>(dom.size(), map_radix(cod.size(), d))); !od.done(); od.next())
        out.push_back(map_from_digits(dom, cod, od.digits(), d));
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> tcc_files(const char* dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".tcc") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// ---- criteria ----

Outcome gs_laws() {
    std::mt19937 rng(1);
    std::vector<FinSet> pool;
    for (std::size_t n = 0; n <= 5; ++n) pool.push_back(named_set("S" + str(n), n, "s"));
    LawReport rep = gs_monoidal_laws(pool, rng, 1000);
    // the same laws recomputed on pair sets
    std::uint64_t oracle_checks = 0, oracle_fail = 0;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int k = 0; k < 1000; ++k) {
        const FinSet& A = pool[pick(rng)];
        const FinSet& X = pool[pick(rng)];
        const std::size_t n = A.size();
        PRel cA = p_copy(n), iA = p_identity(n), dA = p_delete(n);
        auto chk = [&](bool ok) { ++oracle_checks, oracle_fail += !ok; };
        chk(to_p(copy(A)) == cA && to_p(del(A)) == dA);
        chk(p_compose(p_tensor(cA, iA), cA) == p_compose(p_tensor(iA, cA), cA));
        chk(p_compose(p_tensor(dA, iA), cA) == iA);
        FinRel f = random_rel(rng, A, X);
        PRel pf = to_p(f);
        chk(p_compose(pf, domain_oracle(pf)) == pf);
        chk(to_p(domain(f)) == domain_oracle(pf));
        chk(to_p(compose(f, domain(f))) == pf);
    }
    bool unit_ok = to_p(del(FinSet::unit())) == p_identity(1);
    Outcome o;
    o.pass = rep.ok() && rep.checks() >= 1000 && oracle_fail == 0 && unit_ok;
    o.detail = str(rep.checks()) + " law checks, " + str(rep.failures()) + " failures; " + str(oracle_checks) +
               " oracle checks, " + str(oracle_fail) + " failures";
    return o;
}

Outcome domain_functional() {
    std::mt19937 rng(2);
    std::uint64_t fails = 0;
    for (int k = 0; k < 500; ++k) {
        FinSet A = random_set(rng, 5, "A"), X = random_set(rng, 5, "X");
        FinRel f = random_rel(rng, A, X, 0.1 + 0.1 * (k % 8));
        FinRel d = domain(f);
        PRel pd = to_p(d);
        if (!classify(d).functional || !functional_oracle(pd) || pd != domain_oracle(to_p(f))) ++fails;
    }
    return {fails == 0, false, "500 relations, " + str(fails) + " failures"};
}

Outcome imitation() {
    std::mt19937 rng(3);
    auto doms = small_domains();
    std::uniform_int_distribution<std::size_t> pick(0, doms.size() - 1);
    std::bernoulli_distribution coin(0.5);
    std::uint64_t rel_fail = 0, rel_ante = 0, fn_fail = 0, restr_fail = 0, restr_ante = 0, oracle_fail = 0,
                  eq_fail = 0, triples = 0;
    std::uint64_t charac_fail = 0, eq_instances = 0, diverging = 0, collapsed = 0;
    SearchOptions wide;
    wide.max_candidates = 50000000;
    for (const CatalogEntry& e : regression_catalog()) {
        const TccInstance& inst = e.inst;
        const FinSet& TC = inst.TC();
        const double dens = TC.size() ? std::min(0.5, 2.0 / static_cast<double>(TC.size())) : 0.5;
        const bool eq = inst.brel().is_equality();
        for (int k = 0; k < 500; ++k, ++triples) {
            const FinSet& A = doms[pick(rng)];
            const FinSet& Z = doms[pick(rng)];
            FinRel f = random_rel(rng, A, TC, dens);
            FinRel g = coin(rng) ? compose(f, partial_identity(rng, A)) : random_rel(rng, A, TC, dens);
            FinRel h = random_rel(rng, Z, A, 0.4);
            FinRel hf = random_partial_fn(rng, Z, A);
            bool fg = ambient_imitates(f, g, inst);
            if (fg != ambient_oracle(f, g, inst)) ++oracle_fail;
            if (fg) {
                ++rel_ante;
                if (!ambient_imitates(compose(f, h), compose(g, h), inst)) ++rel_fail;
                if (!ambient_imitates(compose(f, hf), compose(g, hf), inst)) ++fn_fail;
            }
            bool r = restricts_to(f, g);
            if (r != restricts_oracle(to_p(f), to_p(g))) ++oracle_fail;
            if (r) {
                ++restr_ante;
                if (!fg) ++restr_fail;
            }
            if (eq && fg != restricts_oracle(behavior_oracle(f, inst), behavior_oracle(g, inst))) ++eq_fail;
        }
        EqualityCharacterization ec = equality_characterization(inst, wide);
        if ((ec.divergences == 0) != ec.order_is_equality_on_image) ++charac_fail;
        if (eq) {
            ++eq_instances;
            if (ec.divergences) ++charac_fail;
        } else if (ec.divergences) {
            ++diverging;
        } else {
            ++collapsed;  // the order is equality on every reachable behavior
        }
    }
    Outcome o;
    bool rest_ok = fn_fail == 0 && restr_fail == 0 && oracle_fail == 0 && eq_fail == 0 && charac_fail == 0;
    o.pass = rest_ok && rel_fail == 0;
    o.documented = rest_ok && rel_fail > 0;
    std::ostringstream d;
    d << triples << " triples; precomposition along relations " << rel_fail << "/" << rel_ante
      << " failures, along partial functions " << fn_fail << "/" << rel_ante << "; restriction => imitation "
      << restr_fail << "/" << restr_ante << "; equality characterization " << eq_fail << " sampled + " << charac_fail
      << " exhaustive failures (" << eq_instances << " equality instances, " << diverging
      << " others diverge, " << collapsed << " others equality on their image); oracle mismatches " << oracle_fail;
    if (o.documented)
        d << "; known gap: a relational h can send one z both inside and outside dom(g), which adds behaviors"
             " of f that nothing in g degrades to";
    o.detail = d.str();
    return o;
}

Outcome scalars() {
    std::mt19937 rng(4);
    auto doms = small_domains();
    std::uniform_int_distribution<std::size_t> pick(0, doms.size() - 1);
    FinSet I = FinSet::unit();
    FinRel one = identity(I), zero(I, I);
    std::uint64_t checks = 0, fails = 0;
    for (const CatalogEntry& e : regression_catalog())
        for (int k = 0; k < 200; ++k) {
            FinRel f = random_rel(rng, doms[pick(rng)], e.inst.TC());
            for (const FinRel* w : {&one, &zero}) {
                ++checks;
                bool ok = scalar_dominance_check(*w, f, e.inst) && ambient_imitates(f, tensor(*w, f), e.inst);
                // oracle: w (x) f is f or the empty relation
                PRel wf = w == &one ? to_p(f) : PRel{f.dom().size(), f.cod().size(), {}};
                ok = ok && to_p(tensor(*w, f)).p == wf.p &&
                     imitates_oracle(behavior_oracle(f, e.inst), p_compose(to_p(e.inst.eval()), wf),
                                     geq_of(e.inst.brel()));
                fails += !ok;
            }
        }
    return {fails == 0, false, str(checks) + " checks, " + str(fails) + " failures"};
}

Outcome cofinality() {
    std::mt19937 rng(5);
    std::uint64_t cases = 0, fails = 0;
    for (int k = 0; k < 200; ++k) {
        std::size_t n = 1 + k % 5;
        FinSet X = named_set("X", n, "x");
        Geq g = random_preorder_geq(rng, n, 0.1 + 0.05 * (k % 7));
        Preorder x = preorder_from(X, g);
        for (std::uint64_t mask = 0; mask < (1u << n); ++mask, ++cases) {
            CatalogInstance ci = cofinal_instance("cf", x, bits_of(n, mask));
            bool universal = find_universality_witness(ci.sim, ci.inst).witness.has_value();
            if (universal != cofinal_oracle(g, mask) || universal != is_cofinal(x, bits_of(n, mask))) ++fails;
        }
    }
    return {fails == 0, false, "200 preorders, " + str(cases) + " subsets, " + str(fails) + " disagreements"};
}

Outcome nogo() {
    Preset p = nogo_spin_preset("ns", 5, 2);
    const Simulator* s = nullptr;
    for (const auto& [suffix, sim] : p.sims)
        if (suffix == "s") s = &sim;
    if (!s || !p.phi) return {false, false, "preset lacks its compiler or size measure"};
    SearchOptions opt;
    opt.max_candidates = 100000000;
    NogoResult r = nogo_check(*s, *p.phi, p.inst, opt);
    Outcome o;
    o.pass = r.not_universal && r.violations.empty() && r.sup_image <= Rational(3) && r.sup_all == Rational(6) &&
             r.universal.has_value() && !*r.universal;
    std::ostringstream d;
    d << "sup over image " << to_string(r.sup_image) << " vs " << to_string(r.sup_all) << ", " << r.violations.size()
      << " monotonicity violations, exhaustive witness search: "
      << (r.universal ? (*r.universal ? "found one" : "none") : "skipped");
    o.detail = d.str();
    return o;
}

Outcome cantor() {
    std::ostringstream d;
    bool ok = true;
    for (std::size_t n : {1u, 2u}) {
        CantorReport c = cantor_report(n);
        bool here = c.universal_found == 0 && c.simulators_checked > 0 && c.full_context_search &&
                    !c.negation_qfp_deterministic && c.equivalence_failures == 0 && c.compilers_checked > 0;
        ok = ok && here;
        d << "|C|=" << n << ": " << c.simulators_checked << " simulators, " << c.universal_found << " universal, "
          << "negation QFP " << (c.negation_qfp_deterministic ? "found" : "none") << ", " << c.compilers_checked
          << " compilers over " << c.subfamilies << " families, " << c.equivalence_failures
          << " equivalence failures; ";
    }
    return {ok, false, d.str()};
}

Outcome lawvere() {
    std::ostringstream d;
    bool ok = true;
    std::uint64_t points = 0;
    bool any_complete = false;
    for (std::size_t n = 1; n <= 3; ++n) {
        Preset p = lookup_preset("lk", n, false);
        const TccInstance& inst = p.inst;
        const FinSet &B = inst.B(), &C = inst.C();
        FinSet CC = FinSet::product(C, C);
        const Preorder& eq = inst.brel();
        // under equality a relational row imitates a single behavior only when it is that behavior,
        // so functional F cover every candidate
        std::uint64_t tried = 0, complete = 0, g_ok = 0, g_total = 0;
        for (Odometer od(std::vector<std::size_t>(CC.size(), map_radix(B.size(), ParamDomain::functional)));
             !od.done(); od.next(), ++tried) {
            Parametrization param = make_parametrization(C, C, map_from_digits(CC, B, od.digits(), ParamDomain::functional));
            if (!check_completeness(param, FinSet::unit(), eq, ParamDomain::functional).complete) continue;
            ++complete;
            for (const FinRel& g : maps_into(B, B, ParamDomain::all)) {
                ++g_total;
                LawvereResult r = lawvere_quasi_fixed_point(param, FinSet::unit(), g, eq);
                if (r.verified && is_quasi_fixed_point(r.point, g, eq)) ++g_ok;
            }
        }
        any_complete = any_complete || complete > 0;
        ok = ok && g_ok == g_total;
        points += g_ok;
        // with several behaviors the swap g has no deterministic quasi-fixed point, so no F can be complete
        std::string why;
        if (n > 1) {
            std::vector<long> cyc(n);
            for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<long>((i + 1) % n);
            bool none = !find_quasi_fixed_point(FinRel::from_function(B, B, cyc), eq, StateSpace::deterministic);
            ok = ok && none && complete == 0;
            why = none ? ", cyclic g has no deterministic QFP" : ", cyclic g HAS a QFP";
        }
        d << "|B|=" << n << " lookup: " << complete << "/" << tried << " complete F, " << g_ok << "/" << g_total
          << " g verified" << why << "; ";
    }
    // the same construction below a top behavior, where complete parametrizations exist at every size
    for (std::size_t n = 1; n <= 3; ++n) {
        FinSet B = named_set("B", n, "b"), C = named_set("C", n, "b");
        std::vector<std::pair<std::size_t, std::size_t>> chain;
        for (std::size_t i = 1; i < n; ++i) chain.emplace_back(i, i - 1);
        Preorder ord = Preorder::closure(B, chain);
        FinSet CC = FinSet::product(C, C);
        Parametrization param =
            make_parametrization(C, C, FinRel::from_function(CC, B, std::vector<long>(CC.size(), static_cast<long>(n - 1))));
        bool complete = check_completeness(param, FinSet::unit(), ord, ParamDomain::functional).complete;
        std::uint64_t g_ok = 0, g_total = 0;
        for (const FinRel& g : maps_into(B, B, ParamDomain::all)) {
            ++g_total;
            LawvereResult r = lawvere_quasi_fixed_point(param, FinSet::unit(), g, ord);
            if (r.verified && is_quasi_fixed_point(r.point, g, ord)) ++g_ok;
        }
        ok = ok && complete && g_ok == g_total;
        d << "|B|=" << n << " chain: " << g_ok << "/" << g_total << " g verified; ";
    }
    ok = ok && any_complete && points > 0;
    return {ok, false, d.str()};
}

Outcome parsimony() {
    Preset p = lookup_preset("lk", 2, false);
    const Simulator* su = nullptr;
    for (const auto& [suffix, sim] : p.sims)
        if (suffix == "su") su = &sim;
    if (!su) return {false, false, "no singleton universal simulator in the preset"};
    Simulator triv = trivial_simulator(p.inst);
    ParsimonyResult up = decide_parsimony(triv, *su, p.inst);
    ParsimonyResult down = decide_parsimony(*su, triv, p.inst);
    bool up_ok = up.kind == ParsimonyKind::found && up.proof == "morph-stronger" && up.morphism &&
                 verify_morphism(*up.morphism, p.inst);
    bool down_ok = down.kind == ParsimonyKind::none_exists && down.proof == "s2id" &&
                   down.exhaustive_agrees.value_or(false);
    std::ostringstream d;
    d << "trivial -> su: " << parsimony_name(up.kind) << " via " << up.proof << "; su -> trivial: "
      << parsimony_name(down.kind) << " via " << down.proof << ", exhaustive search "
      << (down.exhaustive_agrees ? (*down.exhaustive_agrees ? "agrees" : "DISAGREES") : "not run");
    return {up_ok && down_ok, false, d.str()};
}

Outcome functoriality() {
    std::mt19937 rng(10);
    std::uint64_t fails = 0, universal = 0;
    for (int k = 0; k < 100; ++k) {
        TccInstance inst = random_tcc(rng, k % 2 == 0);
        Relabel rl = relabel(rng, inst, str(static_cast<std::uint64_t>(k)));
        const TcFunctor& F = rl.F;
        const FinSet& TC = inst.TC();
        bool ok = F.map(identity(TC)) == identity(rl.target.TC());
        FinRel f = random_rel(rng, inst.T(), TC), g = random_rel(rng, TC, inst.C());
        ok = ok && F.map(compose(g, f)) == compose(F.map(g), F.map(f));
        ok = ok && check_tc_functor(F, {}, static_cast<std::uint64_t>(k), 16).ok();
        Simulator s = k % 5 == 0 ? trivial_simulator(inst) : random_simulator(rng, inst);
        PreservationResult pr = verify_universality_preservation(F, s);
        bool direct = find_universality_witness(map_through(F, s), rl.target).witness.has_value();
        bool src = find_universality_witness(s, inst).witness.has_value();
        ok = ok && pr.source_universal == src && (!src || (pr.image_universal && pr.witness_transported)) &&
             direct == src && pr.singleton_preserved;
        universal += src;
        fails += !ok;
    }
    return {fails == 0, false, "100 functor/simulator pairs (" + str(universal) + " universal), " + str(fails) + " failures"};
}

Outcome parser() {
    auto files = tcc_files(UNIVSIM_CORPUS_DIR);
    std::uint64_t rt_fail = 0;
    for (const auto& f : files) {
        dsl::ParseResult p = dsl::parse(slurp(f));
        if (!p.ok() || !resolve(p.doc).ok()) {
            ++rt_fail;
            continue;
        }
        std::string text = dsl::serialize(p.doc);
        dsl::ParseResult again = dsl::parse(text);
        if (!again.ok() || !(again.doc == p.doc) || dsl::serialize(again.doc) != text) ++rt_fail;
    }
    const std::regex header(R"(^# expect: (E-[A-Z]+) (\d+):(\d+))"), code("E-[A-Z]+");
    auto neg = tcc_files(UNIVSIM_NEGATIVE_DIR);
    std::uint64_t diags = 0, neg_fail = 0;
    for (const auto& f : neg) {
        std::string text = slurp(f);
        std::smatch m;
        LoadResult r = load_model(text);
        bool ok = std::regex_search(text, m, header) && !r.ok() && !r.diagnostics.empty();
        if (ok) {
            const auto& d0 = r.diagnostics.front();
            ok = d0.code == m[1].str() && d0.span.line == std::stoul(m[2].str()) && d0.span.col == std::stoul(m[3].str());
        }
        for (const auto& x : r.diagnostics) {
            ++diags;
            ok = ok && x.span.line > 0 && x.span.col > 0 && std::regex_match(x.code, code);
        }
        neg_fail += !ok;
    }
    Outcome o;
    o.pass = files.size() >= 20 && rt_fail == 0 && !neg.empty() && neg_fail == 0;
    o.detail = str(files.size()) + " corpus files, " + str(rt_fail) + " round-trip failures; " + str(neg.size()) +
               " negative files, " + str(diags) + " diagnostics, " + str(neg_fail) + " mismatches";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    bool strict = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--strict")) strict = true;
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--strict] [--only N]\n";
            return 2;
        }
    }
    const std::vector<Criterion> all{
        {1, "gs-monoidal laws", 5, gs_laws},
        {2, "domains are functional", 5, domain_functional},
        {3, "imitation machinery", 30, imitation},
        {4, "scalar dominance", 30, scalars},
        {5, "inclusion universality iff cofinal", 60, cofinality},
        {6, "no-go on field systems", 60, nogo},
        {7, "Cantor", 120, cantor},
        {8, "Lawvere quasi-fixed points", 120, lawvere},
        {9, "parsimony", 60, parsimony},
        {10, "functoriality", 60, functoriality},
        {11, "parser", 30, parser},
    };
    int hard = 0, soft = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, false, std::string("threw: ") + e.what()};
        }
        while (o.detail.size() > 1 && o.detail.ends_with("; ")) o.detail.resize(o.detail.size() - 2);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.limit_s;
        bool pass = o.pass && in_time;
        if (!pass) (o.documented && in_time ? soft : hard)++;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " [" << secs << "s / " << c.limit_s
             << "s] " << o.detail;
        if (!pass && o.documented && in_time) line << " (documented)";
        std::cout << line.str() << std::endl;
    }
    std::cout << (hard ? "acceptance: FAILED" : "acceptance: ok") << " (" << hard << " failing, " << soft
              << " documented)" << std::endl;
    return hard || (strict && soft) ? 1 : 0;
}
