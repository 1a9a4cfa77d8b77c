#include "diagonal.hpp"

#include "error.hpp"

#include <algorithm>

namespace univsim {

const char* param_domain_name(ParamDomain d) {
    switch (d) {
    case ParamDomain::functional: return "functional";
    case ParamDomain::total: return "total";
    case ParamDomain::all: return "all";
    }
    return "?";
}

const char* state_space_name(StateSpace s) { return s == StateSpace::deterministic ? "deterministic" : "all"; }

std::size_t map_radix(std::size_t nb, ParamDomain d) {
    switch (d) {
    case ParamDomain::functional: return nb + 1;
    case ParamDomain::total: return nb;
    case ParamDomain::all:
        if (nb >= 63) fail(Errc::budget_exceeded, "behavior set too large for relation enumeration");
        return std::size_t{1} << nb;
    }
    return 0;
}

std::uint64_t map_count(std::size_t rows, std::size_t nb, ParamDomain d) {
    if (d == ParamDomain::all && nb >= 63) return UINT64_MAX;
    return sat_pow(map_radix(nb, d), rows);
}

FinRel map_from_digits(const FinSet& dom, const FinSet& cod, const std::vector<std::size_t>& digits, ParamDomain d) {
    FinRel f(dom, cod);
    for (std::size_t a = 0; a < digits.size(); ++a) {
        std::size_t v = digits[a];
        switch (d) {
        case ParamDomain::functional:
            if (v) f.set(a, v - 1);
            break;
        case ParamDomain::total: f.set(a, v); break;
        case ParamDomain::all:
            for (std::size_t b = 0; b < cod.size(); ++b)
                if (v >> b & 1) f.set(a, b);
            break;
        }
    }
    return f;
}

const Parametrization::Entry* Parametrization::lookup(const FinRel& f) const {
    auto it = witnesses.find(hash_of(f));
    if (it == witnesses.end()) return nullptr;
    for (const auto& e : it->second)
        if (e.f == f) return &e;
    return nullptr;
}

void Parametrization::remember(const FinRel& f, const FinRel& program) {
    if (cached() >= cache_limit || lookup(f)) return;
    witnesses[hash_of(f)].push_back({f, program});
}

std::size_t Parametrization::cached() const {
    std::size_t n = 0;
    for (const auto& [h, v] : witnesses) n += v.size();
    return n;
}

Parametrization make_parametrization(FinSet P, FinSet C, FinRel F) {
    if (!(F.dom() == FinSet::product(P, C)))
        fail(Errc::type_mismatch, "parametrization must have domain " + P.id() + "*" + C.id());
    if (!classify_direct(F).functional) fail(Errc::not_functional, "parametrization must be functional");
    Parametrization p;
    p.P = std::move(P);
    p.C = std::move(C);
    p.F = std::move(F);
    return p;
}

Parametrization eval_parametrization(const TccInstance& inst) { return make_parametrization(inst.T(), inst.C(), inst.eval()); }

Parametrization simulator_parametrization(const Simulator& s, const TccInstance& inst) {
    return make_parametrization(s.P(), inst.C(), compose(inst.eval(), s.s()));
}

bool check_program(const Parametrization& param, const FinRel& f, const FinRel& p, const Preorder& brel) {
    if (!(p.cod() == param.P)) fail(Errc::type_mismatch, "program must land in " + param.P.id());
    if (!classify_direct(p).functional) fail(Errc::not_functional, "program must be functional");
    FinRel lhs = compose(param.F, tensor(p, identity(param.C)));
    if (!(lhs.dom() == f.dom()) || !(lhs.cod() == f.cod())) fail(Errc::type_mismatch, "program and map disagree in type");
    return imitates(lhs, f, brel);
}

namespace {

void check_map_type(const Parametrization& param, const FinSet& A, const FinRel& f) {
    if (!(f.dom() == FinSet::product(A, param.C)) || !(f.cod() == param.F.cod()))
        fail(Errc::type_mismatch, "map must have type " + A.id() + "*" + param.C.id() + " -> " + param.F.cod().id());
}

}  // namespace

std::optional<FinRel> find_program(const Parametrization& param, const FinSet& A, const FinRel& f, const Preorder& brel,
                                   bool total_witness) {
    check_map_type(param, A, f);
    const std::size_t nc = param.C.size(), np = param.P.size();
    Bits none(f.cod().size());
    std::vector<long> image(A.size());
    // imitation is row-wise, so each a picks its own program
    for (std::size_t a = 0; a < A.size(); ++a) {
        bool found = false;
        for (long o = total_witness ? 0 : -1; o < static_cast<long>(np) && !found; ++o) {
            bool ok = true;
            for (std::size_t c = 0; c < nc && ok; ++c) {
                const Bits& nu = o < 0 ? none : param.F.row(static_cast<std::size_t>(o) * nc + c);
                ok = imitates_row(nu, f.row(a * nc + c), brel);
            }
            if (ok) {
                image[a] = o;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    FinRel p = FinRel::from_function(A, param.P, image);
    ensure(check_program(param, f, p, brel), "row-wise program passes the full check");
    return p;
}

std::optional<FinRel> find_program_naive(const Parametrization& param, const FinSet& A, const FinRel& f,
                                         const Preorder& brel, bool total_witness) {
    check_map_type(param, A, f);
    const std::size_t np = param.P.size();
    std::vector<long> image(A.size());
    for (Odometer od(std::vector<std::size_t>(A.size(), total_witness ? np : np + 1)); !od.done(); od.next()) {
        for (std::size_t a = 0; a < A.size(); ++a)
            image[a] = static_cast<long>(od.digits()[a]) - (total_witness ? 0 : 1);
        FinRel p = FinRel::from_function(A, param.P, image);
        if (check_program(param, f, p, brel)) return p;
    }
    return std::nullopt;
}

std::optional<FinRel> program_for(Parametrization& param, const FinSet& A, const FinRel& f, const Preorder& brel,
                                  bool total_witness) {
    if (const auto* e = param.lookup(f)) {
        bool total = classify_direct(e->program).total;
        if ((!total_witness || total) && e->program.dom() == A) return e->program;
    }
    auto p = find_program(param, A, f, brel, total_witness);
    if (p) param.remember(f, *p);
    return p;
}

CompletenessResult check_completeness(Parametrization& param, const FinSet& A, const Preorder& brel, ParamDomain d,
                                      const SearchOptions& opt, bool total_witness) {
    CompletenessResult res;
    res.domain = d;
    res.total_witness = total_witness;
    FinSet AC = FinSet::product(A, param.C);
    const FinSet& B = param.F.cod();
    require_budget(map_count(AC.size(), B.size(), d), opt, "completeness check over maps " + AC.id() + " -> " + B.id());
    for (Odometer od(std::vector<std::size_t>(AC.size(), map_radix(B.size(), d))); !od.done(); od.next()) {
        ++res.maps_checked;
        FinRel f = map_from_digits(AC, B, od.digits(), d);
        if (!program_for(param, A, f, brel, total_witness)) {
            res.counterexample = std::move(f);
            return res;
        }
    }
    res.complete = true;
    return res;
}

bool is_quasi_fixed_point(const FinRel& b, const FinRel& g, const Preorder& brel) {
    if (!(g.dom() == b.cod()) || !(g.cod() == b.cod())) fail(Errc::type_mismatch, "quasi-fixed point needs g : B -> B");
    return imitates(b, compose(g, b), brel);
}

std::optional<FinRel> find_quasi_fixed_point(const FinRel& g, const Preorder& brel, StateSpace space) {
    const FinSet& B = g.cod();
    if (space == StateSpace::deterministic) {
        for (std::size_t i = 0; i < B.size(); ++i) {
            FinRel b = point(B, i);
            if (is_quasi_fixed_point(b, g, brel)) return b;
        }
        return std::nullopt;
    }
    if (B.size() >= 24) fail(Errc::budget_exceeded, "too many states to enumerate");
    for (std::size_t m = 0; m < (std::size_t{1} << B.size()); ++m) {
        Bits members(B.size(), m);
        FinRel b = state(B, members);
        if (is_quasi_fixed_point(b, g, brel)) return b;
    }
    return std::nullopt;
}

LawvereResult lawvere_quasi_fixed_point(Parametrization& param, const FinSet& A, const FinRel& g, const Preorder& brel,
                                        bool total_witness) {
    const FinSet& C = param.C;
    if (!(param.P == C)) fail(Errc::type_mismatch, "the construction needs a parametrization over C*C");
    const FinSet& B = param.F.cod();
    if (!(g.dom() == B) || !(g.cod() == B)) fail(Errc::type_mismatch, "g must be an endomorphism of " + B.id());
    FinRel gamma = compose(param.F, copy(C));  // C -> B
    LawvereResult res;
    res.f = compose(g, compose(gamma, tensor(del(A), identity(C))));
    auto cf = program_for(param, A, res.f, brel, total_witness);
    if (!cf) fail(Errc::invalid_argument, "parametrization certificate invalid: no program for the diagonal map");
    res.c_f = *cf;
    res.point = compose(gamma, res.c_f);
    // c_f functional lets the copy slide past it
    ensure(compose(param.F, compose(tensor(res.c_f, res.c_f), copy(A))) == res.point, "copy commutes with c_f");
    res.verified = imitates(res.point, compose(g, res.point), brel);
    res.total = classify_direct(res.point).total;
    return res;
}

Parametrization transport_parametrization(const Parametrization& F0, const Simulator& s, const FinRel& r,
                                          const TccInstance& inst) {
    if (!(F0.P == inst.T()) || !(F0.C == inst.C())) fail(Errc::type_mismatch, "base parametrization must be over T*C");
    if (!check_reduction(r, Flavor::lax, s, trivial_simulator(inst), inst))
        fail(Errc::not_universal, "missing universality witness");
    Parametrization out = simulator_parametrization(s, inst);
    out.cache_limit = std::max(out.cache_limit, F0.cached());
    for (const auto& [h, entries] : F0.witnesses)
        for (const auto& e : entries) {
            FinRel p = compose(r, e.program);
            if (!check_program(out, e.f, p, inst.brel()))
                fail(Errc::internal, "transported program fails for a cached map");
            out.remember(e.f, p);
        }
    return out;
}

UnreachabilityResult has_unreachability(const Simulator& s, const TccInstance& inst, ParamDomain d,
                                        const SearchOptions& opt) {
    Parametrization p = simulator_parametrization(s, inst);
    CompletenessResult c = check_completeness(p, FinSet::unit(), inst.brel(), d, opt);
    UnreachabilityResult u;
    u.unreachable = !c.complete;
    u.map = c.counterexample;
    u.maps_checked = c.maps_checked;
    u.domain = d;
    return u;
}

// ---------------------------------------------------------------------------

void RetractPair::validate(const TccInstance& inst) const {
    if (!(sigma.dom() == inst.TC()) || !(sigma.cod() == inst.C()) || !(pi.dom() == inst.C()) || !(pi.cod() == inst.TC()))
        fail(Errc::type_mismatch, "retract pair must have types T*C -> C and C -> T*C");
    if (!classify_direct(sigma).deterministic || !classify_direct(pi).deterministic)
        fail(Errc::invalid_argument, "section and retraction must be deterministic");
    if (!(compose(pi, sigma) == identity(inst.TC()))) fail(Errc::invalid_argument, "retraction after section is not the identity");
}

std::optional<RetractPair> canonical_retract(const TccInstance& inst) {
    const std::size_t nt = inst.T().size(), nc = inst.C().size();
    if (nc == 0 || nt != 1) return std::nullopt;
    std::vector<long> sig(nc), pi(nc);
    for (std::size_t c = 0; c < nc; ++c) sig[c] = pi[c] = static_cast<long>(c);
    RetractPair r{FinRel::from_function(inst.TC(), inst.C(), sig), FinRel::from_function(inst.C(), inst.TC(), pi)};
    r.validate(inst);
    return r;
}

namespace {

// Relabels a relation into C onto B when both carry the same labels.
FinRel as_behaviors(const FinRel& f, const TccInstance& inst) {
    FinRel out(f.dom(), inst.B());
    for (auto [a, x] : f.pairs()) out.set(a, x);
    return out;
}

}  // namespace

SingletonResult singleton_constructions(const TccInstance& inst, const std::optional<RetractPair>& retract,
                                        const SearchOptions& opt) {
    if (inst.B().labels() != inst.C().labels()) fail(Errc::invalid_argument, "singleton constructions need B = C");
    const FinSet& T = inst.T();
    const FinSet& C = inst.C();
    const std::size_t nt = T.size(), nc = C.size();
    SingletonResult res;
    Parametrization ev = eval_parametrization(inst);
    FinSet I = FinSet::unit();

    res.t_id = find_program(ev, I, as_behaviors(identity(C), inst), inst.brel());
    if (res.t_id && res.t_id->empty() && nc > 0) res.t_id.reset();
    if (!res.t_id) {
        res.notes.push_back("no target imitates the identity on contexts; part 1 unavailable");
    } else {
        long tid = res.t_id->image(0);
        FinRel sT = FinRel::from_function(T, T, std::vector<long>(nt, tid));
        FinRel sC(FinSet::product(T, C), C);
        bool padded = false;
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t c = 0; c < nc; ++c) {
                const Bits& row = inst.eval_row(t, c);
                if (row.none()) {
                    sC.set(t * nc + c, c);
                    padded = true;
                } else {
                    for (auto b = row.find_first(); b != Bits::npos; b = row.find_next(b)) sC.set(t * nc + c, b);
                }
            }
        if (padded) res.notes.push_back("undefined evaluations padded with the context itself");
        res.s_id = make_simulator(sT, sC, inst);
        res.witness_id = find_universality_witness(*res.s_id, inst, opt).witness;
        if (!res.witness_id) res.notes.push_back("s_id is not universal");
    }

    if (!retract) {
        res.notes.push_back("no retract of T*C into C; part 2 unavailable");
        return res;
    }
    retract->validate(inst);
    FinRel u = compose(inst.eval(), retract->pi);  // C -> B
    res.t_u = find_program(ev, I, u, inst.brel());
    if (res.t_u && res.t_u->empty() && nc > 0) res.t_u.reset();
    if (!res.t_u) {
        res.notes.push_back("no target imitates eval after the retraction; part 2 unavailable");
        return res;
    }
    long tu = res.t_u->image(0);
    res.s_u = make_simulator(FinRel::from_function(T, T, std::vector<long>(nt, tu)), retract->sigma, inst);
    res.witness_u = find_universality_witness(*res.s_u, inst, opt).witness;
    if (!res.witness_u) res.notes.push_back("s_u is not universal");
    return res;
}

// ---------------------------------------------------------------------------

std::string subset_label(const Bits& b) {
    // plain DSL words: "none", "c0", "c0+c2"
    std::string s;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) s += (s.empty() ? "c" : "+c") + std::to_string(i);
    return s.empty() ? "none" : s;
}

TccInstance cantor_instance(std::size_t n, const std::vector<Bits>& family) {
    if (n == 0 || n > 4) fail(Errc::invalid_argument, "cantor instance needs 1 <= n <= 4");
    std::vector<std::string> cl;
    for (std::size_t i = 0; i < n; ++i) cl.push_back("c" + std::to_string(i));
    FinSet C = FinSet::make("C", cl);
    std::vector<Bits> fam = family;
    if (fam.empty())
        for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) fam.emplace_back(n, m);
    std::vector<std::string> tl;
    for (const auto& b : fam) tl.push_back(subset_label(b));
    FinSet T = FinSet::make("2^C", tl);
    FinSet B = FinSet::make("2", {"0", "1"});
    std::vector<long> ev;
    for (const auto& b : fam)
        for (std::size_t c = 0; c < n; ++c) ev.push_back(b.test(c) ? 1 : 0);
    return TccInstance::make("cantor" + std::to_string(n), T, C, B, FinRel::from_function(FinSet::product(T, C), B, ev),
                             Preorder::equality(B));
}

namespace {

// simulator C*C -> T*C with compiler l and contexts passed through where l is defined
Simulator passthrough_simulator(const std::vector<long>& l, const TccInstance& inst) {
    const FinSet& C = inst.C();
    const std::size_t nc = C.size();
    FinRel sC(FinSet::product(C, C), C);
    for (std::size_t p = 0; p < nc; ++p)
        if (l[p] >= 0)
            for (std::size_t c = 0; c < nc; ++c) sC.set(p * nc + c, c);
    return make_simulator(FinRel::from_function(C, inst.T(), l), sC, inst);
}

}  // namespace

CantorReport cantor_report(std::size_t n, const SearchOptions& opt) {
    if (n == 0 || n > 3) fail(Errc::invalid_argument, "cantor report supports 1 <= n <= 3");
    CantorReport rep;
    rep.n = n;
    TccInstance inst = cantor_instance(n);
    const FinSet& C = inst.C();
    const std::size_t nt = inst.T().size(), nc = n;
    rep.targets = nt;

    // every simulator with programs C when affordable, else the pass-through family
    std::uint64_t full = 0;
    for (std::size_t k = 0; k <= nc; ++k) {
        // compilers defined on exactly k programs: C(n,k) nt^k, each row of sC a nonempty subset
        std::uint64_t choose = 1;
        for (std::size_t i = 0; i < k; ++i) choose = choose * (nc - i) / (i + 1);
        full += sat_mul(sat_mul(choose, sat_pow(nt, k)), sat_pow((std::uint64_t{1} << nc) - 1, k * nc));
    }
    rep.full_context_search = full <= opt.max_candidates;
    for (Odometer od(std::vector<std::size_t>(nc, nt + 1)); !od.done(); od.next()) {
        std::vector<long> l(nc);
        for (std::size_t p = 0; p < nc; ++p) l[p] = static_cast<long>(od.digits()[p]) - 1;
        if (!rep.full_context_search) {
            ++rep.simulators_checked;
            if (find_universality_witness(passthrough_simulator(l, inst), inst, opt).witness) ++rep.universal_found;
            continue;
        }
        std::vector<std::size_t> rows;
        for (std::size_t p = 0; p < nc; ++p)
            if (l[p] >= 0)
                for (std::size_t c = 0; c < nc; ++c) rows.push_back(p * nc + c);
        for (Odometer rs(std::vector<std::size_t>(rows.size(), (std::size_t{1} << nc) - 1)); !rs.done(); rs.next()) {
            FinRel sC(FinSet::product(C, C), C);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t c = 0; c < nc; ++c)
                    if ((rs.digits()[i] + 1) >> c & 1) sC.set(rows[i], c);
            Simulator s = make_simulator(FinRel::from_function(C, inst.T(), l), sC, inst);
            ++rep.simulators_checked;
            if (find_universality_witness(s, inst, opt).witness) ++rep.universal_found;
        }
    }

    FinRel neg = FinRel::from_function(inst.B(), inst.B(), {1, 0});
    rep.negation_qfp_deterministic = find_quasi_fixed_point(neg, inst.brel(), StateSpace::deterministic);
    rep.negation_qfp_any = find_quasi_fixed_point(neg, inst.brel(), StateSpace::all);

    Parametrization ev = eval_parametrization(inst);
    rep.eval_complete_I = check_completeness(ev, FinSet::unit(), inst.brel(), ParamDomain::functional, opt).complete;
    rep.eval_complete_C = check_completeness(ev, C, inst.brel(), ParamDomain::functional, opt).complete;
    rep.eval_complete_I_all = check_completeness(ev, FinSet::unit(), inst.brel(), ParamDomain::all, opt).complete;

    // surjection <=> universality on every nonempty subfamily of subsets
    for (std::size_t mask = 1; mask < (std::size_t{1} << nt); ++mask) {
        std::vector<Bits> fam;
        for (std::size_t m = 0; m < nt; ++m)
            if (mask >> m & 1) fam.emplace_back(nc, m);
        TccInstance sub = cantor_instance(n, fam);
        const std::size_t ns = fam.size();
        ++rep.subfamilies;
        Simulator triv = trivial_simulator(sub);
        for (Odometer od(std::vector<std::size_t>(nc, ns + 1)); !od.done(); od.next()) {
            std::vector<long> l(nc);
            std::vector<long> preimage(ns, -1);
            for (std::size_t p = 0; p < nc; ++p) {
                l[p] = static_cast<long>(od.digits()[p]) - 1;
                if (l[p] >= 0 && preimage[static_cast<std::size_t>(l[p])] < 0)
                    preimage[static_cast<std::size_t>(l[p])] = static_cast<long>(p);
            }
            ++rep.compilers_checked;
            bool surj = std::none_of(preimage.begin(), preimage.end(), [](long x) { return x < 0; });
            Simulator s = passthrough_simulator(l, sub);
            auto w = find_universality_witness(s, sub, opt).witness;
            if (surj) {
                ++rep.surjective;
                // a right inverse of l is a lax reduction
                FinRel r = FinRel::from_function(sub.T(), sub.C(), preimage);
                if (!check_reduction(r, Flavor::lax, s, triv, sub)) ++rep.equivalence_failures;
            }
            if (surj != w.has_value()) ++rep.equivalence_failures;
            if (w && !(compose(s.sT(), *w) == identity(sub.T()))) ++rep.right_inverse_failures;
        }
    }
    return rep;
}

}  // namespace univsim
