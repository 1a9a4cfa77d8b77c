#include "simulator.hpp"

#include "error.hpp"

#include <algorithm>

namespace univsim {

const char* flavor_name(Flavor f) {
    switch (f) {
    case Flavor::strict: return "strict";
    case Flavor::lax: return "lax";
    case Flavor::oplax: return "oplax";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::unknown: return "unknown";
    }
    return "?";
}

FinRel assemble(const FinRel& sT, const FinRel& sC, const TccInstance& inst) {
    const FinSet& P = sT.dom();
    return compose(tensor(sT, sC), tensor(copy(P), identity(inst.C())));
}

Simulator make_simulator(FinRel sT, FinRel sC, const TccInstance& inst) {
    const FinSet P = sT.dom();
    if (!(sT.cod() == inst.T())) fail(Errc::type_mismatch, "compiler must map into " + inst.T().id());
    FinSet PC = FinSet::product(P, inst.C());
    if (!(sC.dom() == PC)) fail(Errc::type_mismatch, "context reduction must have domain " + PC.id());
    if (!(sC.cod() == inst.C())) fail(Errc::type_mismatch, "context reduction must map into " + inst.C().id());
    if (!classify(sT).functional) fail(Errc::not_functional, "compiler is not functional");
    ensure(classify(sC).normalized, "context reduction is normalized");

    const std::size_t nc = inst.C().size();
    Simulator s;
    s.compiled_.resize(P.size());
    for (std::size_t p = 0; p < P.size(); ++p) {
        s.compiled_[p] = sT.image(p);
        bool defined = s.compiled_[p] >= 0;
        for (std::size_t c = 0; c < nc; ++c) {
            bool any = sC.row(p * nc + c).any();
            if (any != defined)
                fail(Errc::split_violation, "domain condition fails at program '" + P.label(p) + "', context '" +
                                                inst.C().label(c) + "': context reduction is " +
                                                (any ? "defined" : "undefined") + " where the compiler is " +
                                                (defined ? "defined" : "undefined"));
        }
    }
    s.P_ = P;
    s.s_ = assemble(sT, sC, inst);
    s.sT_ = std::move(sT);
    s.sC_ = std::move(sC);
    return s;
}

Simulator canonicalize(const FinRel& raw, const TccInstance& inst) {
    if (!(raw.cod() == inst.TC())) fail(Errc::type_mismatch, "raw simulator must map into " + inst.TC().id());
    auto f = raw.dom().factors();
    auto cf = inst.C().factors();
    if (f.size() < cf.size() || !std::equal(cf.begin(), cf.end(), f.end() - static_cast<long>(cf.size())))
        fail(Errc::type_mismatch, "raw simulator domain must end in " + inst.C().id());
    FinSet P = FinSet::product(std::vector<FinSet>(f.begin(), f.end() - static_cast<long>(cf.size())));
    const std::size_t nc = inst.C().size();
    if (nc == 0 && P.size() > 0)
        fail(Errc::no_total_state, "no total context state exists; the compiler cannot be recovered");
    FinRel sT(P, inst.T());
    FinRel sC(FinSet::product(P, inst.C()), inst.C());
    for (std::size_t p = 0; p < P.size(); ++p)
        for (std::size_t c = 0; c < nc; ++c) {
            const Bits& r = raw.row(p * nc + c);
            for (auto x = r.find_first(); x != Bits::npos; x = r.find_next(x)) {
                sT.set(p, x / nc);
                sC.set(p * nc + c, x % nc);
            }
        }
    if (!classify_direct(sT).functional) fail(Errc::split_violation, "recovered compiler is not functional");
    Simulator s = make_simulator(std::move(sT), std::move(sC), inst);
    if (!(s.s() == raw)) fail(Errc::split_violation, "raw relation does not split into compiler and context reduction");
    return s;
}

Simulator trivial_simulator(const TccInstance& inst) {
    return make_simulator(identity(inst.T()), tensor(del(inst.T()), identity(inst.C())), inst);
}

bool is_trivial(const Simulator& s, const TccInstance& inst) { return s == trivial_simulator(inst); }

std::optional<FinRel> is_singleton(const Simulator& s) {
    const FinRel& sT = s.sT();
    if (sT.empty()) return FinRel(FinSet::unit(), sT.cod());
    long t = -2;
    for (std::size_t p = 0; p < s.P().size(); ++p) {
        long x = s.compile(p);
        if (x < 0) return std::nullopt;
        if (t == -2) t = x;
        if (x != t) return std::nullopt;
    }
    return point(sT.cod(), static_cast<std::size_t>(t));
}

FinRel pull_back(const Simulator& s, const FinRel& r, const TccInstance& inst) {
    return compose(s.s(), tensor(r, identity(inst.C())));
}

bool check_reduction(const FinRel& r, Flavor flavor, const Simulator& s, const Simulator& s2, const TccInstance& inst) {
    if (!(r.cod() == s.P()) || !(r.dom() == s2.P()))
        fail(Errc::type_mismatch, "reduction must map programs " + s2.P().id() + " to " + s.P().id());
    if (!classify_direct(r).functional) fail(Errc::not_functional, "reduction is not functional");
    FinRel pulled = pull_back(s, r, inst);
    switch (flavor) {
    case Flavor::strict: return pulled == s2.s();
    case Flavor::lax: return ambient_imitates(pulled, s2.s(), inst);
    case Flavor::oplax: return ambient_imitates(s2.s(), pulled, inst);
    }
    return false;
}

std::vector<std::vector<long>> reduction_options(const Simulator& s, const TccInstance& inst, Flavor flavor) {
    const std::size_t nt = inst.T().size(), nc = inst.C().size(), np = s.P().size();
    FinRel beh = behavior_of(s.s(), inst);
    Bits none(inst.B().size());
    Bits no_pair(inst.TC().size());
    std::vector<std::vector<long>> out(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        for (long o = -1; o < static_cast<long>(np); ++o) {
            bool ok = true;
            for (std::size_t c = 0; c < nc && ok; ++c) {
                const Bits& sim = o < 0 ? none : beh.row(static_cast<std::size_t>(o) * nc + c);
                const Bits& ref = inst.eval_row(t, c);
                switch (flavor) {
                case Flavor::lax: ok = imitates_row(sim, ref, inst.brel()); break;
                case Flavor::oplax: ok = imitates_row(ref, sim, inst.brel()); break;
                case Flavor::strict: {
                    const Bits& got = o < 0 ? no_pair : s.s().row(static_cast<std::size_t>(o) * nc + c);
                    ok = got.count() == 1 && got.test(t * nc + c);
                    break;
                }
                }
            }
            if (ok) out[t].push_back(o);
        }
    }
    return out;
}

FinRel function_from_digits(const FinSet& dom, const FinSet& cod, const std::vector<long>& image) {
    return FinRel::from_function(dom, cod, image);
}

WitnessSearch find_universality_witness(const Simulator& s, const TccInstance& inst, const SearchOptions& opt) {
    WitnessSearch w;
    const std::size_t nt = inst.T().size(), np = s.P().size();
    w.space = sat_pow(np + 1, nt);
    w.candidates = sat_mul(np + 1, nt);
    require_budget(w.candidates, opt, "universality witness search");
    auto opts = reduction_options(s, inst, Flavor::lax);
    std::vector<long> image(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        if (opts[t].empty()) return w;
        image[t] = opts[t].front();
    }
    FinRel r = function_from_digits(inst.T(), s.P(), image);
    ensure(check_reduction(r, Flavor::lax, s, trivial_simulator(inst), inst), "row-wise witness is a lax reduction");
    w.witness = std::move(r);
    return w;
}

WitnessSearch find_universality_witness_naive(const Simulator& s, const TccInstance& inst, const SearchOptions& opt) {
    WitnessSearch w;
    const std::size_t nt = inst.T().size(), np = s.P().size();
    w.space = sat_pow(np + 1, nt);
    require_budget(w.space, opt, "naive universality witness search");
    Simulator triv = trivial_simulator(inst);
    std::vector<long> image(nt);
    for (Odometer od(std::vector<std::size_t>(nt, np + 1)); !od.done(); od.next()) {
        ++w.candidates;
        for (std::size_t t = 0; t < nt; ++t) image[t] = static_cast<long>(od.digits()[t]) - 1;
        FinRel r = function_from_digits(inst.T(), s.P(), image);
        if (ambient_imitates(pull_back(s, r, inst), triv.s(), inst)) {
            w.witness = std::move(r);
            return w;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------

FinRel context_composite(const FinRel& f, const FinRel& fC, const TccInstance& inst) {
    const FinSet& A = f.dom();
    return compose(tensor(f, fC), tensor(copy(A), identity(inst.C())));
}

namespace {

void check_context_types(const FinRel& f, const FinRel& g, const TccInstance& inst) {
    if (!(f.dom() == g.dom())) fail(Errc::type_mismatch, "context reduction: domains differ");
    if (!(f.cod() == inst.T()) || !(g.cod() == inst.T()))
        fail(Errc::type_mismatch, "context reduction compares morphisms into " + inst.T().id());
}

// Union of eval(t, c) over t in a target row.
Bits behaviors(const Bits& targets, std::size_t c, const TccInstance& inst) {
    Bits out(inst.B().size());
    for (auto t = targets.find_first(); t != Bits::npos; t = targets.find_next(t)) out |= inst.eval_row(t, c);
    return out;
}

bool row_ok(Flavor flavor, const Bits& composite, const Bits& reference, const Preorder& p) {
    return flavor == Flavor::lax ? imitates_row(composite, reference, p) : imitates_row(reference, composite, p);
}

}  // namespace

bool check_context_witness(const FinRel& f, const FinRel& g, const FinRel& fC, Flavor flavor, const TccInstance& inst) {
    check_context_types(f, g, inst);
    FinSet AC = FinSet::product(f.dom(), inst.C());
    if (!(fC.dom() == AC) || !(fC.cod() == inst.C()))
        fail(Errc::type_mismatch, "context witness must have type " + AC.id() + " -> " + inst.C().id());
    FinRel lhs = context_composite(f, fC, inst);
    FinRel rhs = tensor(g, identity(inst.C()));
    return flavor == Flavor::lax ? ambient_imitates(lhs, rhs, inst) : ambient_imitates(rhs, lhs, inst);
}

ContextResult context_reduces(const FinRel& f, const FinRel& g, const TccInstance& inst, Flavor flavor,
                              const SearchOptions& opt, bool total_witness) {
    check_context_types(f, g, inst);
    if (flavor == Flavor::strict) fail(Errc::invalid_argument, "context reduction is lax or oplax");
    const std::size_t na = f.dom().size(), nc = inst.C().size();
    const Preorder& p = inst.brel();
    ContextResult res;
    res.searched = opt.space;
    res.total_witness = total_witness;
    res.candidates = sat_mul(sat_mul(na, nc), nc + 1);
    require_budget(res.candidates, opt, "context reduction search");

    FinSet AC = FinSet::product(f.dom(), inst.C());
    FinRel w(AC, inst.C());
    // E[c'] for the current a: behaviors of f(a) in context c'
    std::vector<Bits> E(nc);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t c2 = 0; c2 < nc; ++c2) E[c2] = behaviors(f.row(a), c2, inst);
        for (std::size_t c = 0; c < nc; ++c) {
            Bits ref = behaviors(g.row(a), c, inst);
            std::optional<Bits> choice;
            auto union_of = [&](const Bits& S) {
                Bits nu(inst.B().size());
                for (auto x = S.find_first(); x != Bits::npos; x = S.find_next(x)) nu |= E[x];
                return nu;
            };
            if (opt.space == SearchSpace::functional) {
                if (!total_witness && row_ok(flavor, Bits(inst.B().size()), ref, p)) choice = Bits(nc);
                for (std::size_t c2 = 0; c2 < nc && !choice; ++c2)
                    if (row_ok(flavor, E[c2], ref, p)) {
                        Bits S(nc);
                        S.set(c2);
                        choice = S;
                    }
            } else if (flavor == Flavor::lax) {
                Bits S(nc);
                if (ref.none()) {
                    S.set();
                } else {
                    Bits degok(inst.B().size());
                    for (std::size_t v = 0; v < inst.B().size(); ++v)
                        if (p.below(v).intersects(ref)) degok.set(v);
                    for (std::size_t c2 = 0; c2 < nc; ++c2)
                        if (E[c2].is_subset_of(degok)) S.set(c2);
                }
                if (row_ok(flavor, union_of(S), ref, p) && (!total_witness || S.any())) choice = S;
            } else {
                Bits enhok(inst.B().size());
                for (std::size_t u = 0; u < inst.B().size(); ++u)
                    if (p.above(u).intersects(ref)) enhok.set(u);
                Bits S(nc), S0(nc);
                for (std::size_t c2 = 0; c2 < nc; ++c2) {
                    if (E[c2].is_subset_of(enhok)) S.set(c2);
                    if (E[c2].none()) S0.set(c2);
                }
                if (row_ok(flavor, union_of(S), ref, p) && (!total_witness || S.any()))
                    choice = S;
                else if (!total_witness || S0.any())
                    choice = S0;
            }
            if (!choice) {
                res.verdict = Verdict::fails;
                return res;
            }
            ensure(row_ok(flavor, union_of(*choice), ref, p), "context witness row");
            w.set_row(a * nc + c, *choice);
        }
    }
    ensure(check_context_witness(f, g, w, flavor, inst), "assembled context witness");
    res.verdict = Verdict::holds;
    res.witness = std::move(w);
    return res;
}

ContextResult context_reduces_naive(const FinRel& f, const FinRel& g, const TccInstance& inst, Flavor flavor,
                                    const SearchOptions& opt, bool total_witness) {
    check_context_types(f, g, inst);
    const std::size_t na = f.dom().size(), nc = inst.C().size();
    const std::size_t rows = na * nc;
    ContextResult res;
    res.searched = opt.space;
    res.total_witness = total_witness;
    std::size_t radix = opt.space == SearchSpace::all ? (std::size_t{1} << nc) : nc + 1;
    require_budget(sat_pow(radix, rows), opt, "naive context reduction search");
    FinSet AC = FinSet::product(f.dom(), inst.C());
    for (Odometer od(std::vector<std::size_t>(rows, radix)); !od.done(); od.next()) {
        ++res.candidates;
        FinRel w(AC, inst.C());
        bool total = true;
        for (std::size_t i = 0; i < rows; ++i) {
            std::size_t d = od.digits()[i];
            if (opt.space == SearchSpace::all) {
                for (std::size_t b = 0; b < nc; ++b)
                    if (d >> b & 1) w.set(i, b);
            } else if (d > 0) {
                w.set(i, d - 1);
            }
            if (w.row(i).none()) total = false;
        }
        if (total_witness && !total) continue;
        if (check_context_witness(f, g, w, flavor, inst)) {
            res.verdict = Verdict::holds;
            res.witness = std::move(w);
            return res;
        }
    }
    res.verdict = Verdict::fails;
    return res;
}

std::vector<FinRel> functional_image(const FinRel& f) {
    if (!classify_direct(f).functional) fail(Errc::not_functional, "functional image needs a functional morphism");
    Bits hit(f.cod().size());
    bool empty = false;
    for (std::size_t a = 0; a < f.dom().size(); ++a) {
        long x = f.image(a);
        if (x < 0)
            empty = true;
        else
            hit.set(static_cast<std::size_t>(x));
    }
    std::vector<FinRel> out;
    if (empty) out.emplace_back(FinSet::unit(), f.cod());
    for (auto x = hit.find_first(); x != Bits::npos; x = hit.find_next(x)) out.push_back(point(f.cod(), x));
    return out;
}

Rational MonotoneFn::operator()(const FinRel& st) const {
    long x = st.image(0);
    if (x < 0) return empty;
    return point.at(static_cast<std::size_t>(x));
}

std::vector<MonotoneViolation> monotonicity_violations(const MonotoneFn& phi, const TccInstance& inst,
                                                       const SearchOptions& opt) {
    std::vector<MonotoneViolation> out;
    auto states = functional_states(inst.T());
    SearchOptions all = opt;
    all.space = SearchSpace::all;
    for (const auto& x : states)
        for (const auto& y : states) {
            if (!(phi(x) < phi(y))) continue;
            if (context_reduces(x, y, inst, Flavor::lax, all).verdict == Verdict::holds) out.push_back({x, y});
        }
    return out;
}

NogoResult nogo_check(const Simulator& s, const MonotoneFn& phi, const TccInstance& inst, const SearchOptions& opt) {
    if (phi.point.size() != inst.T().size()) fail(Errc::type_mismatch, "monotone function must rate every target");
    NogoResult res;
    res.image = functional_image(s.sT());
    bool first = true;
    for (const auto& st : res.image) {
        Rational v = phi(st);
        if (first || v > res.sup_image) res.sup_image = v;
        first = false;
    }
    first = true;
    for (const auto& st : functional_states(inst.T())) {
        Rational v = phi(st);
        if (first || v > res.sup_all) res.sup_all = v;
        first = false;
    }
    res.not_universal = res.image.empty() || res.sup_image < res.sup_all;
    res.violations = monotonicity_violations(phi, inst, opt);
    try {
        res.universal = find_universality_witness(s, inst, opt).witness.has_value();
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
    }
    if (res.not_universal && res.violations.empty() && res.universal)
        ensure(!*res.universal, "no-go verdict contradicts an exhaustive universality witness");
    return res;
}

}  // namespace univsim
