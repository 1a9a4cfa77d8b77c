#include "simcat.hpp"

#include "error.hpp"

#include <algorithm>

namespace univsim {

const char* parsimony_name(ParsimonyKind k) {
    switch (k) {
    case ParsimonyKind::found: return "morphism-found";
    case ParsimonyKind::none_exists: return "none-exists";
    case ParsimonyKind::none_found_budget: return "none-found";
    }
    return "?";
}

namespace {

FinSet strip_suffix(const FinSet& prod, const FinSet& suffix, const char* what) {
    auto f = prod.factors();
    auto s = suffix.factors();
    if (f.size() < s.size() || !std::equal(s.begin(), s.end(), f.end() - static_cast<long>(s.size())))
        fail(Errc::type_mismatch, std::string(what) + ": domain " + prod.id() + " does not end in " + suffix.id());
    return FinSet::product(std::vector<FinSet>(f.begin(), f.end() - static_cast<long>(s.size())));
}

}  // namespace

FinRel assemble_processing(const FinRel& qT, const FinRel& qC, const TccInstance& inst) {
    return compose(tensor(qT, qC), tensor(copy(qT.dom()), identity(inst.C())));
}

Processing make_processing(FinRel qT, FinRel qC, const TccInstance& inst) {
    FinSet P = strip_suffix(qT.dom(), inst.T(), "processing target part");
    FinSet PTC = FinSet::product({P, inst.T(), inst.C()});
    if (!(qT.cod() == inst.T())) fail(Errc::type_mismatch, "processing target part must map into " + inst.T().id());
    if (!(qC.dom() == PTC) || !(qC.cod() == inst.C()))
        fail(Errc::type_mismatch, "processing context part must have type " + PTC.id() + " -> " + inst.C().id());
    if (!classify_direct(qT).functional) fail(Errc::not_functional, "processing target part is not functional");
    const std::size_t nc = inst.C().size();
    for (std::size_t pt = 0; pt < qT.dom().size(); ++pt) {
        bool defined = qT.row(pt).any();
        for (std::size_t c = 0; c < nc; ++c)
            if (qC.row(pt * nc + c).any() != defined)
                fail(Errc::split_violation, "processing domain condition fails at " + qT.dom().label(pt));
    }
    Processing q{P, std::move(qT), std::move(qC), {}};
    q.q = assemble_processing(q.qT, q.qC, inst);
    return q;
}

Processing identity_processing(const FinSet& P, const TccInstance& inst) {
    return make_processing(tensor(del(P), identity(inst.T())),
                           tensor(del(FinSet::product(P, inst.T())), identity(inst.C())), inst);
}

Processing constant_processing(const FinSet& P, const FinRel& kT, const FinRel& kC, const TccInstance& inst) {
    return make_processing(tensor(del(P), kT), tensor(del(P), kC), inst);
}

ProcessingCheck check_processing(const FinRel& q, const Simulator& s, const TccInstance& inst) {
    ProcessingCheck out;
    const FinSet& P = s.P();
    FinSet PTC = FinSet::product({P, inst.T(), inst.C()});
    if (!(q.dom() == PTC) || !(q.cod() == inst.TC()))
        fail(Errc::type_mismatch, "processing must have type " + PTC.id() + " -> " + inst.TC().id());
    const std::size_t nc = inst.C().size();
    FinSet PT = FinSet::product(P, inst.T());
    FinRel qT(PT, inst.T());
    FinRel qC(PTC, inst.C());
    for (std::size_t pt = 0; pt < PT.size(); ++pt)
        for (std::size_t c = 0; c < nc; ++c) {
            const Bits& r = q.row(pt * nc + c);
            for (auto x = r.find_first(); x != Bits::npos; x = r.find_next(x)) {
                qT.set(pt, x / nc);
                qC.set(pt * nc + c, x % nc);
            }
        }
    bool functional = classify_direct(qT).functional;
    out.split_ok = functional && assemble_processing(qT, qC, inst) == q;
    if (!out.split_ok)
        out.violations.push_back(functional ? "split: q does not factor as (qT, qC); the target part depends on the context"
                                            : "split: target part is not functional");
    out.domain_ok = true;
    for (std::size_t pt = 0; pt < PT.size() && out.domain_ok; ++pt) {
        bool defined = qT.row(pt).any();
        for (std::size_t c = 0; c < nc; ++c)
            if (qC.row(pt * nc + c).any() != defined) {
                out.domain_ok = false;
                out.violations.push_back("domain: context part defined differently from target part at " +
                                         PT.label(pt));
                break;
            }
    }
    out.weak_ok = ambient_imitates(tensor(del(P), identity(inst.TC())), q, inst);
    if (!out.weak_ok) out.violations.push_back("weak: q raises behavior somewhere (del_P (x) id does not imitate q)");
    if (out.split_ok && out.domain_ok) {
        out.processing = Processing{P, qT, qC, q};
        if (out.weak_ok) out.result = apply_processing(*out.processing, s, inst);
    }
    return out;
}

Simulator apply_processing(const Processing& q, const Simulator& s, const TccInstance& inst) {
    if (!(q.P == s.P())) fail(Errc::type_mismatch, "processing programs differ from simulator programs");
    const std::size_t np = s.P().size(), nt = inst.T().size(), nc = inst.C().size();
    FinRel sT(s.P(), inst.T());
    FinRel sC(FinSet::product(s.P(), inst.C()), inst.C());
    for (std::size_t p = 0; p < np; ++p) {
        long t = s.compile(p);
        if (t < 0) continue;
        std::size_t pt = p * nt + static_cast<std::size_t>(t);
        sT.set_row(p, q.qT.row(pt));
        for (std::size_t c = 0; c < nc; ++c) {
            Bits acc(nc);
            const Bits& in = s.sC().row(p * nc + c);
            for (auto c2 = in.find_first(); c2 != Bits::npos; c2 = in.find_next(c2)) acc |= q.qC.row(pt * nc + c2);
            sC.set_row(p * nc + c, acc);
        }
    }
    Simulator out = make_simulator(std::move(sT), std::move(sC), inst);
    FinRel diagram = compose(q.q, compose(tensor(identity(s.P()), s.s()), tensor(copy(s.P()), identity(inst.C()))));
    ensure(out.s() == diagram, "processed simulator matches the composite diagram");
    return out;
}

Simulator pulled_simulator(const Simulator& s, const FinRel& r, const TccInstance& inst) {
    if (!(r.cod() == s.P())) fail(Errc::type_mismatch, "reduction must map into " + s.P().id());
    if (!classify_direct(r).functional) fail(Errc::not_functional, "reduction is not functional");
    Simulator out = make_simulator(compose(s.sT(), r), compose(s.sC(), tensor(r, identity(inst.C()))), inst);
    ensure(out.s() == pull_back(s, r, inst), "pulled simulator splits");
    return out;
}

SimMorphism make_morphism(const FinRel& r, const Processing& q, const Simulator& source, const TccInstance& inst) {
    Simulator pulled = pulled_simulator(source, r, inst);
    ProcessingCheck chk = check_processing(q.q, pulled, inst);
    if (!chk.ok()) {
        std::string msg = "not a processing:";
        for (const auto& v : chk.violations) msg += " " + v + ";";
        fail(Errc::invalid_argument, msg);
    }
    return SimMorphism{r, q, source, *chk.result};
}

bool verify_morphism(const SimMorphism& m, const TccInstance& inst) {
    try {
        SimMorphism again = make_morphism(m.r, m.q, m.source, inst);
        return again.target == m.target;
    } catch (const Error&) {
        return false;
    }
}

SimMorphism identity_morphism(const Simulator& s, const TccInstance& inst) {
    SimMorphism m = make_morphism(identity(s.P()), identity_processing(s.P(), inst), s, inst);
    ensure(m.target == s, "identity morphism returns its source");
    return m;
}

SimMorphism compose_morphisms(const SimMorphism& m2, const SimMorphism& m1, const TccInstance& inst) {
    if (!(m1.target == m2.source)) fail(Errc::type_mismatch, "morphisms do not chain");
    const FinSet& P2 = m2.r.dom();
    FinRel r = compose(m1.r, m2.r);
    const FinRel idTC = identity(inst.TC());
    FinRel step = tensor(copy(P2), idTC);
    step = compose(tensor({identity(P2), m2.r, idTC}), step);
    step = compose(tensor(identity(P2), m1.q.q), step);
    FinRel qraw = compose(m2.q.q, step);
    Simulator pulled = pulled_simulator(m1.source, r, inst);
    ProcessingCheck chk = check_processing(qraw, pulled, inst);
    ensure(chk.ok(), "composite processing is a processing");
    SimMorphism out{r, *chk.processing, m1.source, *chk.result};
    ensure(out.target == m2.target, "composite morphism lands on the final target");
    return out;
}

Reduction morphism_to_lax_reduction(const SimMorphism& m, const TccInstance& inst) {
    ensure(check_reduction(m.r, Flavor::lax, m.source, m.target, inst), "morphism reduction is lax");
    return Reduction{m.r, Flavor::lax};
}

bool processing_is_p_independent(const Processing& q, const TccInstance& inst) {
    const std::size_t np = q.P.size(), nt = inst.T().size(), nc = inst.C().size();
    for (std::size_t p = 1; p < np; ++p)
        for (std::size_t t = 0; t < nt; ++t) {
            if (q.qT.row(p * nt + t) != q.qT.row(t)) return false;
            for (std::size_t c = 0; c < nc; ++c)
                if (q.qC.row((p * nt + t) * nc + c) != q.qC.row(t * nc + c)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------

bool every_lax_reduction_is_oplax(const Simulator& s, const TccInstance& inst) {
    auto lax = reduction_options(s, inst, Flavor::lax);
    auto oplax = reduction_options(s, inst, Flavor::oplax);
    // a target with no lax option leaves no lax reduction at all
    for (const auto& o : lax)
        if (o.empty()) return true;
    for (std::size_t t = 0; t < lax.size(); ++t)
        for (long o : lax[t])
            if (std::find(oplax[t].begin(), oplax[t].end(), o) == oplax[t].end()) return false;
    return true;
}

namespace {

std::uint64_t option_count(const std::vector<std::vector<long>>& opts) {
    std::uint64_t n = 1;
    for (const auto& o : opts) n = sat_mul(n, o.size());
    return n;
}

std::vector<std::size_t> radix_of(const std::vector<std::vector<long>>& opts) {
    std::vector<std::size_t> r;
    for (const auto& o : opts) r.push_back(o.size());
    return r;
}

std::vector<long> pick(const std::vector<std::vector<long>>& opts, const std::vector<std::size_t>& digits) {
    std::vector<long> out(opts.size());
    for (std::size_t k = 0; k < opts.size(); ++k) out[k] = opts[k][digits[k]];
    return out;
}

}  // namespace

CompressedResult is_compressed(const Simulator& s, const TccInstance& inst, const SearchOptions& opt) {
    auto opts = reduction_options(s, inst, Flavor::lax);
    for (const auto& o : opts)
        if (o.empty()) fail(Errc::not_universal, "compression is defined for universal simulators only");
    CompressedResult res;
    require_budget(option_count(opts), opt, "enumeration of lax reductions");
    const FinSet& T = inst.T();
    auto states = functional_states(T);
    const std::size_t ns = states.size();
    // separates[x][y]: y does not oplax-context-reduce to x with a total witness
    std::vector<std::vector<bool>> separates(ns, std::vector<bool>(ns));
    SearchOptions all = opt;
    all.space = SearchSpace::all;
    for (std::size_t x = 0; x < ns; ++x)
        for (std::size_t y = 0; y < ns; ++y)
            separates[x][y] = context_reduces(states[y], states[x], inst, Flavor::oplax, all, true).verdict != Verdict::holds;

    res.compressed = true;
    for (Odometer od(radix_of(opts)); !od.done(); od.next()) {
        ++res.reductions;
        auto image = pick(opts, od.digits());
        FinRel r = function_from_digits(T, s.P(), image);
        // compiled state of each functional state; index 0 is the empty state
        std::vector<long> compiled(ns);
        compiled[0] = -1;
        for (std::size_t t = 0; t < T.size(); ++t) compiled[t + 1] = image[t] < 0 ? -1 : s.compile(static_cast<std::size_t>(image[t]));
        std::optional<CompressionCert> cert;
        for (std::size_t x = 0; x < ns && !cert; ++x)
            for (std::size_t y = 0; y < ns && !cert; ++y)
                if (compiled[x] == compiled[y] && separates[x][y]) cert = CompressionCert{r, states[x], states[y]};
        if (!cert) {
            res.compressed = false;
            res.failing_reduction = r;
            return res;
        }
        FinRel ct = compose(s.sT(), compose(r, cert->t));
        FinRel cg = compose(s.sT(), compose(r, cert->g));
        ensure(ct == cg, "compression witness states compile alike");
        res.certificates.push_back(std::move(*cert));
    }
    return res;
}

std::optional<SimMorphism> morphism_from_trivial(const Simulator& b, const TccInstance& inst, const SearchOptions& opt) {
    auto lax = reduction_options(b, inst, Flavor::lax);
    auto oplax = reduction_options(b, inst, Flavor::oplax);
    std::vector<std::vector<long>> both(lax.size());
    for (std::size_t t = 0; t < lax.size(); ++t)
        for (long o : lax[t])
            if (std::find(oplax[t].begin(), oplax[t].end(), o) != oplax[t].end()) both[t].push_back(o);
    require_budget(option_count(both), opt, "enumeration of lax and oplax reductions");

    const FinSet& T = inst.T();
    const std::size_t np = b.P().size(), nc = inst.C().size();
    auto row_equal = [&](std::size_t p, std::size_t p2) {
        for (std::size_t c = 0; c < nc; ++c)
            if (b.s().row(p * nc + c) != b.s().row(p2 * nc + c)) return false;
        return true;
    };
    auto row_empty = [&](std::size_t p) { return b.compile(p) < 0; };
    Simulator triv = trivial_simulator(inst);
    for (Odometer od(radix_of(both)); !od.done(); od.next()) {
        auto image = pick(both, od.digits());
        std::vector<long> m(np, -1);
        bool ok = true;
        for (std::size_t p = 0; p < np && ok; ++p) {
            if (row_empty(p)) continue;
            ok = false;
            for (std::size_t t = 0; t < T.size() && !ok; ++t)
                if (image[t] >= 0 && row_equal(static_cast<std::size_t>(image[t]), p)) {
                    m[p] = static_cast<long>(t);
                    ok = true;
                }
        }
        if (!ok) continue;
        FinRel r = function_from_digits(T, b.P(), image);
        FinRel mrel = function_from_digits(b.P(), T, m);
        ensure(check_reduction(r, Flavor::lax, b, triv, inst) && check_reduction(r, Flavor::oplax, b, triv, inst),
               "chosen reduction is lax and oplax");
        FinRel invert = compose(r, mrel);
        ensure(pull_back(b, invert, inst) == b.s(), "program choice inverts the reduction");
        Processing q = constant_processing(b.P(), compose(b.sT(), r), compose(b.sC(), tensor(r, identity(inst.C()))), inst);
        SimMorphism mor = make_morphism(mrel, q, triv, inst);
        ensure(mor.target == b, "constructed morphism lands on the simulator");
        return mor;
    }
    return std::nullopt;
}

std::optional<Processing> synthesize_processing(const FinRel& r, const Simulator& a, const Simulator& b,
                                                const TccInstance& inst) {
    const std::size_t np = b.P().size(), nt = inst.T().size(), nc = inst.C().size(), nb = inst.B().size();
    const Preorder& ord = inst.brel();
    FinSet PT = FinSet::product(b.P(), inst.T());
    FinRel qT(PT, inst.T());
    FinRel qC(FinSet::product(PT, inst.C()), inst.C());
    for (std::size_t p = 0; p < np; ++p) {
        long rp = r.image(p);
        long u = rp < 0 ? -1 : a.compile(static_cast<std::size_t>(rp));
        long tb = b.compile(p);
        if (u < 0) {
            if (tb >= 0) return std::nullopt;
            continue;
        }
        if (tb < 0) continue;
        const std::size_t pt = p * nt + static_cast<std::size_t>(u);
        qT.set(pt, static_cast<std::size_t>(tb));
        const std::size_t ra = static_cast<std::size_t>(rp);
        std::vector<Bits> Q(nc, Bits(nc));
        for (std::size_t c2 = 0; c2 < nc; ++c2) {
            Bits M(nc);
            M.set();
            for (std::size_t c = 0; c < nc; ++c)
                if (a.sC().row(ra * nc + c).test(c2)) M &= b.sC().row(p * nc + c);
            const Bits& nu = inst.eval_row(static_cast<std::size_t>(u), c2);
            Bits enhok(nb);
            for (std::size_t w = 0; w < nb; ++w)
                if (ord.above(w).intersects(nu)) enhok.set(w);
            Bits A(nc), good(nc), undef(nc);
            for (std::size_t x = 0; x < nc; ++x) {
                if (!M.test(x)) continue;
                const Bits& e = inst.eval_row(static_cast<std::size_t>(tb), x);
                if (!e.is_subset_of(enhok)) continue;
                A.set(x);
                if (e.none()) undef.set(x);
                for (auto v = nu.find_first(); v != Bits::npos; v = nu.find_next(v))
                    if (ord.below(v).intersects(e)) good.set(x);
            }
            Q[c2] = (nu.none() || good.any()) ? A : undef;
            if (Q[c2].none()) return std::nullopt;
            qC.set_row(pt * nc + c2, Q[c2]);
        }
        for (std::size_t c = 0; c < nc; ++c) {
            Bits acc(nc);
            const Bits& in = a.sC().row(ra * nc + c);
            for (auto c2 = in.find_first(); c2 != Bits::npos; c2 = in.find_next(c2)) acc |= Q[c2];
            if (acc != b.sC().row(p * nc + c)) return std::nullopt;
        }
    }
    return make_processing(std::move(qT), std::move(qC), inst);
}

MorphismSearch search_morphism(const Simulator& a, const Simulator& b, const TccInstance& inst, const SearchOptions& opt) {
    MorphismSearch res;
    const std::size_t na = a.P().size(), nb = b.P().size();
    require_budget(sat_pow(na + 1, nb), opt, "reduction enumeration for morphism search");
    std::vector<long> image(nb);
    for (Odometer od(std::vector<std::size_t>(nb, na + 1)); !od.done(); od.next()) {
        ++res.candidates;
        for (std::size_t k = 0; k < nb; ++k) image[k] = static_cast<long>(od.digits()[k]) - 1;
        FinRel r = function_from_digits(b.P(), a.P(), image);
        auto q = synthesize_processing(r, a, b, inst);
        if (!q) continue;
        SimMorphism m = make_morphism(r, *q, a, inst);
        ensure(m.target == b, "synthesized processing reproduces the target simulator");
        res.morphism = std::move(m);
        res.complete = true;
        return res;
    }
    res.complete = true;
    return res;
}

MorphismSearch search_morphism_naive(const Simulator& a, const Simulator& b, const TccInstance& inst,
                                     const SearchOptions& opt) {
    MorphismSearch res;
    const std::size_t na = a.P().size(), nb = b.P().size(), nt = inst.T().size(), nc = inst.C().size();
    const std::size_t npt = nb * nt, nptc = npt * nc;
    std::uint64_t per_r = sat_mul(sat_pow(nt + 1, npt), sat_pow(std::uint64_t{1} << nc, nptc));
    require_budget(sat_mul(sat_pow(na + 1, nb), per_r), opt, "naive morphism search");
    FinSet PT = FinSet::product(b.P(), inst.T());
    FinSet PTC = FinSet::product(PT, inst.C());
    std::vector<long> image(nb);
    for (Odometer od(std::vector<std::size_t>(nb, na + 1)); !od.done(); od.next()) {
        for (std::size_t k = 0; k < nb; ++k) image[k] = static_cast<long>(od.digits()[k]) - 1;
        FinRel r = function_from_digits(b.P(), a.P(), image);
        Simulator pulled = pulled_simulator(a, r, inst);
        for (Odometer ot(std::vector<std::size_t>(npt, nt + 1)); !ot.done(); ot.next()) {
            std::vector<long> ti(npt);
            for (std::size_t k = 0; k < npt; ++k) ti[k] = static_cast<long>(ot.digits()[k]) - 1;
            FinRel qT = FinRel::from_function(PT, inst.T(), ti);
            for (Odometer oc(std::vector<std::size_t>(nptc, std::size_t{1} << nc)); !oc.done(); oc.next()) {
                ++res.candidates;
                FinRel qC(PTC, inst.C());
                for (std::size_t k = 0; k < nptc; ++k)
                    for (std::size_t bit = 0; bit < nc; ++bit)
                        if (oc.digits()[k] >> bit & 1) qC.set(k, bit);
                ProcessingCheck chk = check_processing(assemble_processing(qT, qC, inst), pulled, inst);
                if (!chk.ok() || !(chk.processing->qC == qC)) continue;
                if (*chk.result == b) {
                    res.morphism = SimMorphism{r, *chk.processing, a, *chk.result};
                    res.complete = true;
                    return res;
                }
            }
        }
    }
    res.complete = true;
    return res;
}

ParsimonyResult decide_parsimony(const Simulator& a, const Simulator& b, const TccInstance& inst, const SearchOptions& opt) {
    ParsimonyResult res;
    if (a == b) {
        res.kind = ParsimonyKind::found;
        res.proof = "identity";
        res.morphism = identity_morphism(a, inst);
        return res;
    }
    auto generic = [&](ParsimonyResult& out) {
        try {
            MorphismSearch ms = search_morphism(a, b, inst, opt);
            out.candidates = ms.candidates;
            if (ms.morphism) {
                out.kind = ParsimonyKind::found;
                out.proof = "exhaustive";
                out.morphism = ms.morphism;
            } else {
                out.kind = ParsimonyKind::none_exists;
                out.proof = "exhaustive";
            }
        } catch (const Error& e) {
            if (e.code() != Errc::budget_exceeded) throw;
            out.kind = ParsimonyKind::none_found_budget;
            out.proof = "budget";
            out.notes.push_back(e.what());
        }
    };

    if (is_trivial(a, inst)) {
        try {
            auto m = morphism_from_trivial(b, inst, opt);
            if (m) {
                res.kind = ParsimonyKind::found;
                res.proof = "morph-stronger";
                res.morphism = std::move(m);
                return res;
            }
            res.notes.push_back("no reduction that is both lax and oplax admits an inverse program choice");
        } catch (const Error& e) {
            if (e.code() != Errc::budget_exceeded) throw;
            res.notes.push_back(e.what());
        }
    } else if (is_trivial(b, inst)) {
        bool universal = find_universality_witness(a, inst, opt).witness.has_value();
        if (!universal) {
            res.notes.push_back("source simulator is not universal; compression does not apply");
        } else {
            res.lax_implies_oplax = every_lax_reduction_is_oplax(a, inst);
            try {
                res.compressed = is_compressed(a, inst, opt);
            } catch (const Error& e) {
                if (e.code() != Errc::budget_exceeded) throw;
                res.notes.push_back(e.what());
            }
            if (*res.lax_implies_oplax && res.compressed && res.compressed->compressed) {
                res.kind = ParsimonyKind::none_exists;
                res.proof = "s2id";
                ParsimonyResult cross;
                generic(cross);
                if (cross.kind != ParsimonyKind::none_found_budget) {
                    res.exhaustive_agrees = cross.kind == ParsimonyKind::none_exists;
                    ensure(*res.exhaustive_agrees, "compression certificate contradicted by an explicit morphism");
                }
                res.candidates = cross.candidates;
                return res;
            }
            if (!*res.lax_implies_oplax) res.notes.push_back("hypothesis fails: some lax reduction is not oplax");
            if (res.compressed && !res.compressed->compressed) res.notes.push_back("simulator is not compressed");
        }
    }
    generic(res);
    return res;
}

}  // namespace univsim
