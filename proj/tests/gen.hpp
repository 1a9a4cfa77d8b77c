#pragma once

// Random instances and simulators for property tests.

#include "simulator.hpp"
#include "tcfunctor.hpp"
#include "support.hpp"
#include "tcc.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace testkit {

using univsim::Simulator;
using univsim::TccInstance;

inline TccInstance random_tcc(std::mt19937& rng, bool total_eval, std::size_t max_t = 3, std::size_t max_c = 3) {
    std::uniform_int_distribution<std::size_t> st(1, max_t), sc(1, max_c), sb(1, 4);
    FinSet T = named_set("T", st(rng), "t"), C = named_set("C", sc(rng), "c"), B = named_set("B", sb(rng), "b");
    FinSet TC = FinSet::product(T, C);
    FinRel ev = total_eval ? random_total_fn(rng, TC, B) : random_partial_fn(rng, TC, B);
    return TccInstance::make("rnd", T, C, B, ev, preorder_from(B, random_preorder_geq(rng, B.size())));
}

// Partial compiler; every defined program gets a nonempty context row, relational with some probability.
inline Simulator random_simulator(std::mt19937& rng, const TccInstance& inst, std::size_t max_p = 3,
                                  bool functional_contexts = false) {
    std::uniform_int_distribution<std::size_t> sp(1, max_p);
    FinSet P = named_set("P", sp(rng), "p");
    FinRel sT = random_partial_fn(rng, P, inst.T());
    const std::size_t nc = inst.C().size();
    FinRel sC(FinSet::product(P, inst.C()), inst.C());
    std::uniform_int_distribution<std::size_t> pick(0, nc - 1);
    std::bernoulli_distribution extra(functional_contexts ? 0.0 : 0.3);
    for (std::size_t p = 0; p < P.size(); ++p) {
        if (sT.image(p) < 0) continue;
        for (std::size_t c = 0; c < nc; ++c) {
            sC.set(p * nc + c, pick(rng));
            for (std::size_t d = 0; d < nc; ++d)
                if (extra(rng)) sC.set(p * nc + c, d);
        }
    }
    return univsim::make_simulator(sT, sC, inst);
}

inline std::vector<std::size_t> shuffled(std::mt19937& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// element i of `s` becomes element pi[i] of a fresh set
inline FinSet relabeled(const FinSet& s, const std::vector<std::size_t>& pi, const std::string& id) {
    std::vector<std::string> l(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) l[pi[i]] = s.label(i) + "'";
    return FinSet::make(id, l);
}

struct Relabel {
    TccInstance target;
    univsim::TcFunctor F;
};

// copy of inst along random bijections of T, C and B, with the functor onto it
inline Relabel relabel(std::mt19937& rng, const TccInstance& inst, const std::string& tag) {
    auto pt = shuffled(rng, inst.T().size()), pc = shuffled(rng, inst.C().size()), pb = shuffled(rng, inst.B().size());
    FinSet T2 = relabeled(inst.T(), pt, "T" + tag), C2 = relabeled(inst.C(), pc, "C" + tag),
           B2 = relabeled(inst.B(), pb, "B" + tag);
    const std::size_t nc = inst.C().size();
    FinRel ev(FinSet::product(T2, C2), B2);
    for (auto [tc, b] : inst.eval().pairs()) ev.set(pt[tc / nc] * nc + pc[tc % nc], pb[b]);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto [i, j] : inst.brel().edges()) edges.emplace_back(pb[i], pb[j]);
    TccInstance dst = TccInstance::make("copy" + tag, T2, C2, B2, ev, univsim::Preorder::closure(B2, edges));
    std::vector<univsim::AtomMap> atoms{{inst.T(), T2, pt}, {inst.C(), C2, pc}, {inst.B(), B2, pb}};
    return {dst, univsim::TcFunctor("F" + tag, atoms, inst, dst)};
}

}  // namespace testkit
