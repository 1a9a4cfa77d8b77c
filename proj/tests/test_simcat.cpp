#include "catalog.hpp"
#include "error.hpp"
#include "gen.hpp"
#include "simcat.hpp"

#include <doctest.h>

using namespace univsim;
using namespace testkit;

namespace {

// random raw P*T*C -> T*C, kept only when every processing condition holds
std::optional<Processing> random_processing(std::mt19937& rng, const FinSet& P, const Simulator& s,
                                            const TccInstance& inst, int tries = 40) {
    FinSet PT = FinSet::product(P, inst.T());
    const std::size_t nc = inst.C().size();
    std::bernoulli_distribution keep(0.7), extra(0.2);
    std::uniform_int_distribution<std::size_t> pc(0, nc - 1);
    for (int k = 0; k < tries; ++k) {
        FinRel qT(PT, inst.T());
        FinRel qC(FinSet::product(PT, inst.C()), inst.C());
        for (std::size_t pt = 0; pt < PT.size(); ++pt) {
            std::size_t t = pt % inst.T().size();
            if (!keep(rng)) continue;
            // mostly stay put; sometimes jump
            qT.set(pt, extra(rng) ? rng() % inst.T().size() : t);
            for (std::size_t c = 0; c < nc; ++c) {
                qC.set(pt * nc + c, keep(rng) ? c : pc(rng));
                if (extra(rng)) qC.set(pt * nc + c, pc(rng));
            }
        }
        ProcessingCheck chk = check_processing(assemble_processing(qT, qC, inst), s, inst);
        if (chk.ok()) return *chk.processing;
    }
    return std::nullopt;
}

std::optional<SimMorphism> random_morphism(std::mt19937& rng, const Simulator& a, const TccInstance& inst,
                                           std::size_t max_p = 2) {
    FinSet P2 = named_set("Q" + std::to_string(rng() % 1000), 1 + rng() % max_p, "q");
    FinRel r = random_partial_fn(rng, P2, a.P());
    Simulator pulled = pulled_simulator(a, r, inst);
    auto q = random_processing(rng, P2, pulled, inst);
    if (!q) return std::nullopt;
    return make_morphism(r, *q, a, inst);
}

const Simulator& sim_named(const Preset& p, const std::string& suffix) {
    for (const auto& [s, sim] : p.sims)
        if (s == suffix) return sim;
    FAIL("missing simulator " << suffix);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("simcat") {

TEST_CASE("processing construction checks the domain condition") {
    std::mt19937 rng(3);
    TccInstance inst = random_tcc(rng, true);
    FinSet P = named_set("P", 2, "p");
    Processing id = identity_processing(P, inst);
    CHECK(processing_is_p_independent(id, inst));
    FinRel qC = id.qC;
    qC.set_row(0, Bits(inst.C().size()));
    CHECK_THROWS_AS(make_processing(id.qT, qC, inst), Error);
    FinRel multi = id.qT;
    if (inst.T().size() > 1) {
        multi.set(0, 1);
        CHECK_THROWS_AS(make_processing(multi, id.qC, inst), Error);
    }
}

TEST_CASE("the identity processing fixes every simulator") {
    std::mt19937 rng(5);
    for (int k = 0; k < 100; ++k) {
        TccInstance inst = random_tcc(rng, k % 2 == 0);
        Simulator s = random_simulator(rng, inst);
        Processing id = identity_processing(s.P(), inst);
        ProcessingCheck chk = check_processing(id.q, s, inst);
        REQUIRE(chk.ok());
        CHECK(*chk.result == s);
        CHECK(apply_processing(id, s, inst) == s);
    }
}

TEST_CASE("each processing condition is reported separately") {
    // one target, two contexts, behaviors lo < hi
    FinSet T = FinSet::make("T", {"t"}), C = FinSet::make("C", {"lo", "hi"}), B = FinSet::make("B", {"lo", "hi"});
    TccInstance inst = TccInstance::make("k", T, C, B, FinRel::from_function(FinSet::product(T, C), B, {0, 1}),
                                         Preorder::closure(B, {{1, 0}}));
    Simulator s = trivial_simulator(inst);
    FinSet PTC = FinSet::product({s.P(), T, C});
    // raising lo to hi breaks weakness only
    FinRel up = FinRel::from_function(PTC, inst.TC(), {1, 1});
    ProcessingCheck a = check_processing(up, s, inst);
    CHECK(a.split_ok);
    CHECK(a.domain_ok);
    CHECK_FALSE(a.weak_ok);
    CHECK_FALSE(a.result);
    // lowering is fine
    ProcessingCheck b = check_processing(FinRel::from_function(PTC, inst.TC(), {0, 0}), s, inst);
    CHECK(b.ok());
    // defined in one context only
    ProcessingCheck c = check_processing(FinRel::from_function(PTC, inst.TC(), {0, -1}), s, inst);
    CHECK(c.split_ok);
    CHECK_FALSE(c.domain_ok);
    CHECK(c.violations.size() == 1);
}

TEST_CASE("split failures are detected") {
    FinSet T = FinSet::make("T", {"t", "u"}), C = FinSet::make("C", {"c", "d"}), B = FinSet::make("B", {"b"});
    TccInstance inst = TccInstance::make("k", T, C, B, FinRel(FinSet::product(T, C), B), Preorder::equality(B));
    Simulator s = trivial_simulator(inst);
    FinSet PTC = FinSet::product({s.P(), T, C});
    // the target part depends on the context: (p,t,c) -> (t,c) but (p,t,d) -> (u,d)
    std::vector<long> img(PTC.size(), -1);
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t t = 0; t < 2; ++t) {
            img[(p * 2 + t) * 2 + 0] = static_cast<long>(t * 2 + 0);
            img[(p * 2 + t) * 2 + 1] = static_cast<long>((1 - t) * 2 + 1);
        }
    ProcessingCheck chk = check_processing(FinRel::from_function(PTC, inst.TC(), img), s, inst);
    CHECK_FALSE(chk.split_ok);
    CHECK_FALSE(chk.ok());
}

TEST_CASE("morphisms form a category") {
    std::mt19937 rng(7);
    int chains = 0;
    for (int k = 0; k < 300 && chains < 60; ++k) {
        TccInstance inst = random_tcc(rng, k % 2 == 0, 2, 2);
        Simulator a = random_simulator(rng, inst, 2);
        auto m1 = random_morphism(rng, a, inst);
        if (!m1) continue;
        auto m2 = random_morphism(rng, m1->target, inst);
        if (!m2) continue;
        auto m3 = random_morphism(rng, m2->target, inst);
        if (!m3) continue;
        ++chains;
        CHECK(verify_morphism(*m1, inst));
        SimMorphism ida = identity_morphism(a, inst);
        SimMorphism left = compose_morphisms(*m1, ida, inst);
        SimMorphism right = compose_morphisms(identity_morphism(m1->target, inst), *m1, inst);
        CHECK(left.r == m1->r);
        CHECK(left.target == m1->target);
        CHECK(right.r == m1->r);
        CHECK(right.target == m1->target);
        SimMorphism x = compose_morphisms(*m3, compose_morphisms(*m2, *m1, inst), inst);
        SimMorphism y = compose_morphisms(compose_morphisms(*m3, *m2, inst), *m1, inst);
        CHECK(x.r == y.r);
        CHECK(x.target == y.target);
        CHECK(x.target == m3->target);
        CHECK(verify_morphism(x, inst));
    }
    CHECK(chains >= 20);
}

TEST_CASE("every morphism yields a lax reduction") {
    std::mt19937 rng(11);
    int seen = 0;
    for (int k = 0; k < 300; ++k) {
        TccInstance inst = random_tcc(rng, k % 2 == 0);
        Simulator a = random_simulator(rng, inst);
        auto m = random_morphism(rng, a, inst, 3);
        if (!m) continue;
        ++seen;
        Reduction red = morphism_to_lax_reduction(*m, inst);
        CHECK(red.flavor == Flavor::lax);
        CHECK(check_reduction(red.r, Flavor::lax, m->source, m->target, inst));
    }
    CHECK(seen > 50);
}

TEST_CASE("lax-implies-oplax agrees with enumeration") {
    std::mt19937 rng(13);
    for (int k = 0; k < 150; ++k) {
        TccInstance inst = random_tcc(rng, k % 2 == 0, 3, 2);
        Simulator s = random_simulator(rng, inst, 2);
        Simulator triv = trivial_simulator(inst);
        bool every = true;
        std::vector<long> img(inst.T().size());
        for (Odometer od(std::vector<std::size_t>(img.size(), s.P().size() + 1)); !od.done(); od.next()) {
            for (std::size_t t = 0; t < img.size(); ++t) img[t] = static_cast<long>(od.digits()[t]) - 1;
            FinRel r = FinRel::from_function(inst.T(), s.P(), img);
            if (check_reduction(r, Flavor::lax, s, triv, inst) && !check_reduction(r, Flavor::oplax, s, triv, inst))
                every = false;
        }
        CHECK(every == every_lax_reduction_is_oplax(s, inst));
    }
}

TEST_CASE("synthesized morphism search agrees with full enumeration on tiny instances") {
    std::mt19937 rng(17);
    int found = 0, none = 0;
    for (int k = 0; k < 120; ++k) {
        TccInstance inst = random_tcc(rng, k % 2 == 0, 2, k % 3 == 0 ? 2 : 1);
        Simulator a = random_simulator(rng, inst, 2);
        Simulator b = k % 2 ? random_simulator(rng, inst, 1) : trivial_simulator(inst);
        if (b.P().size() * inst.T().size() * inst.C().size() * inst.C().size() > 8) continue;
        MorphismSearch fast = search_morphism(a, b, inst), slow = search_morphism_naive(a, b, inst);
        CHECK(fast.morphism.has_value() == slow.morphism.has_value());
        if (fast.morphism) {
            ++found;
            CHECK(fast.morphism->target == b);
            CHECK(verify_morphism(*fast.morphism, inst));
        } else {
            ++none;
        }
    }
    CHECK(found > 0);
    CHECK(none > 0);
}

TEST_CASE("parsimony between the trivial and a singleton universal simulator") {
    Preset p = lookup_preset("lk", 2, false);
    const Simulator& su = sim_named(p, "su");
    Simulator triv = trivial_simulator(p.inst);

    ParsimonyResult up = decide_parsimony(triv, su, p.inst);
    CHECK(up.kind == ParsimonyKind::found);
    CHECK(up.proof == "morph-stronger");
    REQUIRE(up.morphism);
    CHECK(up.morphism->target == su);
    CHECK(verify_morphism(*up.morphism, p.inst));

    ParsimonyResult down = decide_parsimony(su, triv, p.inst);
    CHECK(down.kind == ParsimonyKind::none_exists);
    CHECK(down.proof == "s2id");
    CHECK(down.lax_implies_oplax.value_or(false));
    REQUIRE(down.compressed);
    CHECK(down.compressed->compressed);
    CHECK(down.exhaustive_agrees.value_or(false));
    for (const auto& cert : down.compressed->certificates) {
        CHECK(compose(su.sT(), compose(cert.r, cert.t)) == compose(su.sT(), compose(cert.r, cert.g)));
        SearchOptions all;
        all.space = SearchSpace::all;
        CHECK(context_reduces(cert.g, cert.t, p.inst, Flavor::oplax, all, true).verdict != Verdict::holds);
    }

    ParsimonyResult self = decide_parsimony(su, su, p.inst);
    CHECK(self.proof == "identity");
}

TEST_CASE("the trivial simulator is not compressed") {
    Preset p = lookup_preset("lk", 2, false);
    CompressedResult c = is_compressed(trivial_simulator(p.inst), p.inst);
    CHECK_FALSE(c.compressed);
    CHECK(c.failing_reduction);
}

TEST_CASE("compression needs a universal simulator") {
    Preset p = nogo_spin_preset("ns", 2, 1);
    try {
        is_compressed(sim_named(p, "s"), p.inst);
        FAIL("expected not_universal");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_universal);
    }
}

TEST_CASE("parsimony reports a budget overrun instead of guessing") {
    Preset p = lookup_preset("lk", 2, true);
    std::mt19937 rng(19);
    Simulator other = random_simulator(rng, p.inst, 3);
    SearchOptions tiny;
    tiny.max_candidates = 2;
    ParsimonyResult r = decide_parsimony(other, other, p.inst, tiny);
    CHECK(r.proof == "identity");
    ParsimonyResult r2 = decide_parsimony(random_simulator(rng, p.inst, 3), random_simulator(rng, p.inst, 3), p.inst, tiny);
    if (r2.proof != "identity") CHECK(r2.kind == ParsimonyKind::none_found_budget);
}

}  // TEST_SUITE
