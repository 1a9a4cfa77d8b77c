#include "error.hpp"
#include "finrel.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace univsim;
using namespace testkit;

TEST_SUITE("finrel") {

TEST_CASE("unit set has the single bullet element and products drop it") {
    FinSet I = FinSet::unit();
    CHECK(I.size() == 1);
    CHECK(I.label(0) == "\xE2\x80\xA2");
    FinSet A = named_set("A", 3);
    CHECK(FinSet::product(A, I) == A);
    CHECK(FinSet::product(I, A) == A);
    CHECK(FinSet::product(I, I) == I);
}

TEST_CASE("products are flat and row-major") {
    FinSet A = named_set("A", 2, "a"), B = named_set("B", 3, "b"), C = named_set("C", 2, "c");
    FinSet AB_C = FinSet::product(FinSet::product(A, B), C);
    FinSet A_BC = FinSet::product(A, FinSet::product(B, C));
    CHECK(AB_C == A_BC);
    CHECK(AB_C.size() == 12);
    CHECK(AB_C.label(0) == "(a0,b0,c0)");
    CHECK(AB_C.label(1) == "(a0,b0,c1)");
    CHECK(AB_C.join({1, 2, 1}) == 1 * 6 + 2 * 2 + 1);
    CHECK(AB_C.split(11) == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("set equality is nominal plus structural") {
    FinSet a = FinSet::make("A", {"x", "y"});
    CHECK(a == FinSet::make("A", {"x", "y"}));
    CHECK_FALSE(a == FinSet::make("B", {"x", "y"}));
    CHECK_FALSE(a == FinSet::make("A", {"y", "x"}));
    CHECK_THROWS_AS(FinSet::make("A", {"x", "x"}), Error);
    CHECK_THROWS_AS(a.index("z"), Error);
}

TEST_CASE("compose: single chain, identity law, every witness") {
    FinSet A = FinSet::make("A", {"a"}), X = FinSet::make("X", {"x1", "x2"}), Y = FinSet::make("Y", {"y", "y1", "y2"});
    FinRel f = FinRel::from_pairs(A, X, {{0, 0}});
    FinRel g = FinRel::from_pairs(X, Y, {{0, 0}});
    CHECK(compose(g, f) == FinRel::from_pairs(A, Y, {{0, 0}}));
    CHECK(compose(g, identity(X)) == g);

    FinRel f2 = FinRel::from_pairs(A, X, {{0, 0}, {0, 1}});
    FinRel g2 = FinRel::from_pairs(X, Y, {{1, 1}, {1, 2}});
    CHECK(compose(g2, f2) == FinRel::from_pairs(A, Y, {{0, 1}, {0, 2}}));
    CHECK_THROWS_AS(compose(f, g), Error);
}

TEST_CASE("compose and tensor agree with the pair-set oracle") {
    std::mt19937 rng(11);
    for (int k = 0; k < 300; ++k) {
        FinSet A = random_set(rng, 4, "A"), X = random_set(rng, 4, "X"), Y = random_set(rng, 4, "Y");
        FinRel f = random_rel(rng, A, X), g = random_rel(rng, X, Y);
        CHECK(to_p(compose(g, f)) == p_compose(to_p(g), to_p(f)));
        FinSet B = random_set(rng, 3, "B");
        FinRel h = random_rel(rng, B, Y);
        FinRel t = tensor(f, h);
        CHECK(to_p(t) == p_tensor(to_p(f), to_p(h)));
        CHECK(t.pair_count() == f.pair_count() * h.pair_count());
    }
}

TEST_CASE("tensor identities and annihilation") {
    FinSet A = named_set("A", 3), B = named_set("B", 2);
    CHECK(tensor(identity(A), identity(B)) == identity(FinSet::product(A, B)));
    std::mt19937 rng(2);
    FinRel f = random_rel(rng, A, B, 0.6);
    CHECK(tensor(f, empty_rel(B, A)).empty());
}

TEST_CASE("structural morphisms") {
    FinSet two = FinSet::make("2", {"0", "1"});
    CHECK(to_p(copy(two)) == p_copy(2));
    CHECK(to_p(copy(two)).p == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 3}});
    CHECK(del(FinSet::unit()) == identity(FinSet::unit()));
    FinSet A = named_set("A", 2), B = named_set("B", 3);
    FinRel sw = swap(A, B);
    CHECK(compose(swap(B, A), sw) == identity(FinSet::product(A, B)));
    CHECK(structural(Structural::identity, A) == identity(A));
    for (std::size_t n = 1; n <= 5; ++n) {
        FinSet X = named_set("X", n);
        CHECK(compose(tensor(del(X), identity(X)), copy(X)) == identity(X));
        CHECK(compose(tensor(identity(X), del(X)), copy(X)) == identity(X));
    }
}

TEST_CASE("domain: empty, total, partial, and by the diagram") {
    FinSet A = FinSet::make("A", {"a1", "a2"}), X = FinSet::make("X", {"x"});
    CHECK(domain(empty_rel(A, X)).empty());
    CHECK(domain(del(A)) == identity(A));
    CHECK(domain(FinRel::from_pairs(A, X, {{0, 0}})) == FinRel::from_pairs(A, A, {{0, 0}}));
    std::mt19937 rng(5);
    for (int k = 0; k < 200; ++k) {
        FinSet B = random_set(rng, 5, "B"), Y = random_set(rng, 4, "Y");
        FinRel f = random_rel(rng, B, Y, 0.25);
        CHECK(domain_direct(f) == domain_diagram(f));
        CHECK(classify(domain(f)).functional);
        // normalization
        CHECK(compose(f, domain(f)) == f);
    }
}

TEST_CASE("classify against both characterizations") {
    FinSet A = FinSet::make("A", {"a"}), X = FinSet::make("X", {"x1", "x2"});
    MorphismClass id = classify(identity(X));
    CHECK(id.functional);
    CHECK(id.total);
    CHECK(id.deterministic);
    MorphismClass e = classify(empty_rel(X, A));
    CHECK(e.functional);
    CHECK_FALSE(e.total);
    FinRel multi = FinRel::from_pairs(A, X, {{0, 0}, {0, 1}});
    CHECK_FALSE(classify(multi).functional);
    CHECK_FALSE(classify_diagram(multi).functional);
    CHECK_THROWS_AS(multi.image(0), Error);

    std::mt19937 rng(8);
    for (int k = 0; k < 200; ++k) {
        FinSet B = random_set(rng, 4, "B"), Y = random_set(rng, 4, "Y");
        FinRel f = random_rel(rng, B, Y, 0.3);
        PRel p = to_p(f);
        bool fun = true, tot = true;
        for (std::size_t a = 0; a < p.n; ++a) {
            std::size_t c = image_of(p, a).size();
            fun = fun && c <= 1;
            tot = tot && c >= 1;
        }
        MorphismClass m = classify(f);
        CHECK(m.functional == fun);
        CHECK(m.total == tot);
        CHECK(m.deterministic == (fun && tot));
        CHECK(m.normalized);
        CHECK(classify_diagram(f) == m);
    }
}

TEST_CASE("restriction order") {
    FinSet A = FinSet::make("A", {"a1", "a2"}), X = FinSet::make("X", {"x", "y"});
    FinRel f = FinRel::from_pairs(A, X, {{0, 0}, {1, 1}});
    CHECK(restricts_to(f, FinRel::from_pairs(A, X, {{0, 0}})));
    CHECK_FALSE(restricts_to(f, FinRel::from_pairs(A, X, {{0, 1}})));
    CHECK(restricts_to(f, empty_rel(A, X)));
    CHECK_THROWS_AS(restricts_to(f, empty_rel(X, A)), Error);

    std::mt19937 rng(13);
    for (int k = 0; k < 300; ++k) {
        FinSet B = random_set(rng, 3, "B"), Y = random_set(rng, 3, "Y");
        FinRel p = random_rel(rng, B, Y, 0.4);
        // q = p restricted to a random subset of B, r = q restricted further
        FinRel dq(B, B), dr(B, B);
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (rng() & 1) dq.set(i, i);
            if (dq.test(i, i) && (rng() & 1)) dr.set(i, i);
        }
        FinRel q = compose(p, dq), r = compose(p, dr);
        CHECK(restricts_to(p, p));
        CHECK(restricts_to(p, q));
        CHECK(restricts_to(q, r));
        CHECK(restricts_to(p, r));
        // oracle: p agrees with g on dom(g)
        FinRel g = random_rel(rng, B, Y, 0.4);
        PRel pp = to_p(p), pg = to_p(g);
        bool agree = true;
        for (std::size_t a = 0; a < B.size(); ++a)
            if (!image_of(pg, a).empty() && image_of(pg, a) != image_of(pp, a)) agree = false;
        CHECK(restricts_to(p, g) == agree);
    }
}

TEST_CASE("deterministic relations compose to deterministic relations") {
    std::mt19937 rng(21);
    for (int k = 0; k < 200; ++k) {
        FinSet A = random_set(rng, 4, "A"), X = random_set(rng, 4, "X"), Y = random_set(rng, 4, "Y");
        FinRel f = random_total_fn(rng, A, X), g = random_total_fn(rng, X, Y);
        CHECK(classify(compose(g, f)).deterministic);
    }
}

TEST_CASE("diagram evaluation is invariant under associativity and interchange") {
    std::mt19937 rng(34);
    for (int k = 0; k < 150; ++k) {
        FinSet A = random_set(rng, 3, "A"), B = random_set(rng, 3, "B"), X = random_set(rng, 3, "X"),
               Y = random_set(rng, 3, "Y"), Z = random_set(rng, 3, "Z");
        FinRel f = random_rel(rng, A, X), g = random_rel(rng, X, Y), h = random_rel(rng, Y, Z);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        FinRel u = random_rel(rng, B, Y), v = random_rel(rng, Y, Z);
        // (g (x) v) . (f (x) u) = (g . f) (x) (v . u)
        CHECK(compose(tensor(g, v), tensor(f, u)) == tensor(compose(g, f), compose(v, u)));
        // sliding along the swap
        CHECK(compose(swap(X, Y), tensor(f, u)) == compose(tensor(u, f), swap(A, B)));
        // tensor is associative on the flat representation
        CHECK(tensor(tensor(f, u), h) == tensor(f, tensor(u, h)));
    }
}

TEST_CASE("support: identity, empty, union of images, factorization") {
    FinSet A = named_set("A", 3);
    CHECK(support(identity(A)).set.labels() == A.labels());
    CHECK(support(empty_rel(A, A)).set.size() == 0);
    FinSet S = FinSet::make("S", {"a", "b"}), X = FinSet::make("X", {"x1", "x2"});
    Support s = support(FinRel::from_pairs(S, X, {{0, 0}, {1, 0}}));
    CHECK(s.set.labels() == std::vector<std::string>{"x1"});
    CHECK(classify(s.inclusion).deterministic);

    std::mt19937 rng(55);
    FinSet W = FinSet::make("W", {"0", "1"}), Y = FinSet::make("Y", {"0", "1"});
    for (int k = 0; k < 100; ++k) {
        FinRel f = random_rel(rng, A, X, 0.3);
        FinRel h = random_rel(rng, FinSet::product(W, X), Y, 0.5);
        FinRel h2 = random_rel(rng, FinSet::product(W, X), Y, 0.5);
        CHECK(support_factorization_holds(f, h, h2));
    }
}

TEST_CASE("states and hashes") {
    FinSet A = named_set("A", 3);
    auto st = functional_states(A);
    REQUIRE(st.size() == 4);
    CHECK(st[0].empty());
    CHECK(st[2] == point(A, 1));
    CHECK(hash_of(identity(A)) == hash_of(identity(named_set("A", 3))));
    CHECK(hash_of(identity(A)) != hash_of(empty_rel(A, A)));
}

}  // TEST_SUITE
