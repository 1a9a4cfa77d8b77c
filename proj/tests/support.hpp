#pragma once

// Shared generators and brute-force oracles for the test binaries.  The oracles work on plain
// pair sets and index arithmetic and never call the engine's algebra.

#include "finrel.hpp"
#include "order.hpp"

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testkit {

using univsim::Bits;
using univsim::FinRel;
using univsim::FinSet;

inline FinSet named_set(const std::string& id, std::size_t n, const std::string& prefix = "e") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return FinSet::make(id, labels);
}

inline FinSet random_set(std::mt19937& rng, std::size_t max_size, const std::string& id) {
    std::uniform_int_distribution<std::size_t> d(1, max_size);
    return named_set(id, d(rng), id);
}

inline FinRel random_rel(std::mt19937& rng, const FinSet& a, const FinSet& x, double density = 0.35) {
    std::bernoulli_distribution coin(density);
    FinRel f(a, x);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (coin(rng)) f.set(i, j);
    return f;
}

// each element undefined with probability 1/(|x|+1)
inline FinRel random_partial_fn(std::mt19937& rng, const FinSet& a, const FinSet& x) {
    std::uniform_int_distribution<long> d(-1, static_cast<long>(x.size()) - 1);
    std::vector<long> img(a.size());
    for (auto& v : img) v = x.size() ? d(rng) : -1;
    return FinRel::from_function(a, x, img);
}

inline FinRel random_total_fn(std::mt19937& rng, const FinSet& a, const FinSet& x) {
    std::uniform_int_distribution<long> d(0, static_cast<long>(x.size()) - 1);
    std::vector<long> img(a.size());
    for (auto& v : img) v = d(rng);
    return FinRel::from_function(a, x, img);
}

// ---- pair-set oracle ----

struct PRel {
    std::size_t n = 0, m = 0;
    std::set<std::pair<std::size_t, std::size_t>> p;
    friend bool operator==(const PRel&, const PRel&) = default;
};

inline PRel to_p(const FinRel& f) {
    PRel r{f.dom().size(), f.cod().size(), {}};
    for (std::size_t a = 0; a < r.n; ++a)
        for (std::size_t x = 0; x < r.m; ++x)
            if (f.test(a, x)) r.p.insert({a, x});
    return r;
}

inline PRel p_compose(const PRel& g, const PRel& f) {
    PRel r{f.n, g.m, {}};
    for (auto [a, x] : f.p)
        for (auto [x2, y] : g.p)
            if (x == x2) r.p.insert({a, y});
    return r;
}

// row-major: (a, b) -> a * |B| + b
inline PRel p_tensor(const PRel& f, const PRel& g) {
    PRel r{f.n * g.n, f.m * g.m, {}};
    for (auto [a, x] : f.p)
        for (auto [b, y] : g.p) r.p.insert({a * g.n + b, x * g.m + y});
    return r;
}

inline PRel p_identity(std::size_t n) {
    PRel r{n, n, {}};
    for (std::size_t i = 0; i < n; ++i) r.p.insert({i, i});
    return r;
}

inline PRel p_copy(std::size_t n) {
    PRel r{n, n * n, {}};
    for (std::size_t i = 0; i < n; ++i) r.p.insert({i, i * n + i});
    return r;
}

inline PRel p_delete(std::size_t n) {
    PRel r{n, 1, {}};
    for (std::size_t i = 0; i < n; ++i) r.p.insert({i, 0});
    return r;
}

inline std::set<std::size_t> image_of(const PRel& f, std::size_t a) {
    std::set<std::size_t> s;
    for (auto [x, y] : f.p)
        if (x == a) s.insert(y);
    return s;
}

// preorder given as an explicit geq matrix
using Geq = std::vector<std::vector<bool>>;

inline Geq geq_of(const univsim::Preorder& p) {
    std::size_t n = p.carrier().size();
    Geq g(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = p.geq(i, j);
    return g;
}

// imitation by the definition: for a in dom(mu), every m in mu(a) has some n in nu(a) with n >= m,
// and every n in nu(a) has some m in mu(a) with n >= m
inline bool imitates_oracle(const PRel& nu, const PRel& mu, const Geq& geq) {
    for (std::size_t a = 0; a < mu.n; ++a) {
        auto M = image_of(mu, a);
        if (M.empty()) continue;
        auto N = image_of(nu, a);
        for (auto m : M)
            if (std::none_of(N.begin(), N.end(), [&](std::size_t n) { return geq[n][m]; })) return false;
        for (auto n : N)
            if (std::none_of(M.begin(), M.end(), [&](std::size_t m) { return geq[n][m]; })) return false;
    }
    return true;
}

inline Geq random_preorder_geq(std::mt19937& rng, std::size_t n, double density = 0.3) {
    std::bernoulli_distribution coin(density);
    Geq g(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = i == j || coin(rng);
    // Warshall
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g[i][k] && g[k][j]) g[i][j] = true;
    return g;
}

inline univsim::Preorder preorder_from(const FinSet& carrier, const Geq& g) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (i != j && g[i][j]) edges.emplace_back(i, j);
    return univsim::Preorder::closure(carrier, edges);
}

inline Bits bits_of(std::size_t n, std::uint64_t mask) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) b.set(i);
    return b;
}

}  // namespace testkit
