#include "order.hpp"

#include "error.hpp"

namespace univsim {

Preorder Preorder::closure(const FinSet& carrier, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    const std::size_t n = carrier.size();
    Preorder p;
    p.carrier_ = carrier;
    // down_[i] = {j | i >= j}
    p.down_.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) p.down_[i].set(i);
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) fail(Errc::unknown_element, "preorder edge outside carrier " + carrier.id());
        p.down_[i].set(j);
    }
    // Warshall on rows
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (p.down_[i].test(k)) p.down_[i] |= p.down_[k];
    p.up_.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
        for (auto j = p.down_[i].find_first(); j != Bits::npos; j = p.down_[i].find_next(j)) p.up_[j].set(i);
    return p;
}

Preorder Preorder::equality(const FinSet& carrier) { return closure(carrier, {}); }

bool Preorder::is_equality() const {
    for (std::size_t i = 0; i < down_.size(); ++i)
        if (down_[i].count() != 1) return false;
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Preorder::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < down_.size(); ++i)
        for (auto j = down_[i].find_first(); j != Bits::npos; j = down_[i].find_next(j))
            if (i != j) out.emplace_back(i, j);
    return out;
}

bool has_enhancement(const Bits& u, const Bits& v, const Preorder& p) {
    for (auto x = u.find_first(); x != Bits::npos; x = u.find_next(x))
        if (!p.above(x).intersects(v)) return false;
    return true;
}

bool has_degradation(const Bits& v, const Bits& u, const Preorder& p) {
    for (auto y = v.find_first(); y != Bits::npos; y = v.find_next(y))
        if (!p.below(y).intersects(u)) return false;
    return true;
}

std::optional<MapWitness> exists_map(MapKind kind, const Bits& u, const Bits& v, const Preorder& p) {
    MapWitness w{kind, {}};
    if (kind == MapKind::enhancement) {
        for (auto x = u.find_first(); x != Bits::npos; x = u.find_next(x)) {
            Bits cand = p.above(x) & v;
            auto y = cand.find_first();
            if (y == Bits::npos) return std::nullopt;
            w.assignment.emplace_back(x, y);
        }
    } else {
        for (auto y = v.find_first(); y != Bits::npos; y = v.find_next(y)) {
            Bits cand = p.below(y) & u;
            auto x = cand.find_first();
            if (x == Bits::npos) return std::nullopt;
            w.assignment.emplace_back(y, x);
        }
    }
    return w;
}

bool imitates_row(const Bits& nu, const Bits& mu, const Preorder& p) {
    if (mu.none()) return true;
    return has_enhancement(mu, nu, p) && has_degradation(nu, mu, p);
}

bool imitates(const FinRel& nu, const FinRel& mu, const Preorder& p) {
    if (!(nu.dom() == mu.dom()) || !(nu.cod() == mu.cod()))
        fail(Errc::type_mismatch, "imitates: relations have different types");
    if (!(nu.cod() == p.carrier())) fail(Errc::type_mismatch, "imitates: codomain is not the preorder carrier");
    for (std::size_t a = 0; a < mu.dom().size(); ++a)
        if (!imitates_row(nu.row(a), mu.row(a), p)) return false;
    return true;
}

}  // namespace univsim
