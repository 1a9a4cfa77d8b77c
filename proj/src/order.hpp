#pragma once

#include "finrel.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace univsim {

// geq(i, j) means element i is above element j.
class Preorder {
public:
    Preorder() = default;
    static Preorder closure(const FinSet& carrier, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
    static Preorder equality(const FinSet& carrier);

    const FinSet& carrier() const { return carrier_; }
    bool geq(std::size_t i, std::size_t j) const { return up_[j].test(i); }
    const Bits& above(std::size_t j) const { return up_[j]; }  // {i | i >= j}
    const Bits& below(std::size_t i) const { return down_[i]; }  // {j | i >= j}
    bool is_equality() const;
    // Non-reflexive related pairs in carrier order; reloading them gives the same preorder.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    friend bool operator==(const Preorder& a, const Preorder& b) {
        return a.carrier_ == b.carrier_ && a.up_ == b.up_;
    }

private:
    FinSet carrier_;
    std::vector<Bits> up_, down_;
};

enum class MapKind { enhancement, degradation };

struct MapWitness {
    MapKind kind;
    std::vector<std::pair<std::size_t, std::size_t>> assignment;
};

// enhancement: a map U -> V moving every u up; degradation: a map V -> U moving every v down.
std::optional<MapWitness> exists_map(MapKind kind, const Bits& u, const Bits& v, const Preorder& p);
bool has_enhancement(const Bits& u, const Bits& v, const Preorder& p);
bool has_degradation(const Bits& v, const Bits& u, const Preorder& p);

// Row condition of imitation: nu_a imitates mu_a.
bool imitates_row(const Bits& nu, const Bits& mu, const Preorder& p);
bool imitates(const FinRel& nu, const FinRel& mu, const Preorder& p);

}  // namespace univsim
