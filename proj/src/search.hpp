#pragma once

#include "error.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace univsim {

enum class SearchSpace { functional, all };

struct SearchOptions {
    std::uint64_t max_candidates = 1000000;
    SearchSpace space = SearchSpace::functional;
};

const char* space_name(SearchSpace s);

// Saturating product for search-space sizes.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

inline void require_budget(std::uint64_t needed, const SearchOptions& opt, const std::string& what) {
    if (needed > opt.max_candidates)
        fail(Errc::budget_exceeded, what + ": " + std::to_string(needed) + " candidates exceed budget " +
                                        std::to_string(opt.max_candidates));
}

// Mixed-radix counter over per-position option lists; used by every exhaustive enumeration.
class Odometer {
public:
    explicit Odometer(std::vector<std::size_t> radix) : radix_(std::move(radix)), digit_(radix_.size(), 0) {
        for (auto r : radix_)
            if (r == 0) done_ = true;
    }
    bool done() const { return done_; }
    const std::vector<std::size_t>& digits() const { return digit_; }
    void next() {
        // last position varies fastest, so iteration is lexicographic
        for (std::size_t k = digit_.size(); k-- > 0;) {
            if (++digit_[k] < radix_[k]) return;
            digit_[k] = 0;
        }
        done_ = true;
    }

private:
    std::vector<std::size_t> radix_;
    std::vector<std::size_t> digit_;
    bool done_ = false;
};

}  // namespace univsim
