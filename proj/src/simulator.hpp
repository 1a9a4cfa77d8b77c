#pragma once

#include "finrel.hpp"
#include "rational.hpp"
#include "search.hpp"
#include "tcc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace univsim {

class Simulator {
public:
    Simulator() = default;

    const FinSet& P() const { return P_; }
    const FinRel& sT() const { return sT_; }  // P -> T
    const FinRel& sC() const { return sC_; }  // P*C -> C
    const FinRel& s() const { return s_; }    // P*C -> T*C
    long compile(std::size_t p) const { return compiled_[p]; }

    friend bool operator==(const Simulator& a, const Simulator& b) {
        return a.P_ == b.P_ && a.sT_ == b.sT_ && a.sC_ == b.sC_;
    }

private:
    friend Simulator make_simulator(FinRel sT, FinRel sC, const TccInstance& inst);
    FinSet P_;
    FinRel sT_, sC_, s_;
    std::vector<long> compiled_;
};

FinRel assemble(const FinRel& sT, const FinRel& sC, const TccInstance& inst);
Simulator make_simulator(FinRel sT, FinRel sC, const TccInstance& inst);
Simulator canonicalize(const FinRel& raw, const TccInstance& inst);
Simulator trivial_simulator(const TccInstance& inst);
bool is_trivial(const Simulator& s, const TccInstance& inst);
std::optional<FinRel> is_singleton(const Simulator& s);

enum class Flavor { strict, lax, oplax };
const char* flavor_name(Flavor f);

struct Reduction {
    FinRel r;
    Flavor flavor = Flavor::lax;
};

// s . (r (x) id_C)
FinRel pull_back(const Simulator& s, const FinRel& r, const TccInstance& inst);
bool check_reduction(const FinRel& r, Flavor flavor, const Simulator& s, const Simulator& s2, const TccInstance& inst);

// Per target t, the options for r(t) (-1 for undefined, else a program) that make the row
// conditions of a lax or oplax reduction to the trivial simulator hold.  Imitation is checked
// row by row, so a map r is a lax (oplax) reduction iff every r(t) is among these options.
std::vector<std::vector<long>> reduction_options(const Simulator& s, const TccInstance& inst, Flavor flavor);

struct WitnessSearch {
    std::optional<FinRel> witness;
    std::uint64_t candidates = 0;
    std::uint64_t space = 0;  // (|P|+1)^|T|
};

// First r in lexicographic order (undefined < p0 < p1 ...) with s.(r (x) id) imitating id.
WitnessSearch find_universality_witness(const Simulator& s, const TccInstance& inst, const SearchOptions& opt = {});
// Same answer by plain enumeration of every functional r; bounded by (|P|+1)^|T|.
WitnessSearch find_universality_witness_naive(const Simulator& s, const TccInstance& inst,
                                              const SearchOptions& opt = {});
FinRel function_from_digits(const FinSet& dom, const FinSet& cod, const std::vector<long>& image);

// ---- context reduction ----

enum class Verdict { holds, fails, unknown };
const char* verdict_name(Verdict v);

struct ContextResult {
    Verdict verdict = Verdict::unknown;
    SearchSpace searched = SearchSpace::functional;
    std::optional<FinRel> witness;  // A*C -> C
    std::uint64_t candidates = 0;
    bool total_witness = false;
};

// (f (x) fC) . (copy_A (x) id_C) : A*C -> T*C
FinRel context_composite(const FinRel& f, const FinRel& fC, const TccInstance& inst);
// lax: composite imitates g (x) id_C.  oplax: g (x) id_C imitates composite.
bool check_context_witness(const FinRel& f, const FinRel& g, const FinRel& fC, Flavor flavor, const TccInstance& inst);
ContextResult context_reduces(const FinRel& f, const FinRel& g, const TccInstance& inst, Flavor flavor,
                              const SearchOptions& opt = {}, bool total_witness = false);
// Plain enumeration of the witness space; exponential, for cross-checking.
ContextResult context_reduces_naive(const FinRel& f, const FinRel& g, const TccInstance& inst, Flavor flavor,
                                    const SearchOptions& opt = {}, bool total_witness = false);

std::vector<FinRel> functional_image(const FinRel& f);

struct MonotoneFn {
    std::vector<Rational> point;  // value at each point state of T
    Rational empty{0};            // value at the empty state
    Rational operator()(const FinRel& state) const;
};

struct MonotoneViolation {
    FinRel above, below;
};
std::vector<MonotoneViolation> monotonicity_violations(const MonotoneFn& phi, const TccInstance& inst,
                                                       const SearchOptions& opt = {});

struct NogoResult {
    bool not_universal = false;  // else inconclusive
    Rational sup_image{0};
    Rational sup_all{0};
    std::vector<FinRel> image;
    std::vector<MonotoneViolation> violations;
    std::optional<bool> universal;  // exhaustive witness search, when within budget
};
NogoResult nogo_check(const Simulator& s, const MonotoneFn& phi, const TccInstance& inst,
                      const SearchOptions& opt = {});

}  // namespace univsim
