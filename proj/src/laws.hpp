#pragma once

#include "search.hpp"
#include "tcc.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace univsim {

struct LawTally {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::uint64_t antecedents = 0;  // implications whose premise held
    std::vector<std::string> examples;
    bool informational = false;  // reported, but failures do not fail the report
};

struct LawReport {
    std::vector<LawTally> laws;
    std::vector<std::string> skipped;  // exhaustive sweeps that did not fit the budget
    bool ok() const;
    std::uint64_t checks() const;
    std::uint64_t failures() const;
    LawTally& tally(const std::string& name);
    void merge(const LawReport& other, const std::string& prefix = "");
};

FinRel random_relation(const FinSet& a, const FinSet& x, std::mt19937& rng, double density = 0.35);
FinRel random_function(const FinSet& a, const FinSet& x, std::mt19937& rng, bool total = false);

// Comonoid laws, copy/delete against products, delete on I, normalization and functional domains.
LawReport gs_monoidal_laws(const std::vector<FinSet>& pool, std::mt19937& rng, std::size_t rounds);

// Precomposition stability, restriction implies imitation, the equality characterization,
// scalar dominance and the preorder axioms of the ambient relation.  Precomposition is checked
// along partial functions; along arbitrary relations it can fail and is tallied as informational.
LawReport instance_laws(const TccInstance& inst, std::mt19937& rng, std::size_t rounds,
                        const SearchOptions& opt = {});

struct EqualityCharacterization {
    bool exhaustive = false;
    bool order_is_equality_on_image = false;
    std::uint64_t divergences = 0;
    std::uint64_t pairs = 0;
};
// Compares ambient imitation with restriction of behaviors over every pair of realizable behavior rows.
EqualityCharacterization equality_characterization(const TccInstance& inst, const SearchOptions& opt = {});

}  // namespace univsim
