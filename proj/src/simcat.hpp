#pragma once

#include "simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace univsim {

// q = (qT : P*T -> T, qC : P*T*C -> C), assembled into P*T*C -> T*C.
struct Processing {
    FinSet P;
    FinRel qT, qC, q;
};

FinRel assemble_processing(const FinRel& qT, const FinRel& qC, const TccInstance& inst);
Processing make_processing(FinRel qT, FinRel qC, const TccInstance& inst);  // throws on split/domain violations
Processing identity_processing(const FinSet& P, const TccInstance& inst);
// P-independent processing from maps T -> T and T*C -> C
Processing constant_processing(const FinSet& P, const FinRel& kT, const FinRel& kC, const TccInstance& inst);

struct ProcessingCheck {
    bool split_ok = false;
    bool domain_ok = false;
    bool weak_ok = false;
    std::vector<std::string> violations;
    std::optional<Processing> processing;  // recovered split when split_ok
    std::optional<Simulator> result;       // q applied to s, when all conditions hold
    bool ok() const { return split_ok && domain_ok && weak_ok; }
};

// q is given raw (P*T*C -> T*C); every condition is checked and reported on its own.
ProcessingCheck check_processing(const FinRel& q, const Simulator& s, const TccInstance& inst);
Simulator apply_processing(const Processing& q, const Simulator& s, const TccInstance& inst);

struct SimMorphism {
    FinRel r;  // programs of target -> programs of source
    Processing q;
    Simulator source, target;
};

Simulator pulled_simulator(const Simulator& s, const FinRel& r, const TccInstance& inst);
SimMorphism make_morphism(const FinRel& r, const Processing& q, const Simulator& source, const TccInstance& inst);
bool verify_morphism(const SimMorphism& m, const TccInstance& inst);
SimMorphism identity_morphism(const Simulator& s, const TccInstance& inst);
SimMorphism compose_morphisms(const SimMorphism& m2, const SimMorphism& m1, const TccInstance& inst);
Reduction morphism_to_lax_reduction(const SimMorphism& m, const TccInstance& inst);
bool processing_is_p_independent(const Processing& q, const TccInstance& inst);

struct CompressionCert {
    FinRel r;  // a lax reduction to the trivial simulator
    FinRel t, g;  // functional states compiled alike under r, g not oplax-context-reducing to t
};

struct CompressedResult {
    bool compressed = false;
    std::uint64_t reductions = 0;
    std::vector<CompressionCert> certificates;
    std::optional<FinRel> failing_reduction;
};

// The separating context witness is required to be total; see the notes in the README.
CompressedResult is_compressed(const Simulator& s, const TccInstance& inst, const SearchOptions& opt = {});
// True when every lax reduction to the trivial simulator is also oplax.
bool every_lax_reduction_is_oplax(const Simulator& s, const TccInstance& inst);

enum class ParsimonyKind { found, none_exists, none_found_budget };
const char* parsimony_name(ParsimonyKind k);

struct ParsimonyResult {
    ParsimonyKind kind = ParsimonyKind::none_found_budget;
    std::string proof;  // identity | morph-stronger | s2id | exhaustive | budget
    std::optional<SimMorphism> morphism;
    std::optional<CompressedResult> compressed;
    std::optional<bool> lax_implies_oplax;
    std::optional<bool> exhaustive_agrees;
    std::vector<std::string> notes;
    std::uint64_t candidates = 0;
};

struct MorphismSearch {
    std::optional<SimMorphism> morphism;
    bool complete = false;
    std::uint64_t candidates = 0;
};

// Reduction and inverse choice of the construction for a morphism from the trivial simulator.
std::optional<SimMorphism> morphism_from_trivial(const Simulator& b, const TccInstance& inst,
                                                 const SearchOptions& opt = {});
// Enumerates r and synthesizes the maximal processing for it.
MorphismSearch search_morphism(const Simulator& a, const Simulator& b, const TccInstance& inst,
                               const SearchOptions& opt = {});
// Enumerates r and every processing; tiny instances only.
MorphismSearch search_morphism_naive(const Simulator& a, const Simulator& b, const TccInstance& inst,
                                     const SearchOptions& opt = {});
std::optional<Processing> synthesize_processing(const FinRel& r, const Simulator& a, const Simulator& b,
                                                const TccInstance& inst);

ParsimonyResult decide_parsimony(const Simulator& a, const Simulator& b, const TccInstance& inst,
                                 const SearchOptions& opt = {});

}  // namespace univsim
