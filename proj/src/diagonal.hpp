#pragma once

#include "search.hpp"
#include "simulator.hpp"
#include "tcc.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace univsim {

// Which maps f : A*C -> B the completeness quantifier ranges over.
enum class ParamDomain { functional, total, all };
const char* param_domain_name(ParamDomain d);

// Number of relations with `rows` rows into B of size nb in the given domain (saturating).
std::uint64_t map_count(std::size_t rows, std::size_t nb, ParamDomain d);
// The k-th entry of the lexicographic odometer over `digits`, one digit per row.
FinRel map_from_digits(const FinSet& dom, const FinSet& cod, const std::vector<std::size_t>& digits, ParamDomain d);
std::size_t map_radix(std::size_t nb, ParamDomain d);

struct Parametrization {
    FinSet P, C;
    FinRel F;  // P*C -> B
    struct Entry {
        FinRel f, program;
    };
    std::map<std::uint64_t, std::vector<Entry>> witnesses;  // keyed by hash of f
    std::size_t cache_limit = 4096;

    const Entry* lookup(const FinRel& f) const;
    void remember(const FinRel& f, const FinRel& program);
    std::size_t cached() const;
};

Parametrization make_parametrization(FinSet P, FinSet C, FinRel F);
Parametrization eval_parametrization(const TccInstance& inst);
Parametrization simulator_parametrization(const Simulator& s, const TccInstance& inst);

// F . (p (x) id_C) imitates f
bool check_program(const Parametrization& param, const FinRel& f, const FinRel& p, const Preorder& brel);
// First functional p : A -> P (undefined < p0 < p1 ... per element of A), found element by element.
std::optional<FinRel> find_program(const Parametrization& param, const FinSet& A, const FinRel& f, const Preorder& brel,
                                   bool total_witness = false);
// Plain enumeration of every functional A -> P.
std::optional<FinRel> find_program_naive(const Parametrization& param, const FinSet& A, const FinRel& f,
                                         const Preorder& brel, bool total_witness = false);
// Cached lookup, then search; the result is remembered.
std::optional<FinRel> program_for(Parametrization& param, const FinSet& A, const FinRel& f, const Preorder& brel,
                                  bool total_witness = false);

struct CompletenessResult {
    bool complete = false;
    std::optional<FinRel> counterexample;
    std::uint64_t maps_checked = 0;
    ParamDomain domain = ParamDomain::functional;
    bool total_witness = false;
};

CompletenessResult check_completeness(Parametrization& param, const FinSet& A, const Preorder& brel, ParamDomain d,
                                      const SearchOptions& opt = {}, bool total_witness = false);

// ---- quasi-fixed points ----

enum class StateSpace { deterministic, all };
const char* state_space_name(StateSpace s);

bool is_quasi_fixed_point(const FinRel& b, const FinRel& g, const Preorder& brel);
std::optional<FinRel> find_quasi_fixed_point(const FinRel& g, const Preorder& brel, StateSpace space);

struct LawvereResult {
    FinRel f;      // A*C -> B built from g
    FinRel c_f;    // A -> C
    FinRel point;  // A -> B
    bool verified = false;
    bool total = false;
};

// F must be parametrized over C*C.  Throws invalid_argument when the certificate has no program for f.
LawvereResult lawvere_quasi_fixed_point(Parametrization& param, const FinSet& A, const FinRel& g, const Preorder& brel,
                                        bool total_witness = false);

// Programs r . t_f for every cached witness of F0; each is re-checked against eval . s.
Parametrization transport_parametrization(const Parametrization& F0, const Simulator& s, const FinRel& r,
                                          const TccInstance& inst);

struct UnreachabilityResult {
    bool unreachable = false;
    std::optional<FinRel> map;  // C -> B with no program
    std::uint64_t maps_checked = 0;
    ParamDomain domain = ParamDomain::functional;
};
UnreachabilityResult has_unreachability(const Simulator& s, const TccInstance& inst, ParamDomain d,
                                        const SearchOptions& opt = {});

// ---- singleton constructions ----

struct RetractPair {
    FinRel sigma;  // T*C -> C
    FinRel pi;     // C -> T*C
    void validate(const TccInstance& inst) const;
};
// Exists only when T*C fits into C, i.e. |T| = 1 for nonempty C.
std::optional<RetractPair> canonical_retract(const TccInstance& inst);

struct SingletonResult {
    std::optional<FinRel> t_id, t_u;
    std::optional<Simulator> s_id, s_u;
    std::optional<FinRel> witness_id, witness_u;
    std::vector<std::string> notes;
};
// Requires B and C to carry the same labels.
SingletonResult singleton_constructions(const TccInstance& inst, const std::optional<RetractPair>& retract,
                                        const SearchOptions& opt = {});

// ---- Cantor ----

// T = chosen subsets of C (all when `family` is empty), B = {0,1}, eval(t, c) = t(c), equality.
TccInstance cantor_instance(std::size_t n, const std::vector<Bits>& family = {});
std::string subset_label(const Bits& b);  // "none", "c0", "c0+c1"

struct CantorReport {
    std::size_t n = 0;
    std::size_t targets = 0;
    bool full_context_search = false;
    std::uint64_t simulators_checked = 0;
    std::uint64_t universal_found = 0;
    std::optional<FinRel> negation_qfp_deterministic;
    std::optional<FinRel> negation_qfp_any;
    bool eval_complete_I = false;  // functional maps C -> B
    bool eval_complete_C = false;  // functional maps C*C -> B
    bool eval_complete_I_all = false;
    std::uint64_t subfamilies = 0;
    std::uint64_t compilers_checked = 0;
    std::uint64_t surjective = 0;
    std::uint64_t equivalence_failures = 0;
    std::uint64_t right_inverse_failures = 0;
};

CantorReport cantor_report(std::size_t n, const SearchOptions& opt = {});

}  // namespace univsim
