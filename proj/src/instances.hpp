#pragma once

#include "rational.hpp"
#include "simcat.hpp"
#include "simulator.hpp"
#include "tcc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace univsim {

struct SimplicialComplex {
    FinSet vertices;
    std::vector<std::vector<std::size_t>> facets;  // sorted vertex indices

    void validate() const;  // antichain, indices in range
    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertices.labels() == b.vertices.labels() && a.facets == b.facets;
    }
};

SimplicialComplex make_complex(std::vector<std::string> vertices, std::vector<std::vector<std::string>> facets);

struct SpinSystem {
    std::string name;
    SimplicialComplex complex;
    int q = 2;
    // local[k][i]: energy of facet k at the i-th assignment of its vertices (row-major, first vertex slowest)
    std::vector<std::vector<Rational>> local;
    Rational delta{0};

    void validate() const;
};

using Sigma = std::vector<int>;  // spin value per vertex

Rational energy(const SpinSystem& h, const Sigma& sigma);
std::vector<Rational> spectrum(const SpinSystem& h, std::uint64_t budget = 1u << 20);
std::vector<Rational> reduced(const std::vector<Rational>& levels, const Rational& delta);
Rational size_measure(const SimplicialComplex& g, int q);

struct SpinBehavior {
    Rational e{0};
    std::vector<Rational> S;
    Rational delta{0};
    friend bool operator==(const SpinBehavior&, const SpinBehavior&) = default;
};

std::string behavior_label(const SpinBehavior& b);
std::string sigma_digits(const Sigma& s);

// Defined iff the configuration lives on the same complex with the same levels and H(sigma) <= delta.
std::optional<SpinBehavior> spin_eval(const SpinSystem& h, const SimplicialComplex& g, int q, const Sigma& sigma);
bool spin_brel(const SpinBehavior& b1, const SpinBehavior& b2);

SpinSystem field_system(int n);
// Two-level Ising facet terms J s_i s_j + B_i s_i + B_j s_j with s = (-1)^sigma, one per edge.
SpinSystem ising_system(std::string name, std::vector<std::string> vertices,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges, const std::vector<Rational>& J,
                        const std::vector<Rational>& fields, Rational delta);
SpinSystem permute_system(const SpinSystem& h, const std::vector<std::size_t>& pi, std::string name);

struct SpinConfig {
    std::size_t complex;  // index into SpinTcc::complexes
    Sigma sigma;
};

struct SpinTcc {
    TccInstance inst;
    std::vector<SpinSystem> systems;
    std::vector<std::pair<SimplicialComplex, int>> complexes;
    std::vector<std::size_t> system_complex;
    std::vector<SpinConfig> configs;
    std::vector<SpinBehavior> behaviors;
};

SpinTcc build_spin_tcc(const std::string& name, const std::vector<SpinSystem>& systems,
                       std::uint64_t budget = 1u << 20);
// phi(t) = |sp(H)_{<= Delta}|, 0 on the empty state
MonotoneFn reduced_spectrum_size(const SpinTcc& st);
// pi[k] is a vertex permutation of complex k
Processing spin_permutation_processing(const SpinTcc& st, const std::vector<std::vector<std::size_t>>& pi,
                                       const FinSet& P);

struct EnergyMatching {
    bool spectra_agree = true;
    bool energies_match = true;
};
// The pairwise simulation conditions of a reduction r : T -> P of a spin simulator, checked directly.
EnergyMatching energy_matching(const SpinTcc& st, const Simulator& s, const FinRel& r);

// ---- abstract catalog ----

struct CatalogInstance {
    TccInstance inst;
    Simulator sim;
    std::string note;
};

bool is_cofinal(const Preorder& x, const Bits& m);
CatalogInstance cofinal_instance(const std::string& name, const Preorder& x, const Bits& m);

struct FiniteMetric {
    FinSet points;
    std::vector<std::vector<Rational>> d;
    void validate() const;
};
// T = points x radii, C = I, B = open balls ordered by inclusion (smaller is higher), programs Q x radii.
CatalogInstance dense_metric_instance(const std::string& name, const FiniteMetric& m, const Bits& q,
                                      const std::vector<Rational>& radii);
bool is_dense_direct(const FiniteMetric& m, const Bits& q, const std::vector<Rational>& radii);

// T = named partial tables C -> B (-1 undefined), eval(t, c) = t(c), equality order.
TccInstance lookup_machines(const std::string& name, const FinSet& C, const FinSet& B,
                            const std::vector<std::string>& names, const std::vector<std::vector<long>>& tables);
std::vector<std::vector<long>> all_tables(std::size_t nc, std::size_t nb, bool partial);
std::string table_name(const std::vector<long>& table);
// Singleton simulator around machine u: programs are targets, s_C(p, c) looks up an input of u producing p(c).
Simulator lookup_singleton(const TccInstance& inst, std::size_t u);
std::optional<Simulator> find_singleton_universal(const TccInstance& inst, const SearchOptions& opt = {});

struct PolyCertificate {
    std::vector<Rational> coeffs;  // p(x) = sum coeffs[k] x^k
    std::vector<Rational> dom_size, cod_size;
};
bool poly_bound_check(const FinRel& f, const PolyCertificate& cert);

}  // namespace univsim
