#pragma once

#include "search.hpp"
#include "simcat.hpp"
#include "simulator.hpp"
#include "tcc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace univsim {

// One generating object and its relabeling: element i of `from` goes to element image[i] of `to`.
struct AtomMap {
    FinSet from, to;
    std::vector<std::size_t> image;
};

// A functor given by relabeling bijections on atomic sets; products map factorwise and atoms
// without an entry map to themselves.  Morphisms map by F(f) = phi_cod . f . phi_dom^-1.
class TcFunctor {
public:
    TcFunctor() = default;
    TcFunctor(std::string name, std::vector<AtomMap> atoms, TccInstance source, TccInstance target);

    const std::string& name() const { return name_; }
    const std::vector<AtomMap>& atoms() const { return atoms_; }
    const TccInstance& source() const { return src_; }
    const TccInstance& target() const { return dst_; }

    FinSet map(const FinSet& a) const;
    std::size_t map_element(const FinSet& a, std::size_t i) const;
    FinRel map(const FinRel& f) const;

private:
    const AtomMap* find(const FinSet& atom) const;
    std::string name_;
    std::vector<AtomMap> atoms_;
    TccInstance src_, dst_;
};

TcFunctor identity_functor(const TccInstance& inst);
// G after F; the target of F must be the source of G.
TcFunctor compose_functors(const TcFunctor& g, const TcFunctor& f);

struct FunctorCheck {
    bool objects_ok = false;      // F(T) = T', F(C) = C'
    bool bijections_ok = false;
    bool functorial = false;      // identities, composition, tensor on sampled diagrams
    bool gs_monoidal = false;     // copy, delete, swap preserved
    bool relation_preserved = false;
    bool relation_exhaustive = false;  // every pair of states into T*C, otherwise sampled
    std::uint64_t relation_pairs = 0;
    std::uint64_t samples = 0;
    std::vector<std::string> violations;
    bool ok() const { return objects_ok && bijections_ok && functorial && gs_monoidal && relation_preserved; }
};

FunctorCheck check_tc_functor(const TcFunctor& F, const SearchOptions& opt = {}, std::uint64_t seed = 0,
                              std::size_t samples = 64);

Simulator map_through(const TcFunctor& F, const Simulator& s);
SimMorphism map_through(const TcFunctor& F, const SimMorphism& m);

struct PreservationResult {
    bool source_universal = false;
    bool image_universal = false;    // F r witnesses universality of F s
    bool witness_transported = false;
    bool singleton_preserved = true;  // vacuous when s is not a singleton
    std::optional<FinRel> witness, image_witness;
};
PreservationResult verify_universality_preservation(const TcFunctor& F, const Simulator& s,
                                                    const SearchOptions& opt = {});

}  // namespace univsim
