#pragma once

#include "instances.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace univsim {

// Ready-made instances behind the DSL `preset` block and the regression suites.
struct Preset {
    std::string kind;
    TccInstance inst;
    std::optional<SpinTcc> spin;
    std::vector<std::pair<std::string, Simulator>> sims;  // suffixes, e.g. "s" for NAME.s
    std::optional<MonotoneFn> phi;
    std::string note;
};

// kinds: nogo-spin N K, cantor N, lookup N [partial|total], dense [MASK], cofinal [MASK]
Preset build_preset(const std::string& name, const std::string& kind, const std::vector<std::string>& args);
const std::vector<std::string>& preset_kinds();

// Systems field0..fieldN; programs p1..pK compile to field1..fieldK and
// send every context to the first configuration of that complex.
Preset nogo_spin_preset(const std::string& name, int n, int k);
Preset lookup_preset(const std::string& name, std::size_t n, bool partial);

struct CatalogEntry {
    std::string name;
    TccInstance inst;
    std::vector<std::pair<std::string, Simulator>> sims;
};

// Small instances of every flavor: lookup tables, Cantor, cofinal, dense metric, spin,
// a random instance and an intrinsified one.  Deterministic.
std::vector<CatalogEntry> regression_catalog();

// Random instance with functional eval and a random preorder on B.
TccInstance random_instance(const std::string& name, std::size_t nt, std::size_t nc, std::size_t nb,
                            std::uint64_t seed);

}  // namespace univsim
