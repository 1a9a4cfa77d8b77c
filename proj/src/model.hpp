#pragma once

#include "catalog.hpp"
#include "dsl.hpp"
#include "simcat.hpp"
#include "tcfunctor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace univsim {

struct NamedSim {
    std::string instance;
    Simulator sim;
};

struct NamedProc {
    std::string instance;
    Processing proc;
};

struct NamedPhi {
    std::string instance;
    MonotoneFn phi;
};

struct CheckSpec {
    std::string name;
    std::vector<std::string> run;  // command and its arguments
    std::string expect;            // expected verdict
    dsl::Span span;
};

// A resolved document: every reference checked, every object built.
struct Model {
    dsl::Document doc;
    std::map<std::string, FinSet> sets;
    std::map<std::string, FinRel> rels;
    std::map<std::string, Preorder> orders;
    std::map<std::string, TccInstance> tccs;
    std::map<std::string, SpinTcc> spin_tccs;
    std::map<std::string, SpinSystem> spins;
    std::map<std::string, NamedSim> sims;
    std::map<std::string, NamedProc> procs;
    std::map<std::string, TcFunctor> functors;
    std::map<std::string, NamedPhi> phis;
    std::vector<CheckSpec> checks;
    std::vector<std::string> tcc_order;  // declaration order

    // First declared instance; throws reference when there is none.
    const std::string& default_instance() const;
    const TccInstance& instance(const std::string& name) const;
    // `trivial` is the trivial simulator of the default instance.
    const NamedSim& simulator(const std::string& name) const;
    const FinRel& rel(const std::string& name) const;
    const TcFunctor& functor(const std::string& name) const;
    const NamedPhi& phi(const std::string& name) const;
    // Declared instance whose target set is `T` (first in declaration order).
    std::optional<std::string> instance_with_targets(const FinSet& T) const;
    std::optional<std::string> instance_with_behaviors(const FinSet& B) const;
};

struct LoadResult {
    std::optional<Model> model;
    std::vector<dsl::Diagnostic> diagnostics;
    bool ok() const { return model.has_value() && diagnostics.empty(); }
};

LoadResult resolve(const dsl::Document& doc);
// parse then resolve; parse diagnostics stop before resolution
LoadResult load_model(std::string_view text);

}  // namespace univsim
