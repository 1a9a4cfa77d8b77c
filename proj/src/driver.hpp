#pragma once

#include "model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace univsim {

inline constexpr const char* report_schema_id = "univsim-report/1";

enum class Format { json, text };

struct RunOptions {
    SearchOptions search;
    std::uint64_t seed = 0;
    std::optional<std::size_t> n;  // cantor --n
};

// UNIVSIM_BUDGET when set and valid, else the built-in default.
std::uint64_t default_budget();

struct Report {
    nlohmann::ordered_json body;
    std::string verdict;
    bool holds = false;
    bool budget_exceeded = false;
};

// Commands: laws, universal, reduce, nogo, parsimony, lawvere, unreachability, cantor, functor-check, verify.
// `model` may be null for laws and cantor.  Throws Error for unknown commands, names and malformed
// arguments; a budget overrun becomes a report with verdict "budget-exceeded".
Report run_command(const Model* model, const std::string& command, const std::vector<std::string>& args,
                   const RunOptions& opt);
const std::vector<std::string>& commands();

std::string render(const Report& r, Format f);

nlohmann::ordered_json rel_json(const FinRel& f);
std::string instance_hash(const TccInstance& inst);
// Canonical JSON of every resolved object.
nlohmann::ordered_json export_model(const Model& m);

}  // namespace univsim
