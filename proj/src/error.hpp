#pragma once

#include <stdexcept>
#include <string>

namespace univsim {

// Codes are stable; the C API and the CLI expose them.
enum class Errc : int {
    ok = 0,
    type_mismatch = 1,
    unknown_element = 2,
    invalid_argument = 3,
    budget_exceeded = 4,
    not_functional = 5,
    split_violation = 6,
    no_total_state = 7,
    not_universal = 8,
    parse = 9,
    reference = 10,
    internal = 11,
    unknown_command = 12,
    io = 13,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Framework invariant checks. These are theorems of the model; a failure is a bug.
inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw Error(Errc::internal, "invariant violated: " + what);
}

}  // namespace univsim
