#include "error.hpp"

namespace univsim {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::ok: return "ok";
    case Errc::type_mismatch: return "type-mismatch";
    case Errc::unknown_element: return "unknown-element";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::not_functional: return "not-functional";
    case Errc::split_violation: return "split-violation";
    case Errc::no_total_state: return "no-total-state";
    case Errc::not_universal: return "not-universal";
    case Errc::parse: return "parse";
    case Errc::reference: return "reference";
    case Errc::internal: return "internal";
    case Errc::unknown_command: return "unknown-command";
    case Errc::io: return "io";
    }
    return "unknown";
}

}  // namespace univsim
