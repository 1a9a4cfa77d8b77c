#include "search.hpp"

namespace univsim {

const char* space_name(SearchSpace s) { return s == SearchSpace::all ? "all" : "functional"; }

}  // namespace univsim
