#pragma once

#include <boost/rational.hpp>

#include <string>
#include <string_view>

// boost 1.74 under C++20: rational-vs-integer comparisons pick a reversed free template that
// calls itself forever.  Exact non-template overloads win overload resolution and break the cycle.
namespace boost {
#define UNIVSIM_RATIONAL_CMP(T)                                                                             \
    inline bool operator==(const rational<long long>& a, T b) { return a == rational<long long>(b); }      \
    inline bool operator==(T b, const rational<long long>& a) { return a == rational<long long>(b); }      \
    inline bool operator!=(const rational<long long>& a, T b) { return !(a == rational<long long>(b)); }   \
    inline bool operator!=(T b, const rational<long long>& a) { return !(a == rational<long long>(b)); }   \
    inline bool operator<(const rational<long long>& a, T b) { return a < rational<long long>(b); }        \
    inline bool operator<(T b, const rational<long long>& a) { return rational<long long>(b) < a; }        \
    inline bool operator>(const rational<long long>& a, T b) { return rational<long long>(b) < a; }        \
    inline bool operator>(T b, const rational<long long>& a) { return a < rational<long long>(b); }        \
    inline bool operator<=(const rational<long long>& a, T b) { return !(rational<long long>(b) < a); }    \
    inline bool operator<=(T b, const rational<long long>& a) { return !(a < rational<long long>(b)); }    \
    inline bool operator>=(const rational<long long>& a, T b) { return !(a < rational<long long>(b)); }    \
    inline bool operator>=(T b, const rational<long long>& a) { return !(rational<long long>(b) < a); }
UNIVSIM_RATIONAL_CMP(int)
UNIVSIM_RATIONAL_CMP(long)
UNIVSIM_RATIONAL_CMP(long long)
UNIVSIM_RATIONAL_CMP(unsigned)
UNIVSIM_RATIONAL_CMP(unsigned long)
#undef UNIVSIM_RATIONAL_CMP
}  // namespace boost

namespace univsim {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);  // "3", "-1/2"
Rational parse_rational(std::string_view text);  // integer, p/q or finite decimal

}  // namespace univsim
