#include "rational.hpp"

#include "error.hpp"

#include <charconv>

namespace univsim {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

namespace {

long long parse_int(std::string_view s, std::string_view whole) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        fail(Errc::parse, "not a rational number: '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view t = text;
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    if (auto slash = t.find('/'); slash != std::string_view::npos) {
        long long d = parse_int(t.substr(slash + 1), text);
        if (d == 0) fail(Errc::parse, "zero denominator in '" + std::string(text) + "'");
        return Rational(parse_int(t.substr(0, slash), text), d);
    }
    if (auto dot = t.find('.'); dot != std::string_view::npos) {
        std::string digits(t.substr(0, dot));
        std::string frac(t.substr(dot + 1));
        if (frac.empty() || frac.size() > 15) fail(Errc::parse, "bad decimal '" + std::string(text) + "'");
        bool neg = !digits.empty() && digits[0] == '-';
        long long scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        long long ip = (digits.empty() || digits == "-") ? 0 : parse_int(digits, text);
        long long fp = parse_int(frac, text);
        long long num = (ip < 0 ? -ip : ip) * scale + fp;
        return Rational(neg ? -num : num, scale);
    }
    return Rational(parse_int(t, text));
}

}  // namespace univsim
