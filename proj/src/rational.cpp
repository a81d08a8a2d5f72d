#include "dcx/rational.hpp"

#include <cctype>
#include <sstream>

namespace dcx {

namespace {

bool is_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Leading zeros would switch the integer constructor into octal mode.
Integer from_decimal_digits(const std::string& s) {
    size_t i = 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    return Integer(s.substr(i));
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim surrounding whitespace
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
    s = s.substr(b, e - b + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw std::invalid_argument("bad rational literal: '" + text + "'");

    Integer num, den = 1;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!is_digits(ns) || !is_digits(ds))
            throw std::invalid_argument("bad rational literal: '" + text + "'");
        num = from_decimal_digits(ns);
        den = from_decimal_digits(ds);
        if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!is_digits(ip) || (!fp.empty() && !is_digits(fp)))
            throw std::invalid_argument("bad rational literal: '" + text + "'");
        num = from_decimal_digits(ip + fp);
        den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    } else {
        if (!is_digits(s)) throw std::invalid_argument("bad rational literal: '" + text + "'");
        num = from_decimal_digits(s);
    }
    // Division of integers canonicalizes the result; never build mpq from raw strings.
    Rational r = Rational(num) / Rational(den);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

std::string to_decimal_string(const Rational& value, int digits) {
    boost::multiprecision::mpf_float_100 f(value);
    std::ostringstream os;
    os.precision(digits);
    os << f;
    return os.str();
}

}  // namespace dcx
