#include "chocoq/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace chocoq {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long narrow(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<long long>(v);
}

} // namespace

Rational Rational::make_reduced(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) den = 1;
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
}

Rational::Rational(long long num, long long den) { *this = make_reduced(num, den); }

Rational Rational::operator-() const { return make_reduced(-static_cast<__int128>(num_), den_); }

Rational Rational::operator+(const Rational& o) const {
    return make_reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                        static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    return make_reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
    return make_reduced(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    // Check for a 2^a * 5^b denominator, expanding to a power of ten.
    long long d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

    int digits = twos > fives ? twos : fives;
    __int128 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    __int128 scaled = static_cast<__int128>(num_) * (scale / den_);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    __int128 whole = scaled / scale;
    __int128 frac = scaled % scale;
    std::string frac_str(static_cast<size_t>(digits), '0');
    for (int i = digits - 1; i >= 0; --i) {
        frac_str[static_cast<size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
        frac /= 10;
    }
    std::string out = neg ? "-" : "";
    out += std::to_string(static_cast<long long>(whole));
    out += ".";
    out += frac_str;
    return out;
}

Rational Rational::from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    size_t slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num = from_string(text.substr(0, slash));
        Rational den = from_string(text.substr(slash + 1));
        return num / den;
    }
    size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    __int128 whole = 0;
    bool any_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        whole = whole * 10 + (text[pos] - '0');
        any_digit = true;
        ++pos;
    }
    __int128 frac = 0;
    __int128 scale = 1;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != text.size())
        throw std::invalid_argument("bad rational literal: " + text);
    __int128 num = whole * scale + frac;
    if (neg) num = -num;
    return make_reduced(num, scale);
}

} // namespace chocoq
