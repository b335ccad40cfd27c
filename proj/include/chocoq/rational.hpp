#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chocoq {

/// Exact rational number with 64-bit numerator/denominator.
///
/// Used for objective coefficients so that feasibility checks and oracle
/// optima are free of floating-point drift. Intermediate products are
/// computed in 128 bits and reduced; values that do not fit back into
/// 64 bits after reduction throw std::overflow_error.
class Rational {
public:
    Rational() = default;
    Rational(long long value) : num_(value), den_(1) {}
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Exact decimal string when the denominator is of the form 2^a*5^b
    /// (e.g. "1.5", "-0.04"), otherwise "num/den".
    std::string to_string() const;

    /// Parses integers ("2", "-7"), decimal strings ("1.5", "-0.04") and
    /// fractions ("3/2"). Throws std::invalid_argument on anything else.
    static Rational from_string(const std::string& text);

private:
    static Rational make_reduced(__int128 num, __int128 den);

    long long num_ = 0;
    long long den_ = 1;
};

} // namespace chocoq
