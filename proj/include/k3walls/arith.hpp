#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace k3walls {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation's precondition is violated by its arguments.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when computed data contradicts itself (e.g. a wall image outside
/// the positive cone).
class InconsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
/// or zero denominator.
Rational parse_rational(const std::string& text);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

bool is_integer(const Rational& x);

/// Exact square root of a non-negative rational, when it is rational.
std::optional<Rational> exact_sqrt(const Rational& x);

/// floor(sqrt(x) * 10^digits) / 10^digits for x >= 0.
Rational sqrt_lower(const Rational& x, unsigned digits);

/// Fixed-point decimal rendering truncated toward zero at `digits` places,
/// with trailing zeros (and a bare point) removed.
std::string to_decimal(const Rational& x, unsigned digits);

int sign(const Rational& x);
int sign(const Integer& x);

/// gcd with non-negative result; gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);

/// Extended gcd: returns g >= 0 with a*x + b*y = g.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

/// Sign of sqrt-free comparison: compares x against s*sqrt(q), s in {-1, +1},
/// q >= 0. Returns -1, 0, 1.
int compare_with_signed_sqrt(const Rational& x, int s, const Rational& q);

}  // namespace k3walls
