#include "k3walls/arith.hpp"

#include <cctype>

namespace k3walls {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

namespace {

bool parse_integer(const std::string& text, Integer& out) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
  std::string digits = text[0] == '+' ? text.substr(1) : text;
  return out.set_str(digits, 10) == 0;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  const auto slash = text.find('/');
  Integer num, den = 1;
  if (slash == std::string::npos) {
    if (!parse_integer(text, num))
      throw std::invalid_argument("malformed rational '" + raw + "'");
  } else {
    const std::string d = text.substr(slash + 1);
    if (!parse_integer(text.substr(0, slash), num) || d.empty() || d[0] == '-' ||
        d[0] == '+' || !parse_integer(d, den))
      throw std::invalid_argument("malformed rational '" + raw + "'");
    if (den == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
  }
  return make_rational(num, den);
}

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t()))
    return std::nullopt;
  return make_rational(sqrt(Integer(x.get_num())), sqrt(Integer(x.get_den())));
}

Rational sqrt_lower(const Rational& x, unsigned digits) {
  if (sgn(x) < 0) throw DomainError("sqrt of negative rational");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // floor(sqrt(num * scale^2 / den)) = floor(sqrt(floor(num * scale^2 / den)))
  Integer radicand = floor(Rational(x * Rational(scale * scale)));
  return make_rational(sqrt(radicand), scale);
}

std::string to_decimal(const Rational& x, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Integer scaled;
  Rational y = x * Rational(scale);
  mpz_tdiv_q(scaled.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  const bool negative = scaled < 0;
  Integer mag = abs(scaled);
  Integer whole = mag / scale;
  Integer frac = mag % scale;
  std::string out = (negative ? "-" : "") + whole.get_str();
  if (frac != 0 && digits > 0) {
    std::string f = frac.get_str();
    f.insert(0, digits - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  if (out == "-0") out = "0";
  return out;
}

int sign(const Rational& x) { return sgn(x); }
int sign(const Integer& x) { return sgn(x); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

int compare_with_signed_sqrt(const Rational& x, int s, const Rational& q) {
  if (sgn(q) < 0) throw DomainError("negative radicand");
  if (sgn(q) == 0) return sgn(x);
  const int sx = sgn(x);
  if (s > 0) {
    if (sx <= 0) return -1;
    return cmp(Rational(x * x), q) < 0 ? -1 : (cmp(Rational(x * x), q) > 0 ? 1 : 0);
  }
  if (sx >= 0) return 1;
  // both negative: x < -sqrt(q) iff x^2 > q
  const int c = cmp(Rational(x * x), q);
  return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

}  // namespace k3walls
