#include "tollflow/rational.hpp"

#include <cctype>
#include <ostream>
#include <vector>

#include "tollflow/error.hpp"

namespace tollflow {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw Error(ErrorKind::SyntaxError, "not an integer or p/q rational: \"" + original + "\"", original);
  }
  mpz_class n(std::string(num), 10);
  mpz_class d = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::SyntaxError, "zero denominator in \"" + original + "\"", original);
  if (negative) n = -n;
  return Rational(n, d);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int significant_digits) const {
  // 256 bits is far more than 20 significant decimal digits need.
  mpf_class f(value_, 256);
  std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits, f.get_mpf_t());
  return std::string(buf.data());
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow_int(const Rational& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace tollflow

std::size_t std::hash<tollflow::Rational>::operator()(const tollflow::Rational& x) const noexcept {
  const std::size_t h1 = mpz_get_ui(x.raw().get_num_mpz_t());
  const std::size_t h2 = mpz_get_ui(x.raw().get_den_mpz_t());
  return h1 * 1000003u ^ h2 ^ static_cast<std::size_t>(x.sign());
}
