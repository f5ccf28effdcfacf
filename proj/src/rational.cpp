#include "orbitrep/rational.hpp"

#include <cmath>

#include "orbitrep/errors.hpp"

namespace orbitrep {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, 1) / mpq_class(den, 1);
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num = text;
  std::string_view den = "1";
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("invalid rational \"" + original + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("invalid rational \"" + original + "\": zero denominator");
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

Rational Rational::round_to(double value, const mpz_class& denominator) {
  if (!std::isfinite(value)) throw std::domain_error("cannot snap a non-finite value");
  // mpq_class holds the double exactly, so the rounding below is exact.
  const mpq_class scaled = mpq_class(value) * denominator;
  mpz_class q = scaled.get_num() / scaled.get_den();  // truncates toward zero
  const mpq_class frac = scaled - mpq_class(q);
  if (frac >= mpq_class(1, 2)) ++q;
  if (frac <= mpq_class(-1, 2)) --q;
  return Rational(mpq_class(q, denominator));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  v_ += rhs.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  v_ -= rhs.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  v_ *= rhs.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= rhs.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace orbitrep
