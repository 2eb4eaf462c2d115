#include "equidef/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace equidef {

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact" : "float";
}

Backend parse_backend(std::string_view text) {
  if (text == "exact") return Backend::exact;
  if (text == "float") return Backend::floating;
  throw GeometryError("unknown backend '" + std::string(text) + "' (expected exact|float)");
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw GeometryError("empty rational literal");

  auto fail = [&]() -> Rational { throw GeometryError("malformed rational literal '" + s + "'"); };

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal: "-12.375" -> -12375/1000
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t decimals = s.size() - dot - 1;
    if (decimals == 0 || s.find('/') != std::string::npos) return fail();
    mpz_class num;
    if (num.set_str(digits, 10) != 0) return fail();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Rational q;
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+')) return fail();
  }
  if (s.front() == '+') s.erase(0, 1);
  if (q.set_str(s, 10) != 0) return fail();
  if (q.get_den() == 0) throw GeometryError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Rational ratio(long num, long den) {
  if (den == 0) throw GeometryError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Scalar::Scalar(double v) : value_(v) {
  if (!std::isfinite(v)) throw GeometryError("non-finite float scalar");
}

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw GeometryError("zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::zero(Backend backend) {
  return backend == Backend::exact ? Scalar(Rational(0)) : Scalar(0.0);
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw BackendMismatch();
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<Rational>(value_));
  const double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::scaled(const Rational& factor) const {
  if (is_exact()) {
    if (factor == 1) return *this;
    if (factor == -1) return -*this;
    if (sgn(factor) == 0) return Scalar::canonical(Rational(0));
    return Scalar::canonical(Rational(std::get<Rational>(value_) * factor));
  }
  return Scalar(std::get<double>(value_) * factor.get_d());
}

namespace {

template <typename ExactOp, typename FloatOp>
Scalar combine(const Scalar& lhs, const Scalar& rhs, ExactOp exact_op, FloatOp float_op) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (lhs.is_exact()) return Scalar::canonical(Rational(exact_op(lhs.rational(), rhs.rational())));
  return Scalar(float_op(lhs.to_double(), rhs.to_double()));
}

}  // namespace

Scalar operator+(const Scalar& lhs, const Scalar& rhs) {
  return combine(lhs, rhs, [](const Rational& a, const Rational& b) { return Rational(a + b); },
                 [](double a, double b) { return a + b; });
}

Scalar operator-(const Scalar& lhs, const Scalar& rhs) {
  return combine(lhs, rhs, [](const Rational& a, const Rational& b) { return Rational(a - b); },
                 [](double a, double b) { return a - b; });
}

Scalar operator*(const Scalar& lhs, const Scalar& rhs) {
  return combine(lhs, rhs, [](const Rational& a, const Rational& b) { return Rational(a * b); },
                 [](double a, double b) { return a * b; });
}

Scalar operator/(const Scalar& lhs, const Scalar& rhs) {
  if (rhs.sign() == 0) throw GeometryError("division by zero");
  return combine(lhs, rhs, [](const Rational& a, const Rational& b) { return Rational(a / b); },
                 [](double a, double b) { return a / b; });
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar::canonical(Rational(-std::get<Rational>(value_)));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.backend() != rhs.backend()) return false;
  if (lhs.is_exact()) return lhs.rational() == rhs.rational();
  return lhs.to_double() == rhs.to_double();
}

bool operator<(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (lhs.is_exact()) return lhs.rational() < rhs.rational();
  return lhs.to_double() < rhs.to_double();
}

std::string Scalar::to_string() const {
  if (is_exact()) return format_rational(std::get<Rational>(value_));
  std::ostringstream out;
  out.precision(17);
  out << std::get<double>(value_);
  return out.str();
}

}  // namespace equidef
