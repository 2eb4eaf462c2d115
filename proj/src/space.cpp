#include "equidef/space.hpp"

#include <algorithm>
#include <cmath>

namespace equidef {

NormSpec NormSpec::lp(const Rational& p) {
  if (p <= 1) throw GeometryError("Lp norm requires p > 1");
  if (p == 2) return l2();
  return {Kind::lp, p};
}

NormSpec NormSpec::parse(std::string_view text) {
  if (text == "l1") return l1();
  if (text == "l2") return l2();
  if (text == "linf") return linf();
  if (text.starts_with("lp:")) return lp(parse_rational(text.substr(3)));
  throw GeometryError("unknown norm '" + std::string(text) + "' (expected l1|l2|linf|lp:<p>)");
}

std::string NormSpec::name() const {
  switch (kind) {
    case Kind::l1: return "l1";
    case Kind::l2: return "l2";
    case Kind::linf: return "linf";
    case Kind::lp: return "lp:" + format_rational(p);
  }
  return "?";
}

Space Space::exact(NormSpec norm) {
  if (norm.kind == NormSpec::Kind::lp) {
    throw GeometryError("exact backend is not available for " + norm.name() + " (use the float backend)");
  }
  return Space(std::move(norm), Backend::exact, 0.0);
}

Space Space::floating(NormSpec norm, double tolerance) {
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) throw GeometryError("tolerance must be a finite value >= 0");
  return Space(std::move(norm), Backend::floating, tolerance);
}

Space Space::make(NormSpec norm, Backend backend, double tolerance) {
  return backend == Backend::exact ? exact(std::move(norm)) : floating(std::move(norm), tolerance);
}

Space Space::to_floating(double tolerance) const { return floating(norm_, tolerance); }

Point Space::point(const Rational& x, const Rational& y) const {
  if (is_exact()) return Point::exact(x, y);
  return Point::floating(x.get_d(), y.get_d());
}

Point Space::convert(const Point& p) const {
  if (p.backend() == backend_) return p;
  if (is_exact()) throw GeometryError("cannot convert a float point to the exact backend");
  return p.to_floating();
}

bool Space::nearly_equal(double u, double v) const {
  const double scale = std::max({1.0, std::abs(u), std::abs(v)});
  return std::abs(u - v) <= tolerance_ * scale;
}

bool Space::same_point(const Point& a, const Point& b) const {
  if (a.backend() != backend_ || b.backend() != backend_) throw BackendMismatch();
  if (is_exact()) return a == b;
  const double scale = std::max({1.0, std::abs(a.x.to_double()), std::abs(a.y.to_double()),
                                 std::abs(b.x.to_double()), std::abs(b.y.to_double())});
  return distance(*this, a, b).to_double() <= tolerance_ * scale;
}

std::string Space::describe() const {
  std::string out = norm_.name() + "/" + std::string(to_string(backend_));
  if (!is_exact()) out += "(tol=" + std::to_string(tolerance_) + ")";
  return out;
}

Distance Distance::exact(Rational value) {
  Distance d;
  d.exact_ = true;
  d.squared_ = false;
  d.rational_ = std::move(value);
  if (sgn(d.rational_) < 0) throw GeometryError("negative length");
  return d;
}

Distance Distance::exact_squared(Rational square) {
  Distance d;
  d.exact_ = true;
  d.squared_ = true;
  d.rational_ = std::move(square);
  if (sgn(d.rational_) < 0) throw GeometryError("negative squared length");
  return d;
}

Distance Distance::approx(double value) {
  Distance d;
  d.exact_ = false;
  d.approx_ = value;
  if (!(value >= 0.0)) throw GeometryError("negative or NaN length");
  return d;
}

const Rational& Distance::rational() const {
  if (!exact_) throw BackendMismatch();
  return rational_;
}

double Distance::to_double() const {
  if (!exact_) return approx_;
  return squared_ ? std::sqrt(rational_.get_d()) : rational_.get_d();
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  Rational root(num, den);
  root.canonicalize();
  return root;
}

}  // namespace

std::optional<Rational> Distance::exact_value() const {
  if (!exact_) return std::nullopt;
  if (!squared_) return rational_;
  return rational_sqrt(rational_);
}

Scalar Distance::to_scalar() const {
  if (!exact_) return Scalar(approx_);
  auto value = exact_value();
  if (!value) throw GeometryError("length sqrt(" + format_rational(rational_) + ") is irrational");
  return Scalar(*value);
}

bool Distance::is_zero() const { return exact_ ? sgn(rational_) == 0 : approx_ == 0.0; }

Distance Distance::scaled(const Rational& q) const {
  if (sgn(q) < 0) throw GeometryError("negative length scale");
  if (!exact_) return approx(approx_ * q.get_d());
  if (squared_) return exact_squared(rational_ * q * q);
  return exact(rational_ * q);
}

std::string Distance::to_string() const {
  if (!exact_) return Scalar(approx_).to_string();
  if (!squared_) return format_rational(rational_);
  if (auto root = exact_value()) return format_rational(*root);
  return "sqrt(" + format_rational(rational_) + ")";
}

Distance norm_of(const Space& space, const Point& v) {
  if (v.backend() != space.backend()) throw BackendMismatch();
  if (space.is_exact()) {
    const Rational dx = abs(v.x.rational());
    const Rational dy = abs(v.y.rational());
    switch (space.norm().kind) {
      case NormSpec::Kind::l1: return Distance::exact(dx + dy);
      case NormSpec::Kind::linf: return Distance::exact(dx < dy ? dy : dx);
      case NormSpec::Kind::l2: return Distance::exact_squared(dx * dx + dy * dy);
      case NormSpec::Kind::lp: break;
    }
    throw GeometryError("exact backend does not support " + space.norm().name());
  }
  const double dx = std::abs(v.x.to_double());
  const double dy = std::abs(v.y.to_double());
  switch (space.norm().kind) {
    case NormSpec::Kind::l1: return Distance::approx(dx + dy);
    case NormSpec::Kind::linf: return Distance::approx(std::max(dx, dy));
    case NormSpec::Kind::l2: return Distance::approx(std::hypot(dx, dy));
    case NormSpec::Kind::lp: {
      const double p = space.norm().p.get_d();
      const double m = std::max(dx, dy);
      if (m == 0.0) return Distance::approx(0.0);
      // scale by the larger coordinate to keep pow() in range
      return Distance::approx(m * std::pow(std::pow(dx / m, p) + std::pow(dy / m, p), 1.0 / p));
    }
  }
  return Distance::approx(0.0);
}

Distance distance(const Space& space, const Point& a, const Point& b) {
  if (a.backend() != space.backend() || b.backend() != space.backend()) throw BackendMismatch();
  return norm_of(space, a - b);
}

namespace {

using SqrtTerm = std::pair<Rational, Rational>;  // coef * sqrt(radicand)

void normalize_terms(std::vector<SqrtTerm>& terms) {
  Rational constant = 0;
  std::vector<SqrtTerm> out;
  for (auto& [coef, rad] : terms) {
    if (sgn(rad) < 0) throw GeometryError("negative radicand");
    if (sgn(coef) == 0 || sgn(rad) == 0) continue;
    if (auto root = rational_sqrt(rad)) {
      constant += coef * *root;
      continue;
    }
    bool merged = false;
    for (auto& [ocoef, orad] : out) {
      // sqrt(rad) = sqrt(rad / orad) * sqrt(orad) when the ratio is a square
      if (auto ratio = rational_sqrt(Rational(rad / orad))) {
        ocoef += coef * *ratio;
        merged = true;
        break;
      }
    }
    if (!merged) out.emplace_back(coef, rad);
  }
  std::erase_if(out, [](const SqrtTerm& t) { return sgn(t.first) == 0; });
  if (sgn(constant) != 0) out.emplace_back(constant, Rational(1));
  terms = std::move(out);
}

// (sum coef_i sqrt(rad_i))^2 expanded into sqrt terms.
std::vector<SqrtTerm> square_of(const std::vector<SqrtTerm>& group) {
  std::vector<SqrtTerm> out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    out.emplace_back(group[i].first * group[i].first * group[i].second, Rational(1));
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      out.emplace_back(2 * group[i].first * group[j].first, group[i].second * group[j].second);
    }
  }
  return out;
}

int sign_of_sqrt_sum_impl(std::vector<SqrtTerm> terms, int depth) {
  normalize_terms(terms);
  if (terms.empty()) return 0;
  if (terms.size() == 1) return sgn(terms.front().first);
  if (depth > 8 || terms.size() > 4) throw GeometryError("square-root sum too large for exact sign determination");

  std::vector<SqrtTerm> pos;
  std::vector<SqrtTerm> neg;
  for (auto& t : terms) {
    if (sgn(t.first) > 0) {
      pos.push_back(t);
    } else {
      neg.emplace_back(-t.first, t.second);
    }
  }
  if (neg.empty()) return 1;
  if (pos.empty()) return -1;

  // P, N > 0, so sign(P - N) = sign(P^2 - N^2)
  std::vector<SqrtTerm> diff = square_of(pos);
  for (auto& [coef, rad] : square_of(neg)) diff.emplace_back(-coef, rad);
  return sign_of_sqrt_sum_impl(std::move(diff), depth + 1);
}

}  // namespace

int sign_of_sqrt_sum(std::vector<std::pair<Rational, Rational>> terms) {
  return sign_of_sqrt_sum_impl(std::move(terms), 0);
}

int sign_of_combination(const Space& space, std::span<const LengthTerm> terms) {
  if (space.is_exact()) {
    if (space.norm().kind == NormSpec::Kind::l2) {
      std::vector<SqrtTerm> sqrt_terms;
      sqrt_terms.reserve(terms.size());
      for (const auto& t : terms) {
        if (!t.length.is_exact()) throw BackendMismatch();
        if (t.length.is_squared()) {
          sqrt_terms.emplace_back(t.coef, t.length.rational());
        } else {
          sqrt_terms.emplace_back(t.coef * t.length.rational(), Rational(1));
        }
      }
      return sign_of_sqrt_sum(std::move(sqrt_terms));
    }
    Rational sum = 0;
    for (const auto& t : terms) {
      if (!t.length.is_exact() || t.length.is_squared()) throw BackendMismatch();
      sum += t.coef * t.length.rational();
    }
    return sgn(sum);
  }

  double pos = 0.0;
  double neg = 0.0;
  for (const auto& t : terms) {
    if (t.length.is_exact()) throw BackendMismatch();
    const double v = t.coef.get_d() * t.length.to_double();
    if (v >= 0) {
      pos += v;
    } else {
      neg -= v;
    }
  }
  if (space.nearly_equal(pos, neg)) return 0;
  return pos > neg ? 1 : -1;
}

int compare_scaled(const Space& space, const Distance& lhs, const Rational& q, const Distance& rhs) {
  const LengthTerm terms[] = {{Rational(1), lhs}, {Rational(-q), rhs}};
  return sign_of_combination(space, terms);
}

bool equidistant(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d) {
  return compare_scaled(space, distance(space, a, b), Rational(1), distance(space, c, d)) == 0;
}

bool scaled_equidistant(const Space& space, const Point& a, const Point& b, const Rational& q, const Point& c,
                        const Point& d) {
  if (sgn(q) < 0) throw GeometryError("scale factor must be nonnegative");
  return compare_scaled(space, distance(space, a, b), q, distance(space, c, d)) == 0;
}

}  // namespace equidef
