#pragma once

#include "equidef/point.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace equidef {

struct NormSpec {
  enum class Kind { l1, l2, linf, lp };

  Kind kind = Kind::l2;
  Rational p = 2;  // only meaningful for Kind::lp

  static NormSpec l1() { return {Kind::l1, 1}; }
  static NormSpec l2() { return {Kind::l2, 2}; }
  static NormSpec linf() { return {Kind::linf, 0}; }
  /// Lp with rational p > 1; p == 1 or p == 2 are normalized to l1/l2.
  static NormSpec lp(const Rational& p);

  /// "l1", "l2", "linf" or "lp:3/2"
  static NormSpec parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const NormSpec& a, const NormSpec& b) { return a.kind == b.kind && a.p == b.p; }
};

/// A normed coordinate plane over one scalar backend.
///
/// The exact backend is refused for Lp norms other than l1, l2, linf: their
/// distance comparisons are not decidable over the rationals by this kernel.
class Space {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  static Space exact(NormSpec norm);
  static Space floating(NormSpec norm, double tolerance = kDefaultTolerance);
  static Space make(NormSpec norm, Backend backend, double tolerance = kDefaultTolerance);

  const NormSpec& norm() const { return norm_; }
  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::exact; }
  /// 0 on the exact backend.
  double tolerance() const { return tolerance_; }

  /// The float-backend twin of this space (same norm).
  Space to_floating(double tolerance = kDefaultTolerance) const;

  /// Builds a point on this space's backend from rational coordinates.
  Point point(const Rational& x, const Rational& y) const;
  Point convert(const Point& p) const;

  /// Float comparison under the mixed tolerance |u - v| <= tau * max(1, |u|, |v|).
  bool nearly_equal(double u, double v) const;

  /// Point identity: structural on the exact backend; on the float backend,
  /// two points are identified when their distance is within tolerance.
  bool same_point(const Point& a, const Point& b) const;

  std::string describe() const;

 private:
  Space(NormSpec norm, Backend backend, double tolerance)
      : norm_(std::move(norm)), backend_(backend), tolerance_(tolerance) {}

  NormSpec norm_;
  Backend backend_;
  double tolerance_;
};

/// A nonnegative length measured in some space.
///
/// Exact L1/Linf lengths are rationals; exact L2 lengths are carried by their
/// (rational) square so that comparisons stay exact; float lengths are doubles.
class Distance {
 public:
  static Distance exact(Rational value);
  static Distance exact_squared(Rational square);
  static Distance approx(double value);

  bool is_exact() const { return exact_; }
  bool is_squared() const { return squared_; }
  /// The rational value, or its square for squared lengths.
  const Rational& rational() const;
  double to_double() const;
  /// The length as a scalar; throws for squared lengths that are not perfect squares.
  Scalar to_scalar() const;
  std::optional<Rational> exact_value() const;
  bool is_zero() const;

  /// q * this, staying in the same representation.
  Distance scaled(const Rational& q) const;

  std::string to_string() const;

 private:
  bool exact_ = true;
  bool squared_ = false;
  Rational rational_;
  double approx_ = 0.0;
};

/// d(a, b) = ||a - b|| under the space's norm.
Distance distance(const Space& space, const Point& a, const Point& b);

/// ||v|| for a displacement vector.
Distance norm_of(const Space& space, const Point& v);

struct LengthTerm {
  Rational coef;
  Distance length;
};

/// Sign of sum(coef_i * length_i): -1, 0 or +1. Exact on the exact backend
/// (including sums of square roots for L2); within tolerance on float.
int sign_of_combination(const Space& space, std::span<const LengthTerm> terms);

/// Sign of lhs - q * rhs.
int compare_scaled(const Space& space, const Distance& lhs, const Rational& q, const Distance& rhs);

/// ab == cd, the primitive equidistance relation.
bool equidistant(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d);

/// d(a,b) = q * d(c,d) for a nonnegative rational q.
bool scaled_equidistant(const Space& space, const Point& a, const Point& b, const Rational& q, const Point& c,
                        const Point& d);

/// Exact sign of sum(coef_i * sqrt(radicand_i)) for nonnegative radicands.
/// Handles up to four terms (enough for every comparison the kernel makes).
int sign_of_sqrt_sum(std::vector<std::pair<Rational, Rational>> terms);

}  // namespace equidef
