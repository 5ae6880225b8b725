#ifndef SUPERHOL_PATH_HPP
#define SUPERHOL_PATH_HPP

#include "superhol/geometry.hpp"

namespace superhol {

/// One smooth piece of an S-path: coordinate pullbacks as superfunctions of
/// the global curve parameter t (eta coefficients allowed, no theta content).
struct PathSegment {
  double t0 = 0.0, t1 = 1.0;
  std::vector<SuperFunction> pull;  // per coordinate
  std::vector<SuperFunction> dpull; // cached t-derivatives
};

/// Piecewise-smooth S-path on [0,1] in a single chart.
struct SPath {
  ChartSpec chart;
  int gens = 0;
  std::vector<PathSegment> segments;

  const PathSegment& segment_at(double t) const;
  SPoint eval(double t) const;
  /// Velocity components d_t(gamma^*(xi^l)) at t.
  std::vector<GrassmannElement> velocity(double t) const;

  SPoint start() const { return eval(0.0); }
  SPoint end() const { return eval(1.0); }
  bool is_closed() const;

  /// Structural checks: coverage of [0,1], pullback parities, and exact
  /// coefficientwise agreement at the knots.
  void validate() const;
};

void fill_derivatives(SPath& path);

/// Straight superline from a to b: gamma^*(xi) = a (1-t) + b t, arranged so
/// both endpoints evaluate exactly.
SPath build_straight_line(const SPoint& a, const SPoint& b);

/// Closed polygon through the points, each side a straight superline.
SPath build_polygon_loop(const std::vector<SPoint>& vertices);

/// Path with prescribed initial velocity from the exponential of the constant
/// derivation t xi^i d_i: gamma^*(xi^l) = x^l + t xi^l. Every component must
/// be nilpotent and of coordinate parity.
SPath build_velocity_path(const SPoint& x, const TangentVector& xi);

/// As build_velocity_path but without the nilpotency requirement (straight
/// shift path; used for real-direction probes).
SPath build_shift_path(const SPoint& x, const TangentVector& xi);

/// Rectangle loop at a spanned by u and v at scale s: the four-piece map
/// (4st,0), (s,s(4t-1)), (s(3-4t),s), (0,4s(1-t)) composed with
/// f(xi^i) = a^i + (-1)^{|xi^i|} u^i x + (-1)^{|xi^i|} v^i y.
SPath build_rectangle_loop(const SPoint& a, const TangentVector& u, const TangentVector& v,
                           double s);

SPath path_reverse(const SPath& p);
SPath path_concat(const SPath& second, const SPath& first); // runs first, then second

/// Substitution of eta generators inside all pullbacks (base change).
SPath path_substitute(const SPath& p, const std::vector<GrassmannElement>& images,
                      int new_gens);

SPath path_extend_gens(const SPath& p, int new_gens);

} // namespace superhol

#endif
