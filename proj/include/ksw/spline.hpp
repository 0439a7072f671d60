#pragma once

#include <string>
#include <vector>

#include "ksw/piecewise_poly.hpp"
#include "ksw/types.hpp"

namespace ksw {

struct CertificationReport {
  int m = 0;
  Real tol = 0;
  /// max over interior breakpoints and orders 0..m-1 of |left limit - right limit|
  Real max_continuity_residual = 0;
  /// max of (h - 1)+ and (-h)+ over a dense grid of [-1, 1]
  Real max_range_violation = 0;
  /// sup |h(x) + h(-x) - 1| over a dense grid
  Real max_symmetry_residual = 0;
  /// max over pieces of | |h^(m)| - 2^(m-2)(m-1)! | / (2^(m-2)(m-1)!)
  Real max_top_derivative_relerr = 0;
  bool pass = false;
};

/// The order-m ramp h_m: 1 on (-inf,-1], 0 on [1,inf), a degree-m perfect
/// spline in between with breakpoints at +-cos(pi k / m).
class BaseSpline {
 public:
  explicit BaseSpline(int m);

  int order() const { return m_; }
  const PiecewisePoly<Real>& poly() const { return pp_; }

  Real operator()(Real x) const { return pp_(x); }
  Real derivative(Real x, int order) const { return pp_.derivative(x, order); }

  /// sup |h_m^(i)|, exact from per-piece extremum search; cached.
  Real sup_norm(int i) const;

  CertificationReport certify(Real tol) const;

 private:
  int m_;
  PiecewisePoly<Real> pp_;
  mutable std::vector<Real> norm_cache_;  // filled at construction, index 0..m
  friend BaseSpline make_uncertified_for_test(int m);
  BaseSpline(int m, PiecewisePoly<Real> pp) : m_(m), pp_(std::move(pp)) {}
};

/// Builds h_m and certifies it at tolerance 1e-10; throws std::logic_error
/// if certification fails (an implementation bug, not a user error).
BaseSpline construct_base_spline(int m);

/// Certification of an arbitrary (m, poly) pair, e.g. after deserialization
/// or fault injection.
CertificationReport certify_membership(int m, const PiecewisePoly<Real>& pp, Real tol);

/// h_{m,z,alpha}(x) = h_m((2/alpha)(x - (z + alpha/2))): equals 1 on
/// (-inf, z], 0 on [z + alpha, inf).
class SmoothedIndicator {
 public:
  SmoothedIndicator(int m, Real z, Real alpha, PiecewisePoly<Real> pp)
      : m_(m), z_(z), alpha_(alpha), pp_(std::move(pp)) {}

  int order() const { return m_; }
  Real z() const { return z_; }
  Real alpha() const { return alpha_; }
  const PiecewisePoly<Real>& poly() const { return pp_; }

  Real operator()(Real x) const { return pp_(x); }
  Real derivative(Real x, int order) const { return pp_.derivative(x, order); }

 private:
  int m_;
  Real z_;
  Real alpha_;
  PiecewisePoly<Real> pp_;
};

SmoothedIndicator scale_translate(const BaseSpline& base, Real z, Real alpha);

/// Product of coordinatewise smoothed indicators with a common alpha:
/// 1 on {x <= z}, 0 once any coordinate passes z_j + alpha.
class ProductIndicator {
 public:
  ProductIndicator(int m, VecXr z, Real alpha, std::vector<SmoothedIndicator> factors)
      : m_(m), z_(std::move(z)), alpha_(alpha), factors_(std::move(factors)) {}

  int dim() const { return static_cast<int>(factors_.size()); }
  int order() const { return m_; }
  Real alpha() const { return alpha_; }
  const VecXr& z() const { return z_; }
  const std::vector<SmoothedIndicator>& factors() const { return factors_; }

  Real operator()(const VecXr& x) const;

 private:
  int m_;
  VecXr z_;
  Real alpha_;
  std::vector<SmoothedIndicator> factors_;
};

ProductIndicator product_indicator(int m, const VecXr& z, Real alpha);

/// Residuals of the four alternating cosine-power sum families used to prove
/// smoothness of h_m at the origin, for a given n (even order 2n, odd 2n+1).
struct KnotIdentityResiduals {
  Real even_top = 0;    // sum_{j=1}^{n-1} (-1)^{j+1} cos^{2n}(pi j/2n) vs 1/2 - n/2^{2n-1}
  Real even_lower = 0;  // same sum with exponent 2l, l = 1..n-1, vs 1/2
  Real odd_top = 0;     // sum_{j=1}^{n} (-1)^{j+1} cos^{2n+1}(pi j/(2n+1)) vs 1/2 - (2n+1)/2^{2n+1}
  Real odd_lower = 0;   // exponent 2l+1, l = 0..n-1, vs 1/2
  Real max() const;
};

KnotIdentityResiduals verify_knot_identities(int n);

/// JSON round trip: {"m": int, "knots": [decimal strings], "pieces": [[...]]}
/// with 25 significant digits, deterministic field order. The constant outer
/// values 1 (left) and 0 (right) are implied.
std::string spline_to_json(int m, const PiecewisePoly<Real>& pp);

struct LoadedSpline {
  int m;
  PiecewisePoly<Real> pp;
};
LoadedSpline spline_from_json(const std::string& text);

}  // namespace ksw
