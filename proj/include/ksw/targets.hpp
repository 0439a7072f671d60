#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "ksw/bounds.hpp"
#include "ksw/types.hpp"

namespace ksw {

/// Modified Bessel function of the second kind, real order; symmetric in nu.
double bessel_k(double nu, double x);

struct NormalTarget {
  double mu = 0;
  double sigma = 1;
  double density(double y) const;
  double cdf(double y) const;
  double quantile(double u) const;
};

struct ExponentialTarget {
  double lambda = 1;
  double density(double y) const;
  double cdf(double y) const;
  double quantile(double u) const;
};

struct UniformTarget {
  double a = 0;
  double b = 1;
  double density(double y) const;
  double cdf(double y) const;
  double quantile(double u) const;
};

/// Beta(alpha, beta) with quadrature-backed CDF. Endpoint singularities for
/// shapes below 1 are integrated under the exact power substitution, so the
/// cached CDF is accurate to ~1e-12 for every shape pair.
class BetaTarget {
 public:
  BetaTarget(double alpha_p, double beta_p);
  double alpha_p() const { return a_; }
  double beta_p() const { return b_; }
  double log_beta_fn() const { return lbeta_; }
  double density(double y) const;
  double cdf(double y) const;
  double quantile(double u) const;
  double normalization_error() const;  // |raw integral - 1|

 private:
  double a_, b_, lbeta_;
  struct Cache;
  std::shared_ptr<const Cache> cache_;
};

/// Variance-gamma target: bounded density for r > 1, log singularity at mu
/// for r = 1, power singularity |y-mu|^(r-1) for 0 < r < 1.
class VarianceGammaTarget {
 public:
  VarianceGammaTarget(double r, double theta, double sigma, double mu);
  double r() const { return r_; }
  double theta() const { return theta_; }
  double sigma() const { return sigma_; }
  double mu() const { return mu_; }
  double density(double y) const;  // +inf at y = mu when r <= 1
  double cdf(double y) const;
  double quantile(double u) const;
  double normalization_error() const;
  double truncation_bound() const;  // mass outside the cached window

 private:
  double r_, theta_, sigma_, mu_;
  struct Cache;
  std::shared_ptr<const Cache> cache_;
};

using Target =
    std::variant<NormalTarget, ExponentialTarget, UniformTarget, BetaTarget,
                 VarianceGammaTarget>;

double density(const Target& t, double y);
double cdf(const Target& t, double y);
double quantile(const Target& t, double u);
/// Points where the density is singular (empty for bounded densities).
VecXd singular_points(const Target& t);

/// Parameter-regime routing for the beta density: the case-specific profile
/// plus the universal constants that hold for every shape pair.
struct BetaProfile {
  int case_id;  // 1: both shapes >= 1; 2: exactly one below 1; 3: both below 1
  SingularityProfile case_profile;
  double s;  // min(alpha, beta, 1), the universal exponent driver
  VecXd singularities;
};

BetaProfile beta_profile(const BetaTarget& t);

/// The all-parameter beta bound (universal route), formula id E3.3-iv.
BoundResult beta_universal_bound(const BetaTarget& t, int m, double dm);

SingularityProfile vg_profile(const VarianceGammaTarget& t);

struct EnvelopeCheck {
  double max_pointwise_violation;  // max over grid of p(y) - envelope(y)
  double max_interval_violation;   // max over sampled intervals of mass excess
};

/// Verifies that the density sits below the profile's envelope near each
/// singular point (or globally for Bounded), and spot-checks the
/// interval-mass condition against the closed-form envelope mass.
EnvelopeCheck envelope_check(const Target& t, const SingularityProfile& profile,
                             const VecXd& singularities, int grid_size);

}  // namespace ksw
