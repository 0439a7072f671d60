#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksw/types.hpp"

namespace ksw {

enum class SingKind { Bounded, Log, Power, LogPower };

/// Local behaviour class of a target density near its singular points,
/// with the envelope constants consumed by the bound formulas.
struct SingularityProfile {
  SingKind kind = SingKind::Bounded;
  double A = 0;        // envelope scale
  double c = 0;        // log scale (Log, LogPower)
  double a = 0;        // power exponent, (0,1) for Power, [0,1) for LogPower
  double b = 0;        // log power (LogPower)
  double epsilon = 0;  // neighbourhood radius; ignored by Bounded
  int n_singularities = 1;
  double B_offset = 0;

  static SingularityProfile bounded(double A, double B = 0);
  static SingularityProfile log_type(double A, double c, double eps, int n = 1,
                                     double B = 0);
  static SingularityProfile power(double A, double a, double eps, int n = 1);
  static SingularityProfile log_power(double A, double c, double a, double b,
                                      double eps, int n = 1, double B = 0);
};

/// One evaluated Kolmogorov-distance bound: the formula applied, the
/// smoothing width the formula selects, the raw value and the value capped
/// at 1, and whether the formula's precondition on d_m holds.
struct BoundResult {
  std::string formula_id;
  int m = 0;
  double d_m = 0;
  double alpha = 0;
  double raw_bound = 0;
  double bound = 0;  // clamped to [0, 1]
  bool valid = false;
  double validity_threshold = 0;  // +inf when unconditional
  std::string notes;
};

double pos_log(double x);  // max(0, ln x)

BoundResult bound_bounded(double A, int m, double dm, bool strict);
BoundResult bound_log(const SingularityProfile& p, int m, double dm, bool strict);
BoundResult bound_power(const SingularityProfile& p, int m, double dm, bool strict);
BoundResult bound_log_power(const SingularityProfile& p, int m, double dm, bool strict);
BoundResult bound_for_profile(const SingularityProfile& p, int m, double dm, bool strict);

/// Multivariate normal target data. The paper states both a variance and a
/// standard-deviation reading for sigma; this library fixes sigma as the
/// square root of the smallest diagonal entry of the covariance (the
/// variance-floor convention of the box-increment inequality).
struct MvnTarget {
  int dim = 1;
  VecXd covariance_diag;
  double sigma_min() const;
};

/// Returns {unconditional bound, sharper conditional bound}.
std::pair<BoundResult, BoundResult> bound_mvn(const MvnTarget& target, int m, double dm);

/// Aggregates of the exchangeable-pair theorems feeding the two corollary
/// bounds; A, B, C are taken as computed inputs, not derived here.
struct ExchangeablePairInputs {
  double A = 0;
  double B = 0;
  double C = 0;
  int dim = 1;
  double sigma = 1;           // min sqrt((Sigma)_jj)
  double sigma_star = 1;      // min_i ||row_i(Sigma^-1/2)||_2
  double sup_norm_Sigma = 1;  // max |(Sigma)_ij|
};

std::pair<BoundResult, BoundResult> exchangeable_pair_bounds(
    const ExchangeablePairInputs& in, std::optional<double> d3 = std::nullopt,
    std::optional<double> d2 = std::nullopt);

/// Proof-level multivariate rate bound with user-supplied per-order envelope
/// coefficients; the universal constants of the compact statement are not
/// explicit, so only this concrete form and the rate exponent are computed.
struct MultivariateRateSpec {
  SingKind variant = SingKind::Bounded;  // Bounded, Log or Power
  std::vector<double> C;                 // envelope coefficient per order 1..d
  std::vector<double> D;                 // additive per-order terms (Log only)
  double a = 0;                          // Power exponent
  double c = 1;                          // Log scale
};

BoundResult bound_multivariate_rate(const MultivariateRateSpec& spec, int m, double dm,
                                    double alpha_max = 2.0);

struct AlphaOpt {
  double alpha;
  double value;
};

/// Scalar minimization of a smoothing-width objective over (0, alpha_max]:
/// coarse log-spaced scan, then golden-section refinement. Ties prefer the
/// larger width, so a flat objective returns the right endpoint.
AlphaOpt optimize_alpha_numeric(const std::function<double(double)>& objective,
                                double alpha_max);

}  // namespace ksw
