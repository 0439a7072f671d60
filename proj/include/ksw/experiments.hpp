#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ksw/bounds.hpp"
#include "ksw/metrics.hpp"

namespace ksw {

/// Polya-Eggenberger urn: alpha0 white and beta0 black balls, each draw
/// replaced with t extra balls of the drawn colour, n draws.
struct UrnSpec {
  long alpha0 = 1;
  long beta0 = 1;
  long t = 1;
  long n = 1;
};

/// Exact law of the white-draw count S_n (beta-binomial by exchangeability),
/// computed in log space; atoms with underflowed mass are dropped.
DiscreteDistribution urn_exact_pmf(const UrnSpec& spec);

struct ExperimentReport {
  std::string experiment;
  std::string params;
  long n = 0;
  double dm_input = 0;
  MetricEstimate exact_dK;
  std::optional<MetricEstimate> exact_dW;
  BoundResult bound;
  bool inequality_holds = false;
  double margin = 0;
  std::string notes;
};

/// Exact end-to-end urn validation: W_n = S_n/n against Beta(alpha0/t,
/// beta0/t), exact Wasserstein distance fed into the universal beta bound.
ExperimentReport validate_urn(const UrnSpec& spec, int m = 1);

enum class CltDist { rademacher, uniform, exponential_centered };

/// CLT validation for W_n = n^-1/2 sum X_i against N(0,1): exact binomial
/// Kolmogorov distance for rademacher, Monte Carlo with a DKW band otherwise;
/// the d_m input is the Wasserstein-bound surrogate (2 + E|X|^3)/sqrt(n).
ExperimentReport validate_clt(CltDist dist, long n, int m = 1, long n_mc = 200000,
                              uint64_t seed = 1);

/// Max over a random (z, alpha) grid of the box-increment probability minus
/// its dimension-aware bound, for a diagonal Gaussian with per-coordinate
/// standard deviation sigma. Non-positive output means no violation.
double nazarov_probe(int dim, double sigma, int n_grid, uint64_t seed);

/// Coordinatewise rounding of a standard Gaussian vector to a step-h lattice:
/// d_m(X, Y) <= h sqrt(d)/2 by the rounding coupling, compared against the
/// multivariate normal bound; the measured Kolmogorov distance is the exact
/// per-axis sweep combined conservatively across coordinates.
ExperimentReport validate_mvn_discretization(int dim, double step, int m,
                                             uint64_t seed = 0);

extern const char* const kExperimentCsvHeader;
std::string experiment_csv_row(const ExperimentReport& rep);

}  // namespace ksw
