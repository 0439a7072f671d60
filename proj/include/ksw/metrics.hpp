#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ksw/targets.hpp"
#include "ksw/types.hpp"

namespace ksw {

/// Finitely supported distribution: strictly increasing atoms, positive
/// masses summing to 1 within 1e-12.
struct DiscreteDistribution {
  VecXd atoms;
  VecXd masses;

  DiscreteDistribution(VecXd atoms_in, VecXd masses_in);
  static DiscreteDistribution from_unsorted(std::vector<std::pair<double, double>> pts);

  Eigen::Index size() const { return atoms.size(); }
  /// Right-continuous CDF values at the atoms.
  VecXd cdf_values() const;
};

enum class EstimateKind { exact, monte_carlo, witness_lower_bound };

struct MetricEstimate {
  double value = 0;
  EstimateKind kind = EstimateKind::exact;
  std::optional<double> stderr_value;  // present iff monte_carlo
  std::optional<long long> n_samples;
  std::optional<uint64_t> seed;
};

/// sup_z |F_p(z) - F(z)| for a continuous CDF F: exact from the atom-wise
/// one-sided gaps.
MetricEstimate kolmogorov_exact(const DiscreteDistribution& p,
                                const std::function<double(double)>& cdf);

/// Exact Kolmogorov distance between two finitely supported distributions.
double kolmogorov_exact_discrete(const DiscreteDistribution& p,
                                 const DiscreteDistribution& q);

/// Exact 1-D Wasserstein distance via the CDF-difference integral: piecewise
/// integration between atoms (split at the crossing of each plateau) plus
/// tail integrals.
MetricEstimate wasserstein1d_exact(const DiscreteDistribution& p,
                                   const std::function<double(double)>& cdf,
                                   const std::function<double(double)>& quantile);
MetricEstimate wasserstein1d_exact(const DiscreteDistribution& p, const Target& target);

struct WitnessGrid {
  VecXd z_candidates;
  VecXd alpha_candidates;
  bool refine = true;
};

/// Default search grid: z over the target's percent quantiles, alpha over a
/// geometric ladder 2^-12 .. 2, with one local refinement pass.
WitnessGrid default_witness_grid(const Target& target);

/// Certified lower bound on d_m(X, Y): the defining supremum evaluated at
/// normalized smoothed indicators g = h_{m,z,alpha} / max_i |h^(i)|, which
/// lie in the order-m test class by construction.
MetricEstimate witness_dm_lower_bound(const DiscreteDistribution& pX, const Target& y,
                                      int m, const WitnessGrid& grid);

/// Deterministic sampler: sample i of a run is a pure function of (seed, i).
using IndexedSampler = std::function<double(uint64_t seed, uint64_t index)>;

IndexedSampler quantile_transform_sampler(const Target& target);

/// One-sample Kolmogorov-Smirnov statistic with a DKW 95% half-width as the
/// stderr proxy; identical (seed, n) gives identical output.
MetricEstimate monte_carlo_kolmogorov(const IndexedSampler& sampler,
                                      const std::function<double(double)>& cdf,
                                      long long n, uint64_t seed);

}  // namespace ksw
