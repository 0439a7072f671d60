#include "ksw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ksw/quadrature.hpp"
#include "ksw/rng.hpp"
#include "ksw/spline.hpp"

namespace ksw {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(VecXd atoms_in, VecXd masses_in)
    : atoms(std::move(atoms_in)), masses(std::move(masses_in)) {
  require(atoms.size() == masses.size() && atoms.size() > 0, "atoms/masses mismatch");
  for (Eigen::Index i = 0; i < atoms.size(); ++i) {
    require(std::isfinite(atoms[i]), "non-finite atom");
    require(masses[i] > 0, "masses must be positive");
    if (i > 0) require(atoms[i] > atoms[i - 1], "atoms must be strictly increasing");
  }
  require(std::fabs(masses.sum() - 1.0) <= 1e-12, "masses must sum to 1");
}

DiscreteDistribution DiscreteDistribution::from_unsorted(
    std::vector<std::pair<double, double>> pts) {
  require(!pts.empty(), "no atoms");
  std::map<double, double> merged;
  for (auto& [x, w] : pts) merged[x] += w;
  VecXd a(static_cast<Eigen::Index>(merged.size())), m(static_cast<Eigen::Index>(merged.size()));
  Eigen::Index i = 0;
  for (auto& [x, w] : merged) {
    a[i] = x;
    m[i] = w;
    ++i;
  }
  return DiscreteDistribution(std::move(a), std::move(m));
}

VecXd DiscreteDistribution::cdf_values() const {
  VecXd c(masses.size());
  double acc = 0;
  for (Eigen::Index i = 0; i < masses.size(); ++i) {
    acc += masses[i];
    c[i] = acc;
  }
  return c;
}

MetricEstimate kolmogorov_exact(const DiscreteDistribution& p,
                                const std::function<double(double)>& cdf) {
  const VecXd cum = p.cdf_values();
  double best = 0;
  double prev = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double F = cdf(p.atoms[i]);
    best = std::max({best, cum[i] - F, F - prev});
    prev = cum[i];
  }
  return {best, EstimateKind::exact, std::nullopt, std::nullopt, std::nullopt};
}

double kolmogorov_exact_discrete(const DiscreteDistribution& p,
                                 const DiscreteDistribution& q) {
  double best = 0, fp = 0, fq = 0;
  Eigen::Index i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    double xp = i < p.size() ? p.atoms[i] : std::numeric_limits<double>::infinity();
    double xq = j < q.size() ? q.atoms[j] : std::numeric_limits<double>::infinity();
    if (xp <= xq) fp += p.masses[i++];
    if (xq <= xp) fq += q.masses[j++];
    best = std::max(best, std::fabs(fp - fq));
  }
  return best;
}

namespace {

// |c - F| over [a, b], splitting at the plateau crossing if F passes c inside
double plateau_gap_integral(const std::function<double(double)>& F, double c, double a,
                            double b, double tol) {
  double fa = F(a), fb = F(b);
  auto g = [&](double t) { return std::fabs(c - F(t)); };
  if ((fa - c) * (fb - c) < 0) {
    double lo = a, hi = b;
    for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, std::fabs(hi)); ++it) {
      double mid = 0.5 * (lo + hi);
      ((F(mid) < c) == (fa < c) ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    return adaptive_quad(g, a, t, tol / 2) + adaptive_quad(g, t, b, tol / 2);
  }
  return adaptive_quad(g, a, b, tol);
}

}  // namespace

MetricEstimate wasserstein1d_exact(const DiscreteDistribution& p,
                                   const std::function<double(double)>& cdf,
                                   const std::function<double(double)>& quantile) {
  const VecXd cum = p.cdf_values();
  const double tol = 1e-12;
  double total = 0;

  // left tail: F_p = 0 below the first atom
  {
    double a = std::min(p.atoms[0], quantile(1e-14));
    if (a < p.atoms[0])
      total += adaptive_quad([&](double t) { return cdf(t); }, a, p.atoms[0], tol);
  }
  for (Eigen::Index i = 0; i + 1 < p.size(); ++i)
    total += plateau_gap_integral(cdf, cum[i], p.atoms[i], p.atoms[i + 1], tol);
  {
    double b = std::max(p.atoms[p.size() - 1], quantile(1.0 - 1e-14));
    if (b > p.atoms[p.size() - 1])
      total += adaptive_quad([&](double t) { return 1.0 - cdf(t); },
                             p.atoms[p.size() - 1], b, tol);
  }
  return {total, EstimateKind::exact, std::nullopt, std::nullopt, std::nullopt};
}

MetricEstimate wasserstein1d_exact(const DiscreteDistribution& p, const Target& target) {
  return wasserstein1d_exact(
      p, [&target](double y) { return cdf(target, y); },
      [&target](double u) { return quantile(target, u); });
}

WitnessGrid default_witness_grid(const Target& target) {
  WitnessGrid g;
  g.z_candidates.resize(99);
  for (int i = 1; i <= 99; ++i) g.z_candidates[i - 1] = quantile(target, i / 100.0);
  g.alpha_candidates.resize(14);
  for (int k = 0; k < 14; ++k) g.alpha_candidates[k] = std::exp2(static_cast<double>(k - 12));
  g.refine = true;
  return g;
}

namespace {

struct WitnessEvaluator {
  const BaseSpline& base;
  const DiscreteDistribution& pX;
  const Target& y;
  double max_base_norm_at(double alpha) const {
    double best = 0;
    for (int i = 0; i <= base.order(); ++i)
      best = std::max(best, static_cast<double>(base.sup_norm(i)) *
                                std::pow(2.0 / alpha, i));
    return best;
  }
  double operator()(double z, double alpha) const {
    // E h(X): exact sum over atoms through the base spline
    double ehx = 0;
    for (Eigen::Index i = 0; i < pX.size(); ++i) {
      double u = (2.0 / alpha) * (pX.atoms[i] - (z + alpha / 2));
      ehx += pX.masses[i] * static_cast<double>(base(static_cast<Real>(u)));
    }
    // E h(Y) = F(z) + int_z^{z+alpha} h p: per-piece Gauss rule in the base
    // coordinate, where h is a single polynomial
    double ehy = cdf(y, z);
    const auto& knots = base.poly().knots();
    for (Eigen::Index k = 0; k + 1 < knots.size(); ++k) {
      double u0 = static_cast<double>(knots[k]), u1 = static_cast<double>(knots[k + 1]);
      auto f = [&](double u) {
        double yy = z + alpha / 2 + (alpha / 2) * u;
        return static_cast<double>(base(static_cast<Real>(u))) * density(y, yy);
      };
      ehy += (alpha / 2) * gl15(f, u0, u1);
    }
    return std::fabs(ehx - ehy) / max_base_norm_at(alpha);
  }
};

}  // namespace

MetricEstimate witness_dm_lower_bound(const DiscreteDistribution& pX, const Target& y,
                                      int m, const WitnessGrid& grid) {
  require(grid.z_candidates.size() > 0 && grid.alpha_candidates.size() > 0,
          "empty witness grid");
  BaseSpline base(m);
  WitnessEvaluator ev{base, pX, y};
  double best = 0, best_z = grid.z_candidates[0], best_alpha = grid.alpha_candidates[0];
  for (Eigen::Index zi = 0; zi < grid.z_candidates.size(); ++zi)
    for (Eigen::Index ai = 0; ai < grid.alpha_candidates.size(); ++ai) {
      double v = ev(grid.z_candidates[zi], grid.alpha_candidates[ai]);
      if (v > best) {
        best = v;
        best_z = grid.z_candidates[zi];
        best_alpha = grid.alpha_candidates[ai];
      }
    }
  if (grid.refine) {
    double dz = 0;
    for (Eigen::Index zi = 0; zi + 1 < grid.z_candidates.size(); ++zi)
      dz = std::max(dz, grid.z_candidates[zi + 1] - grid.z_candidates[zi]);
    if (dz == 0) dz = std::max(1.0, std::fabs(best_z)) * 0.01;
    for (int iz = -2; iz <= 2; ++iz)
      for (int ia = -2; ia <= 2; ++ia) {
        double z = best_z + 0.25 * dz * iz;
        double alpha = best_alpha * std::exp2(0.25 * ia);
        best = std::max(best, ev(z, alpha));
      }
  }
  return {best, EstimateKind::witness_lower_bound, std::nullopt, std::nullopt,
          std::nullopt};
}

IndexedSampler quantile_transform_sampler(const Target& target) {
  return [target](uint64_t seed, uint64_t index) {
    return quantile(target, uniform01(seed, index));
  };
}

MetricEstimate monte_carlo_kolmogorov(const IndexedSampler& sampler,
                                      const std::function<double(double)>& cdf,
                                      long long n, uint64_t seed) {
  require(n >= 100, "need at least 100 samples");
  std::vector<double> xs(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i)
    xs[static_cast<size_t>(i)] = sampler(seed, static_cast<uint64_t>(i));
  std::sort(xs.begin(), xs.end());
  double best = 0;
  for (long long i = 0; i < n; ++i) {
    double F = cdf(xs[static_cast<size_t>(i)]);
    best = std::max({best, (i + 1.0) / n - F, F - static_cast<double>(i) / n});
  }
  // DKW band at 95%: sqrt(log(2/0.05) / (2n))
  double half_width = std::sqrt(std::log(2.0 / 0.05) / (2.0 * n));
  return {best, EstimateKind::monte_carlo, half_width, n, seed};
}

}  // namespace ksw
