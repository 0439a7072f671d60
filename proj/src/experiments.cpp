#include "ksw/experiments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ksw/json_io.hpp"
#include "ksw/rng.hpp"

namespace ksw {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

long double lchoose(long n, long k) {
  return std::lgamma(static_cast<long double>(n + 1)) -
         std::lgamma(static_cast<long double>(k + 1)) -
         std::lgamma(static_cast<long double>(n - k + 1));
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

DiscreteDistribution urn_exact_pmf(const UrnSpec& spec) {
  require(spec.alpha0 >= 1 && spec.beta0 >= 1, "need at least one ball of each colour");
  require(spec.t >= 1, "reinforcement must be >= 1");
  require(spec.n >= 1, "need at least one draw");
  const long n = spec.n;
  // prefix log products: each mass is O(1) to evaluate
  std::vector<long double> lw(n + 1, 0), lb(n + 1, 0);
  for (long k = 1; k <= n; ++k) {
    lw[k] = lw[k - 1] + std::log(static_cast<long double>(spec.alpha0 + (k - 1) * spec.t));
    lb[k] = lb[k - 1] + std::log(static_cast<long double>(spec.beta0 + (k - 1) * spec.t));
  }
  long double ld = 0;
  for (long l = 0; l < n; ++l)
    ld += std::log(static_cast<long double>(spec.alpha0 + spec.beta0 + l * spec.t));

  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<size_t>(n + 1));
  for (long k = 0; k <= n; ++k) {
    long double lp = lchoose(n, k) + lw[k] + lb[n - k] - ld;
    double mass = static_cast<double>(std::exp(lp));
    if (mass > 0) pts.emplace_back(static_cast<double>(k), mass);
  }
  return DiscreteDistribution::from_unsorted(std::move(pts));
}

ExperimentReport validate_urn(const UrnSpec& spec, int m) {
  const double ap = static_cast<double>(spec.alpha0) / spec.t;
  const double bp = static_cast<double>(spec.beta0) / spec.t;
  BetaTarget beta(ap, bp);

  DiscreteDistribution s = urn_exact_pmf(spec);
  DiscreteDistribution w(s.atoms / static_cast<double>(spec.n), s.masses);

  Target target(beta);
  MetricEstimate dW = wasserstein1d_exact(w, target);
  MetricEstimate dK = kolmogorov_exact(w, [&](double y) { return beta.cdf(y); });
  BoundResult bound = beta_universal_bound(beta, m, dW.value);

  ExperimentReport rep;
  rep.experiment = "urn";
  std::ostringstream ps;
  ps << "alpha=" << spec.alpha0 << ";beta=" << spec.beta0 << ";t=" << spec.t;
  rep.params = ps.str();
  rep.n = spec.n;
  rep.dm_input = dW.value;
  rep.exact_dK = dK;
  rep.exact_dW = dW;
  rep.bound = bound;
  rep.inequality_holds = !bound.valid || dK.value <= bound.bound;
  rep.margin = bound.bound - dK.value;
  rep.notes = "d_m input is the exact Wasserstein distance (d_1 <= d_W)";
  return rep;
}

ExperimentReport validate_clt(CltDist dist, long n, int m, long n_mc, uint64_t seed) {
  require(n >= 1, "need n >= 1");
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
  double abs_third_moment = 0;
  std::string name;
  switch (dist) {
    case CltDist::rademacher:
      abs_third_moment = 1.0;
      name = "rademacher";
      break;
    case CltDist::uniform:
      abs_third_moment = 3.0 * std::sqrt(3.0) / 4.0;  // E|X|^3, X ~ U(-sqrt3, sqrt3)
      name = "uniform";
      break;
    case CltDist::exponential_centered:
      abs_third_moment = 12.0 / M_E - 2.0;  // E|X|^3, X = Exp(1) - 1
      name = "exponential-centered";
      break;
  }
  const double dm = (2.0 + abs_third_moment) / std::sqrt(static_cast<double>(n));
  BoundResult bound = bound_bounded(inv_sqrt_2pi, m, dm, /*strict=*/true);

  ExperimentReport rep;
  rep.experiment = "clt";
  rep.params = "dist=" + name;
  rep.n = n;
  rep.dm_input = dm;
  rep.bound = bound;

  if (dist == CltDist::rademacher) {
    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<std::pair<double, double>> pts;
    for (long k = 0; k <= n; ++k) {
      long double lp = lchoose(n, k) - n * 0.6931471805599453094L;
      double mass = static_cast<double>(std::exp(lp));
      if (mass > 0) pts.emplace_back((2.0 * k - n) / root_n, mass);
    }
    DiscreteDistribution w = DiscreteDistribution::from_unsorted(std::move(pts));
    rep.exact_dK = kolmogorov_exact(w, norm_cdf);
    rep.inequality_holds = !bound.valid || rep.exact_dK.value <= bound.bound;
    rep.margin = bound.bound - rep.exact_dK.value;
    rep.notes = "exact binomial law";
  } else {
    IndexedSampler wn = [dist, n](uint64_t sd, uint64_t idx) {
      double s = 0;
      for (long i = 0; i < n; ++i) {
        uint64_t stream = idx * static_cast<uint64_t>(n) + static_cast<uint64_t>(i);
        double u = uniform01(sd, stream);
        switch (dist) {
          case CltDist::uniform:
            s += std::sqrt(3.0) * (2 * u - 1);
            break;
          case CltDist::exponential_centered:
            s += -std::log1p(-u) - 1.0;
            break;
          default:
            break;
        }
      }
      return s / std::sqrt(static_cast<double>(n));
    };
    rep.exact_dK = monte_carlo_kolmogorov(wn, norm_cdf, n_mc, seed);
    const double band = rep.exact_dK.stderr_value.value_or(0);
    rep.inequality_holds = !bound.valid || rep.exact_dK.value + band <= bound.bound;
    rep.margin = bound.bound - (rep.exact_dK.value + band);
    rep.notes = "Monte Carlo statistic, DKW band added before comparing";
  }
  return rep;
}

double nazarov_probe(int dim, double sigma, int n_grid, uint64_t seed) {
  require(dim >= 1 && dim <= 50, "dimension must be in [1, 50]");
  require(sigma > 0, "sigma must be positive");
  require(n_grid >= 1, "need at least one grid point");
  const double rhs_factor =
      (std::sqrt(2.0 * std::log(static_cast<double>(dim))) + 2.0) / sigma;
  double worst = -std::numeric_limits<double>::infinity();
  for (int g = 0; g < n_grid; ++g) {
    uint64_t base = static_cast<uint64_t>(g) * (static_cast<uint64_t>(dim) + 1);
    // alpha log-uniform in [1e-3, 1]
    double alpha = std::exp(std::log(1e-3) +
                            std::log(1e3) * uniform01(seed, base + static_cast<uint64_t>(dim)));
    double lhs_hi = 1, lhs_lo = 1;
    for (int j = 0; j < dim; ++j) {
      double z = sigma * (8.0 * uniform01(seed, base + static_cast<uint64_t>(j)) - 4.0);
      lhs_hi *= norm_cdf((z + alpha) / sigma);
      lhs_lo *= norm_cdf(z / sigma);
    }
    worst = std::max(worst, (lhs_hi - lhs_lo) - alpha * rhs_factor);
  }
  return worst;
}

ExperimentReport validate_mvn_discretization(int dim, double step, int m, uint64_t seed) {
  require(dim >= 1 && dim <= 3, "exact sweep supports dim <= 3");
  require(step >= 0, "step must be non-negative");
  (void)seed;  // the sweep is deterministic

  const double dm = step * std::sqrt(static_cast<double>(dim)) / 2.0;
  MvnTarget target{dim, VecXd::Ones(dim)};
  auto [uncond, strict] = bound_mvn(target, m, dm);
  BoundResult bound = strict.valid ? strict : uncond;

  double dk1 = 0;
  if (step > 0) {
    const long K = static_cast<long>(std::ceil(10.0 / step)) + 1;
    for (long k = -K; k <= K; ++k) {
      double lo = norm_cdf(step * k), mid = norm_cdf(step * (k + 0.5)),
             hi = norm_cdf(step * (k + 1));
      dk1 = std::max({dk1, mid - lo, hi - mid});
    }
  }
  const double dk_est = std::min(1.0, dim * dk1);

  ExperimentReport rep;
  rep.experiment = "mvn-disc";
  std::ostringstream ps;
  ps << "dim=" << dim << ";h=" << fmt17(step);
  rep.params = ps.str();
  rep.n = dim;
  rep.dm_input = dm;
  rep.exact_dK = {dk_est, EstimateKind::exact, std::nullopt, std::nullopt, std::nullopt};
  rep.bound = bound;
  rep.inequality_holds = !bound.valid || dk_est <= bound.bound;
  rep.margin = bound.bound - dk_est;
  rep.notes = "d_K is the exact per-axis sweep, combined as a sum across axes";
  return rep;
}

const char* const kExperimentCsvHeader =
    "experiment,params,n,dm_input,alpha,bound,exact_dK,margin,valid";

std::string experiment_csv_row(const ExperimentReport& rep) {
  std::ostringstream os;
  os << rep.experiment << ',' << rep.params << ',' << rep.n << ','
     << fmt17(rep.dm_input) << ',' << fmt17(rep.bound.alpha) << ','
     << fmt17(rep.bound.bound) << ',' << fmt17(rep.exact_dK.value) << ','
     << fmt17(rep.margin) << ',' << (rep.bound.valid ? "true" : "false");
  return os.str();
}

}  // namespace ksw
