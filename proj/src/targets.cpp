#include "ksw/targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ksw/constants.hpp"
#include "ksw/quadrature.hpp"
#include "ksw/rng.hpp"

namespace ksw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

/// Generic bisection inverse of a monotone CDF on [lo, hi].
double invert_cdf(const std::function<double(double)>& F, double u, double lo,
                  double hi) {
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    double v = F(mid);
    if (std::fabs(v - u) <= 1e-13) return mid;
    (v < u ? a : b) = mid;
    if (b - a <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(b)))
      break;
  }
  return 0.5 * (a + b);
}

}  // namespace

double bessel_k(double nu, double x) {
  require(x > 0, "bessel_k requires x > 0");
  return std::cyl_bessel_k(std::fabs(nu), x);  // K_nu = K_-nu
}

// ---------------------------------------------------------------------------
// simple targets

double NormalTarget::density(double y) const {
  double z = (y - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * M_PI));
}
double NormalTarget::cdf(double y) const {
  return 0.5 * std::erfc(-(y - mu) / (sigma * std::sqrt(2.0)));
}
double NormalTarget::quantile(double u) const {
  require(u > 0 && u < 1, "quantile needs u in (0,1)");
  auto F = [this](double y) { return cdf(y); };
  return invert_cdf(F, u, mu - 15 * sigma, mu + 15 * sigma);
}

double ExponentialTarget::density(double y) const {
  return y < 0 ? 0.0 : lambda * std::exp(-lambda * y);
}
double ExponentialTarget::cdf(double y) const {
  return y < 0 ? 0.0 : -std::expm1(-lambda * y);
}
double ExponentialTarget::quantile(double u) const {
  require(u >= 0 && u < 1, "quantile needs u in [0,1)");
  return -std::log1p(-u) / lambda;
}

double UniformTarget::density(double y) const {
  return (y < a || y > b) ? 0.0 : 1.0 / (b - a);
}
double UniformTarget::cdf(double y) const {
  if (y <= a) return 0;
  if (y >= b) return 1;
  return (y - a) / (b - a);
}
double UniformTarget::quantile(double u) const {
  require(u >= 0 && u <= 1, "quantile needs u in [0,1]");
  return a + u * (b - a);
}

// ---------------------------------------------------------------------------
// one-sided cumulative mass tables
//
// Both quadrature-backed targets store, per side of a reference point, panel
// boundaries in a monotone coordinate plus cumulative masses. Power-law
// endpoints are integrated in the substituted coordinate u = w^power, under
// which the integrand is bounded; dyadic panels toward the endpoint keep
// every panel smooth at the 15-point rule's accuracy.

namespace {

struct SideTable {
  // integrand over the table coordinate; mass(w) integrates it on [0, coord(w)]
  std::function<double(double)> integrand;
  double power = 1;  // table coordinate is w^power (1 = plain distance)
  std::vector<double> bounds;  // ascending, bounds.front() == 0
  std::vector<double> cum;     // cumulative integral at bounds

  void build(const std::vector<double>& interior_bounds) {
    bounds.assign(1, 0.0);
    bounds.insert(bounds.end(), interior_bounds.begin(), interior_bounds.end());
    cum.assign(bounds.size(), 0.0);
    for (size_t i = 1; i < bounds.size(); ++i)
      cum[i] = cum[i - 1] + gl15(integrand, bounds[i - 1], bounds[i]);
  }

  double total() const { return cum.back(); }

  double mass(double w) const {  // integral over distances [0, w]
    if (w <= 0) return 0;
    double x = power == 1 ? w : std::pow(w, power);
    if (x >= bounds.back()) return cum.back();
    size_t i = std::upper_bound(bounds.begin(), bounds.end(), x) - bounds.begin() - 1;
    return cum[i] + gl15(integrand, bounds[i], x);
  }

  double max_coord() const { return bounds.back(); }
};

// dyadic ladder from range*2^-52 up to range, then optional uniform tail
std::vector<double> dyadic_then_uniform(double near_range, double far_range,
                                        double far_step) {
  std::vector<double> v;
  for (int j = 52; j >= 1; --j) v.push_back(near_range * std::exp2(-j));
  v.push_back(near_range);
  if (far_range > near_range) {
    int steps = static_cast<int>(std::ceil((far_range - near_range) / far_step));
    for (int i = 1; i <= steps; ++i)
      v.push_back(std::min(far_range, near_range + far_step * i));
  }
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// beta target

struct BetaTarget::Cache {
  SideTable left, right;  // mass from 0 upward / from 1 downward, up to 1/2
  double total = 0;
};

BetaTarget::BetaTarget(double alpha_p, double beta_p) : a_(alpha_p), b_(beta_p) {
  require(alpha_p > 0 && beta_p > 0, "beta shapes must be positive");
  lbeta_ = std::lgamma(a_) + std::lgamma(b_) - std::lgamma(a_ + b_);
  auto cache = std::make_shared<Cache>();

  auto raw_density = [this](double y) {
    return std::exp((a_ - 1) * std::log(y) + (b_ - 1) * std::log1p(-y) - lbeta_);
  };

  // left side: mass over [0, w]; the 0 endpoint is integrated in the
  // substituted coordinate u = w^alpha when singular, plain distance with a
  // dyadic ladder toward 0 otherwise (shapes need not be integers, so the
  // density is generally non-smooth at the endpoint)
  if (a_ < 1.0) {
    double ap = a_;
    cache->left.power = ap;
    cache->left.integrand = [raw_density, ap](double u) {
      double y = std::pow(u, 1.0 / ap);
      return raw_density(y) * std::pow(u, 1.0 / ap - 1.0) / ap;
    };
    cache->left.build(dyadic_then_uniform(std::pow(0.5, ap), 0, 0));
  } else {
    cache->left.integrand = raw_density;
    cache->left.build(dyadic_then_uniform(0.5, 0, 0));
  }
  if (b_ < 1.0) {
    double bp = b_;
    cache->right.power = bp;
    cache->right.integrand = [raw_density, bp](double v) {
      double y = 1.0 - std::pow(v, 1.0 / bp);
      return raw_density(y) * std::pow(v, 1.0 / bp - 1.0) / bp;
    };
    cache->right.build(dyadic_then_uniform(std::pow(0.5, bp), 0, 0));
  } else {
    cache->right.integrand = [raw_density](double w) { return raw_density(1.0 - w); };
    cache->right.build(dyadic_then_uniform(0.5, 0, 0));
  }
  cache->total = cache->left.total() + cache->right.total();
  cache_ = std::move(cache);
}

double BetaTarget::density(double y) const {
  if (y <= 0 || y >= 1) {
    if (y == 0) return a_ < 1 ? kInf : (a_ == 1 ? std::exp(-lbeta_) : 0.0);
    if (y == 1) return b_ < 1 ? kInf : (b_ == 1 ? std::exp(-lbeta_) : 0.0);
    return 0.0;
  }
  return std::exp((a_ - 1) * std::log(y) + (b_ - 1) * std::log1p(-y) - lbeta_);
}

double BetaTarget::cdf(double y) const {
  if (y <= 0) return 0;
  if (y >= 1) return 1;
  if (y <= 0.5) return cache_->left.mass(y) / cache_->total;
  return 1.0 - cache_->right.mass(1.0 - y) / cache_->total;
}

double BetaTarget::quantile(double u) const {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  auto F = [this](double y) { return cdf(y); };
  return invert_cdf(F, u, 0.0, 1.0);
}

double BetaTarget::normalization_error() const { return std::fabs(cache_->total - 1.0); }

// ---------------------------------------------------------------------------
// variance-gamma target

struct VarianceGammaTarget::Cache {
  SideTable left, right;  // mass by distance from mu, per side
  double total = 0;
  double truncation = 0;
};

VarianceGammaTarget::VarianceGammaTarget(double r, double theta, double sigma, double mu)
    : r_(r), theta_(theta), sigma_(sigma), mu_(mu) {
  require(r > 0, "shape r must be positive");
  require(sigma > 0, "sigma must be positive");
  auto cache = std::make_shared<Cache>();

  const double T = theta_ * theta_ + sigma_ * sigma_;
  const double decay_right = (std::sqrt(T) - theta_) / (sigma_ * sigma_);
  const double decay_left = (std::sqrt(T) + theta_) / (sigma_ * sigma_);
  const double scale = sigma_ * sigma_ / std::sqrt(T);

  auto build_side = [&](SideTable& side, int sgn, double decay) {
    auto p_at = [this, sgn](double w) { return density(mu_ + sgn * w); };
    double far = scale;
    while (p_at(far) > 1e-18 && far < scale * 1e9) far *= 2;
    const double step = 2.0 / decay;
    if (r_ < 1.0) {
      double rp = r_;
      side.power = rp;
      side.integrand = [p_at, rp](double u) {
        double w = std::pow(u, 1.0 / rp);
        return p_at(w) * std::pow(u, 1.0 / rp - 1.0) / rp;
      };
      // near zone in the substituted coordinate, far zone appended in the
      // same coordinate (panel bounds map through w^r monotonically)
      std::vector<double> bb;
      for (double w : dyadic_then_uniform(scale, far, step))
        bb.push_back(std::pow(w, rp));
      side.build(bb);
    } else {
      side.integrand = p_at;
      side.build(dyadic_then_uniform(scale, far, step));
    }
    double edge = p_at(far);
    cache->truncation += edge / decay;  // exponential-tail remainder estimate
  };

  build_side(cache->left, -1, decay_left);
  build_side(cache->right, +1, decay_right);
  cache->total = cache->left.total() + cache->right.total();
  cache_ = std::move(cache);
}

double VarianceGammaTarget::density(double y) const {
  const double T = theta_ * theta_ + sigma_ * sigma_;
  const double v = std::fabs(y - mu_);
  const double nu = (r_ - 1) / 2;
  if (v == 0) {
    if (r_ <= 1) return kInf;
    // z -> 0 limit of z^nu K_nu(z), nu > 0
    return std::tgamma(nu) * std::pow(sigma_ * sigma_ / T, nu) /
           (2 * sigma_ * std::sqrt(M_PI) * std::tgamma(r_ / 2));
  }
  const double pre = 1.0 / (sigma_ * std::sqrt(M_PI) * std::tgamma(r_ / 2));
  const double z = std::sqrt(T) * v / (sigma_ * sigma_);
  return pre * std::exp(theta_ * (y - mu_) / (sigma_ * sigma_)) *
         std::pow(v / (2 * std::sqrt(T)), nu) * bessel_k(nu, z);
}

double VarianceGammaTarget::cdf(double y) const {
  const double lt = cache_->left.total();
  if (y >= mu_) return (lt + cache_->right.mass(y - mu_)) / cache_->total;
  return (lt - cache_->left.mass(mu_ - y)) / cache_->total;
}

double VarianceGammaTarget::quantile(double u) const {
  require(u > 0 && u < 1, "quantile needs u in (0,1)");
  const double wl = std::pow(cache_->left.max_coord(), 1.0 / cache_->left.power);
  const double wr = std::pow(cache_->right.max_coord(), 1.0 / cache_->right.power);
  auto F = [this](double y) { return cdf(y); };
  return invert_cdf(F, u, mu_ - wl, mu_ + wr);
}

double VarianceGammaTarget::normalization_error() const {
  return std::fabs(cache_->total - 1.0);
}
double VarianceGammaTarget::truncation_bound() const { return cache_->truncation; }

// ---------------------------------------------------------------------------
// dispatch

double density(const Target& t, double y) {
  return std::visit([y](const auto& v) { return v.density(y); }, t);
}
double cdf(const Target& t, double y) {
  return std::visit([y](const auto& v) { return v.cdf(y); }, t);
}
double quantile(const Target& t, double u) {
  return std::visit([u](const auto& v) { return v.quantile(u); }, t);
}

VecXd singular_points(const Target& t) {
  if (const auto* b = std::get_if<BetaTarget>(&t)) {
    std::vector<double> s;
    if (b->alpha_p() < 1) s.push_back(0.0);
    if (b->beta_p() < 1) s.push_back(1.0);
    return Eigen::Map<const VecXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  }
  if (const auto* v = std::get_if<VarianceGammaTarget>(&t)) {
    if (v->r() <= 1) {
      VecXd s(1);
      s[0] = v->mu();
      return s;
    }
  }
  return VecXd();
}

// ---------------------------------------------------------------------------
// profiles

BetaProfile beta_profile(const BetaTarget& t) {
  const double a = t.alpha_p(), b = t.beta_p();
  const double B = std::exp(t.log_beta_fn());
  BetaProfile out;
  out.s = std::min({a, b, 1.0});
  out.singularities = singular_points(Target(t));
  if (a >= 1 && b >= 1) {
    out.case_id = 1;
    double A;
    if (a == 1 && b == 1) {
      A = 1.0;  // flat density; the generic mode expression is 0^0-ambiguous
    } else {
      auto xlx = [](double x) { return x == 0 ? 0.0 : x * std::log(x); };
      A = std::exp(-t.log_beta_fn() + xlx(a - 1) + xlx(b - 1) - xlx(a + b - 2));
    }
    out.case_profile = SingularityProfile::bounded(A);
  } else if (a < 1 && b < 1) {
    out.case_id = 3;
    const double s = std::min(a, b);
    out.case_profile =
        SingularityProfile::power(std::exp2(1 - s) / B, 1 - s, 0.5, 2);
  } else {
    out.case_id = 2;
    const double s = std::min(a, b);
    out.case_profile = SingularityProfile::power(1.0 / B, 1 - s, 0.5, 1);
  }
  return out;
}

BoundResult beta_universal_bound(const BetaTarget& t, int m, double dm) {
  require(m >= 1 && dm >= 0, "bad arguments");
  const double B = std::exp(t.log_beta_fn());
  const double s = std::min({t.alpha_p(), t.beta_p(), 1.0});
  const double N = n_constant(m);
  const double A13 = std::pow(4.0, 1 - s) / (B * s);
  const double thr = std::pow(2.0, -s) / (N * B * s);
  const double alpha = std::pow(s * N * B * dm / std::pow(4.0, 1 - s), 1.0 / (m + s));
  const double raw = 2 * std::pow(A13, m / (m + s)) * std::pow(N * dm, s / (m + s));
  BoundResult r;
  r.formula_id = "E3.3-iv";
  r.m = m;
  r.d_m = dm;
  r.alpha = alpha;
  r.raw_bound = raw;
  r.bound = std::min(1.0, std::max(0.0, raw));
  r.valid = dm <= thr;
  r.validity_threshold = thr;
  r.notes = "beta universal route";
  return r;
}

SingularityProfile vg_profile(const VarianceGammaTarget& t) {
  const double r = t.r(), th = t.theta(), sg = t.sigma();
  const double T = th * th + sg * sg;
  if (r > 1) {
    double A = std::tgamma((r - 1) / 2) / (2 * sg * std::sqrt(M_PI) * std::tgamma(r / 2)) *
               std::pow(sg * sg / T, (r - 1) / 2);
    if (r > 2) A *= std::exp(th * th * (r - 2) / (sg * sg));
    return SingularityProfile::bounded(A);
  }
  if (r == 1) {
    const double c = std::sqrt(T) / (sg * sg);
    return SingularityProfile::log_type(1.0 / sg, c, 0.645 / c, 1);
  }
  const double A = std::tgamma((1 - r) / 2) /
                   (std::pow(2 * sg, r) * std::sqrt(M_PI) * std::tgamma(r / 2));
  return SingularityProfile::power(A, 1 - r, kInf, 1);
}

// ---------------------------------------------------------------------------
// envelope validation

namespace {

double envelope_value(const SingularityProfile& p, double dist) {
  switch (p.kind) {
    case SingKind::Bounded:
      return p.A;
    case SingKind::Log:
      return -p.A * std::log(p.c * dist);
    case SingKind::Power:
      return p.A * std::pow(dist, -p.a);
    case SingKind::LogPower:
      return p.A * std::pow(dist, -p.a) * std::pow(-std::log(p.c * dist), p.b);
  }
  return 0;
}

double envelope_mass(const SingularityProfile& p, double delta) {
  switch (p.kind) {
    case SingKind::Bounded:
      return 2 * p.A * delta;
    case SingKind::Log: {
      double d0 = std::min(delta, 1.0 / p.c);
      return 2 * p.A * d0 * (1 - std::log(p.c * d0)) + 2 * p.B_offset * delta;
    }
    case SingKind::Power:
      return 2 * p.A * std::pow(delta, 1 - p.a) / (1 - p.a);
    case SingKind::LogPower: {
      double y = (1 - p.a) * std::log(1.0 / (p.c * delta));
      double base = 2 * p.A * std::pow(p.c, p.a - 1) /
                    std::pow(1 - p.a, p.b + 1) * upper_incomplete_gamma(p.b + 1, y);
      return base + 2 * p.B_offset * delta;
    }
  }
  return 0;
}

}  // namespace

EnvelopeCheck envelope_check(const Target& t, const SingularityProfile& profile,
                             const VecXd& singularities, int grid_size) {
  require(grid_size >= 8, "grid too small");
  EnvelopeCheck out{-kInf, -kInf};
  const double lo = quantile(t, 1e-10), hi = quantile(t, 1.0 - 1e-10);

  if (profile.kind == SingKind::Bounded) {
    for (int g = 0; g <= grid_size; ++g) {
      double y = lo + (hi - lo) * g / grid_size;
      double p = density(t, y);
      if (std::isfinite(p))
        out.max_pointwise_violation = std::max(out.max_pointwise_violation, p - profile.A);
    }
    // interval-mass condition for a bounded envelope
    for (int k = 0; k < 200; ++k) {
      double c0 = lo + (hi - lo) * uniform01(9001, 2 * k);
      double delta = (hi - lo) * 0.25 * uniform01(9001, 2 * k + 1);
      double mass = cdf(t, c0 + delta) - cdf(t, c0 - delta);
      out.max_interval_violation =
          std::max(out.max_interval_violation, mass - envelope_mass(profile, delta));
    }
    return out;
  }

  const double eps_eff = std::min(profile.epsilon, 0.5 * (hi - lo));
  for (Eigen::Index si = 0; si < singularities.size(); ++si) {
    const double s = singularities[si];
    for (int g = 0; g < grid_size; ++g) {
      // log-spaced approach to the singularity, both sides
      double dist = eps_eff * std::pow(10.0, -12.0 * g / grid_size);
      for (int sgn : {-1, 1}) {
        double y = s + sgn * dist;
        double p = density(t, y);
        if (!std::isfinite(p)) continue;
        out.max_pointwise_violation =
            std::max(out.max_pointwise_violation, p - envelope_value(profile, dist));
      }
    }
    for (int k = 0; k < 200; ++k) {
      double delta = eps_eff * uniform01(9002 + si, 2 * k);
      double c0 = s + eps_eff * (2 * uniform01(9002 + si, 2 * k + 1) - 1);
      if (delta <= 0) continue;
      double mass = cdf(t, c0 + delta) - cdf(t, c0 - delta);
      out.max_interval_violation =
          std::max(out.max_interval_violation, mass - envelope_mass(profile, delta));
    }
  }
  return out;
}

}  // namespace ksw
