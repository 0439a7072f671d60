#include "ksw/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ksw/constants.hpp"

namespace ksw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

BoundResult make_result(std::string id, int m, double dm, double alpha, double raw,
                        bool valid, double threshold, std::string notes = {}) {
  BoundResult r;
  r.formula_id = std::move(id);
  r.m = m;
  r.d_m = dm;
  r.alpha = alpha;
  r.raw_bound = raw;
  r.bound = clamp01(raw);
  r.valid = valid;
  r.validity_threshold = threshold;
  r.notes = std::move(notes);
  return r;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double pos_log(double x) { return std::max(0.0, std::log(x)); }

SingularityProfile SingularityProfile::bounded(double A, double B) {
  require(A > 0, "envelope scale A must be positive");
  require(B >= 0, "offset B must be non-negative");
  SingularityProfile p;
  p.kind = SingKind::Bounded;
  p.A = A;
  p.B_offset = B;
  p.epsilon = kInf;
  return p;
}

SingularityProfile SingularityProfile::log_type(double A, double c, double eps, int n,
                                                double B) {
  require(A > 0 && c > 0, "A and c must be positive");
  require(eps > 0 && eps <= 1.0 / c, "need 0 < epsilon <= 1/c");
  require(n >= 1, "need at least one singularity");
  require(B >= 0, "offset B must be non-negative");
  SingularityProfile p;
  p.kind = SingKind::Log;
  p.A = A;
  p.c = c;
  p.epsilon = eps;
  p.n_singularities = n;
  p.B_offset = B;
  return p;
}

SingularityProfile SingularityProfile::power(double A, double a, double eps, int n) {
  require(A > 0, "A must be positive");
  require(a > 0 && a < 1, "power exponent must lie in (0,1)");
  require(eps > 0, "epsilon must be positive");
  require(n >= 1, "need at least one singularity");
  SingularityProfile p;
  p.kind = SingKind::Power;
  p.A = A;
  p.a = a;
  p.epsilon = eps;
  p.n_singularities = n;
  return p;
}

SingularityProfile SingularityProfile::log_power(double A, double c, double a, double b,
                                                 double eps, int n, double B) {
  require(A > 0 && c > 0, "A and c must be positive");
  require(a >= 0 && a < 1, "power exponent must lie in [0,1)");
  require(b >= 0, "log power must be non-negative");
  require(eps > 0 && eps <= 1.0 / c, "need 0 < epsilon <= 1/c");
  require(n >= 1, "need at least one singularity");
  require(B >= 0, "offset B must be non-negative");
  SingularityProfile p;
  p.kind = SingKind::LogPower;
  p.A = A;
  p.c = c;
  p.a = a;
  p.b = b;
  p.epsilon = eps;
  p.n_singularities = n;
  p.B_offset = B;
  return p;
}

BoundResult bound_bounded(double A, int m, double dm, bool strict) {
  require(A > 0, "A must be positive");
  require(dm >= 0, "d_m must be non-negative");
  require(m >= 1, "m must be >= 1");
  const double M = m_constant(m), N = n_constant(m);
  const double thr = strict ? A / (2 * N) : kInf;
  const bool valid = strict ? dm <= thr : true;
  const double alpha = std::pow(2 * N * dm / A, 1.0 / (m + 1));
  double raw = 2 * std::pow(std::pow(A, m) * M * dm, 1.0 / (m + 1));
  if (!strict) raw += M * dm;
  return make_result(strict ? "P2.1-i" : "P2.2-i", m, dm, alpha, raw, valid, thr);
}

BoundResult bound_log(const SingularityProfile& p, int m, double dm, bool strict) {
  require(p.kind == SingKind::Log, "profile is not a Log profile");
  require(dm >= 0 && m >= 1, "bad arguments");
  const double A = p.A, c = p.c, B = p.B_offset;
  const double M = m_constant(m), N = n_constant(m);
  const double q = 1.0 / (m + 1);
  const double thr =
      strict ? (A / N) * std::min(1.0, std::pow(2 * p.epsilon, m + 1.0)) : kInf;
  const bool valid = strict ? dm <= thr : true;
  const double alpha = std::pow(N * dm / A, q);
  double raw = 0;
  if (dm > 0) {
    const double power = std::pow(std::pow(A, m) * N * dm, q);
    const double arg = 2 * A / (std::pow(c, m + 1.0) * M * dm);
    if (strict) {
      raw = (2 + q * std::log(arg)) * power;
    } else {
      raw = (2 + B / (2 * A) + q * pos_log(arg)) * power + M * dm;
    }
  }
  return make_result(strict ? "P2.1-ii" : "P2.2-ii", m, dm, alpha, raw, valid, thr);
}

BoundResult bound_power(const SingularityProfile& p, int m, double dm, bool strict) {
  require(p.kind == SingKind::Power, "profile is not a Power profile");
  require(dm >= 0 && m >= 1, "bad arguments");
  const double A = p.A, a = p.a;
  const double M = m_constant(m), N = n_constant(m);
  const double E = std::pow(2.0, a) * A / (1 - a);
  const double thr =
      strict ? (E / N) * std::min(1.0, std::pow(2 * p.epsilon, m + 1.0 - a)) : kInf;
  const bool valid = strict ? dm <= thr : true;
  const double alpha = std::pow((1 - a) * N * dm / (std::pow(2.0, a) * A),
                                1.0 / (m + 1 - a));
  double raw = 2 * std::pow(E, m / (m + 1 - a)) * std::pow(N * dm, (1 - a) / (m + 1 - a));
  if (!strict) raw += M * dm;
  return make_result(strict ? "P2.1-iii" : "P2.2-iii", m, dm, alpha, raw, valid, thr);
}

BoundResult bound_log_power(const SingularityProfile& p, int m, double dm, bool strict) {
  require(p.kind == SingKind::LogPower, "profile is not a LogPower profile");
  require(dm >= 0 && m >= 1, "bad arguments");
  const double A = p.A, c = p.c, a = p.a, b = p.b, B = p.B_offset;
  const double M = m_constant(m), N = n_constant(m);
  const double e1 = m / (m + 1 - a), e2 = (1 - a) / (m + 1 - a);
  const double F = std::pow(2.0, a + b + 1) * A / (1 - a);

  double thr;
  if (strict) {
    double lim = std::min(
        {1.0, std::pow(2 * p.epsilon, m + 1 - a),
         std::exp2(-(a + b) * (1.0 + m / (1 - a))) * std::pow(c, -(m + 1 - a))});
    thr = F * std::pow(c, 1 - a) / N * lim;
  } else {
    thr = std::pow(c, -static_cast<double>(m)) * A / ((1 - a) * M) *
          std::exp2(1.0 - m * (b + 1) / (1 - a));
  }
  const bool valid = dm < thr;  // both variants state a strict inequality
  const double alpha = std::pow((1 - a) * N * dm / (std::pow(2.0, a + b + 1) * A),
                                1.0 / (m + 1 - a));
  double raw = 0;
  if (dm > 0) {
    const double power = std::pow(F, e1) * std::pow(N * dm, e2);
    const double arg =
        std::exp2(b + 2) * A / ((1 - a) * std::pow(c, m + 1 - a) * M * dm);
    const double bracket =
        1.0 + std::pow(pos_log(arg), b) / std::pow(m + 1.0 - a, b);
    raw = power * bracket;
    if (!strict) {
      raw += (B / 2) * std::pow((1 - a) * N * dm / (std::pow(2.0, a + b + 1) * A),
                                1.0 / (m + 1 - a)) +
             M * dm;
    }
  }
  return make_result(strict ? "P2.1-iv" : "P2.2-iv", m, dm, alpha, raw, valid, thr);
}

BoundResult bound_for_profile(const SingularityProfile& p, int m, double dm,
                              bool strict) {
  switch (p.kind) {
    case SingKind::Bounded:
      return bound_bounded(p.A, m, dm, strict);
    case SingKind::Log:
      return bound_log(p, m, dm, strict);
    case SingKind::Power:
      return bound_power(p, m, dm, strict);
    case SingKind::LogPower:
      return bound_log_power(p, m, dm, strict);
  }
  throw std::logic_error("unknown profile kind");
}

double MvnTarget::sigma_min() const {
  require(dim >= 1 && covariance_diag.size() == dim, "bad covariance diagonal");
  double lo = kInf;
  for (Eigen::Index j = 0; j < covariance_diag.size(); ++j) {
    require(covariance_diag[j] > 0, "covariance diagonal must be positive");
    lo = std::min(lo, covariance_diag[j]);
  }
  return std::sqrt(lo);
}

std::pair<BoundResult, BoundResult> bound_mvn(const MvnTarget& target, int m, double dm) {
  require(m >= 1 && dm >= 0, "bad arguments");
  const double sigma = target.sigma_min();
  const double x = std::sqrt(2.0 * std::log(static_cast<double>(target.dim)));
  const double f = x + 2.0;
  const double Mp = m_prime_constant(m), Np = n_prime_constant(m);
  const double alpha = std::pow(sigma * Np * dm / f, 1.0 / (m + 1));
  const double head =
      2 * std::pow(f / sigma, m / (m + 1.0)) * std::pow(Np * dm, 1.0 / (m + 1));

  BoundResult uncond = make_result("P2.5-uncond", m, dm, alpha, head + Mp * dm, true,
                                   kInf, "sigma = min_j sqrt((Sigma)_jj)");
  const double thr =
      (m >= 2) ? (4 + 2 * x) / (sigma * Mp) : (2 + x) / (sigma * Np);
  BoundResult strict = make_result("P2.5-strict", m, dm, alpha, head, dm <= thr, thr,
                                   "sigma = min_j sqrt((Sigma)_jj)");
  return {uncond, strict};
}

std::pair<BoundResult, BoundResult> exchangeable_pair_bounds(
    const ExchangeablePairInputs& in, std::optional<double> d3_opt,
    std::optional<double> d2_opt) {
  require(in.A >= 0 && in.B >= 0 && in.C >= 0, "aggregates must be non-negative");
  require(in.dim >= 1, "dimension must be >= 1");
  require(in.sigma > 0 && in.sigma_star > 0 && in.sup_norm_Sigma > 0,
          "scale inputs must be positive");
  const double x = std::sqrt(2.0 * std::log(static_cast<double>(in.dim)));
  const double cfac = 1.0 + 0.5 * in.dim * std::sqrt(in.sup_norm_Sigma);
  const double d3 = d3_opt.value_or(in.A / 4 + in.B / 12 + cfac * in.C);
  const double d2 = d2_opt.value_or(in.A / 4 +
                                    std::sqrt(2 * M_PI) * in.sigma_star * in.B / 16 +
                                    cfac * in.C);

  const double thr3 = (2 + x) / (2 * in.sigma);
  double raw3 =
      2 * std::sqrt(2.0) * std::pow((4 + 2 * x) / in.sigma, 0.75) * std::pow(d3, 0.25);
  double alpha3 = std::pow(in.sigma * n_prime_constant(3) * d3 / (x + 2), 0.25);
  BoundResult b3 = make_result("C3.4-eq11", 3, d3, alpha3, raw3, d3 <= thr3, thr3,
                               "unit test-function norms");

  const double thr2 = (4 + 2 * x) / in.sigma;
  double raw2 = 2 * std::pow((4 + 2 * x) / in.sigma, 2.0 / 3) * std::pow(d2, 1.0 / 3);
  double alpha2 =
      std::pow(in.sigma * n_prime_constant(2) * d2 / (x + 2), 1.0 / 3);
  BoundResult b2 = make_result("C3.4-eq12", 2, d2, alpha2, raw2, d2 <= thr2, thr2,
                               "unit test-function norms");
  return {b3, b2};
}

BoundResult bound_multivariate_rate(const MultivariateRateSpec& spec, int m, double dm,
                                    double alpha_max) {
  require(m >= 1 && dm >= 0, "bad arguments");
  require(!spec.C.empty(), "per-order envelope coefficients are required");
  require(spec.variant != SingKind::LogPower, "variant must be bounded, log or power");
  if (spec.variant == SingKind::Power) require(spec.a > 0 && spec.a < 1, "bad exponent");
  if (spec.variant == SingKind::Log) {
    require(spec.c > 0, "log scale must be positive");
    require(spec.D.empty() || spec.D.size() == spec.C.size(),
            "per-order additive terms must match coefficient count");
  }
  const double Mp = m_prime_constant(m), Np = n_prime_constant(m);

  auto envelope = [&](double alpha) {
    double s = 0;
    for (size_t i = 0; i < spec.C.size(); ++i) {
      const double order = static_cast<double>(i + 1);
      switch (spec.variant) {
        case SingKind::Bounded:
          s += spec.C[i] * std::pow(alpha, order);
          break;
        case SingKind::Log: {
          double d_i = spec.D.empty() ? 0.0 : spec.D[i];
          s += std::pow(alpha, order) *
               (spec.C[i] * pos_log(2.0 / (spec.c * alpha)) + d_i);
          break;
        }
        case SingKind::Power:
          s += spec.C[i] * std::pow(alpha, order - spec.a);
          break;
        default:
          break;
      }
    }
    return s;
  };
  auto objective = [&](double alpha) {
    return (Mp + Np / std::pow(alpha, m)) * dm + envelope(alpha);
  };

  AlphaOpt opt = optimize_alpha_numeric(objective, alpha_max);
  std::string label;
  switch (spec.variant) {
    case SingKind::Bounded:
      label = "rate exponent 1/(m+1)";
      break;
    case SingKind::Log:
      label = "rate exponent 1/(m+1) with log correction";
      break;
    case SingKind::Power:
      label = "rate exponent (1-a)/(m+1-a)";
      break;
    default:
      break;
  }
  std::string id = "P2.4-";
  id += (spec.variant == SingKind::Bounded ? "bounded"
         : spec.variant == SingKind::Log   ? "log"
                                           : "power");
  return make_result(id, m, dm, opt.alpha, opt.value, true, kInf, label);
}

AlphaOpt optimize_alpha_numeric(const std::function<double(double)>& objective,
                                double alpha_max) {
  require(alpha_max > 0, "alpha_max must be positive");
  auto eval = [&](double a) {
    double v = objective(a);
    if (std::isnan(v)) throw std::domain_error("objective returned NaN");
    return v;
  };

  // coarse log-spaced scan; later points win ties so a flat objective
  // settles on alpha_max
  const int n = 480;
  const double lo = alpha_max * 1e-13;
  std::vector<double> xs(n + 1), fs(n + 1);
  int best = 0;
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo * std::pow(alpha_max / lo, static_cast<double>(i) / n);
    fs[i] = eval(xs[i]);
    if (fs[i] <= fs[best]) best = i;
  }

  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(n, best + 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * b; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = eval(x2);
    }
  }
  double xbest = (f1 <= f2) ? x1 : x2;
  double fbest = std::min(f1, f2);
  if (fs[best] < fbest) {
    xbest = xs[best];
    fbest = fs[best];
  }
  // the right endpoint is admissible and wins ties
  double fend = eval(alpha_max);
  if (fend <= fbest) return {alpha_max, fend};
  return {xbest, fbest};
}

}  // namespace ksw
