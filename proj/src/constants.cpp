#include "ksw/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksw {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 2^p (m-1)! exactly while the factorial fits the mantissa, in log space
// beyond that to avoid overflow for large m.
double pow2_factorial(int m, double p) {
  if (m < 1) throw std::invalid_argument("order must be >= 1");
  if (m <= 20) {
    double f = 1;
    for (int j = 2; j < m; ++j) f *= j;
    return std::exp2(p) * f;
  }
  return std::exp(p * M_LN2 + std::lgamma(static_cast<double>(m)));
}

}  // namespace

double m_constant(int m) { return pow2_factorial(m, m - 2.0); }

double n_constant(int m) { return pow2_factorial(m, 2.0 * m - 2.0); }

double m_prime_constant(int m) {
  if (m <= 4) return m_constant(m);
  return pow2_factorial(m, 1.5 * m - 2.0);
}

double n_prime_constant(int m) {
  if (m <= 4) return n_constant(m);
  return pow2_factorial(m, 2.5 * m - 2.0);
}

Real m_constant_real(int m) {
  if (m < 1) throw std::invalid_argument("order must be >= 1");
  Real f = 1;
  for (int j = 2; j < m; ++j) f *= j;
  return std::exp2(Real(m - 2)) * f;
}

ConstantsTable constants_for(int m) {
  return ConstantsTable{m, m_constant(m), n_constant(m), m_prime_constant(m),
                        n_prime_constant(m)};
}

FavardValue favard_constant(int r, double tol) {
  if (r < 0) throw std::invalid_argument("order must be >= 0");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (r == 0) return {0, 1.0, 0.0};
  if (r == 1) return {1, kPi / 2, 0.0};
  const double scale = 4.0 / kPi;
  double sum = 0;
  if (r % 2 == 0) {
    // alternating series: remainder bounded by the first omitted term
    for (long j = 0;; ++j) {
      double term = std::pow(2.0 * j + 1.0, -(r + 1.0));
      if (j % 2) term = -term;
      sum += term;
      double next = std::pow(2.0 * j + 3.0, -(r + 1.0));
      if (scale * next < tol / 2) return {r, scale * sum, scale * next};
    }
  }
  // odd r: all-positive series, remainder <= integral tail (2J+1)^-r / (2r)
  for (long j = 0;; ++j) {
    sum += std::pow(2.0 * j + 1.0, -(r + 1.0));
    double rem = std::pow(2.0 * j + 3.0, -static_cast<double>(r)) / (2.0 * r);
    if (scale * rem < tol / 2) return {r, scale * sum, scale * rem};
  }
}

double landau_kolmogorov_constant(int m, int k) {
  if (m < 2 || k < 1 || k > m - 1)
    throw std::invalid_argument("need 1 <= k <= m-1");
  double km = favard_constant(m).value;
  double kmk = favard_constant(m - k).value;
  return kmk * std::pow(km, -1.0 + static_cast<double>(k) / m);
}

double max_derivative_bound(int m, double alpha, bool multivariate) {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  const double M = multivariate ? m_prime_constant(m) : m_constant(m);
  const double N = multivariate ? n_prime_constant(m) : n_constant(m);
  if (alpha <= 1.0) return N / std::pow(alpha, m);
  return M * (1.0 + std::exp2(static_cast<double>(m)) / std::pow(alpha, m));
}

namespace {

// regularized pieces of the incomplete gamma pair, standard regime split

double lower_series_scaled(double r, double x) {
  // gamma(r,x) = x^r e^-x * S, S = sum_n x^n / (r (r+1) ... (r+n))
  double term = 1.0 / r;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (r + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum;
}

double upper_cf_scaled(double r, double x) {
  // Gamma(r,x) = x^r e^-x * CF, modified Lentz iteration
  const double tiny = 1e-300;
  double b = x + 1.0 - r;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - r);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double upper_incomplete_gamma(double r, double x) {
  if (!(r > 0)) throw std::invalid_argument("r must be positive");
  if (x < 0) throw std::invalid_argument("x must be non-negative");
  if (x == 0) return std::tgamma(r);
  double log_prefac = r * std::log(x) - x;
  if (x < r + 1.0) {
    double gamma_lower = std::exp(log_prefac) * lower_series_scaled(r, x);
    return std::tgamma(r) - gamma_lower;
  }
  return std::exp(log_prefac) * upper_cf_scaled(r, x);
}

bool check_incomplete_gamma_bound(double b, double y) {
  if (b < 0) throw std::invalid_argument("b must be >= 0");
  if (!(y > (b + 1.0) * M_LN2)) return false;  // e^y > 2^(b+1) gate
  const double r = b + 1.0;
  // compare Gamma(b+1,y) / (y^b e^-y) against 2^(b+1); scaled forms avoid
  // underflow for large y
  double ratio;
  if (y >= r + 1.0) {
    ratio = y * upper_cf_scaled(r, y);
  } else {
    double val = upper_incomplete_gamma(r, y);
    ratio = val / std::exp(b * std::log(y) - y);
  }
  return ratio <= std::exp2(b + 1.0) * (1.0 + 1e-12);
}

}  // namespace ksw
