#include "ksw/spline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ksw/constants.hpp"

namespace ksw {

namespace {

constexpr Real kPi = 3.14159265358979323846264338327950288L;

Real binom(int n, int k) {
  Real r = 1;
  for (int i = 1; i <= k; ++i) r = r * Real(n - k + i) / Real(i);
  return r;
}

Real ipow(Real x, int p) {
  Real r = 1;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Row of local-basis coefficients for one piece of h_m about the left
// breakpoint L. The piece value is
//   negative side: 1 - s[(1+x)^m - 2 sum_{j<=k} (-1)^{j+1} (x_j + x)^m]
//   positive side:     s[(1-x)^m - 2 sum_{j<=k} (-1)^{j+1} (x_j - x)^m]
// with s = 2^(m-2)/m and x_j = cos(pi j / m).
void piece_coefficients(int m, const std::vector<Real>& xk, int k, bool negative_side,
                        Real L, VecXr& row) {
  const Real s = std::exp2(Real(m - 2)) / Real(m);
  row.setZero();
  if (negative_side) {
    // bases: (1+x) = (1+L) + u, (x_j + x) = (x_j + L) + u
    for (int i = 0; i <= m; ++i) {
      Real acc = binom(m, i) * ipow(Real(1) + L, m - i);
      for (int j = 1; j <= k; ++j) {
        Real sign = (j % 2 == 1) ? Real(1) : Real(-1);
        acc -= 2 * sign * binom(m, i) * ipow(xk[j] + L, m - i);
      }
      row[i] = -s * acc;
    }
    row[0] += 1;
  } else {
    // bases: (1-x) = (1-L) - u, (x_j - x) = (x_j - L) - u
    for (int i = 0; i <= m; ++i) {
      Real acc = binom(m, i) * ipow(Real(1) - L, m - i);
      for (int j = 1; j <= k; ++j) {
        Real sign = (j % 2 == 1) ? Real(1) : Real(-1);
        acc -= 2 * sign * binom(m, i) * ipow(xk[j] - L, m - i);
      }
      Real parity = (i % 2 == 0) ? Real(1) : Real(-1);
      row[i] = s * parity * acc;
    }
  }
}

PiecewisePoly<Real> build_poly(int m) {
  if (m < 1) throw std::invalid_argument("spline order must be >= 1");
  // x_j = cos(pi j / m), decreasing in j; the midpoint cos(pi/2) pinned to 0
  std::vector<Real> xk(m + 1);
  for (int j = 0; j <= m; ++j)
    xk[j] = (2 * j == m) ? Real(0) : std::cos(kPi * Real(j) / Real(m));

  const bool even = (m % 2 == 0);
  const int n = m / 2;  // even: m = 2n; odd: m = 2n + 1

  VecXr knots(m + 1);
  MatXr coeffs(m, m + 1);
  VecXr row(m + 1);
  int idx = 0;
  if (even) {
    // breakpoints -x_0 < ... < -x_{n-1} < 0 < x_{n-1} < ... < x_0
    for (int k = 0; k < n; ++k) knots[k] = -xk[k];
    knots[n] = 0;
    for (int k = 0; k < n; ++k) knots[n + 1 + k] = xk[n - 1 - k];
    for (int k = 0; k < n; ++k) {  // (-x_k, -x_{k+1}]
      piece_coefficients(m, xk, k, true, -xk[k], row);
      coeffs.row(idx++) = row.transpose();
    }
    for (int k = n - 1; k >= 0; --k) {  // (x_{k+1}, x_k]
      piece_coefficients(m, xk, k, false, xk[k + 1], row);
      coeffs.row(idx++) = row.transpose();
    }
  } else {
    // breakpoints -x_0 < ... < -x_n < x_n < ... < x_0; the span (-x_n, x_n)
    // is a single piece (the top derivative does not change sign across 0)
    for (int k = 0; k <= n; ++k) knots[k] = -xk[k];
    for (int k = 0; k <= n; ++k) knots[n + 1 + k] = xk[n - k];
    for (int k = 0; k < n; ++k) {
      piece_coefficients(m, xk, k, true, -xk[k], row);
      coeffs.row(idx++) = row.transpose();
    }
    piece_coefficients(m, xk, n, true, -xk[n], row);  // middle
    coeffs.row(idx++) = row.transpose();
    for (int k = n - 1; k >= 0; --k) {
      piece_coefficients(m, xk, k, false, xk[k + 1], row);
      coeffs.row(idx++) = row.transpose();
    }
  }
  return PiecewisePoly<Real>(std::move(knots), std::move(coeffs), Real(1), Real(0));
}

}  // namespace

BaseSpline::BaseSpline(int m) : m_(m), pp_(build_poly(m)) {
  CertificationReport rep = certify(Real(1e-10));
  if (!rep.pass) throw std::logic_error("spline construction failed certification");
  norm_cache_.resize(m_ + 1);
  for (int i = 0; i <= m_; ++i) norm_cache_[i] = sup_norm_derivative(pp_, i);
}

Real BaseSpline::sup_norm(int i) const {
  if (i < 0 || i > m_) throw std::invalid_argument("derivative order out of range");
  return norm_cache_[i];
}

BaseSpline construct_base_spline(int m) { return BaseSpline(m); }

CertificationReport BaseSpline::certify(Real tol) const {
  return certify_membership(m_, pp_, tol);
}

CertificationReport certify_membership(int m, const PiecewisePoly<Real>& pp, Real tol) {
  CertificationReport rep;
  rep.m = m;
  rep.tol = tol;

  const auto& knots = pp.knots();
  for (Eigen::Index i = 0; i < knots.size(); ++i) {
    for (int ord = 0; ord < m; ++ord) {
      Real l = pp.derivative_left(knots[i], ord);
      Real r = pp.derivative_right(knots[i], ord);
      rep.max_continuity_residual = std::max(rep.max_continuity_residual, std::fabs(l - r));
    }
  }

  // 1e4 grid points per unit length of [-1, 1]; a degree <= m polynomial
  // cannot hide a violation beyond tolerance at this density
  const int grid = 20000;
  for (int g = 0; g <= grid; ++g) {
    Real x = Real(-1) + Real(2) * Real(g) / Real(grid);
    Real v = pp(x);
    rep.max_range_violation =
        std::max({rep.max_range_violation, v - Real(1), Real(0) - v});
    rep.max_symmetry_residual =
        std::max(rep.max_symmetry_residual, std::fabs(v + pp(-x) - Real(1)));
  }
  rep.max_range_violation = std::max(rep.max_range_violation, Real(0));

  const Real target = Real(m_constant_real(m));
  Real fact = 1;
  for (int j = 2; j <= m; ++j) fact *= Real(j);  // m!
  for (Eigen::Index i = 0; i < pp.piece_count(); ++i) {
    Real top = std::fabs(pp.piece_coeffs()(i, m) * fact);
    rep.max_top_derivative_relerr =
        std::max(rep.max_top_derivative_relerr, std::fabs(top - target) / target);
  }

  rep.pass = rep.max_continuity_residual <= tol && rep.max_range_violation <= tol &&
             rep.max_symmetry_residual <= tol && rep.max_top_derivative_relerr <= tol;
  return rep;
}

SmoothedIndicator scale_translate(const BaseSpline& base, Real z, Real alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  const auto& knots = base.poly().knots();
  const auto& coeffs = base.poly().piece_coeffs();
  // x -> z + alpha/2 + (alpha/2) x maps [-1,1] onto [z, z+alpha]; a local
  // coefficient of degree j picks up the factor (2/alpha)^j
  VecXr new_knots(knots.size());
  for (Eigen::Index i = 0; i < knots.size(); ++i)
    new_knots[i] = z + alpha / 2 + (alpha / 2) * knots[i];
  MatXr new_coeffs(coeffs.rows(), coeffs.cols());
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
    new_coeffs.col(j) = coeffs.col(j) * ipow(2 / alpha, static_cast<int>(j));
  return SmoothedIndicator(
      base.order(), z, alpha,
      PiecewisePoly<Real>(std::move(new_knots), std::move(new_coeffs), Real(1), Real(0)));
}

Real ProductIndicator::operator()(const VecXr& x) const {
  if (x.size() != static_cast<Eigen::Index>(factors_.size()))
    throw std::invalid_argument("dimension mismatch");
  Real v = 1;
  for (size_t j = 0; j < factors_.size(); ++j) {
    v *= factors_[j](x[static_cast<Eigen::Index>(j)]);
    if (v == 0) break;
  }
  return v;
}

ProductIndicator product_indicator(int m, const VecXr& z, Real alpha) {
  if (z.size() < 1) throw std::invalid_argument("empty threshold vector");
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  BaseSpline base(m);
  std::vector<SmoothedIndicator> factors;
  factors.reserve(static_cast<size_t>(z.size()));
  for (Eigen::Index j = 0; j < z.size(); ++j)
    factors.push_back(scale_translate(base, z[j], alpha));
  return ProductIndicator(m, z, alpha, std::move(factors));
}

Real KnotIdentityResiduals::max() const {
  return std::max({even_top, even_lower, odd_top, odd_lower});
}

KnotIdentityResiduals verify_knot_identities(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  KnotIdentityResiduals res;

  auto cospow_sum = [](int count, int denom, int expo) {
    Real s = 0;
    for (int j = 1; j <= count; ++j) {
      Real c = std::cos(kPi * Real(j) / Real(denom));
      Real term = ipow(c, expo);
      s += (j % 2 == 1) ? term : -term;
    }
    return s;
  };

  // even order m = 2n, interior angles pi j / (2n)
  Real target_top = Real(0.5) - Real(n) / std::exp2(Real(2 * n - 1));
  res.even_top = std::fabs(cospow_sum(n - 1, 2 * n, 2 * n) - target_top);
  for (int l = 1; l <= n - 1; ++l)
    res.even_lower =
        std::max(res.even_lower, std::fabs(cospow_sum(n - 1, 2 * n, 2 * l) - Real(0.5)));

  // odd order m = 2n + 1
  Real target_top_odd = Real(0.5) - Real(2 * n + 1) / std::exp2(Real(2 * n + 1));
  res.odd_top = std::fabs(cospow_sum(n, 2 * n + 1, 2 * n + 1) - target_top_odd);
  for (int l = 0; l <= n - 1; ++l)
    res.odd_lower =
        std::max(res.odd_lower, std::fabs(cospow_sum(n, 2 * n + 1, 2 * l + 1) - Real(0.5)));

  return res;
}

namespace {

std::string real_to_string25(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.24Le", v);
  return buf;
}

}  // namespace

std::string spline_to_json(int m, const PiecewisePoly<Real>& pp) {
  nlohmann::ordered_json j;
  j["m"] = m;
  nlohmann::ordered_json knots = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < pp.knots().size(); ++i)
    knots.push_back(real_to_string25(pp.knots()[i]));
  j["knots"] = std::move(knots);
  nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < pp.piece_count(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < pp.piece_coeffs().cols(); ++c)
      row.push_back(real_to_string25(pp.piece_coeffs()(i, c)));
    pieces.push_back(std::move(row));
  }
  j["pieces"] = std::move(pieces);
  return j.dump(2);
}

LoadedSpline spline_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int m = j.at("m").get<int>();
  const auto& jk = j.at("knots");
  const auto& jp = j.at("pieces");
  VecXr knots(jk.size());
  for (size_t i = 0; i < jk.size(); ++i)
    knots[static_cast<Eigen::Index>(i)] = strtold(jk[i].get<std::string>().c_str(), nullptr);
  if (jp.empty()) throw std::invalid_argument("no pieces");
  MatXr coeffs(jp.size(), jp[0].size());
  for (size_t i = 0; i < jp.size(); ++i)
    for (size_t c = 0; c < jp[i].size(); ++c)
      coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          strtold(jp[i][c].get<std::string>().c_str(), nullptr);
  return LoadedSpline{m, PiecewisePoly<Real>(std::move(knots), std::move(coeffs),
                                             Real(1), Real(0))};
}

}  // namespace ksw
