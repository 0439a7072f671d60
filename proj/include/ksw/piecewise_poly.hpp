#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ksw/types.hpp"

namespace ksw {

/// Piecewise polynomial on a finite breakpoint grid, constant outside it.
///
/// Piece i lives on [knots[i], knots[i+1]) and is stored in the locally
/// shifted monomial basis (x - knots[i])^j, row i of the coefficient matrix.
/// Left of knots[0] the function equals left_value, right of knots.back()
/// it equals right_value. Evaluation at a breakpoint takes the piece to the
/// right (right-limit convention); left limits are available separately.
template <typename Scalar>
class PiecewisePoly {
 public:
  PiecewisePoly() = default;

  PiecewisePoly(VecX<Scalar> knots, MatX<Scalar> coeffs, Scalar left_value,
                Scalar right_value)
      : knots_(std::move(knots)),
        coeffs_(std::move(coeffs)),
        left_value_(left_value),
        right_value_(right_value) {
    if (knots_.size() < 2) throw std::invalid_argument("need at least two knots");
    if (coeffs_.rows() != knots_.size() - 1)
      throw std::invalid_argument("one coefficient row per knot interval required");
    if (coeffs_.cols() < 1) throw std::invalid_argument("empty coefficient rows");
    for (Eigen::Index i = 0; i + 1 < knots_.size(); ++i)
      if (!(knots_[i] < knots_[i + 1]))
        throw std::invalid_argument("knots must be strictly increasing");
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
      for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
        if (!std::isfinite(static_cast<double>(coeffs_(i, j))))
          throw std::invalid_argument("non-finite coefficient");
  }

  int degree() const { return static_cast<int>(coeffs_.cols()) - 1; }
  Eigen::Index piece_count() const { return coeffs_.rows(); }
  const VecX<Scalar>& knots() const { return knots_; }
  const MatX<Scalar>& piece_coeffs() const { return coeffs_; }
  MatX<Scalar>& piece_coeffs() { return coeffs_; }
  Scalar left_value() const { return left_value_; }
  Scalar right_value() const { return right_value_; }

  Scalar operator()(Scalar x) const { return derivative(x, 0); }

  /// Value of the order-th derivative, right limit at breakpoints.
  Scalar derivative(Scalar x, int order) const {
    if (order < 0 || order > degree())
      throw std::invalid_argument("derivative order out of range");
    if (x < knots_[0]) return order == 0 ? left_value_ : Scalar(0);
    if (x >= knots_[knots_.size() - 1]) return order == 0 ? right_value_ : Scalar(0);
    Eigen::Index i = find_piece(x);
    return eval_piece(i, x - knots_[i], order);
  }

  /// Limit from below of the order-th derivative.
  Scalar derivative_left(Scalar x, int order) const {
    if (order < 0 || order > degree())
      throw std::invalid_argument("derivative order out of range");
    if (x <= knots_[0]) return order == 0 ? left_value_ : Scalar(0);
    if (x > knots_[knots_.size() - 1]) return order == 0 ? right_value_ : Scalar(0);
    // piece whose closure contains x from the left: knots[i] < x <= knots[i+1]
    Eigen::Index i = find_piece_left(x);
    return eval_piece(i, x - knots_[i], order);
  }

  Scalar derivative_right(Scalar x, int order) const { return derivative(x, order); }

  /// order-th derivative of piece i evaluated at local coordinate u.
  Scalar eval_piece(Eigen::Index i, Scalar u, int order) const {
    const int deg = degree();
    Scalar acc = 0;
    for (int j = deg; j >= order; --j) {
      Scalar fac = 1;
      for (int k = 0; k < order; ++k) fac *= Scalar(j - k);
      acc = acc * u + coeffs_(i, j) * fac;
      if (j == order) break;
    }
    return acc;
  }

  Eigen::Index find_piece(Scalar x) const {
    // largest i with knots[i] <= x, capped to the last piece
    const Scalar* b = knots_.data();
    const Scalar* e = b + knots_.size();
    Eigen::Index i = std::upper_bound(b, e, x) - b - 1;
    return std::min<Eigen::Index>(i, coeffs_.rows() - 1);
  }

  Eigen::Index find_piece_left(Scalar x) const {
    const Scalar* b = knots_.data();
    const Scalar* e = b + knots_.size();
    Eigen::Index i = std::lower_bound(b, e, x) - b - 1;
    i = std::max<Eigen::Index>(i, 0);
    return std::min<Eigen::Index>(i, coeffs_.rows() - 1);
  }

 private:
  VecX<Scalar> knots_;
  MatX<Scalar> coeffs_;
  Scalar left_value_ = 0;
  Scalar right_value_ = 0;
};

namespace detail {

/// Critical points of a polynomial q (coefficients in monomial basis, local
/// coordinate) on [0, w]: roots of q' located by sign-change bisection on a
/// dense scan. Appends the polished abscissae to out.
template <typename Scalar>
void critical_points(const VecX<Scalar>& q, Scalar w, std::vector<Scalar>& out) {
  const int deg = static_cast<int>(q.size()) - 1;
  if (deg < 2) return;  // derivative constant, no interior extrema
  VecX<Scalar> dq(deg);
  for (int j = 1; j <= deg; ++j) dq[j - 1] = q[j] * Scalar(j);
  auto dval = [&](Scalar u) {
    Scalar acc = 0;
    for (int j = deg - 1; j >= 0; --j) acc = acc * u + dq[j];
    return acc;
  };
  const int cells = 256;
  Scalar prev_u = 0, prev_f = dval(0);
  for (int c = 1; c <= cells; ++c) {
    Scalar u = w * Scalar(c) / Scalar(cells);
    Scalar f = dval(u);
    if (prev_f == Scalar(0)) out.push_back(prev_u);
    if ((prev_f < 0 && f > 0) || (prev_f > 0 && f < 0)) {
      Scalar a = prev_u, b = u, fa = prev_f;
      for (int it = 0; it < 200 && (b - a) > std::numeric_limits<Scalar>::epsilon() * w; ++it) {
        Scalar mid = (a + b) / 2, fm = dval(mid);
        if ((fa < 0) == (fm < 0)) { a = mid; fa = fm; } else { b = mid; }
      }
      out.push_back((a + b) / 2);
    }
    prev_u = u;
    prev_f = f;
  }
  if (prev_f == Scalar(0)) out.push_back(prev_u);
}

}  // namespace detail

/// Supremum over the real line of |order-th derivative|, from exact per-piece
/// extremum location (roots of the next derivative) plus breakpoint values.
template <typename Scalar>
Scalar sup_norm_derivative(const PiecewisePoly<Scalar>& pp, int order) {
  if (order < 0 || order > pp.degree())
    throw std::invalid_argument("derivative order out of range");
  using std::abs;
  Scalar best = 0;
  if (order == 0) best = std::max(abs(pp.left_value()), abs(pp.right_value()));
  const int deg = pp.degree();
  const auto& knots = pp.knots();
  std::vector<Scalar> crit;
  for (Eigen::Index i = 0; i < pp.piece_count(); ++i) {
    const Scalar w = knots[i + 1] - knots[i];
    // order-th derivative of piece i as a polynomial in the local coordinate
    VecX<Scalar> q(deg - order + 1);
    for (int j = order; j <= deg; ++j) {
      Scalar fac = 1;
      for (int k = 0; k < order; ++k) fac *= Scalar(j - k);
      q[j - order] = pp.piece_coeffs()(i, j) * fac;
    }
    best = std::max(best, abs(pp.eval_piece(i, Scalar(0), order)));
    best = std::max(best, abs(pp.eval_piece(i, w, order)));
    crit.clear();
    detail::critical_points(q, w, crit);
    for (Scalar u : crit)
      if (u >= 0 && u <= w) best = std::max(best, abs(pp.eval_piece(i, u, order)));
    // coarse direct scan as a safety net against missed sign changes
    for (int c = 1; c < 64; ++c)
      best = std::max(best, abs(pp.eval_piece(i, w * Scalar(c) / 64, order)));
  }
  return best;
}

}  // namespace ksw
