#pragma once

#include <Eigen/Core>

namespace ksw {

/// Extended-precision scalar used for spline construction and certification
/// (80-bit on x86-64). Downstream bound arithmetic works in double.
using Real = long double;

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecXd = VecX<double>;
using VecXr = VecX<Real>;
using MatXr = MatX<Real>;

}  // namespace ksw
