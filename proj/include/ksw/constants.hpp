#pragma once

#include "ksw/types.hpp"

namespace ksw {

/// The derivative-norm constants attached to order m:
/// M_m = 2^(m-2) (m-1)!, N_m = 2^m M_m, and the multivariate variants
/// M'_m (equal to M_m for m <= 4, 2^(3m/2-2)(m-1)! for m >= 5), N'_m = 2^m M'_m.
struct ConstantsTable {
  int m;
  double M;
  double N;
  double M_prime;
  double N_prime;
};

ConstantsTable constants_for(int m);
double m_constant(int m);
double n_constant(int m);
double m_prime_constant(int m);
double n_prime_constant(int m);
Real m_constant_real(int m);

/// Favard constant K_r = (4/pi) sum_j [(-1)^j/(2j+1)]^(r+1), with closed
/// forms K_0 = 1 and K_1 = pi/2; truncation_error bounds the series remainder.
struct FavardValue {
  int r;
  double value;
  double truncation_error;
};

FavardValue favard_constant(int r, double tol = 1e-14);

/// C_{m,k} = K_{m-k} K_m^{-1+k/m} in the derivative interpolation inequality
/// |g^(k)| <= C_{m,k} |g|^(1-k/m) |g^(m)|^(k/m). Requires 1 <= k <= m-1.
double landau_kolmogorov_constant(int m, int k);

/// Tightest applicable bound on max_{0<=i<=m} |h_{m,z,alpha}^(i)|:
/// N/alpha^m for alpha <= 1, M (1 + 2^m/alpha^m) otherwise, with the primed
/// constants in the multivariate (mixed partial) case.
double max_derivative_bound(int m, double alpha, bool multivariate);

/// Upper incomplete gamma Gamma(r, x) = int_x^inf t^(r-1) e^-t dt, r > 0.
/// Series complement below x = r+1, continued fraction above.
double upper_incomplete_gamma(double r, double x);

/// True iff e^y > 2^(b+1) holds and Gamma(b+1, y) <= 2^(b+1) y^b e^-y
/// verifies numerically; a sanity probe, not used in any bound path.
bool check_incomplete_gamma_bound(double b, double y);

}  // namespace ksw
