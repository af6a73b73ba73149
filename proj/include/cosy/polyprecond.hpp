#pragma once

#include <Eigen/Core>

#include "cosy/core.hpp"
#include "cosy/orthopoly.hpp"

namespace cosy {

// y = s_m(M) v via the three-term recurrence, with three rotating vectors
// and exactly m sparse products for m >= 1. M is real, so the recurrence
// acts on the real and imaginary parts independently.
template <typename Vec>
Vec apply_sm(const SparseSymMatrix& m, const RecurrenceCoeffs& k, const Vec& v) {
  require(static_cast<int>(v.size()) == m.rows(), "dimension mismatch in apply_sm");
  require(k.degree >= 0, "coefficient degree must be nonnegative");
  Vec t1 = k.a_prime[0] * v;
  if (k.degree == 0) return t1;
  Vec y = k.a_prime[1] * spmv(m, v) + k.b_prime[1] * v;
  Vec t0;
  for (int n = 2; n <= k.degree; ++n) {
    t0.swap(t1);
    t1.swap(y);
    y = k.a_prime[n] * (spmv(m, t1) - v) + k.b_prime[n] * t1 + k.c_prime[n] * t0;
  }
  return y;
}

// One MHSS step approximated by a polynomial:
//   P^-1 = (1-i)/2 M^-1 ~ (1-i)/2 s_m(M),
// valid once the system is scaled so that the spectrum of M lies in (0,1].
inline ComplexVector apply_polynomial_P_inverse(const SparseSymMatrix& m_scaled, const RecurrenceCoeffs& k,
                                                const ComplexVector& r) {
  ComplexVector y = apply_sm(m_scaled, k, r);
  y *= Complex(0.5, -0.5);
  return y;
}

namespace detail {

// Rebuild the coefficient table of the same family in a wider scalar type.
template <typename Real>
RecurrenceCoeffsT<Real> widen_coeffs(const RecurrenceCoeffs& k) {
  if (k.family == PolyFamily::Jacobi) return closed_jacobi_coeffs<Real>(k.degree);
  RecurrenceCoeffsT<Real> w = closed_cheb_coeffs<Real>(static_cast<Real>(k.epsilon), k.degree);
  w.delta = static_cast<Real>(k.delta);
  return w;
}

inline bool is_diagonal(const SparseSymMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int kk = m.row_offsets()[i]; kk < m.row_offsets()[i + 1]; ++kk)
      if (m.col_indices()[kk] != i && m.values()[kk] != 0.0) return false;
  return true;
}

}  // namespace detail

// Max-norm gap between apply_sm in working precision and an extended
// precision reference. Diagonal M reduces to scalar recurrences; small
// dense M runs the full recurrence in extended precision. Test utility
// for confirming that rounding errors grow at most linearly in m.
inline double error_growth_probe(const SparseSymMatrix& m, const RecurrenceCoeffs& k, const ComplexVector& v) {
  using Long = long double;
  const ComplexVector working = apply_sm(m, k, v);
  const RecurrenceCoeffsT<Long> wide = detail::widen_coeffs<Long>(k);

  double worst = 0.0;
  if (detail::is_diagonal(m)) {
    for (int i = 0; i < m.rows(); ++i) {
      const Long s = eval_sm_scalar<Long>(wide, static_cast<Long>(m.coeff(i, i)));
      const Long dre = s * static_cast<Long>(v[i].real()) - static_cast<Long>(working[i].real());
      const Long dim = s * static_cast<Long>(v[i].imag()) - static_cast<Long>(working[i].imag());
      worst = std::max(worst, static_cast<double>(std::sqrt(dre * dre + dim * dim)));
    }
    return worst;
  }

  require(m.rows() <= 512, "extended-precision dense reference limited to small matrices");
  using LongVec = Eigen::Matrix<std::complex<Long>, Eigen::Dynamic, 1>;
  using LongMat = Eigen::Matrix<Long, Eigen::Dynamic, Eigen::Dynamic>;
  const LongMat md = m.to_dense().cast<Long>();
  LongVec vl(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) vl[i] = std::complex<Long>(v[i].real(), v[i].imag());

  LongVec t1 = wide.a_prime[0] * vl;
  LongVec y = t1;
  if (k.degree >= 1) y = wide.a_prime[1] * (md * vl) + wide.b_prime[1] * vl;
  LongVec t0;
  for (int n = 2; n <= k.degree; ++n) {
    t0.swap(t1);
    t1.swap(y);
    y = wide.a_prime[n] * (md * t1 - vl) + wide.b_prime[n] * t1 + wide.c_prime[n] * t0;
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Long dre = y[i].real() - static_cast<Long>(working[i].real());
    const Long dim = y[i].imag() - static_cast<Long>(working[i].imag());
    worst = std::max(worst, static_cast<double>(std::sqrt(dre * dre + dim * dim)));
  }
  return worst;
}

}  // namespace cosy
