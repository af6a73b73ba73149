#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "cosy/common.hpp"

// Coefficient engine for polynomial inverse approximations s_m(x) ~ 1/x on
// (0,1]. Everything is expressed through the primed three-term recurrence
//
//   s_0(x) = a'_0,   s_1(x) = a'_1 x + b'_1,
//   s_n(x) = (a'_n x + b'_n) s_{n-1}(x) + c'_n s_{n-2}(x) - a'_n,
//
// together with the residual polynomials r_{n+1}(x) = 1 - x s_n(x), which
// satisfy r_{n+1} = (a'_n x + b'_n) r_n + c'_n r_{n-1} and r(0) = 1.
// Two families are provided: Chebyshev (minimax on [eps,1]) and Jacobi
// (least squares on [0,1] with weight 1, via the kernel-polynomial weight x).

namespace cosy {

enum class PolyFamily { Chebyshev, Jacobi };

inline const char* family_name(PolyFamily f) {
  return f == PolyFamily::Chebyshev ? "chebyshev" : "jacobi";
}

// Unnormalized orthogonal-polynomial recurrence
//   q_0 = 1, q_1 = a_0 x + b_0, q_{n+1} = (a_n x + b_n) q_n + c_n q_{n-1}.
// c[0] is unused.
template <typename Real>
struct BaseRecurrenceT {
  std::vector<Real> a, b, c;

  int max_index() const { return static_cast<int>(a.size()) - 1; }
};

// Primed coefficients driving the preconditioner recurrence. Arrays are
// indexed by n; slots below the first valid index are zero:
//   a_prime[0]                     — s_0
//   a_prime[1], b_prime[1]         — s_1
//   a_prime[n], b_prime[n], c_prime[n] for n in [2, degree]
// gamma[n] = q_n(0)/q_{n+1}(0) is kept for diagnostics and cross-checks.
template <typename Real>
struct RecurrenceCoeffsT {
  PolyFamily family = PolyFamily::Jacobi;
  int degree = 0;  // m: s_m has degree m, the residual polynomial is r_{m+1}
  std::vector<Real> a_prime, b_prime, c_prime, gamma;
  Real epsilon = Real(0);  // Chebyshev: left end of the design interval
  Real delta = Real(0);    // Chebyshev: stripe half-width the design targets

  void resize(int m) {
    degree = m;
    a_prime.assign(static_cast<std::size_t>(m) + 1, Real(0));
    b_prime.assign(static_cast<std::size_t>(m) + 1, Real(0));
    c_prime.assign(static_cast<std::size_t>(m) + 1, Real(0));
    gamma.assign(static_cast<std::size_t>(m) + 1, Real(0));
  }
};

using BaseRecurrence = BaseRecurrenceT<double>;
using RecurrenceCoeffs = RecurrenceCoeffsT<double>;

// Jacobi polynomials on [0,1] for the weight (1-x)^alpha x^beta.
template <typename Real = double>
BaseRecurrenceT<Real> jacobi_base(Real alpha, Real beta, int m) {
  require(m >= 0, "degree must be nonnegative");
  require(alpha > Real(-1) && beta > Real(-1), "jacobi weight requires alpha, beta > -1");
  BaseRecurrenceT<Real> base;
  base.a.assign(static_cast<std::size_t>(m) + 1, Real(1));
  base.b.resize(static_cast<std::size_t>(m) + 1);
  base.c.assign(static_cast<std::size_t>(m) + 1, Real(0));
  const Real ab = alpha + beta;
  const Real num = beta * beta - alpha * alpha;
  for (int n = 0; n <= m; ++n) {
    const Real d = (2 * n + ab) * (2 * (n + 1) + ab);
    base.b[n] = num == Real(0) ? Real(-0.5) : -(Real(1) + num / d) / Real(2);
    if (n >= 1) {
      const Real t = 2 * n + ab;
      base.c[n] = -(n * (n + alpha) * (n + beta) * (n + ab)) / ((t - 1) * (t + 1) * t * t);
    }
  }
  return base;
}

// Chebyshev polynomials shifted to [eps, 1]:
//   T_1 = a x + b with a = 2/(1-eps), b = -(1+eps)/(1-eps),
//   T_{n+1} = 2(a x + b) T_n - T_{n-1}.
template <typename Real = double>
BaseRecurrenceT<Real> chebyshev_base(Real eps, int m) {
  require(m >= 0, "degree must be nonnegative");
  require(eps > Real(0) && eps < Real(1), "eps must lie in (0,1)");
  BaseRecurrenceT<Real> base;
  const Real a = Real(2) / (Real(1) - eps);
  const Real b = -(Real(1) + eps) / (Real(1) - eps);
  base.a.assign(static_cast<std::size_t>(m) + 1, 2 * a);
  base.b.assign(static_cast<std::size_t>(m) + 1, 2 * b);
  base.c.assign(static_cast<std::size_t>(m) + 1, Real(-1));
  base.a[0] = a;
  base.b[0] = b;
  base.c[0] = Real(0);
  return base;
}

// Turns a base recurrence q_n into the primed coefficients of s_n and
// r_{n+1} = q_{n+1}/q_{n+1}(0):
//   a'_0 = -a_0/b_0,
//   a'_1 = -a_0 a_1 / (b_0 b_1 + c_1),  b'_1 = -(a_0 b_1 + a_1 b_0) / (b_0 b_1 + c_1),
//   a'_n = a_n g_n,  b'_n = b_n g_n,  c'_n = c_n g_{n-1} g_n   (n >= 2),
// with g_1 = b_0/(b_0 b_1 + c_1) and g_n = 1/(b_n + c_n g_{n-1}).
template <typename Real>
RecurrenceCoeffsT<Real> lemma_transform(const BaseRecurrenceT<Real>& base, int m, PolyFamily family) {
  require(m >= 0, "degree must be nonnegative");
  require(base.max_index() >= m, "base recurrence shorter than requested degree");
  RecurrenceCoeffsT<Real> k;
  k.family = family;
  k.resize(m);

  if (base.b[0] == Real(0)) throw DegenerateRecurrence(0, "b_0 vanishes");
  k.a_prime[0] = -base.a[0] / base.b[0];
  if (m == 0) return k;

  const Real d1 = base.b[0] * base.b[1] + base.c[1];
  if (d1 == Real(0)) throw DegenerateRecurrence(1, "b_0 b_1 + c_1 vanishes");
  k.a_prime[1] = -base.a[0] * base.a[1] / d1;
  k.b_prime[1] = -(base.a[0] * base.b[1] + base.a[1] * base.b[0]) / d1;
  k.gamma[1] = base.b[0] / d1;

  Real g_prev = k.gamma[1];
  for (int n = 2; n <= m; ++n) {
    const Real den = base.b[n] + base.c[n] * g_prev;
    if (den == Real(0)) throw DegenerateRecurrence(n, "b_n + c_n gamma_{n-1} vanishes");
    const Real g = Real(1) / den;
    k.gamma[n] = g;
    k.a_prime[n] = base.a[n] * g;
    k.b_prime[n] = base.b[n] * g;
    k.c_prime[n] = base.c[n] * g_prev * g;
    g_prev = g;
  }
  return k;
}

// Closed-form coefficients for the weight-x Jacobi family (alpha=0, beta=1):
//   a'_0 = 3/2, a'_1 = -10/3, b'_1 = 4,
//   gamma_n = a'_n = -4 + 2(3n+5)/(n+2)^2,
//   b'_n = 2 - D, c'_n = -1 + D with D = 2(3n^2+6n+2)/((2n+1)(n+2)^2).
template <typename Real = double>
RecurrenceCoeffsT<Real> closed_jacobi_coeffs(int m) {
  require(m >= 0, "degree must be nonnegative");
  RecurrenceCoeffsT<Real> k;
  k.family = PolyFamily::Jacobi;
  k.resize(m);
  k.a_prime[0] = Real(3) / Real(2);
  if (m == 0) return k;
  k.a_prime[1] = Real(-10) / Real(3);
  k.b_prime[1] = Real(4);
  k.gamma[1] = Real(-20) / Real(9);
  for (int n = 2; n <= m; ++n) {
    const Real np2 = Real(n + 2);
    const Real g = Real(-4) + Real(2) * (3 * n + 5) / (np2 * np2);
    const Real d = Real(2) * (Real(3) * n * n + 6 * n + 2) / ((2 * n + 1) * np2 * np2);
    k.gamma[n] = g;
    k.a_prime[n] = g;
    k.b_prime[n] = Real(2) - d;
    k.c_prime[n] = Real(-1) + d;
  }
  return k;
}

// Design rule for the Chebyshev family: instead of estimating the smallest
// eigenvalue, fix the stripe half-width delta and the degree m, and derive
// the eps whose degree-(m+1) Chebyshev residual oscillates within
// [-delta, delta] on [eps, 1]:
//   |c| = ((1 + sqrt(1-delta^2))/delta)^(1/(m+1)),  eps = ((|c|-1)/(|c|+1))^2.
template <typename Real = double>
Real cheb_epsilon_from_delta(Real delta, int m) {
  require(delta > Real(0) && delta < Real(1), "delta must lie in (0,1)");
  require(m >= 0, "degree must be nonnegative");
  using std::pow;
  using std::sqrt;
  const Real q = pow((Real(1) + sqrt(Real(1) - delta * delta)) / delta, Real(1) / Real(m + 1));
  const Real r = (q - Real(1)) / (q + Real(1));
  return r * r;
}

// Closed-form Chebyshev coefficients on [eps,1]:
//   a'_0 = 2/(1+eps), a'_1 = -8/(eps^2+6eps+1), b'_1 = 8(1+eps)/(eps^2+6eps+1),
//   a'_n = 4 g_n/(1-eps), b'_n = -2 g_n (1+eps)/(1-eps), c'_n = -g_n g_{n-1},
// where g_n = T_n(0)/T_{n+1}(0) = (c^n + c^-n)/(c^{n+1} + c^-(n+1)) with
// c = (sqrt(eps)-1)/(sqrt(eps)+1) in (-1,0). The ratio is evaluated as
//   g_n = c (c^{2n} + 1) / (c^{2n+2} + 1),
// which uses only decaying powers and cannot overflow for any n.
template <typename Real = double>
RecurrenceCoeffsT<Real> closed_cheb_coeffs(Real eps, int m) {
  require(eps > Real(0) && eps < Real(1), "eps must lie in (0,1)");
  require(m >= 0, "degree must be nonnegative");
  using std::sqrt;
  RecurrenceCoeffsT<Real> k;
  k.family = PolyFamily::Chebyshev;
  k.resize(m);
  k.epsilon = eps;
  k.a_prime[0] = Real(2) / (Real(1) + eps);
  if (m == 0) return k;
  const Real den1 = eps * eps + 6 * eps + 1;
  k.a_prime[1] = Real(-8) / den1;
  k.b_prime[1] = Real(8) * (Real(1) + eps) / den1;

  const Real c = (sqrt(eps) - Real(1)) / (sqrt(eps) + Real(1));
  const Real c2 = c * c;
  Real c2n = c2;  // c^{2n}, starting at n = 1
  Real g_prev = Real(0);
  for (int n = 1; n <= m; ++n) {
    const Real g = c * (c2n + Real(1)) / (c2n * c2 + Real(1));
    k.gamma[n] = g;
    if (n >= 2) {
      k.a_prime[n] = Real(4) * g / (Real(1) - eps);
      k.b_prime[n] = Real(-2) * g * (Real(1) + eps) / (Real(1) - eps);
      k.c_prime[n] = -g * g_prev;
    }
    g_prev = g;
    c2n *= c2;  // underflow to 0 for large n is benign: g -> c
  }
  return k;
}

// r_{m+1}(x) = 1 - x s_m(x), evaluated by the residual recurrence. By
// construction r(0) = 1 for every degree.
template <typename Real>
Real eval_residual_poly(const RecurrenceCoeffsT<Real>& k, Real x) {
  Real r_prev = Real(1) - k.a_prime[0] * x;  // r_1
  if (k.degree == 0) return r_prev;
  Real r = Real(1) - x * (k.a_prime[1] * x + k.b_prime[1]);  // r_2 = 1 - x s_1(x)
  for (int n = 2; n <= k.degree; ++n) {
    const Real r_next = (k.a_prime[n] * x + k.b_prime[n]) * r + k.c_prime[n] * r_prev;
    r_prev = r;
    r = r_next;
  }
  return r;
}

// Scalar form of the preconditioner recurrence; the vector version applied
// to M = lambda I reduces to this componentwise.
template <typename Real>
Real eval_sm_scalar(const RecurrenceCoeffsT<Real>& k, Real x) {
  Real t1 = k.a_prime[0];  // s_0
  if (k.degree == 0) return t1;
  Real y = k.a_prime[1] * x + k.b_prime[1];  // s_1
  for (int n = 2; n <= k.degree; ++n) {
    const Real next = k.a_prime[n] * (x * y - Real(1)) + k.b_prime[n] * y + k.c_prime[n] * t1;
    t1 = y;
    y = next;
  }
  return y;
}

// Roots of z^2 - (a' lambda + b') z - c', the characteristic polynomial of
// the homogeneous error recurrence. The larger-magnitude root is computed
// first; the other follows from the product of roots -c'.
inline std::pair<Complex, Complex> stability_roots(double a_p, double b_p, double c_p, double lambda) {
  const double p = a_p * lambda + b_p;  // sum of roots
  const double q = -c_p;                // product of roots
  const double disc = p * p - 4.0 * q;
  if (disc < 0.0) {
    const double im = std::sqrt(-disc) / 2.0;
    return {Complex(p / 2.0, im), Complex(p / 2.0, -im)};
  }
  const double root = std::sqrt(disc);
  const double z1 = p >= 0.0 ? (p + root) / 2.0 : (p - root) / 2.0;
  const double z2 = z1 != 0.0 ? q / z1 : 0.0;
  return {Complex(z1, 0.0), Complex(z2, 0.0)};
}

}  // namespace cosy
