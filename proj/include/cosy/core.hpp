#pragma once

#include <cmath>

#include "cosy/sparse.hpp"

namespace cosy {

// The complex symmetric system (B + iC)x = b with B, C real symmetric
// semi-SPD and B + C SPD. The complex matrix is never formed; everything
// operates on the real pair.
struct ComplexSymSystem {
  SparseSymMatrix B;
  SparseSymMatrix C;
  ComplexVector rhs;

  ComplexSymSystem() = default;
  ComplexSymSystem(SparseSymMatrix b_, SparseSymMatrix c_, ComplexVector rhs_)
      : B(std::move(b_)), C(std::move(c_)), rhs(std::move(rhs_)) {
    require(B.rows() == C.rows(), "B and C must have equal dimension");
    require(static_cast<int>(rhs.size()) == B.rows(), "rhs length must match matrix dimension");
    require(rhs.allFinite(), "rhs entries must be finite");
  }

  int size() const { return B.rows(); }
};

// (B + iC)x, evaluated as B x + i (C x) — two real sparse products per part.
inline ComplexVector apply_A(const ComplexSymSystem& sys, const ComplexVector& x) {
  require(static_cast<int>(x.size()) == sys.size(), "dimension mismatch in apply_A");
  ComplexVector bx = spmv(sys.B, x);
  const ComplexVector cx = spmv(sys.C, x);
  bx += Complex(0.0, 1.0) * cx;
  return bx;
}

// Unconjugated bilinear form [u,v] = sum_k u_k v_k. This is NOT the
// Hermitian inner product: [u,u] can vanish or be negative for u != 0.
inline Complex bilinear(const ComplexVector& u, const ComplexVector& v) {
  require(u.size() == v.size(), "dimension mismatch in bilinear form");
  Complex s{};
  for (Eigen::Index k = 0; k < u.size(); ++k) s += u[k] * v[k];
  return s;
}

// Euclidean norm sqrt(sum |v_k|^2).
inline double norm2(const ComplexVector& v) { return v.norm(); }

}  // namespace cosy
