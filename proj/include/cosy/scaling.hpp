#pragma once

#include <cmath>

#include "cosy/core.hpp"

namespace cosy {

// Diagonal equilibration factors. Scaling a SPD matrix M symmetrically by
// s_i = (sum_j |M_ij|)^(-1/2) moves its spectrum into (0,1], which is the
// precondition for the polynomial preconditioners.
struct ScalingVector {
  RealVector s;

  explicit ScalingVector(RealVector v) : s(std::move(v)) {
    for (Eigen::Index i = 0; i < s.size(); ++i)
      require(s[i] > 0.0 && std::isfinite(s[i]), "scale factors must be positive and finite");
  }

  int size() const { return static_cast<int>(s.size()); }

  ScalingVector inverse() const {
    RealVector inv = s.cwiseInverse();
    return ScalingVector(std::move(inv));
  }
};

// s_i = (sum_j |B_ij + C_ij|)^(-1/2). A row whose sum vanishes (possible
// for zero-padded systems) gets s_i = 1, leaving that coordinate inert.
inline ScalingVector compute_scaling(const SparseSymMatrix& B, const SparseSymMatrix& C) {
  require(B.rows() == C.rows(), "dimension mismatch in compute_scaling");
  const RealVector row_sums = add(B, C).abs_row_sums();
  RealVector s(row_sums.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = row_sums[i] == 0.0 ? 1.0 : 1.0 / std::sqrt(row_sums[i]);
  return ScalingVector(std::move(s));
}

// (SBS + i SCS) w = S b; the solution of the original system is x = S w.
inline ComplexSymSystem apply_scaling(const ComplexSymSystem& sys, const ScalingVector& sc) {
  require(sc.size() == sys.size(), "dimension mismatch in apply_scaling");
  ComplexVector b = sys.rhs;
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] *= sc.s[i];
  return ComplexSymSystem(sys.B.scaled_sym(sc.s), sys.C.scaled_sym(sc.s), std::move(b));
}

// x_i = s_i w_i, componentwise on both parts.
inline ComplexVector unscale_solution(const ComplexVector& w, const ScalingVector& sc) {
  require(static_cast<int>(w.size()) == sc.size(), "dimension mismatch in unscale_solution");
  ComplexVector x = w;
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] *= sc.s[i];
  return x;
}

}  // namespace cosy
