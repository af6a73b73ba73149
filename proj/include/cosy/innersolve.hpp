#pragma once

#include <memory>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "cosy/ic0.hpp"
#include "cosy/krylov.hpp"

namespace cosy {

enum class SpdKind { DenseCholesky, IC0Direct, IC0PCG };

inline const char* spd_kind_name(SpdKind k) {
  switch (k) {
    case SpdKind::DenseCholesky: return "dense-cholesky";
    case SpdKind::IC0Direct: return "ic0-direct";
    case SpdKind::IC0PCG: return "ic0-pcg";
  }
  return "unknown";
}

// A solver for M z = v with M = B + C real SPD. DenseCholesky and a
// tight-tolerance IC0PCG are (near-)exact; IC0Direct applies the
// incomplete factor once and is only as accurate as the factorization.
struct SpdSolverHandle {
  SpdKind kind = SpdKind::DenseCholesky;
  RealOperator solve;
  double advertised_tol = 0.0;
  double ic0_shift = 0.0;
};

// One-shot dense SPD solve; also the oracle used by tests.
inline RealVector dense_cholesky_solve(const Eigen::MatrixXd& M, const RealVector& v) {
  require(M.rows() == M.cols(), "matrix must be square");
  require(M.rows() == v.size(), "dimension mismatch in dense solve");
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw NotSpdError("dense Cholesky failed: matrix is not SPD");
  return llt.solve(v);
}

inline SpdSolverHandle make_dense_cholesky(const SparseSymMatrix& M, int dense_limit = 2000) {
  require(M.rows() <= dense_limit, "matrix exceeds the dense Cholesky limit");
  auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(M.to_dense());
  if (llt->info() != Eigen::Success) throw NotSpdError("dense Cholesky failed: matrix is not SPD");
  SpdSolverHandle h;
  h.kind = SpdKind::DenseCholesky;
  h.advertised_tol = 1e-12;
  h.solve = [llt](const RealVector& v) { return llt->solve(v).eval(); };
  return h;
}

inline SpdSolverHandle make_ic0_direct(const SparseSymMatrix& M) {
  auto f = std::make_shared<ShiftedIC0>(ic0_factorize_shifted(M));
  SpdSolverHandle h;
  h.kind = SpdKind::IC0Direct;
  h.advertised_tol = 1e-12;  // holds when the pattern admits no fill (else preconditioner quality)
  h.ic0_shift = f->shift;
  h.solve = [f](const RealVector& v) { return triangular_solves(f->factor, v); };
  return h;
}

inline SpdSolverHandle make_ic0_pcg(const SparseSymMatrix& M, double tol = 1e-2, int maxit = 500) {
  auto f = std::make_shared<ShiftedIC0>(ic0_factorize_shifted(M));
  auto m = std::make_shared<SparseSymMatrix>(M);
  SpdSolverHandle h;
  h.kind = SpdKind::IC0PCG;
  h.advertised_tol = tol;
  h.ic0_shift = f->shift;
  h.solve = [f, m, tol, maxit](const RealVector& v) {
    RealOperator prec = [f](const RealVector& r) { return triangular_solves(f->factor, r); };
    return pcg_real(*m, v, prec, tol, maxit).x;
  };
  return h;
}

}  // namespace cosy
