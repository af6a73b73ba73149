#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cosy/core.hpp"
#include "cosy/orthopoly.hpp"

namespace cosy {

enum class SolveStatus { Converged, NotConverged, Breakdown, NumericalFailure };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NotConverged: return "not_converged";
    case SolveStatus::Breakdown: return "breakdown";
    case SolveStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

struct SolveReport {
  SolveStatus status = SolveStatus::NotConverged;
  int iterations = 0;
  std::vector<double> residual_history;  // ||r|| per iteration, index 0 = initial
  double relative_residual = 0.0;        // last entry / ||b||
  double wall_time = 0.0;                // seconds
  long matvec_count = 0;                 // applications of A (or M for real solves)
  long precond_applications = 0;
  std::string note;
};

struct KrylovOptions {
  double tol = 1e-8;
  int maxit = 5000;
  double breakdown_tol = 1e-30;  // |form| <= breakdown_tol * scale declares breakdown
};

// Linear operator x -> A x over complex vectors.
using ComplexOperator = std::function<ComplexVector(const ComplexVector&)>;
using RealOperator = std::function<RealVector(const RealVector&)>;

enum class PrecondKind { Identity, ComplexIC0, MhssExactCholesky, MhssIC0, MhssIC0PCG, MhssPoly };

inline const char* precond_kind_name(PrecondKind k) {
  switch (k) {
    case PrecondKind::Identity: return "identity";
    case PrecondKind::ComplexIC0: return "ilu0";
    case PrecondKind::MhssExactCholesky: return "mhss-cholesky";
    case PrecondKind::MhssIC0: return "mhss-ilu0";
    case PrecondKind::MhssIC0PCG: return "mhss-ilu0-pcg";
    case PrecondKind::MhssPoly: return "mhss-poly";
  }
  return "unknown";
}

// Tagged preconditioning strategy. The payload is the apply closure; the
// remaining fields describe it for reports. Application must be a fixed
// linear operator.
struct Preconditioner {
  PrecondKind kind = PrecondKind::Identity;
  ComplexOperator apply_fn;  // empty means identity

  PolyFamily family = PolyFamily::Jacobi;  // MhssPoly only
  int degree = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  double ic0_shift = 0.0;
  double inner_tol = 0.0;  // MhssIC0PCG only

  ComplexVector apply(const ComplexVector& r) const { return apply_fn ? apply_fn(r) : r; }
};

namespace detail {

class StopWatch {
public:
  StopWatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

inline void finish_report(SolveReport& rep, double bnorm, const StopWatch& sw) {
  rep.iterations = static_cast<int>(rep.residual_history.size()) - 1;
  rep.relative_residual = bnorm > 0.0 ? rep.residual_history.back() / bnorm : 0.0;
  rep.wall_time = sw.seconds();
}

}  // namespace detail

struct ComplexSolveResult {
  ComplexVector x;
  SolveReport report;
};

// Conjugate Orthogonal CG: the CG recursion with every inner product
// replaced by the unconjugated bilinear form [u,v] = sum u_k v_k.
// Either [q,p] or [r~,r] can vanish for nonzero arguments (isotropic
// vectors); that is reported as Breakdown with the best iterate so far.
inline ComplexSolveResult cocg(const ComplexOperator& A, const Preconditioner& P, const ComplexVector& b,
                               const KrylovOptions& opt = {}, const ComplexVector* x0 = nullptr) {
  require(opt.tol > 0.0, "tolerance must be positive");
  require(opt.maxit >= 1, "maxit must be at least 1");
  detail::StopWatch sw;
  SolveReport rep;

  const double bnorm = norm2(b);
  ComplexVector x = x0 ? *x0 : ComplexVector::Zero(b.size());
  ComplexVector r = b;
  if (x0 && norm2(x) > 0.0) {
    r -= A(x);
    ++rep.matvec_count;
  }
  double rnorm = norm2(r);
  rep.residual_history.push_back(rnorm);

  ComplexVector best_x = x;
  double best_rnorm = rnorm;
  auto finish = [&](SolveStatus st, bool use_best) {
    rep.status = st;
    detail::finish_report(rep, bnorm, sw);
    return ComplexSolveResult{use_best ? std::move(best_x) : std::move(x), std::move(rep)};
  };

  if (bnorm == 0.0 || rnorm <= opt.tol * bnorm) return finish(SolveStatus::Converged, false);

  ComplexVector rt = P.apply(r);
  ++rep.precond_applications;
  ComplexVector p = rt;
  Complex rho = bilinear(rt, r);

  for (int it = 1; it <= opt.maxit; ++it) {
    if (std::abs(rho) <= opt.breakdown_tol * norm2(rt) * rnorm) {
      rep.note = "rho = [r~, r] vanished";
      return finish(SolveStatus::Breakdown, true);
    }
    const ComplexVector q = A(p);
    ++rep.matvec_count;
    const Complex mu = bilinear(q, p);
    if (!std::isfinite(std::abs(mu))) return finish(SolveStatus::NumericalFailure, true);
    if (std::abs(mu) <= opt.breakdown_tol * norm2(q) * norm2(p)) {
      rep.note = "mu = [q, p] vanished";
      return finish(SolveStatus::Breakdown, true);
    }
    const Complex alpha = rho / mu;
    x += alpha * p;
    r -= alpha * q;
    rnorm = norm2(r);
    rep.residual_history.push_back(rnorm);
    if (!std::isfinite(rnorm)) return finish(SolveStatus::NumericalFailure, true);
    if (rnorm < best_rnorm) {
      best_rnorm = rnorm;
      best_x = x;
    }
    if (rnorm <= opt.tol * bnorm) return finish(SolveStatus::Converged, false);
    if (it == opt.maxit) break;

    rt = P.apply(r);
    ++rep.precond_applications;
    const Complex rho_next = bilinear(rt, r);
    const Complex beta = rho_next / rho;
    rho = rho_next;
    p = rt + beta * p;
  }
  return finish(SolveStatus::NotConverged, true);
}

// Conjugate Orthogonal CR: minimizes along A-images, with the recursively
// updated preconditioned residual. Same bilinear form and breakdown
// policy as cocg.
inline ComplexSolveResult cocr(const ComplexOperator& A, const Preconditioner& P, const ComplexVector& b,
                               const KrylovOptions& opt = {}, const ComplexVector* x0 = nullptr) {
  require(opt.tol > 0.0, "tolerance must be positive");
  require(opt.maxit >= 1, "maxit must be at least 1");
  detail::StopWatch sw;
  SolveReport rep;

  const double bnorm = norm2(b);
  ComplexVector x = x0 ? *x0 : ComplexVector::Zero(b.size());
  ComplexVector r = b;
  if (x0 && norm2(x) > 0.0) {
    r -= A(x);
    ++rep.matvec_count;
  }
  double rnorm = norm2(r);
  rep.residual_history.push_back(rnorm);

  ComplexVector best_x = x;
  double best_rnorm = rnorm;
  auto finish = [&](SolveStatus st, bool use_best) {
    rep.status = st;
    detail::finish_report(rep, bnorm, sw);
    return ComplexSolveResult{use_best ? std::move(best_x) : std::move(x), std::move(rep)};
  };

  if (bnorm == 0.0 || rnorm <= opt.tol * bnorm) return finish(SolveStatus::Converged, false);

  ComplexVector rt = P.apply(r);
  ++rep.precond_applications;
  ComplexVector p = rt;
  ComplexVector q = A(p);
  ++rep.matvec_count;
  Complex rho = bilinear(rt, q);

  for (int it = 1; it <= opt.maxit; ++it) {
    if (std::abs(rho) <= opt.breakdown_tol * norm2(rt) * norm2(q)) {
      rep.note = "rho = [r~, q] vanished";
      return finish(SolveStatus::Breakdown, true);
    }
    const ComplexVector qt = P.apply(q);
    ++rep.precond_applications;
    const Complex sigma = bilinear(qt, q);
    if (!std::isfinite(std::abs(sigma))) return finish(SolveStatus::NumericalFailure, true);
    if (std::abs(sigma) <= opt.breakdown_tol * norm2(qt) * norm2(q)) {
      rep.note = "[q~, q] vanished";
      return finish(SolveStatus::Breakdown, true);
    }
    const Complex alpha = rho / sigma;
    x += alpha * p;
    r -= alpha * q;
    rt -= alpha * qt;
    rnorm = norm2(r);
    rep.residual_history.push_back(rnorm);
    if (!std::isfinite(rnorm)) return finish(SolveStatus::NumericalFailure, true);
    if (rnorm < best_rnorm) {
      best_rnorm = rnorm;
      best_x = x;
    }
    if (rnorm <= opt.tol * bnorm) return finish(SolveStatus::Converged, false);
    if (it == opt.maxit) break;

    const ComplexVector t = A(rt);
    ++rep.matvec_count;
    const Complex rho_next = bilinear(rt, t);
    const Complex beta = rho_next / rho;
    rho = rho_next;
    p = rt + beta * p;
    q = t + beta * q;
  }
  return finish(SolveStatus::NotConverged, true);
}

struct RealSolveResult {
  RealVector x;
  SolveReport report;
};

// Standard preconditioned conjugate gradients for real SPD systems; the
// inner engine behind the inexact MHSS application.
inline RealSolveResult pcg_real(const SparseSymMatrix& M, const RealVector& rhs, const RealOperator& precond,
                                double tol, int maxit) {
  require(tol > 0.0, "tolerance must be positive");
  require(maxit >= 1, "maxit must be at least 1");
  detail::StopWatch sw;
  SolveReport rep;

  const double bnorm = rhs.norm();
  RealVector x = RealVector::Zero(rhs.size());
  RealVector r = rhs;
  double rnorm = bnorm;
  rep.residual_history.push_back(rnorm);

  auto finish = [&](SolveStatus st) {
    rep.status = st;
    detail::finish_report(rep, bnorm, sw);
    return RealSolveResult{std::move(x), std::move(rep)};
  };

  if (bnorm == 0.0 || rnorm <= tol * bnorm) return finish(SolveStatus::Converged);

  RealVector z = precond ? precond(r) : r;
  ++rep.precond_applications;
  RealVector p = z;
  double rz = r.dot(z);

  for (int it = 1; it <= maxit; ++it) {
    const RealVector q = spmv(M, p);
    ++rep.matvec_count;
    const double pq = p.dot(q);
    if (!std::isfinite(pq)) return finish(SolveStatus::NumericalFailure);
    if (std::abs(pq) <= 1e-30 * p.norm() * q.norm()) {
      rep.note = "p'Ap vanished";
      return finish(SolveStatus::Breakdown);
    }
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    rnorm = r.norm();
    rep.residual_history.push_back(rnorm);
    if (!std::isfinite(rnorm)) return finish(SolveStatus::NumericalFailure);
    if (rnorm <= tol * bnorm) return finish(SolveStatus::Converged);
    if (it == maxit) break;

    z = precond ? precond(r) : r;
    ++rep.precond_applications;
    const double rz_next = r.dot(z);
    const double beta = rz_next / rz;
    rz = rz_next;
    p = z + beta * p;
  }
  return finish(SolveStatus::NotConverged);
}

}  // namespace cosy
