#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "cosy/sparse.hpp"

namespace cosy {

// Lower-triangular factor in compressed-row storage, diagonal entry last
// in each row (columns are sorted ascending and bounded by the row index).
template <typename Scalar>
struct TriangularFactor {
  int n = 0;
  std::vector<int> row_offsets{0};
  std::vector<int> col_indices;
  std::vector<Scalar> values;

  Scalar diag(int i) const { return values[static_cast<std::size_t>(row_offsets[i + 1]) - 1]; }
};

using IC0Factor = TriangularFactor<double>;
using ComplexIC0Factor = TriangularFactor<Complex>;

namespace detail {

// Zero-fill incomplete Cholesky L L^T on a fixed lower-triangular pattern.
// For complex input the transpose is unconjugated, matching complex
// symmetry. Values beyond the pattern are dropped; with a full pattern
// this is the complete factorization.
template <typename Scalar>
TriangularFactor<Scalar> ic0_on_pattern(int n, const std::vector<int>& offsets, const std::vector<int>& cols,
                                        const std::vector<Scalar>& vals) {
  TriangularFactor<Scalar> L;
  L.n = n;
  L.row_offsets = offsets;
  L.col_indices = cols;
  L.values.assign(vals.size(), Scalar{});

  double diag_scale = 0.0;
  for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(vals[static_cast<std::size_t>(offsets[i + 1]) - 1]));
  const double pivot_floor = 1e-14 * diag_scale;

  for (int i = 0; i < n; ++i) {
    for (int p = offsets[i]; p < offsets[i + 1]; ++p) {
      const int j = L.col_indices[p];
      // two-pointer dot of rows i and j over shared columns < j
      Scalar s = vals[p];
      int ki = offsets[i], kj = offsets[j];
      while (ki < offsets[i + 1] && kj < offsets[j + 1]) {
        const int ci = L.col_indices[ki], cj = L.col_indices[kj];
        if (ci >= j || cj >= j) break;
        if (ci == cj) {
          s -= L.values[ki] * L.values[kj];
          ++ki;
          ++kj;
        } else if (ci < cj) {
          ++ki;
        } else {
          ++kj;
        }
      }
      if (j < i) {
        L.values[p] = s / L.diag(j);
      } else {
        if constexpr (std::is_same_v<Scalar, double>) {
          if (!(s > 0.0)) throw PivotBreakdown(i, "nonpositive pivot");
          L.values[p] = std::sqrt(s);
        } else {
          if (std::abs(s) <= pivot_floor) throw PivotBreakdown(i, "vanishing complex pivot");
          L.values[p] = std::sqrt(s);  // principal branch
        }
      }
    }
  }
  return L;
}

inline void lower_pattern(const SparseSymMatrix& m, std::vector<int>& offsets, std::vector<int>& cols,
                          std::vector<int>& positions) {
  const int n = m.rows();
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  cols.clear();
  positions.clear();
  for (int i = 0; i < n; ++i) {
    for (int k = m.row_offsets()[i]; k < m.row_offsets()[i + 1]; ++k)
      if (m.col_indices()[k] <= i) {
        cols.push_back(m.col_indices()[k]);
        positions.push_back(k);
        ++offsets[i + 1];
      }
  }
  for (int i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
}

}  // namespace detail

// IC(0) of a symmetric matrix with positive diagonal; the factor keeps the
// lower-triangular pattern of M. Throws PivotBreakdown when a pivot is
// not positive; see ic0_factorize_shifted for the retry policy.
inline IC0Factor ic0_factorize(const SparseSymMatrix& m) {
  std::vector<int> offsets, cols, pos;
  detail::lower_pattern(m, offsets, cols, pos);
  const int n = m.rows();
  for (int i = 0; i < n; ++i) {
    require(offsets[i + 1] > offsets[i] && cols[static_cast<std::size_t>(offsets[i + 1]) - 1] == i,
            "ic0 requires an explicit diagonal in every row");
  }
  std::vector<double> vals(cols.size());
  for (std::size_t k = 0; k < pos.size(); ++k) vals[k] = m.values()[pos[k]];
  return detail::ic0_on_pattern<double>(n, offsets, cols, vals);
}

struct ShiftedIC0 {
  IC0Factor factor;
  double shift = 0.0;  // sigma in M + sigma*diag(M)
};

// Pivot-breakdown recovery: retry with the diagonal inflated by sigma.
inline ShiftedIC0 ic0_factorize_shifted(const SparseSymMatrix& m,
                                        const std::vector<double>& shifts = {0.0, 1e-3, 1e-2, 1e-1}) {
  for (std::size_t t = 0; t < shifts.size(); ++t) {
    SparseSymMatrix shifted = shifts[t] == 0.0 ? m : add(m, SparseSymMatrix::diagonal(shifts[t] * m.diagonal_vector()));
    try {
      return {ic0_factorize(shifted), shifts[t]};
    } catch (const PivotBreakdown&) {
      if (t + 1 == shifts.size()) throw;
    }
  }
  throw PivotBreakdown(0, "unreachable");
}

// Zero-fill L L^T factorization of B + iC on the union lower pattern,
// in complex arithmetic with unconjugated transpose.
inline ComplexIC0Factor complex_ic0(const SparseSymMatrix& B, const SparseSymMatrix& C) {
  require(B.rows() == C.rows(), "dimension mismatch in complex_ic0");
  const SparseSymMatrix u = add(B, C);  // union pattern carrier
  std::vector<int> offsets, cols, pos;
  detail::lower_pattern(u, offsets, cols, pos);
  const int n = u.rows();
  std::vector<Complex> vals(cols.size());
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int p = offsets[i]; p < offsets[i + 1]; ++p, ++k) {
      const int j = cols[k];
      vals[k] = Complex(B.coeff(i, j), C.coeff(i, j));
    }
  for (int i = 0; i < n; ++i)
    require(offsets[i + 1] > offsets[i] && cols[static_cast<std::size_t>(offsets[i + 1]) - 1] == i,
            "complex ic0 requires an explicit diagonal in every row");
  return detail::ic0_on_pattern<Complex>(n, offsets, cols, vals);
}

// Forward then backward substitution with L and its (unconjugated)
// transpose: returns (L L^T)^-1 v. Exact for complete factors.
template <typename Scalar, typename Vec>
Vec triangular_solves(const TriangularFactor<Scalar>& L, const Vec& v) {
  require(static_cast<int>(v.size()) == L.n, "dimension mismatch in triangular solve");
  Vec y = v;
  for (int i = 0; i < L.n; ++i) {
    typename Vec::Scalar acc = y[i];
    const int end = L.row_offsets[i + 1] - 1;  // diagonal excluded
    for (int k = L.row_offsets[i]; k < end; ++k) acc -= L.values[k] * y[L.col_indices[k]];
    const Scalar d = L.diag(i);
    if (d == Scalar{}) throw PivotBreakdown(i, "zero diagonal in triangular solve");
    y[i] = acc / d;
  }
  for (int i = L.n - 1; i >= 0; --i) {
    y[i] /= L.diag(i);
    const auto yi = y[i];
    const int end = L.row_offsets[i + 1] - 1;
    for (int k = L.row_offsets[i]; k < end; ++k) y[L.col_indices[k]] -= L.values[k] * yi;
  }
  return y;
}

}  // namespace cosy
