#pragma once

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "cosy/common.hpp"

namespace cosy {

// Real symmetric sparse matrix, compressed-row storage with the full
// pattern (both triangles stored). Symmetry, index bounds and finiteness
// are enforced at construction; instances are immutable afterwards.
class SparseSymMatrix {
public:
  struct Triplet {
    int i, j;
    double v;
  };

  // How the input triplets describe the matrix:
  //  - MirrorOffDiagonal: entries give one triangle; (j,i) is filled in.
  //  - FullySpecified: both triangles are present and must match exactly.
  enum class Input { MirrorOffDiagonal, FullySpecified };

  SparseSymMatrix() = default;

  static SparseSymMatrix from_triplets(int n, std::vector<Triplet> entries,
                                       Input input = Input::MirrorOffDiagonal) {
    require(n >= 0, "matrix dimension must be nonnegative");
    for (const auto& t : entries) {
      require(t.i >= 0 && t.i < n && t.j >= 0 && t.j < n, "triplet index out of range");
      require(std::isfinite(t.v), "matrix entries must be finite");
    }
    if (input == Input::MirrorOffDiagonal) {
      const std::size_t given = entries.size();
      entries.reserve(2 * given);
      for (std::size_t k = 0; k < given; ++k)
        if (entries[k].i != entries[k].j) entries.push_back({entries[k].j, entries[k].i, entries[k].v});
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    SparseSymMatrix m;
    m.n_ = n;
    m.row_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t k = 0; k < entries.size();) {
      std::size_t e = k + 1;
      double v = entries[k].v;
      while (e < entries.size() && entries[e].i == entries[k].i && entries[e].j == entries[k].j)
        v += entries[e++].v;  // duplicates summed
      require(std::isfinite(v), "matrix entries must be finite");
      m.col_indices_.push_back(entries[k].j);
      m.values_.push_back(v);
      ++m.row_offsets_[static_cast<std::size_t>(entries[k].i) + 1];
      k = e;
    }
    for (int i = 0; i < n; ++i) m.row_offsets_[i + 1] += m.row_offsets_[i];

    if (input == Input::FullySpecified) m.verify_symmetric();
    return m;
  }

  static SparseSymMatrix identity(int n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, std::move(t));
  }

  static SparseSymMatrix diagonal(const RealVector& d) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(d.size()));
    for (int i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
    return from_triplets(static_cast<int>(d.size()), std::move(t));
  }

  static SparseSymMatrix from_dense(const Eigen::MatrixXd& a) {
    require(a.rows() == a.cols(), "dense input must be square");
    std::vector<Triplet> t;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0.0) t.push_back({i, j, a(i, j)});
    return from_triplets(static_cast<int>(a.rows()), std::move(t), Input::FullySpecified);
  }

  int rows() const { return n_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  double coeff(int i, int j) const {
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      if (col_indices_[k] == j) return values_[k];
    return 0.0;
  }

  RealVector diagonal_vector() const {
    RealVector d = RealVector::Zero(n_);
    for (int i = 0; i < n_; ++i) d[i] = coeff(i, i);
    return d;
  }

  // Absolute row sums, sum_j |M_ij|.
  RealVector abs_row_sums() const {
    RealVector s = RealVector::Zero(n_);
    for (int i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) acc += std::abs(values_[k]);
      s[i] = acc;
    }
    return s;
  }

  // Symmetric two-sided diagonal scaling: result(i,j) = s_i * M_ij * s_j.
  // The sparsity pattern is preserved exactly.
  SparseSymMatrix scaled_sym(const RealVector& s) const {
    require(s.size() == n_, "scaling vector length mismatch");
    SparseSymMatrix m = *this;
    for (int i = 0; i < n_; ++i)
      for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        m.values_[k] = s[i] * values_[k] * s[col_indices_[k]];
    return m;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) a(i, col_indices_[k]) = values_[k];
    return a;
  }

  bool structurally_equal(const SparseSymMatrix& o) const {
    return n_ == o.n_ && row_offsets_ == o.row_offsets_ && col_indices_ == o.col_indices_;
  }

private:
  void verify_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        const int j = col_indices_[k];
        if (j == i) continue;
        const int lo = row_offsets_[j], hi = row_offsets_[j + 1];
        auto it = std::lower_bound(col_indices_.begin() + lo, col_indices_.begin() + hi, i);
        const bool found = it != col_indices_.begin() + hi && *it == i;
        if (!found) throw std::invalid_argument("matrix is not structurally symmetric");
        const double vt = values_[static_cast<std::size_t>(it - col_indices_.begin())];
        if (vt != values_[k]) throw std::invalid_argument("matrix values are not symmetric");
      }
  }

  int n_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

// Union-pattern sum of two symmetric sparse matrices.
inline SparseSymMatrix add(const SparseSymMatrix& a, const SparseSymMatrix& b) {
  require(a.rows() == b.rows(), "dimension mismatch in sparse add");
  std::vector<SparseSymMatrix::Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  const int n = a.rows();
  for (int i = 0; i < n; ++i) {
    int ka = a.row_offsets()[i], kb = b.row_offsets()[i];
    const int ea = a.row_offsets()[i + 1], eb = b.row_offsets()[i + 1];
    while (ka < ea || kb < eb) {
      const int ja = ka < ea ? a.col_indices()[ka] : n;
      const int jb = kb < eb ? b.col_indices()[kb] : n;
      if (ja < jb) {
        t.push_back({i, ja, a.values()[ka++]});
      } else if (jb < ja) {
        t.push_back({i, jb, b.values()[kb++]});
      } else {
        t.push_back({i, ja, a.values()[ka++] + b.values()[kb++]});
      }
    }
  }
  return SparseSymMatrix::from_triplets(n, std::move(t), SparseSymMatrix::Input::FullySpecified);
}

// Row-parallel worker count for spmv. 1 (the default) forces the
// single-threaded deterministic mode used by all tests; row partitioning
// keeps results identical either way.
inline int& spmv_threads() {
  static int t = 1;
  return t;
}

namespace detail {
template <typename Vec>
void spmv_rows(const SparseSymMatrix& m, const Vec& x, Vec& y, int r0, int r1) {
  const auto& off = m.row_offsets();
  const auto& col = m.col_indices();
  const auto& val = m.values();
  for (int i = r0; i < r1; ++i) {
    typename Vec::Scalar acc{};
    for (int k = off[i]; k < off[i + 1]; ++k) acc += val[k] * x[col[k]];
    y[i] = acc;  // sequential per-row accumulation in index order
  }
}
}  // namespace detail

// y = M x. Works for real and complex right-hand sides; a real matrix
// acts on the real and imaginary parts independently.
template <typename Vec>
Vec spmv(const SparseSymMatrix& m, const Vec& x) {
  require(static_cast<int>(x.size()) == m.rows(), "dimension mismatch in spmv");
  Vec y(x.size());
  const int nt = spmv_threads();
  if (nt <= 1 || m.rows() < 4 * nt) {
    detail::spmv_rows(m, x, y, 0, m.rows());
    return y;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const int chunk = (m.rows() + nt - 1) / nt;
  for (int w = 0; w < nt; ++w) {
    const int r0 = w * chunk, r1 = std::min(m.rows(), r0 + chunk);
    if (r0 >= r1) break;
    workers.emplace_back([&, r0, r1] { detail::spmv_rows(m, x, y, r0, r1); });
  }
  for (auto& th : workers) th.join();
  return y;
}

// Cheap positive-semidefiniteness smoke test: a semi-SPD matrix cannot
// have a negative diagonal entry.
inline bool semi_spd_smoke(const SparseSymMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    if (m.coeff(i, i) < 0.0) return false;
  return true;
}

}  // namespace cosy
