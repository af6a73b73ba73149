#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace cosy {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Thrown when a three-term recurrence transform hits a vanishing
// denominator at step n.
class DegenerateRecurrence : public std::runtime_error {
public:
  DegenerateRecurrence(int n, const std::string& what)
      : std::runtime_error("degenerate recurrence at n=" + std::to_string(n) + ": " + what), n_(n) {}
  int step() const { return n_; }

private:
  int n_;
};

// Incomplete/complete Cholesky pivot failure at row i.
class PivotBreakdown : public std::runtime_error {
public:
  PivotBreakdown(int i, const std::string& what)
      : std::runtime_error("pivot breakdown at row " + std::to_string(i) + ": " + what), row_(i) {}
  int row() const { return row_; }

private:
  int row_;
};

class NotSpdError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// File-format error carrying the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(long line, const std::string& what)
      : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace cosy
