#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qct/scalar.hpp"

// Sparse exact linear algebra over Q(v).  Everything downstream (module actions,
// intertwiners, cochains) is weight-block sparse, so matrices are stored as
// sparse rows and elimination keeps rows sparse.

namespace qct {

class SMat {
 public:
  SMat() = default;
  SMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Zero when absent.
  const Scalar& at(int i, int j) const;
  void set(int i, int j, Scalar val);
  void add_to(int i, int j, const Scalar& val);
  const std::map<int, Scalar>& row(int i) const { return data_[i]; }

  bool is_zero() const;
  size_t nnz() const;

  SMat operator+(const SMat& o) const;
  SMat operator-(const SMat& o) const;
  SMat operator*(const SMat& o) const;  // matrix product
  SMat scaled(const Scalar& c) const;
  SMat transpose() const;
  bool operator==(const SMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const SMat& o) const { return !(*this == o); }

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;

  static SMat kron(const SMat& a, const SMat& b);
  // Block stacking: [a; b] (rows) and [a, b] (cols).
  static SMat vstack(const SMat& a, const SMat& b);
  static SMat hstack(const SMat& a, const SMat& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::map<int, Scalar>> data_;
};

int rank(const SMat& a);
// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve(const SMat& a, const std::vector<Scalar>& b);
// Columns form a basis of the null space of A.
SMat kernel_basis(const SMat& a);
// X with A X = B, or nullopt when inconsistent; requires unique solvability on
// the span (i.e. the homogeneous part chosen is zero).
std::optional<SMat> solve_matrix(const SMat& a, const SMat& b);
// Inverse of a square matrix; throws when singular.
SMat inverse(const SMat& a);

}  // namespace qct
