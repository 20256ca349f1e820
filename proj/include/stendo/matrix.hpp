#pragma once

#include <optional>
#include <vector>

#include "stendo/fp.hpp"

namespace stendo {

// Dense matrix over F_p, row-major.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(Fp F, int rows, int cols)
      : F_(F), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

  static Matrix identity(Fp F, int n);
  static Matrix zero(Fp F, int rows, int cols) { return Matrix(F, rows, cols); }
  static Matrix from_rows(Fp F, const std::vector<std::vector<uint32_t>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Fp& field() const { return F_; }

  uint32_t at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  uint32_t& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<uint32_t> row(int i) const;
  void set_row(int i, const std::vector<uint32_t>& r);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(uint32_t c) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;

  Matrix hstack(const Matrix& o) const;           // [this | o]
  Matrix vstack(const Matrix& o) const;           // [this ; o]
  static Matrix block_diag(const std::vector<Matrix>& blocks, Fp F);
  Matrix submatrix(int r0, int c0, int nr, int nc) const;

  int rank() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }
  Matrix inverse() const;  // throws CheckFailure if singular

 private:
  Fp F_;
  int rows_, cols_;
  std::vector<uint32_t> a_;
};

// Row-echelon data for a subspace of F_p^n spanned by rows.
// Supports membership tests and coordinates w.r.t. the original spanning rows.
class RowSpace {
 public:
  RowSpace(Fp F, int n) : F_(F), n_(n) {}
  explicit RowSpace(const Matrix& rows);

  // Adds v to the space; returns true if the dimension grew.
  bool add(const std::vector<uint32_t>& v);

  int dim() const { return static_cast<int>(echelon_.size()); }
  int ambient() const { return n_; }
  bool contains(const std::vector<uint32_t>& v) const;
  // Residue of v after reduction against the echelon rows.
  std::vector<uint32_t> reduce(const std::vector<uint32_t>& v) const;
  // Coordinates of v in the echelon basis; nullopt if v is not in the space.
  std::optional<std::vector<uint32_t>> coords(const std::vector<uint32_t>& v) const;
  Matrix basis_matrix() const;  // echelon rows (RREF)

 private:
  Fp F_;
  int n_;
  std::vector<std::vector<uint32_t>> echelon_;  // RREF rows
  std::vector<int> pivots_;
};

struct LinSolveResult {
  std::optional<std::vector<uint32_t>> particular;  // x with A x = b (column convention)
  std::vector<std::vector<uint32_t>> kernel;        // basis of {x : A x = 0}
};

// Solves A x = b over F_p; if b is absent only the kernel is computed.
// Throws InputError on a dimension mismatch.
LinSolveResult solve_and_kernel(const Matrix& A, const std::optional<std::vector<uint32_t>>& b);

// Basis of {x : A x = 0} (columns of A as the map).
std::vector<std::vector<uint32_t>> right_kernel(const Matrix& A);
// Basis of {v : v A = 0} (rows).
std::vector<std::vector<uint32_t>> left_kernel(const Matrix& A);

// Particular solution of x A = w (row convention); nullopt if inconsistent.
std::optional<std::vector<uint32_t>> solve_left(const Matrix& A, const std::vector<uint32_t>& w);

Matrix rows_to_matrix(Fp F, const std::vector<std::vector<uint32_t>>& rows, int ncols);

}  // namespace stendo
