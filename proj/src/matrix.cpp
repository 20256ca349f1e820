#include "stendo/matrix.hpp"

#include <algorithm>

namespace stendo {

Matrix Matrix::identity(Fp F, int n) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1 % F.p();
  return m;
}

Matrix Matrix::from_rows(Fp F, const std::vector<std::vector<uint32_t>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(F, r, c);
  for (int i = 0; i < r; ++i) {
    STENDO_ASSERT(static_cast<int>(rows[i].size()) == c, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j] % F.p();
  }
  return m;
}

std::vector<uint32_t> Matrix::row(int i) const {
  return std::vector<uint32_t>(a_.begin() + static_cast<size_t>(i) * cols_,
                               a_.begin() + static_cast<size_t>(i + 1) * cols_);
}

void Matrix::set_row(int i, const std::vector<uint32_t>& r) {
  STENDO_ASSERT(static_cast<int>(r.size()) == cols_, "row size mismatch");
  std::copy(r.begin(), r.end(), a_.begin() + static_cast<size_t>(i) * cols_);
}

Matrix Matrix::operator+(const Matrix& o) const {
  STENDO_ASSERT(rows_ == o.rows_ && cols_ == o.cols_, "matrix add shape");
  Matrix m(F_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = F_.add(a_[k], o.a_[k]);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  STENDO_ASSERT(rows_ == o.rows_ && cols_ == o.cols_, "matrix sub shape");
  Matrix m(F_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = F_.sub(a_[k], o.a_[k]);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  STENDO_ASSERT(cols_ == o.rows_, "matrix mul shape");
  Matrix m(F_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      uint32_t v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < o.cols_; ++j)
        m.at(i, j) = F_.add(m.at(i, j), F_.mul(v, o.at(k, j)));
    }
  return m;
}

Matrix Matrix::scaled(uint32_t c) const {
  Matrix m(F_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = F_.mul(a_[k], c);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool Matrix::is_zero() const {
  for (uint32_t v : a_)
    if (v) return false;
  return true;
}

Matrix Matrix::hstack(const Matrix& o) const {
  STENDO_ASSERT(rows_ == o.rows_, "hstack rows");
  Matrix m(F_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
  }
  return m;
}

Matrix Matrix::vstack(const Matrix& o) const {
  STENDO_ASSERT(cols_ == o.cols_, "vstack cols");
  Matrix m(F_, rows_ + o.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
  return m;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks, Fp F) {
  int r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix m(F, r, c);
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.at(ro + i, co + j) = b.at(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return m;
}

Matrix Matrix::submatrix(int r0, int c0, int nr, int nc) const {
  Matrix m(F_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<int> rref_inplace(const Fp& F, std::vector<std::vector<uint32_t>>& rows, int ncols) {
  std::vector<int> pivots;
  int r = 0;
  int nrows = static_cast<int>(rows.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int sel = -1;
    for (int i = r; i < nrows; ++i)
      if (rows[i][c]) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    uint32_t inv = F.inv(rows[r][c]);
    for (int j = c; j < ncols; ++j) rows[r][j] = F.mul(rows[r][j], inv);
    for (int i = 0; i < nrows; ++i) {
      if (i == r || !rows[i][c]) continue;
      uint32_t f = rows[i][c];
      for (int j = c; j < ncols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(pivots.size());
  return pivots;
}

}  // namespace

int Matrix::rank() const {
  std::vector<std::vector<uint32_t>> rows;
  rows.reserve(rows_);
  for (int i = 0; i < rows_; ++i) rows.push_back(row(i));
  return static_cast<int>(rref_inplace(F_, rows, cols_).size());
}

Matrix Matrix::inverse() const {
  STENDO_ASSERT(rows_ == cols_, "inverse of non-square");
  std::vector<std::vector<uint32_t>> rows;
  for (int i = 0; i < rows_; ++i) {
    auto r = row(i);
    for (int j = 0; j < cols_; ++j) r.push_back(i == j ? 1 : 0);
    rows.push_back(std::move(r));
  }
  auto piv = rref_inplace(F_, rows, 2 * cols_);
  bool ok = static_cast<int>(piv.size()) == rows_;
  for (int pc : piv)
    if (pc >= cols_) ok = false;
  if (!ok) throw CheckFailure("matrix not invertible");
  Matrix inv(F_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = rows[i][cols_ + j];
  return inv;
}

RowSpace::RowSpace(const Matrix& rows) : F_(rows.field()), n_(rows.cols()) {
  for (int i = 0; i < rows.rows(); ++i) add(rows.row(i));
}

std::vector<uint32_t> RowSpace::reduce(const std::vector<uint32_t>& v) const {
  STENDO_ASSERT(static_cast<int>(v.size()) == n_, "reduce size");
  std::vector<uint32_t> w = v;
  for (size_t k = 0; k < echelon_.size(); ++k) {
    uint32_t c = w[pivots_[k]];
    if (!c) continue;
    for (int j = 0; j < n_; ++j) w[j] = F_.sub(w[j], F_.mul(c, echelon_[k][j]));
  }
  return w;
}

bool RowSpace::add(const std::vector<uint32_t>& v) {
  auto w = reduce(v);
  int piv = -1;
  for (int j = 0; j < n_; ++j)
    if (w[j]) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  uint32_t inv = F_.inv(w[piv]);
  for (int j = 0; j < n_; ++j) w[j] = F_.mul(w[j], inv);
  // keep earlier rows reduced against the new one
  for (size_t k = 0; k < echelon_.size(); ++k) {
    uint32_t c = echelon_[k][piv];
    if (!c) continue;
    for (int j = 0; j < n_; ++j) echelon_[k][j] = F_.sub(echelon_[k][j], F_.mul(c, w[j]));
  }
  // insert keeping pivot order
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  echelon_.insert(echelon_.begin() + pos, w);
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool RowSpace::contains(const std::vector<uint32_t>& v) const {
  auto w = reduce(v);
  for (uint32_t x : w)
    if (x) return false;
  return true;
}

std::optional<std::vector<uint32_t>> RowSpace::coords(const std::vector<uint32_t>& v) const {
  std::vector<uint32_t> w = v;
  std::vector<uint32_t> c(echelon_.size(), 0);
  for (size_t k = 0; k < echelon_.size(); ++k) {
    uint32_t f = w[pivots_[k]];
    if (!f) continue;
    c[k] = f;
    for (int j = 0; j < n_; ++j) w[j] = F_.sub(w[j], F_.mul(f, echelon_[k][j]));
  }
  for (uint32_t x : w)
    if (x) return std::nullopt;
  return c;
}

Matrix RowSpace::basis_matrix() const {
  Matrix m(F_, dim(), n_);
  for (int i = 0; i < dim(); ++i) m.set_row(i, echelon_[i]);
  return m;
}

LinSolveResult solve_and_kernel(const Matrix& A, const std::optional<std::vector<uint32_t>>& b) {
  const Fp& F = A.field();
  if (b && static_cast<int>(b->size()) != A.rows())
    throw InputError("solve_and_kernel: rhs length does not match row count");
  int n = A.cols();
  std::vector<std::vector<uint32_t>> rows;
  rows.reserve(A.rows());
  for (int i = 0; i < A.rows(); ++i) {
    auto r = A.row(i);
    r.push_back(b ? (*b)[i] : 0);
    rows.push_back(std::move(r));
  }
  auto piv = rref_inplace(F, rows, n + 1);

  LinSolveResult res;
  bool consistent = true;
  for (size_t k = 0; k < piv.size(); ++k)
    if (piv[k] == n) consistent = false;  // pivot in rhs column
  if (b && consistent) {
    std::vector<uint32_t> x(n, 0);
    for (size_t k = 0; k < piv.size(); ++k)
      if (piv[k] < n) x[piv[k]] = rows[k].back();
    res.particular = x;
  }
  // kernel: free columns among 0..n-1
  std::vector<bool> is_piv(n, false);
  for (int pc : piv)
    if (pc < n) is_piv[pc] = true;
  for (int c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    std::vector<uint32_t> v(n, 0);
    v[c] = 1;
    for (size_t k = 0; k < piv.size(); ++k)
      if (piv[k] < n) v[piv[k]] = F.neg(rows[k][c]);
    res.kernel.push_back(std::move(v));
  }
  return res;
}

std::vector<std::vector<uint32_t>> right_kernel(const Matrix& A) {
  return solve_and_kernel(A, std::nullopt).kernel;
}

std::vector<std::vector<uint32_t>> left_kernel(const Matrix& A) {
  return right_kernel(A.transpose());
}

std::optional<std::vector<uint32_t>> solve_left(const Matrix& A, const std::vector<uint32_t>& w) {
  auto r = solve_and_kernel(A.transpose(), w);
  return r.particular;
}

Matrix rows_to_matrix(Fp F, const std::vector<std::vector<uint32_t>>& rows, int ncols) {
  Matrix m(F, static_cast<int>(rows.size()), ncols);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

}  // namespace stendo
