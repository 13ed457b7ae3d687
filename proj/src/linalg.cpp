#include "qct/linalg.hpp"

#include <algorithm>

namespace qct {

namespace {
const Scalar kZero{};
}

SMat SMat::identity(int n) {
  SMat m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].emplace(i, Scalar(1));
  return m;
}

const Scalar& SMat::at(int i, int j) const {
  auto it = data_[i].find(j);
  return it == data_[i].end() ? kZero : it->second;
}

void SMat::set(int i, int j, Scalar val) {
  if (val.is_zero())
    data_[i].erase(j);
  else
    data_[i][j] = std::move(val);
}

void SMat::add_to(int i, int j, const Scalar& val) {
  auto it = data_[i].find(j);
  if (it == data_[i].end()) {
    if (!val.is_zero()) data_[i].emplace(j, val);
    return;
  }
  it->second += val;
  if (it->second.is_zero()) data_[i].erase(it);
}

bool SMat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
}

size_t SMat::nnz() const {
  size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

SMat SMat::operator+(const SMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("SMat: shape mismatch in +");
  SMat r = *this;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : o.data_[i]) r.add_to(i, j, v);
  return r;
}

SMat SMat::operator-(const SMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("SMat: shape mismatch in -");
  SMat r = *this;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : o.data_[i]) r.add_to(i, j, -v);
  return r;
}

SMat SMat::operator*(const SMat& o) const {
  if (cols_ != o.rows_) throw error("SMat: shape mismatch in *");
  SMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [k, a] : data_[i])
      for (const auto& [j, b] : o.data_[k]) r.add_to(i, j, a * b);
  return r;
}

SMat SMat::scaled(const Scalar& c) const {
  SMat r(rows_, cols_);
  if (c.is_zero()) return r;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) r.data_[i].emplace(j, c * v);
  return r;
}

SMat SMat::transpose() const {
  SMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) r.data_[j].emplace(i, v);
  return r;
}

std::vector<Scalar> SMat::apply(const std::vector<Scalar>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw error("SMat: shape mismatch in apply");
  std::vector<Scalar> y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) y[i] += v * x[j];
  return y;
}

SMat SMat::kron(const SMat& a, const SMat& b) {
  SMat r(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int ia = 0; ia < a.rows_; ++ia)
    for (const auto& [ja, va] : a.data_[ia])
      for (int ib = 0; ib < b.rows_; ++ib)
        for (const auto& [jb, vb] : b.data_[ib])
          r.data_[ia * b.rows_ + ib].emplace(ja * b.cols_ + jb, va * vb);
  return r;
}

SMat SMat::vstack(const SMat& a, const SMat& b) {
  if (a.cols_ != b.cols_) throw error("SMat: shape mismatch in vstack");
  SMat r(a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i) r.data_[i] = a.data_[i];
  for (int i = 0; i < b.rows_; ++i) r.data_[a.rows_ + i] = b.data_[i];
  return r;
}

SMat SMat::hstack(const SMat& a, const SMat& b) {
  if (a.rows_ != b.rows_) throw error("SMat: shape mismatch in hstack");
  SMat r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    r.data_[i] = a.data_[i];
    for (const auto& [j, v] : b.data_[i]) r.data_[i].emplace(a.cols_ + j, v);
  }
  return r;
}

namespace {

using Row = std::map<int, Scalar>;

// In-place reduced row echelon form on sparse rows spanning columns
// [0, cols).  Returns pivot columns in order; rows end up with unit pivots,
// pivot columns cleared elsewhere, zero rows dropped.
std::vector<int> rref(std::vector<Row>& rows, int cols) {
  std::vector<int> pivots;
  size_t done = 0;  // rows[0..done) are the established pivot rows
  for (int col = 0; col < cols && done < rows.size(); ++col) {
    // Pick the sparsest row with a nonzero entry in this column.
    size_t best = rows.size();
    for (size_t r = done; r < rows.size(); ++r)
      if (rows[r].count(col) && (best == rows.size() || rows[r].size() < rows[best].size()))
        best = r;
    if (best == rows.size()) continue;
    std::swap(rows[done], rows[best]);
    Row& p = rows[done];
    Scalar inv = p.at(col).inverse();
    for (auto& [j, v] : p) v *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == done) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      Scalar f = it->second;
      for (const auto& [j, v] : p) {
        auto jt = rows[r].find(j);
        if (jt == rows[r].end()) {
          Scalar nv = -(f * v);
          if (!nv.is_zero()) rows[r].emplace(j, std::move(nv));
        } else {
          jt->second -= f * v;
          if (jt->second.is_zero()) rows[r].erase(jt);
        }
      }
    }
    pivots.push_back(col);
    ++done;
  }
  rows.resize(done);  // remaining rows are zero once every column is processed
  return pivots;
}

std::vector<Row> rows_of(const SMat& a) {
  std::vector<Row> rows;
  rows.reserve(static_cast<size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    if (!a.row(i).empty()) rows.push_back(a.row(i));
  return rows;
}

}  // namespace

int rank(const SMat& a) {
  auto rows = rows_of(a);
  return static_cast<int>(rref(rows, a.cols()).size());
}

std::optional<std::vector<Scalar>> solve(const SMat& a, const std::vector<Scalar>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw error("solve: shape mismatch");
  // Augment with b as an extra column.
  std::vector<Row> rows;
  for (int i = 0; i < a.rows(); ++i) {
    Row r = a.row(i);
    if (!b[i].is_zero()) r.emplace(a.cols(), b[i]);
    if (!r.empty()) rows.push_back(std::move(r));
  }
  auto pivots = rref(rows, a.cols() + 1);
  std::vector<Scalar> x(a.cols());
  for (size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == a.cols()) return std::nullopt;  // inconsistent
    auto it = rows[k].find(a.cols());
    x[pivots[k]] = it == rows[k].end() ? Scalar(0) : it->second;
  }
  return x;
}

SMat kernel_basis(const SMat& a) {
  auto rows = rows_of(a);
  auto pivots = rref(rows, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  SMat k(a.cols(), static_cast<int>(free_cols.size()));
  for (size_t fc = 0; fc < free_cols.size(); ++fc) {
    int j = free_cols[fc];
    k.set(j, static_cast<int>(fc), Scalar(1));
    for (size_t r = 0; r < pivots.size(); ++r) {
      auto it = rows[r].find(j);
      if (it != rows[r].end()) k.set(pivots[r], static_cast<int>(fc), -it->second);
    }
  }
  return k;
}

std::optional<SMat> solve_matrix(const SMat& a, const SMat& b) {
  if (a.rows() != b.rows()) throw error("solve_matrix: shape mismatch");
  std::vector<Row> rows;
  for (int i = 0; i < a.rows(); ++i) {
    Row r = a.row(i);
    for (const auto& [j, v] : b.row(i)) r.emplace(a.cols() + j, v);
    if (!r.empty()) rows.push_back(std::move(r));
  }
  auto pivots = rref(rows, a.cols() + b.cols());
  SMat x(a.cols(), b.cols());
  for (size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] >= a.cols()) return std::nullopt;  // inconsistent
    for (auto it = rows[k].upper_bound(a.cols() - 1); it != rows[k].end(); ++it)
      x.set(pivots[k], it->first - a.cols(), it->second);
  }
  return x;
}

SMat inverse(const SMat& a) {
  if (a.rows() != a.cols()) throw error("inverse: matrix not square");
  // A singular matrix leaves a pivot in the identity block, so solve_matrix
  // reports inconsistency.
  auto x = solve_matrix(a, SMat::identity(a.rows()));
  if (!x) throw error("inverse: singular matrix");
  return *x;
}

}  // namespace qct
