#include "oweb/linalg.hpp"

#include <stdexcept>

namespace oweb {

SparseMat SparseMat::identity(int n, const FieldSpec& spec) {
  SparseMat m(n, n, spec);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(spec));
  return m;
}

void SparseMat::set(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("SparseMat::set");
  if (v.is_zero())
    col_[c].erase(r);
  else
    col_[c][r] = v;
}

void SparseMat::add_to(int r, int c, const Scalar& v) {
  if (v.is_zero()) return;
  auto it = col_[c].find(r);
  if (it == col_[c].end()) {
    col_[c].emplace(r, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) col_[c].erase(it);
  }
}

Scalar SparseMat::get(int r, int c) const {
  auto it = col_[c].find(r);
  return it == col_[c].end() ? Scalar::zero(spec_) : it->second;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("SparseMat: dimension mismatch in *");
  SparseMat out(rows_, o.cols_, spec_);
  for (int j = 0; j < o.cols_; ++j)
    for (const auto& [k, b] : o.col_[j])
      for (const auto& [i, a] : col_[k]) out.add_to(i, j, a * b);
  return out;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("SparseMat: dimension mismatch in +");
  SparseMat out = *this;
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, v] : o.col_[j]) out.add_to(i, j, v);
  return out;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
  return *this + o.scaled(-Scalar::one(spec_));
}

SparseMat SparseMat::scaled(const Scalar& s) const {
  SparseMat out(rows_, cols_, spec_);
  if (s.is_zero()) return out;
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, v] : col_[j]) out.set(i, j, v * s);
  return out;
}

SparseMat SparseMat::transposed() const {
  SparseMat out(cols_, rows_, spec_);
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, v] : col_[j]) out.set(j, i, v);
  return out;
}

SparseMat SparseMat::kron(const SparseMat& o) const {
  SparseMat out(rows_ * o.rows_, cols_ * o.cols_, spec_);
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, a] : col_[j])
      for (int j2 = 0; j2 < o.cols_; ++j2)
        for (const auto& [i2, b] : o.col_[j2])
          out.set(i * o.rows_ + i2, j * o.cols_ + j2, a * b);
  return out;
}

Scalar SparseMat::trace() const {
  Scalar t = Scalar::zero(spec_);
  int n = std::min(rows_, cols_);
  for (int i = 0; i < n; ++i) t += get(i, i);
  return t;
}

bool SparseMat::is_zero() const {
  for (const auto& c : col_)
    if (!c.empty()) return false;
  return true;
}

bool SparseMat::operator==(const SparseMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return (*this - o).is_zero();
}

long SparseMat::nnz() const {
  long n = 0;
  for (const auto& c : col_) n += static_cast<long>(c.size());
  return n;
}

std::vector<Scalar> SparseMat::flatten() const {
  std::vector<Scalar> out(static_cast<size_t>(rows_) * cols_, Scalar::zero(spec_));
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, v] : col_[j]) out[static_cast<size_t>(i) * cols_ + j] = v;
  return out;
}

int EchelonSpan::pivot_of(const std::vector<Scalar>& row) {
  for (size_t i = 0; i < row.size(); ++i)
    if (!row[i].is_zero()) return static_cast<int>(i);
  return -1;
}

void EchelonSpan::reduce(std::vector<Scalar>& row) const {
  for (const auto& [p, r] : rows_) {
    if (static_cast<size_t>(p) >= row.size()) continue;
    if (row[p].is_zero()) continue;
    Scalar c = row[p];
    for (size_t i = p; i < row.size(); ++i) row[i] -= c * r[i];
  }
}

bool EchelonSpan::add(std::vector<Scalar> row) {
  reduce(row);
  int p = pivot_of(row);
  if (p < 0) return false;
  Scalar inv = row[p].inverse();
  for (auto& v : row) v *= inv;
  rows_.emplace_back(p, std::move(row));
  return true;
}

bool EchelonSpan::contains(std::vector<Scalar> row) const {
  reduce(row);
  return pivot_of(row) < 0;
}

int rank_of_rows(const std::vector<std::vector<Scalar>>& rows, const FieldSpec& spec) {
  EchelonSpan span(spec);
  for (const auto& r : rows) span.add(r);
  return span.rank();
}

int intertwiner_space_dim(const std::vector<SparseMat>& target_ops,
                          const std::vector<SparseMat>& source_ops, int target_dim,
                          int source_dim, const FieldSpec& spec) {
  if (target_ops.size() != source_ops.size())
    throw std::invalid_argument("operator lists must pair up");
  // Unknown X is target_dim x source_dim; constraint rows are entries of
  // A X - X B, linear in the entries of X.
  const int unknowns = target_dim * source_dim;
  EchelonSpan span(spec);
  auto xindex = [&](int r, int c) { return r * source_dim + c; };
  for (size_t t = 0; t < target_ops.size(); ++t) {
    const SparseMat& A = target_ops[t];
    const SparseMat& B = source_ops[t];
    for (int i = 0; i < target_dim; ++i) {
      for (int j = 0; j < source_dim; ++j) {
        std::vector<Scalar> row(unknowns, Scalar::zero(spec));
        // (A X)_{ij} = sum_k A_{ik} X_{kj}
        for (int k = 0; k < target_dim; ++k) {
          Scalar a = A.get(i, k);
          if (!a.is_zero()) row[xindex(k, j)] += a;
        }
        // (X B)_{ij} = sum_k X_{ik} B_{kj}
        for (const auto& [k, b] : B.column(j)) row[xindex(i, k)] -= b;
        span.add(std::move(row));
      }
    }
  }
  return unknowns - span.rank();
}

}  // namespace oweb
