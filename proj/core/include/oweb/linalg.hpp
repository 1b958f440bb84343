#pragma once

#include <map>
#include <utility>
#include <vector>

#include "oweb/field.hpp"

namespace oweb {

/// Exact sparse matrix over a fixed field, column-major adjacency.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols, const FieldSpec& spec)
      : rows_(rows), cols_(cols), spec_(spec), col_(cols) {}

  static SparseMat identity(int n, const FieldSpec& spec);
  static SparseMat zero(int rows, int cols, const FieldSpec& spec) {
    return SparseMat(rows, cols, spec);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& spec() const { return spec_; }

  void set(int r, int c, const Scalar& v);
  void add_to(int r, int c, const Scalar& v);
  Scalar get(int r, int c) const;
  const std::map<int, Scalar>& column(int c) const { return col_[c]; }

  SparseMat operator*(const SparseMat& o) const;
  SparseMat operator+(const SparseMat& o) const;
  SparseMat operator-(const SparseMat& o) const;
  SparseMat scaled(const Scalar& s) const;
  SparseMat transposed() const;
  /// Kronecker product with the first factor slowest (row index
  /// i_A * o.rows + i_B).
  SparseMat kron(const SparseMat& o) const;
  Scalar trace() const;
  bool is_zero() const;
  bool operator==(const SparseMat& o) const;

  long nnz() const;
  /// Flatten to a dense vector of length rows*cols, row-major.
  std::vector<Scalar> flatten() const;

 private:
  int rows_ = 0, cols_ = 0;
  FieldSpec spec_{};
  std::vector<std::map<int, Scalar>> col_;
};

/// Incremental row-echelon accumulator over an exact field. Rows are kept
/// reduced; adding a dependent row leaves the rank unchanged.
class EchelonSpan {
 public:
  explicit EchelonSpan(const FieldSpec& spec) : spec_(spec) {}

  /// Returns true when the row enlarged the span.
  bool add(std::vector<Scalar> row);
  /// True when the row already lies in the span (does not insert).
  bool contains(std::vector<Scalar> row) const;
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  void reduce(std::vector<Scalar>& row) const;
  static int pivot_of(const std::vector<Scalar>& row);

  FieldSpec spec_;
  std::vector<std::pair<int, std::vector<Scalar>>> rows_;  // (pivot, normalized row)
};

/// Rank of a dense row family.
int rank_of_rows(const std::vector<std::vector<Scalar>>& rows, const FieldSpec& spec);

/// Dimension of { X : A_t X = X B_t for all t } where X : cols(B) x ... maps
/// the source space (dimension n = rows of B_t) to the target space
/// (dimension m = rows of A_t). All A_t are m x m, all B_t are n x n.
int intertwiner_space_dim(const std::vector<SparseMat>& target_ops,
                          const std::vector<SparseMat>& source_ops, int target_dim,
                          int source_dim, const FieldSpec& spec);

}  // namespace oweb
