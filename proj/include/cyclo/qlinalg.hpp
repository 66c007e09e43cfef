#pragma once

// Exact sparse linear algebra over the rationals.
//
// Vectors are sorted lists of (index, nonzero value) pairs; matrices are
// stored row-major as a list of such vectors. Nothing here ever rounds.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyclo {

using Rational = mpq_class;
using Index = std::int64_t;

/// Sorted by index, all values nonzero.
using SparseVec = std::vector<std::pair<Index, Rational>>;

std::string to_string(const Rational& q);

/// Builds a canonical sparse vector from unsorted, possibly repeated entries.
SparseVec make_sparse(std::vector<std::pair<Index, Rational>> entries);

/// y := y + c * x
void axpy(SparseVec& y, const Rational& c, const SparseVec& x);
SparseVec add(const SparseVec& a, const SparseVec& b);
SparseVec scaled(const SparseVec& a, const Rational& c);
SparseVec dense_to_sparse(const std::vector<Rational>& dense);
std::vector<Rational> sparse_to_dense(const SparseVec& v, Index n);

class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);

  static SparseMatrix identity(Index n);
  static SparseMatrix from_rows(Index cols, std::vector<SparseVec> rows);
  static SparseMatrix from_columns(Index rows, const std::vector<SparseVec>& cols);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const SparseVec& row(Index r) const { return data_[static_cast<std::size_t>(r)]; }
  const std::vector<SparseVec>& row_data() const { return data_; }

  Rational at(Index r, Index c) const;
  void set(Index r, Index c, const Rational& v);
  Index nonzeros() const;
  bool is_zero() const;

  SparseMatrix transpose() const;
  std::vector<SparseVec> columns() const;
  SparseVec apply(const SparseVec& v) const;
  std::vector<std::vector<Rational>> to_dense() const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<SparseVec> data_;
};

struct RrefResult {
  SparseMatrix matrix;
  Index rank = 0;
  std::vector<Index> pivots;
};

/// Reduced row-echelon form. For each pivot column the sparsest eligible
/// row is used (ties: lowest row index).
RrefResult rref(const SparseMatrix& m);
Index rank(const SparseMatrix& m);

/// Basis of {v : M v = 0}; count = cols - rank.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
/// Independent columns of M spanning its column space.
std::vector<SparseVec> image_basis(const SparseMatrix& m);
/// Exact solution of M x = v, or nullopt when v is not in the column space.
/// Throws std::invalid_argument on a length mismatch.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& v, Index v_len);

/// Incremental row-echelon accumulator. Each stored row has a unit
/// leading entry at a distinct column.
class EchelonBasis {
public:
  /// Returns true when v was independent of the rows stored so far.
  bool insert(SparseVec v);
  /// Leading-entry reduction; zero iff v lies in the span.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  Index rank() const { return static_cast<Index>(pivots_.size()); }

private:
  std::map<Index, SparseVec> pivots_;
};

/// Rank of the span of a family of vectors.
Index span_rank(const std::vector<SparseVec>& vs);
Index span_rank(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b);

/// Coefficient vectors c with sum_i c_i vs[i] = 0 (a basis of the relation space).
std::vector<SparseVec> relations_among(const std::vector<SparseVec>& vs);

}  // namespace cyclo
