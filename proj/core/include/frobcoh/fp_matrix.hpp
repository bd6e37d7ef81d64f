#pragma once

// Exact linear algebra over F_p for small primes.
//
// Elimination is plain Gauss-Jordan with "first nonzero entry" pivoting in the
// caller's column order, so every echelon form produced here is the unique
// reduced row echelon form of its row space.  Over F_2 rows are packed into
// 64-bit words; other primes use one byte per residue.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace frobcoh {

using Residue = std::uint8_t;

bool is_prime(std::uint32_t p);
Residue reduce_mod(std::int64_t value, std::uint32_t p);
Residue inverse_mod(Residue a, std::uint32_t p);

/// Dense row-major matrix with entries in [0, p).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols, std::vector<Residue> entries);

  static FpMatrix identity(std::uint32_t p, std::size_t n);
  static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);
  std::span<const Residue> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  const std::vector<Residue>& entries() const { return entries_; }

  FpMatrix transpose() const;
  bool is_zero() const;

  bool operator==(const FpMatrix&) const = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> entries_;
};

FpMatrix operator*(const FpMatrix& lhs, const FpMatrix& rhs);

struct SparseEntry {
  std::uint32_t index = 0;
  Residue value = 0;
  bool operator==(const SparseEntry&) const = default;
};

/// Sorted by index, no zero values.
using SparseVector = std::vector<SparseEntry>;

/// Column-compressed sparse matrix.  Used for the large, very sparse maps of
/// the cohomology layers; decomposes into connected blocks before elimination.
class SparseFpMatrix {
 public:
  SparseFpMatrix() = default;
  SparseFpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  static SparseFpMatrix from_dense(const FpMatrix& m);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  void add(std::size_t row, std::size_t col, std::int64_t value);
  void set_column(std::size_t col, SparseVector v);
  const SparseVector& column(std::size_t col) const { return columns_[col]; }

  /// Returns M v for a vector in the source space.
  SparseVector apply(const SparseVector& v) const;
  std::size_t nonzeros() const;
  FpMatrix to_dense() const;

  bool operator==(const SparseFpMatrix&) const = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

/// A subspace of F_p^ambient held in its canonical reduced echelon form.
/// Two subspaces are equal exactly when their canonical forms are equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::uint32_t p, std::size_t ambient_dim);

  static Subspace full(std::uint32_t p, std::size_t ambient_dim);
  static Subspace span(std::uint32_t p, std::size_t ambient_dim,
                       std::span<const SparseVector> generators);
  static Subspace row_space(const FpMatrix& m);
  /// Adopts rows that are already in reduced echelon form (pivots strictly increasing).
  static Subspace from_echelon_rows(std::uint32_t p, std::size_t ambient_dim,
                                    std::vector<SparseVector> rows);

  std::uint32_t prime() const { return p_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseVector>& basis() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }

  /// v minus its projection along the basis; zero at every pivot column.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const;
  /// Coordinates of v in the echelon basis.  Only meaningful when contains(v).
  std::vector<Residue> coordinates(const SparseVector& v) const;
  /// Adds v to the span; returns false when v was already contained.
  bool insert(const SparseVector& v);

  FpMatrix basis_matrix() const;

  bool operator==(const Subspace& other) const {
    return p_ == other.p_ && ambient_ == other.ambient_ && rows_ == other.rows_;
  }

 private:
  void rebuild_pivot_index();

  std::uint32_t p_ = 2;
  std::size_t ambient_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::int32_t> pivot_row_;  // ambient-sized, -1 where not a pivot
};

/// Canonical reduced row echelon form of the rows of m, zero rows dropped.
FpMatrix echelon(const FpMatrix& m);

std::size_t rank(const FpMatrix& m);
/// Column space, a subspace of F_p^rows.
Subspace image(const FpMatrix& m);
/// Null space, a subspace of F_p^cols.
Subspace kernel(const FpMatrix& m);

std::size_t rank(const SparseFpMatrix& m);
Subspace image(const SparseFpMatrix& m);
Subspace kernel(const SparseFpMatrix& m);

/// True when b is a subspace of a.
bool contains(const Subspace& a, const Subspace& b);
/// dim a - dim b; throws Error(NotNested) unless b is a subspace of a.
std::size_t quotient_dim(const Subspace& a, const Subspace& b);

SparseVector to_sparse(std::span<const Residue> dense);
std::vector<Residue> to_dense(const SparseVector& v, std::size_t size);

}  // namespace frobcoh
