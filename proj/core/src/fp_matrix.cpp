#include "frobcoh/fp_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "frobcoh/error.hpp"

namespace frobcoh {

namespace {

void require_prime(std::uint32_t p) {
  if (p > 251 || !is_prime(p)) {
    throw Error(ErrorKind::InvalidParams,
                "modulus " + std::to_string(p) + " is not a prime below 256");
  }
}

using DenseRow = std::vector<Residue>;

struct Rref {
  std::vector<DenseRow> rows;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

Rref rref_gf2(std::size_t width, const std::vector<DenseRow>& input) {
  const std::size_t words = (width + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(input.size(),
                                               std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < input.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (input[r][c] & 1U) rows[r][c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }

  Rref out;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const auto& prow = rows[rank];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !(rows[r][w] & bit)) continue;
      auto& target = rows[r];
      for (std::size_t k = w; k < words; ++k) target[k] ^= prow[k];
    }
    out.pivots.push_back(col);
    ++rank;
  }

  out.rows.assign(rank, DenseRow(width, 0));
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      out.rows[r][c] = static_cast<Residue>((rows[r][c / 64] >> (c % 64)) & 1U);
    }
  }
  return out;
}

Rref rref_general(std::uint32_t p, std::size_t width, std::vector<DenseRow> rows) {
  Rref out;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    auto& prow = rows[rank];
    const std::uint32_t inv = inverse_mod(prow[col], p);
    for (std::size_t k = col; k < width; ++k) {
      prow[k] = static_cast<Residue>((prow[k] * inv) % p);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      auto& target = rows[r];
      const std::uint32_t neg = p - target[col];
      for (std::size_t k = col; k < width; ++k) {
        if (prow[k] != 0) target[k] = static_cast<Residue>((target[k] + neg * prow[k]) % p);
      }
    }
    out.pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  out.rows = std::move(rows);
  return out;
}

Rref rref(std::uint32_t p, std::size_t width, std::vector<DenseRow> rows) {
  if (p == 2) return rref_gf2(width, rows);
  return rref_general(p, width, std::move(rows));
}

/// Null-space basis read off a reduced echelon form, itself reduced to echelon form.
Rref kernel_from_rref(std::uint32_t p, std::size_t width, const Rref& r) {
  std::vector<bool> is_pivot(width, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<DenseRow> vectors;
  for (std::size_t f = 0; f < width; ++f) {
    if (is_pivot[f]) continue;
    DenseRow v(width, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
      const Residue entry = r.rows[k][f];
      if (entry != 0) v[r.pivots[k]] = static_cast<Residue>((p - entry) % p);
    }
    vectors.push_back(std::move(v));
  }
  return rref(p, width, std::move(vectors));
}

std::vector<DenseRow> dense_rows(const FpMatrix& m) {
  std::vector<DenseRow> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto span = m.row(r);
    rows[r].assign(span.begin(), span.end());
  }
  return rows;
}

SparseVector merge_terms(std::vector<std::pair<std::uint32_t, std::uint32_t>>& terms,
                         std::uint32_t p) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  SparseVector out;
  for (std::size_t i = 0; i < terms.size();) {
    std::uint32_t sum = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].first == terms[i].first; ++j) {
      sum = (sum + terms[j].second) % p;
    }
    if (sum != 0) out.push_back({terms[i].first, static_cast<Residue>(sum)});
    i = j;
  }
  return out;
}

Residue value_at(const SparseVector& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  return (it != v.end() && it->index == index) ? it->value : Residue{0};
}

struct Block {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Connected components of the bipartite row/column incidence graph.  Rows
/// and columns inside a block keep ascending global order.
std::vector<Block> blocks_of(const SparseFpMatrix& m) {
  const std::size_t nrows = m.rows();
  DisjointSets sets(nrows + m.cols());
  std::vector<bool> row_used(nrows, false);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& e : m.column(c)) {
      sets.unite(nrows + c, e.index);
      row_used[e.index] = true;
    }
  }
  std::vector<std::int64_t> block_of(nrows + m.cols(), -1);
  std::vector<Block> blocks;
  auto block_index = [&](std::size_t node) {
    const std::size_t root = sets.find(node);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<std::int64_t>(blocks.size());
      blocks.emplace_back();
    }
    return static_cast<std::size_t>(block_of[root]);
  };
  for (std::size_t c = 0; c < m.cols(); ++c) {
    blocks[block_index(nrows + c)].cols.push_back(static_cast<std::uint32_t>(c));
  }
  for (std::size_t r = 0; r < nrows; ++r) {
    if (row_used[r]) blocks[block_index(r)].rows.push_back(static_cast<std::uint32_t>(r));
  }
  return blocks;
}

/// Dense local matrix of a block: |rows| rows of width |cols|.
std::vector<DenseRow> local_rows(const SparseFpMatrix& m, const Block& b,
                                 std::vector<std::int32_t>& row_local) {
  for (std::size_t i = 0; i < b.rows.size(); ++i) row_local[b.rows[i]] = static_cast<std::int32_t>(i);
  std::vector<DenseRow> rows(b.rows.size(), DenseRow(b.cols.size(), 0));
  for (std::size_t j = 0; j < b.cols.size(); ++j) {
    for (const auto& e : m.column(b.cols[j])) rows[static_cast<std::size_t>(row_local[e.index])][j] = e.value;
  }
  for (auto r : b.rows) row_local[r] = -1;
  return rows;
}

SparseVector lift(const DenseRow& local, const std::vector<std::uint32_t>& global_index) {
  SparseVector out;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (local[i] != 0) out.push_back({global_index[i], local[i]});
  }
  return out;
}

void sort_by_pivot(std::vector<SparseVector>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SparseVector& l, const SparseVector& r) { return l.front().index < r.front().index; });
}

}  // namespace

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Residue reduce_mod(std::int64_t value, std::uint32_t p) {
  const std::int64_t m = static_cast<std::int64_t>(p);
  return static_cast<Residue>(((value % m) + m) % m);
}

Residue inverse_mod(Residue a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorKind::InvalidParams, "zero has no inverse");
  // Fermat: a^(p-2)
  std::uint32_t result = 1;
  std::uint32_t base = a % p;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1U) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1U;
  }
  return static_cast<Residue>(result);
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  require_prime(p);
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols,
                   std::vector<Residue> entries)
    : p_(p), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_prime(p);
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::InvalidParams, "entry count does not match dimensions");
  }
  for (auto e : entries_) {
    if (e >= p) throw Error(ErrorKind::InvalidParams, "entry out of range [0, p)");
  }
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::InvalidParams, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  entries_[r * cols_ + c] = reduce_mod(value, p_);
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
  }
  return t;
}

bool FpMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue e) { return e == 0; });
}

FpMatrix operator*(const FpMatrix& lhs, const FpMatrix& rhs) {
  if (lhs.prime() != rhs.prime() || lhs.cols() != rhs.rows()) {
    throw Error(ErrorKind::InvalidParams, "incompatible matrix product");
  }
  const std::uint32_t p = lhs.prime();
  FpMatrix out(p, lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const std::uint32_t a = lhs(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        out.set(i, j, (out(i, j) + a * rhs(k, j)) % p);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------- SparseFpMatrix

SparseFpMatrix::SparseFpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), columns_(cols) {
  require_prime(p);
}

SparseFpMatrix SparseFpMatrix::from_dense(const FpMatrix& m) {
  SparseFpMatrix s(m.prime(), m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0) s.columns_[c].push_back({static_cast<std::uint32_t>(r), m(r, c)});
    }
  }
  return s;
}

void SparseFpMatrix::add(std::size_t row, std::size_t col, std::int64_t value) {
  const Residue v = reduce_mod(value, p_);
  if (v == 0) return;
  auto& column = columns_[col];
  const auto index = static_cast<std::uint32_t>(row);
  auto it = std::lower_bound(column.begin(), column.end(), index,
                             [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  if (it != column.end() && it->index == index) {
    it->value = static_cast<Residue>((it->value + v) % p_);
    if (it->value == 0) column.erase(it);
  } else {
    column.insert(it, SparseEntry{index, v});
  }
}

void SparseFpMatrix::set_column(std::size_t col, SparseVector v) { columns_[col] = std::move(v); }

SparseVector SparseFpMatrix::apply(const SparseVector& v) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  for (const auto& e : v) {
    for (const auto& m : columns_[e.index]) {
      terms.emplace_back(m.index, (static_cast<std::uint32_t>(m.value) * e.value) % p_);
    }
  }
  return merge_terms(terms, p_);
}

std::size_t SparseFpMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

FpMatrix SparseFpMatrix::to_dense() const {
  FpMatrix m(p_, rows_, columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    for (const auto& e : columns_[c]) m.set(e.index, c, e.value);
  }
  return m;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::uint32_t p, std::size_t ambient_dim)
    : p_(p), ambient_(ambient_dim), pivot_row_(ambient_dim, -1) {
  require_prime(p);
}

Subspace Subspace::full(std::uint32_t p, std::size_t ambient_dim) {
  std::vector<SparseVector> rows(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) rows[i] = {{static_cast<std::uint32_t>(i), 1}};
  return from_echelon_rows(p, ambient_dim, std::move(rows));
}

Subspace Subspace::span(std::uint32_t p, std::size_t ambient_dim,
                        std::span<const SparseVector> generators) {
  Subspace s(p, ambient_dim);
  for (const auto& g : generators) s.insert(g);
  return s;
}

Subspace Subspace::row_space(const FpMatrix& m) {
  Rref r = rref(m.prime(), m.cols(), dense_rows(m));
  std::vector<SparseVector> rows;
  rows.reserve(r.rows.size());
  for (const auto& row : r.rows) rows.push_back(to_sparse(row));
  return from_echelon_rows(m.prime(), m.cols(), std::move(rows));
}

Subspace Subspace::from_echelon_rows(std::uint32_t p, std::size_t ambient_dim,
                                     std::vector<SparseVector> rows) {
  Subspace s(p, ambient_dim);
  s.rows_ = std::move(rows);
  s.rebuild_pivot_index();
#ifdef FROBCOH_EXTRA_CHECKS
  for (std::size_t k = 0; k < s.rows_.size(); ++k) {
    const auto& row = s.rows_[k];
    if (row.empty() || row.front().value != 1 || row.back().index >= ambient_dim ||
        (k > 0 && s.pivots_[k] <= s.pivots_[k - 1])) {
      throw Error(ErrorKind::InconsistentSequence, "rows are not in reduced echelon form");
    }
    for (const auto& e : row) {
      if (s.pivot_row_[e.index] >= 0 && static_cast<std::size_t>(s.pivot_row_[e.index]) != k) {
        throw Error(ErrorKind::InconsistentSequence, "pivot column not cleared");
      }
    }
  }
#endif
  return s;
}

void Subspace::rebuild_pivot_index() {
  pivots_.clear();
  std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto pivot = rows_[k].front().index;
    pivots_.push_back(pivot);
    pivot_row_[pivot] = static_cast<std::int32_t>(k);
  }
}

SparseVector Subspace::reduce(const SparseVector& v) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  terms.reserve(v.size());
  for (const auto& e : v) terms.emplace_back(e.index, e.value);
  for (const auto& e : v) {
    const std::int32_t k = pivot_row_[e.index];
    if (k < 0) continue;
    const std::uint32_t neg = p_ - e.value;
    for (const auto& f : rows_[static_cast<std::size_t>(k)]) {
      terms.emplace_back(f.index, (neg * f.value) % p_);
    }
  }
  return merge_terms(terms, p_);
}

bool Subspace::contains(const SparseVector& v) const { return reduce(v).empty(); }

std::vector<Residue> Subspace::coordinates(const SparseVector& v) const {
  std::vector<Residue> coords(rows_.size(), 0);
  for (std::size_t k = 0; k < rows_.size(); ++k) coords[k] = value_at(v, pivots_[k]);
  return coords;
}

bool Subspace::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  const std::uint32_t inv = inverse_mod(r.front().value, p_);
  for (auto& e : r) e.value = static_cast<Residue>((e.value * inv) % p_);
  const std::uint32_t pivot = r.front().index;

  for (auto& row : rows_) {
    const Residue hit = value_at(row, pivot);
    if (hit == 0) continue;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
    terms.reserve(row.size() + r.size());
    for (const auto& e : row) terms.emplace_back(e.index, e.value);
    const std::uint32_t neg = p_ - hit;
    for (const auto& e : r) terms.emplace_back(e.index, (neg * e.value) % p_);
    row = merge_terms(terms, p_);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  rows_.insert(rows_.begin() + (pos - pivots_.begin()), std::move(r));
  rebuild_pivot_index();
  return true;
}

FpMatrix Subspace::basis_matrix() const {
  FpMatrix m(p_, rows_.size(), ambient_);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    for (const auto& e : rows_[k]) m.set(k, e.index, e.value);
  }
  return m;
}

// ------------------------------------------------------- dense operations

FpMatrix echelon(const FpMatrix& m) {
  Rref r = rref(m.prime(), m.cols(), dense_rows(m));
  std::vector<Residue> entries;
  entries.reserve(r.rows.size() * m.cols());
  for (const auto& row : r.rows) entries.insert(entries.end(), row.begin(), row.end());
  return FpMatrix(m.prime(), r.rows.size(), m.cols(), std::move(entries));
}

std::size_t rank(const FpMatrix& m) {
  if (m.rows() > m.cols()) return rref(m.prime(), m.rows(), dense_rows(m.transpose())).pivots.size();
  return rref(m.prime(), m.cols(), dense_rows(m)).pivots.size();
}

Subspace image(const FpMatrix& m) { return Subspace::row_space(m.transpose()); }

Subspace kernel(const FpMatrix& m) {
  const Rref r = rref(m.prime(), m.cols(), dense_rows(m));
  const Rref k = kernel_from_rref(m.prime(), m.cols(), r);
  std::vector<SparseVector> rows;
  for (const auto& row : k.rows) rows.push_back(to_sparse(row));
#ifdef FROBCOH_EXTRA_CHECKS
  if (rows.size() + r.pivots.size() != m.cols()) {
    throw Error(ErrorKind::InconsistentSequence, "rank-nullity violated");
  }
#endif
  return Subspace::from_echelon_rows(m.prime(), m.cols(), std::move(rows));
}

// ------------------------------------------------------ sparse operations

std::size_t rank(const SparseFpMatrix& m) {
  std::vector<std::int32_t> row_local(m.rows(), -1);
  std::size_t total = 0;
  for (const auto& b : blocks_of(m)) {
    if (b.rows.empty()) continue;
    auto rows = local_rows(m, b, row_local);
    total += rref(m.prime(), b.cols.size(), std::move(rows)).pivots.size();
  }
  return total;
}

Subspace image(const SparseFpMatrix& m) {
  std::vector<SparseVector> out;
  std::vector<std::int32_t> row_local(m.rows(), -1);
  for (const auto& b : blocks_of(m)) {
    if (b.rows.empty()) continue;
    for (std::size_t i = 0; i < b.rows.size(); ++i) row_local[b.rows[i]] = static_cast<std::int32_t>(i);
    std::vector<DenseRow> cols(b.cols.size(), DenseRow(b.rows.size(), 0));
    for (std::size_t j = 0; j < b.cols.size(); ++j) {
      for (const auto& e : m.column(b.cols[j])) {
        cols[j][static_cast<std::size_t>(row_local[e.index])] = e.value;
      }
    }
    for (auto r : b.rows) row_local[r] = -1;
    Rref r = rref(m.prime(), b.rows.size(), std::move(cols));
    for (const auto& row : r.rows) out.push_back(lift(row, b.rows));
  }
  sort_by_pivot(out);
  return Subspace::from_echelon_rows(m.prime(), m.rows(), std::move(out));
}

Subspace kernel(const SparseFpMatrix& m) {
  std::vector<std::int32_t> row_local(m.rows(), -1);
  std::vector<SparseVector> out;
  std::size_t total_rank = 0;
  for (const auto& b : blocks_of(m)) {
    if (b.rows.empty()) {
      for (auto c : b.cols) out.push_back({{c, 1}});
      continue;
    }
    auto rows = local_rows(m, b, row_local);
    const Rref r = rref(m.prime(), b.cols.size(), std::move(rows));
    total_rank += r.pivots.size();
    const Rref k = kernel_from_rref(m.prime(), b.cols.size(), r);
    for (const auto& row : k.rows) out.push_back(lift(row, b.cols));
  }
  sort_by_pivot(out);
#ifdef FROBCOH_EXTRA_CHECKS
  if (out.size() + total_rank != m.cols()) {
    throw Error(ErrorKind::InconsistentSequence, "rank-nullity violated");
  }
#else
  (void)total_rank;
#endif
  return Subspace::from_echelon_rows(m.prime(), m.cols(), std::move(out));
}

bool contains(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.prime() != b.prime()) {
    throw Error(ErrorKind::InvalidParams, "subspaces live in different ambient spaces");
  }
  return std::all_of(b.basis().begin(), b.basis().end(),
                     [&](const SparseVector& v) { return a.contains(v); });
}

std::size_t quotient_dim(const Subspace& a, const Subspace& b) {
  if (!contains(a, b)) {
    throw Error(ErrorKind::NotNested, "second subspace is not contained in the first");
  }
  return a.dim() - b.dim();
}

SparseVector to_sparse(std::span<const Residue> dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.push_back({static_cast<std::uint32_t>(i), dense[i]});
  }
  return out;
}

std::vector<Residue> to_dense(const SparseVector& v, std::size_t size) {
  std::vector<Residue> out(size, 0);
  for (const auto& e : v) out[e.index] = e.value;
  return out;
}

}  // namespace frobcoh
