#include "frobcoh/les_solver.hpp"

#include <algorithm>

#include "frobcoh/error.hpp"

namespace frobcoh {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == kUnbounded || b == kUnbounded) return kUnbounded;
  return a + b;
}

// a - b where a may be unbounded; an unbounded b gives no information (0 as a lower bound).
std::int64_t lower_diff(std::int64_t a, std::int64_t b) {
  if (b == kUnbounded) return 0;
  if (a == kUnbounded) return kUnbounded;
  return a - b;
}

std::int64_t upper_diff(std::int64_t a, std::int64_t b) {
  if (a == kUnbounded) return kUnbounded;
  return a - b;
}

bool tighten(DimInterval& x, std::int64_t lo, std::int64_t hi) {
  bool changed = false;
  if (lo > x.lower) {
    x.lower = lo;
    changed = true;
  }
  if (hi < x.upper) {
    x.upper = hi;
    changed = true;
  }
  if (x.lower > x.upper) {
    throw Error(ErrorKind::InconsistentSequence,
                "bounds collapse to the empty interval " + std::to_string(x.lower) + " > " +
                    std::to_string(x.upper));
  }
  return changed;
}

}  // namespace

std::string DimInterval::to_string() const {
  const std::string hi = bounded() ? std::to_string(upper) : "inf";
  return "[" + std::to_string(lower) + "," + hi + "]";
}

bool propagate_exact_sequence(std::vector<DimInterval>& dims, std::vector<DimInterval>& ranks) {
  if (dims.empty()) return false;
  if (ranks.size() + 1 != dims.size()) {
    throw Error(ErrorKind::InvalidParams, "exact sequence needs one rank per arrow");
  }
  const DimInterval zero = DimInterval::exactly(0);
  auto rank_at = [&](std::ptrdiff_t j) -> const DimInterval& {
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(ranks.size())) return zero;
    return ranks[static_cast<std::size_t>(j)];
  };
  for (auto& d : dims) tighten(d, 0, kUnbounded);
  for (auto& r : ranks) tighten(r, 0, kUnbounded);

  bool any = false;
  const auto m = static_cast<std::ptrdiff_t>(dims.size());
  for (int round = 0;; ++round) {
    if (round > 4 * static_cast<int>(m) + 64) {
      throw Error(ErrorKind::InconsistentSequence, "interval propagation did not converge");
    }
    bool changed = false;
    for (std::ptrdiff_t j = 0; j < m; ++j) {
      auto& d = dims[static_cast<std::size_t>(j)];
      const auto& left = rank_at(j - 1);
      const auto& right = rank_at(j);
      changed |= tighten(d, left.lower + right.lower, sat_add(left.upper, right.upper));
    }
    for (std::ptrdiff_t j = 0; j + 1 < m; ++j) {
      auto& r = ranks[static_cast<std::size_t>(j)];
      const auto& d0 = dims[static_cast<std::size_t>(j)];
      const auto& d1 = dims[static_cast<std::size_t>(j + 1)];
      const auto& left = rank_at(j - 1);
      const auto& right = rank_at(j + 1);
      changed |= tighten(r, lower_diff(d0.lower, left.upper), upper_diff(d0.upper, left.lower));
      changed |= tighten(r, lower_diff(d1.lower, right.upper), upper_diff(d1.upper, right.lower));
    }
    if (!changed) break;
    any = true;
  }
  return any;
}

SparseFpMatrix PolyMatrix::on_cohomology(const CohomologyEngine& engine, int i) const {
  if (entries.size() != target.size()) {
    throw Error(ErrorKind::InvalidParams, "polynomial matrix has wrong number of rows");
  }
  std::vector<std::size_t> row_offset(target.size() + 1, 0);
  std::vector<std::size_t> col_offset(source.size() + 1, 0);
  for (std::size_t r = 0; r < target.size(); ++r) {
    row_offset[r + 1] = row_offset[r] + static_cast<std::size_t>(engine.h_Y(target[r], i));
  }
  for (std::size_t c = 0; c < source.size(); ++c) {
    col_offset[c + 1] = col_offset[c] + static_cast<std::size_t>(engine.h_Y(source[c], i));
  }
  SparseFpMatrix out(engine.p(), row_offset.back(), col_offset.back());
  if (out.rows() == 0 || out.cols() == 0) return out;
  std::vector<SparseVector> columns(out.cols());
  for (std::size_t r = 0; r < target.size(); ++r) {
    if (entries[r].size() != source.size()) {
      throw Error(ErrorKind::InvalidParams, "polynomial matrix has wrong number of columns");
    }
    if (row_offset[r + 1] == row_offset[r]) continue;
    for (std::size_t c = 0; c < source.size(); ++c) {
      const auto& g = entries[r][c];
      if (!g || col_offset[c + 1] == col_offset[c]) continue;
      const auto block = engine.induced_map_Y_sparse(*g, i, source[c], target[r]);
      for (std::size_t k = 0; k < block.cols(); ++k) {
        auto& col = columns[col_offset[c] + k];
        for (const auto& e : block.column(k)) {
          col.push_back({static_cast<std::uint32_t>(row_offset[r] + e.index), e.value});
        }
      }
    }
  }
  // Row blocks were visited in increasing order, so every column is already sorted.
  for (std::size_t k = 0; k < columns.size(); ++k) out.set_column(k, std::move(columns[k]));
  return out;
}

LesSolver::LesSolver(const CohomologyEngine& engine) : engine_(engine) {}

void LesSolver::add_leaf(const std::string& id, std::vector<Twist> summands) {
  if (has(id)) throw Error(ErrorKind::InvalidParams, "object " + id + " registered twice");
  Object obj;
  obj.leaf = true;
  obj.dims.resize(static_cast<std::size_t>(top_degree() + 1));
  for (int i = 0; i <= top_degree(); ++i) {
    std::int64_t h = 0;
    for (const auto& t : summands) h += engine_.h_Y(t, i);
    obj.dims[static_cast<std::size_t>(i)] = DimInterval::exactly(h);
  }
  obj.summands = std::move(summands);
  objects_.emplace(id, std::move(obj));
  dirty_ = true;
}

void LesSolver::add_object(const std::string& id) {
  if (has(id)) throw Error(ErrorKind::InvalidParams, "object " + id + " registered twice");
  Object obj;
  obj.dims.assign(static_cast<std::size_t>(top_degree() + 1), DimInterval{});
  objects_.emplace(id, std::move(obj));
  dirty_ = true;
}

const std::string& LesSolver::root(const std::string& id) const {
  if (!has(id)) throw Error(ErrorKind::UnknownLeaf, "no model registered for " + id);
  const std::string* cur = &id;
  for (auto it = alias_.find(*cur); it != alias_.end(); it = alias_.find(*cur)) cur = &it->second;
  return *cur;
}

LesSolver::Object& LesSolver::object(const std::string& id) { return objects_.at(root(id)); }

bool LesSolver::is_leaf(const std::string& id) const { return objects_.at(root(id)).leaf; }

const std::vector<Twist>& LesSolver::leaf_summands(const std::string& id) const {
  const auto& obj = objects_.at(root(id));
  if (!obj.leaf) throw Error(ErrorKind::UnknownLeaf, id + " is not a sum of line bundles");
  return obj.summands;
}

std::size_t LesSolver::add_ses(SesNode node) {
  const std::size_t len = 3 * static_cast<std::size_t>(top_degree() + 1);
  std::vector<DimInterval> ranks(len - 1, DimInterval{});
  auto fix_ranks = [&](const std::optional<PolyMatrix>& map, const std::string& from,
                       const std::string& to, std::size_t slot) {
    if (!map) return;
    if (map->source != leaf_summands(from) || map->target != leaf_summands(to)) {
      throw Error(ErrorKind::InvalidParams, "map in " + node.label + " does not match its leaves");
    }
    for (int i = 0; i <= top_degree(); ++i) {
      const auto r = static_cast<std::int64_t>(rank(map->on_cohomology(engine_, i)));
      ranks[3 * static_cast<std::size_t>(i) + slot] = DimInterval::exactly(r);
    }
  };
  (void)root(node.sub);
  (void)root(node.mid);
  (void)root(node.quot);
  fix_ranks(node.sub_to_mid, node.sub, node.mid, 0);
  fix_ranks(node.mid_to_quot, node.mid, node.quot, 1);
  nodes_.push_back(std::move(node));
  ranks_.push_back(std::move(ranks));
  dirty_ = true;
  return nodes_.size() - 1;
}

void LesSolver::bound_rank(std::size_t node_index, std::size_t arrow, DimInterval interval) {
  tighten(ranks_.at(node_index).at(arrow), interval.lower, interval.upper);
  dirty_ = true;
}

std::optional<std::size_t> LesSolver::find_node(const std::string& label) const {
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].label == label) return k;
  }
  return std::nullopt;
}

void LesSolver::add_isomorphism(const std::string& a, const std::string& b, std::string label) {
  const std::string ra = root(a);
  const std::string rb = root(b);
  isomorphism_labels_.push_back(std::move(label));
  if (ra == rb) return;
  auto& oa = objects_.at(ra);
  auto& ob = objects_.at(rb);
  const bool keep_a = oa.leaf || !ob.leaf;
  auto& keep = keep_a ? oa : ob;
  const auto& drop = keep_a ? ob : oa;
  for (std::size_t i = 0; i < keep.dims.size(); ++i) {
    tighten(keep.dims[i], drop.dims[i].lower, drop.dims[i].upper);
  }
  alias_[keep_a ? rb : ra] = keep_a ? ra : rb;
  dirty_ = true;
}

void LesSolver::bound(const std::string& id, int degree, DimInterval interval) {
  auto& obj = object(id);
  if (degree < 0 || degree > top_degree()) return;
  tighten(obj.dims[static_cast<std::size_t>(degree)], interval.lower, interval.upper);
  dirty_ = true;
}

void LesSolver::solve() {
  if (!dirty_) return;
  const std::size_t groups = static_cast<std::size_t>(top_degree() + 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const auto& node = nodes_[k];
      const std::string* members[3] = {&node.sub, &node.mid, &node.quot};
      std::vector<DimInterval> dims(3 * groups);
      for (std::size_t i = 0; i < groups; ++i) {
        for (std::size_t s = 0; s < 3; ++s) dims[3 * i + s] = object(*members[s]).dims[i];
      }
      if (!propagate_exact_sequence(dims, ranks_[k])) continue;
      for (std::size_t i = 0; i < groups; ++i) {
        for (std::size_t s = 0; s < 3; ++s) {
          changed |= tighten(object(*members[s]).dims[i], dims[3 * i + s].lower, dims[3 * i + s].upper);
        }
      }
    }
  }
  dirty_ = false;
}

DimInterval LesSolver::query(const std::string& id, int degree) {
  auto& obj = object(id);
  if (degree < 0 || degree > top_degree()) return DimInterval::exactly(0);
  solve();
  return obj.dims[static_cast<std::size_t>(degree)];
}

std::vector<DimInterval> LesSolver::chain_ranks(std::size_t node_index) {
  solve();
  return ranks_.at(node_index);
}

}  // namespace frobcoh
