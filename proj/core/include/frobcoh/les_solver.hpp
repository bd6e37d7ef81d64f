#pragma once

// Dimension chase through long exact cohomology sequences on Y.
//
// Objects are either leaves (direct sums of line bundles, whose cohomology is
// known exactly) or composites whose h^i are unknowns.  Each short exact
// sequence 0 -> A -> B -> C -> 0 contributes the chain
//   H^0 A -> H^0 B -> H^0 C -> H^1 A -> ... -> H^top C
// whose terms satisfy dim V_j = r_(j-1) + r_j with r the ranks of the arrows.
// Interval bounds on dimensions and ranks are propagated over every chain
// until nothing moves.  Arrows between two leaves carry a polynomial matrix and
// their ranks are computed exactly.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobcoh/projective_cohomology.hpp"

namespace frobcoh {

inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

struct DimInterval {
  std::int64_t lower = 0;
  std::int64_t upper = kUnbounded;

  static DimInterval exactly(std::int64_t v) { return {v, v}; }
  bool exact() const { return lower == upper; }
  bool bounded() const { return upper != kUnbounded; }
  bool contains(std::int64_t v) const { return lower <= v && v <= upper; }
  std::string to_string() const;

  bool operator==(const DimInterval&) const = default;
};

/// Tightens bounds on an exact sequence 0 -> V_0 -> ... -> V_(m-1) -> 0.
/// ranks[j] bounds the rank of V_j -> V_(j+1), so ranks.size() + 1 == dims.size().
/// Returns true when some bound moved; throws Error(InconsistentSequence) when
/// the bounds admit no solution.
bool propagate_exact_sequence(std::vector<DimInterval>& dims, std::vector<DimInterval>& ranks);

/// Map between direct sums of line bundles; entries[r][c] maps source summand c
/// into target summand r and must have bidegree target[r] - source[c].
struct PolyMatrix {
  std::vector<Twist> source;
  std::vector<Twist> target;
  std::vector<std::vector<std::optional<BiPoly>>> entries;

  /// The induced map on H^i, block by block.
  SparseFpMatrix on_cohomology(const CohomologyEngine& engine, int i) const;
};

struct SesNode {
  std::string label;
  std::string sub;
  std::string mid;
  std::string quot;
  std::optional<PolyMatrix> sub_to_mid;
  std::optional<PolyMatrix> mid_to_quot;
};

class LesSolver {
 public:
  explicit LesSolver(const CohomologyEngine& engine);

  int top_degree() const { return 2 * engine_.n() - 1; }
  const CohomologyEngine& engine() const { return engine_; }

  void add_leaf(const std::string& id, std::vector<Twist> summands);
  void add_object(const std::string& id);
  /// Every member must already be registered; throws Error(UnknownLeaf) otherwise.
  std::size_t add_ses(SesNode node);
  /// Records that two registered objects are isomorphic.
  void add_isomorphism(const std::string& a, const std::string& b, std::string label);
  /// External knowledge about a single group.
  void bound(const std::string& id, int degree, DimInterval interval);
  /// External knowledge about one arrow of a chain (arrow 3i: sub -> mid on H^i,
  /// 3i+1: mid -> quot on H^i, 3i+2: the connecting map H^i quot -> H^(i+1) sub).
  void bound_rank(std::size_t node_index, std::size_t arrow, DimInterval interval);
  std::optional<std::size_t> find_node(const std::string& label) const;

  bool has(const std::string& id) const { return objects_.count(id) != 0; }
  bool is_leaf(const std::string& id) const;
  const std::vector<SesNode>& nodes() const { return nodes_; }
  const std::vector<Twist>& leaf_summands(const std::string& id) const;

  DimInterval query(const std::string& id, int degree);
  /// Ranks of the arrows of one SES chain after solving, in chain order.
  std::vector<DimInterval> chain_ranks(std::size_t node_index);
  void solve();

 private:
  struct Object {
    bool leaf = false;
    std::vector<Twist> summands;
    std::vector<DimInterval> dims;
  };
  Object& object(const std::string& id);
  const std::string& root(const std::string& id) const;

  const CohomologyEngine& engine_;
  std::map<std::string, Object> objects_;
  std::map<std::string, std::string> alias_;
  std::vector<SesNode> nodes_;
  std::vector<std::vector<DimInterval>> ranks_;
  std::vector<std::string> isomorphism_labels_;
  bool dirty_ = true;
};

}  // namespace frobcoh
