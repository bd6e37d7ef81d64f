#pragma once

// Cohomology of the Frobenius-pulled-back bundles on Y.
//
//   0 -> F*B(a,b)  -> O(a,b)^(n+1) --eta1--> O(a,b+p)  -> 0     eta1 = [y_i^p]
//   0 -> O(a-p,b)  -> F*B(a,b)       -> F*G(a,b)       -> 0
//   0 -> F(a,b)    -> O(a,b)^N     --eta2--> O(a,b+2p) -> 0     eta2 = [y_i^p y_j^p], i <= j
//   0 -> S2B(a,b)  -> F(a,b)         -> F*B(a,b+p)     -> 0
//   0 -> O(a-2p,b) -> E(a,b)         -> F*G(a-p,b)     -> 0
//   0 -> E(a,b)    -> S2B(a,b)       -> S2G(a,b)       -> 0
//
// with S2B = Sym^2 F*B, S2G = Sym^2 F*G, N = C(n+2,2).  E is the image of
// O(-p,0) (x) F*B in S2B, so E(a,b) is isomorphic to F*B(a-p,b).

#include <cstdint>
#include <string>
#include <vector>

#include "frobcoh/les_solver.hpp"
#include "frobcoh/projective_cohomology.hpp"

namespace frobcoh {

struct BundleOptions {
  /// Test hook: leave out the last block of eta1 (the y_n^p entry).
  bool drop_eta1_block = false;
};

enum class EtaKind { Eta1, Eta2, EulerColumn };

struct EtaMap {
  EtaKind kind = EtaKind::Eta1;
  std::uint32_t p = 2;
  int n = 3;
  Twist twist;
  PolyMatrix poly;
  /// The map on global sections.
  SparseFpMatrix on_h0;
};

EtaMap make_eta1(const CohomologyEngine& engine, Twist ab, const BundleOptions& options = {});
EtaMap make_eta2(const CohomologyEngine& engine, Twist ab);
/// O(a-p,b) -> O(a,b)^(n+1) with entries x_i^p.
EtaMap make_euler_column(const CohomologyEngine& engine, Twist ab);
/// O(a,b)^N -> O(a,b+p)^(n+1), e_i e_j -> e_i y_j^p + e_j y_i^p.  On Fcal it is the
/// quotient map onto F*B(a,b+p) with kernel Sym^2 F*B.
PolyMatrix make_sym_quotient(const CohomologyEngine& engine, Twist ab);

struct SideCheck {
  std::string name;
  Twist twist;
  int degree = 0;
  std::int64_t value = 0;
  bool holds() const { return value == 0; }
};

struct CokernelWitness {
  std::int64_t value = 0;
  Subspace image;
  std::size_t target_dim = 0;
  /// The target H^0(a,b+p) is zero because a < 0 or b < -p.
  bool shortcut = false;
};

struct ContainmentWitness {
  Twist twist;
  Twist target_twist;
  std::size_t target_dim = 0;
  Subspace im_eta1;
  Subspace im_eta2;
  std::int64_t d = 0;
  std::vector<SideCheck> checks;
};

struct FstarGValue {
  DimInterval value;
  bool side_conditions_hold = false;
  std::vector<SideCheck> checks;
};

struct Sym2GBound {
  std::int64_t lower = 0;
  ContainmentWitness containment;
  std::vector<SideCheck> checks;
  /// h^1(E(a,b)) through E(a,b) = F*B(a-p,b) and the cokernel formula.
  std::int64_t h1_E = 0;
  /// The bound on h^1(F*G(a-p,b)) that the route through F*G would need to be zero.
  FstarGValue fstarg_route;
};

/// h^1(Sym^2 F*B) and h^1(Sym^2 F*G) once the H^0 part of Fcal -> F*B(a,b+p) is known.
struct RefinedSym2 {
  std::int64_t h0_Fcal = 0;
  std::int64_t h0_target = 0;
  std::int64_t rank_on_h0 = 0;
  /// coker of H^0(Fcal(a,b)) -> H^0(F*B(a,b+p)); injects into H^1(Sym^2 F*B(a,b)).
  std::int64_t coker_on_h0 = 0;
  DimInterval h1_sym2FstarB;
  DimInterval h1_sym2FstarG;
};

class BundleCohomology {
 public:
  explicit BundleCohomology(const CohomologyEngine& engine, BundleOptions options = {});

  const CohomologyEngine& engine() const { return engine_; }
  const BundleOptions& options() const { return options_; }

  /// coker(eta1 on H^0).  Throws Error(SideConditionFailed) if h^1(Y,(a,b)) != 0.
  CokernelWitness h1_FstarB(Twist ab) const;
  std::int64_t h0_FstarB(Twist ab) const;

  /// dim im eta1 - dim im eta2 inside H^0(a,b+2p), after checking im eta2 in im eta1.
  /// Throws Error(HypothesisFailed) unless a >= 0 and b > -n, Error(ContainmentFailed)
  /// if the containment fails.
  ContainmentWitness h1_sym2FstarB_lower(Twist ab) const;

  /// Equals h1_FstarB when h^1 and h^2 of O_Y(a-p,b) vanish; otherwise the solver interval.
  FstarGValue h1_FstarG(Twist ab) const;

  /// Lower bound for h^1(Sym^2 F*G (a,b)).  Throws Error(HypothesisFailed) unless
  /// a < p or b < -p.
  Sym2GBound h1_sym2FstarG_lower(Twist ab) const;

  RefinedSym2 sym2_refined(Twist ab) const;
  /// Fixes the H^0 rank of Fcal(a,b) -> F*B(a,b+p) in an already built chain.
  std::int64_t refine_sym2(LesSolver& solver, Twist ab) const;

  // Chain builders: register the object and everything it depends on; return its id.
  std::string add_line_sum(LesSolver& solver, Twist ab, int copies) const;
  std::string add_FstarB(LesSolver& solver, Twist ab) const;
  std::string add_FstarG(LesSolver& solver, Twist ab) const;
  std::string add_Fcal(LesSolver& solver, Twist ab) const;
  std::string add_sym2FstarB(LesSolver& solver, Twist ab) const;
  std::string add_E(LesSolver& solver, Twist ab) const;
  std::string add_sym2FstarG(LesSolver& solver, Twist ab) const;

 private:
  void require_n3() const;
  SideCheck side(const std::string& name, Twist ab, int degree) const;

  const CohomologyEngine& engine_;
  BundleOptions options_;
};

std::string twist_label(const std::string& name, Twist ab);

}  // namespace frobcoh
