#pragma once

// Cohomology of line bundles on P^n, on W = P^n x P^n and on the (1,1)
// hypersurface Y in W, with explicit bases.
//
// H^k(W, O(a,b)) is a sum of tensor sectors H^i(P^n, a) (x) H^j(P^n, b), i,j in {0,n}.
// A basis element is stored as a BiMonomial whose x-part (resp. y-part) is
// either a polynomial exponent (all entries >= 0) or a Laurent exponent (all
// entries <= -1), so the sector can be read off the element.  Multiplication by
// a polynomial shifts exponents and kills any element leaving the Laurent range.
//
// Y is cut out by q, so 0 -> O_W(a-1,b-1) -> O_W(a,b) -> O_Y(a,b) -> 0 is exact.
// For n >= 2 the W-groups live in degrees 0, n, 2n only, which gives
//   h^0     = dim R_(a,b)
//   h^(n-1) = dim ker(xq on H^n)
//   h^n     = dim coker(xq on H^n)
//   h^(2n-1)= dim ker(xq on H^2n)
// and zero in every other degree.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frobcoh/bigraded_ring.hpp"
#include "frobcoh/fp_matrix.hpp"

namespace frobcoh {

using Twist = std::pair<int, int>;

/// h^i(P^n, O(a)).
std::int64_t h_pn(int n, int a, int i);
/// chi(P^n, O(a)) = C(a+n, n) read as a polynomial in a.
std::int64_t chi_pn(int n, int a);
/// Exponent vectors with every entry <= -1 and sum a, descending lex.
std::vector<Exponents> laurent_basis(int n, int a);

/// Kuenneth sum for h^k(W, O(a,b)).
std::int64_t h_W(int n, Twist ab, int k);
std::int64_t chi_W(int n, Twist ab);

enum class Variety { Pn, W, Y };
enum class Realization { Direct, Kernel, Cokernel };

/// One tensor sector H^i (x) H^j of a W-group, occupying [offset, offset + dim).
struct Sector {
  int i = 0;
  int j = 0;
  std::size_t offset = 0;
  std::size_t dim = 0;
};

/// Ordered basis of H^k(W, O(a,b)): sectors by increasing i, descending lex inside.
struct WBasis {
  Twist twist;
  int degree = 0;
  std::vector<Sector> sectors;
  std::vector<BiMonomial> elements;
  std::unordered_map<BiMonomial, std::size_t, BiMonomialHash> index;

  std::size_t dim() const { return elements.size(); }
};

struct CohModel {
  Variety variety = Variety::Y;
  Twist twist;
  int degree = 0;
  Realization realization = Realization::Direct;
  /// The W-group holding the model: source of xq for kernels, target for cokernels.
  std::shared_ptr<const WBasis> ambient;
  /// Kernel: the kernel itself.  Cokernel: the image of xq.  Direct: unused.
  Subspace subspace;
  /// Cokernel only: ambient coordinates that are not pivots of the image.
  std::vector<std::uint32_t> complement;
  /// xq between the W-groups used by the realization (empty for Direct).
  SparseFpMatrix q_matrix;
  std::size_t dim = 0;
};

struct HRow {
  int a = 0;
  int b = 0;
  int i = 0;
  std::int64_t h = 0;
};

class CohomologyEngine {
 public:
  /// Throws Error(UnsupportedDimension) for n < 2.
  CohomologyEngine(std::uint32_t p, int n, int degree_cap = 32);

  const BigradedRing& ring() const { return ring_; }
  std::uint32_t p() const { return ring_.p(); }
  int n() const { return ring_.n(); }

  std::shared_ptr<const WBasis> basis_W(Twist ab, int k) const;

  /// Multiplication by g from H^k(W, ab) to H^k(W, ab + deg g).
  SparseFpMatrix mult_W(const BiPoly& g, Twist ab, int k) const;
  /// xq from H^k(W, (a-1,b-1)) to H^k(W, (a,b)).
  SparseFpMatrix times_q_sparse(Twist ab, int k) const;
  FpMatrix times_q_map(Twist ab, int k) const;

  std::int64_t h_Y(Twist ab, int i) const;
  std::shared_ptr<const CohModel> model_Y(Twist ab, int i) const;
  std::int64_t chi_Y(Twist ab) const;

  /// Matrix of multiplication by g from H^i(Y, source) to H^i(Y, target).
  /// Throws Error(DegreeMismatch) unless target - source = deg g.
  SparseFpMatrix induced_map_Y_sparse(const BiPoly& g, int i, Twist source, Twist target) const;
  FpMatrix induced_map_Y(const BiPoly& g, int i, Twist source, Twist target) const;

  /// Every h^i(Y, (a,b)) over the box, ordered by a, then b, then i.
  std::vector<HRow> sweep_Y(Twist arange, Twist brange, unsigned threads = 0) const;

 private:
  std::size_t q_rank(Twist ab, int k) const;
  void check_twist(Twist ab) const;

  BigradedRing ring_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const WBasis>> w_cache_;
  mutable std::map<std::tuple<int, int, int>, std::size_t> rank_cache_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const CohModel>> y_cache_;
};

void write_h_csv(std::ostream& out, const std::vector<HRow>& rows);

}  // namespace frobcoh
