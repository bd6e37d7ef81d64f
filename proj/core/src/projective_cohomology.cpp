#include "frobcoh/projective_cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "frobcoh/error.hpp"

namespace frobcoh {

namespace {

bool is_laurent(const Exponents& e) { return !e.empty() && e[0] < 0; }

bool stays_laurent(const Exponents& e) {
  return std::all_of(e.begin(), e.end(), [](int v) { return v <= -1; });
}

SparseVector merge_pairs(std::vector<std::pair<std::uint32_t, std::uint32_t>>& terms,
                         std::uint32_t p) {
  std::sort(terms.begin(), terms.end());
  SparseVector out;
  for (std::size_t i = 0; i < terms.size();) {
    std::uint32_t acc = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].first == terms[i].first; ++j) acc = (acc + terms[j].second) % p;
    if (acc != 0) out.push_back({terms[i].first, static_cast<Residue>(acc)});
    i = j;
  }
  return out;
}

Twist shift(Twist ab, int da, int db) { return {ab.first + da, ab.second + db}; }

}  // namespace

std::int64_t h_pn(int n, int a, int i) {
  if (i == 0 && a >= 0) return binomial(a + n, n);
  if (i == n && a <= -n - 1) return binomial(-a - 1, n);
  return 0;
}

std::int64_t chi_pn(int n, int a) {
  return h_pn(n, a, 0) + ((n % 2 == 0) ? 1 : -1) * h_pn(n, a, n);
}

std::vector<Exponents> laurent_basis(int n, int a) {
  // alpha = -1 - e with e >= 0; descending alpha is ascending e.
  auto shifted = monomials_of_degree(n + 1, -a - (n + 1));
  std::reverse(shifted.begin(), shifted.end());
  for (auto& e : shifted) {
    for (auto& v : e) v = -1 - v;
  }
  return shifted;
}

std::int64_t h_W(int n, Twist ab, int k) {
  std::int64_t total = 0;
  for (int i : {0, n}) {
    const int j = k - i;
    if (j != 0 && j != n) continue;
    total += h_pn(n, ab.first, i) * h_pn(n, ab.second, j);
  }
  return total;
}

std::int64_t chi_W(int n, Twist ab) { return chi_pn(n, ab.first) * chi_pn(n, ab.second); }

CohomologyEngine::CohomologyEngine(std::uint32_t p, int n, int degree_cap)
    : ring_([&] {
        if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "n = " + std::to_string(n) + " < 2");
        return RingParams{p, n};
      }(), degree_cap) {}

void CohomologyEngine::check_twist(Twist ab) const { ring_.check_degree(ab.first, ab.second); }

std::shared_ptr<const WBasis> CohomologyEngine::basis_W(Twist ab, int k) const {
  const auto key = std::make_tuple(ab.first, ab.second, k);
  {
    std::shared_lock lock(mutex_);
    if (auto it = w_cache_.find(key); it != w_cache_.end()) return it->second;
  }
  auto fresh = std::make_shared<WBasis>();
  fresh->twist = ab;
  fresh->degree = k;
  const int nn = n();
  auto factor = [&](int deg, int i) {
    if (i == 0) return monomials_of_degree(nn + 1, deg);
    return laurent_basis(nn, deg);
  };
  for (int i : {0, nn}) {
    const int j = k - i;
    if (j != 0 && j != nn) continue;
    const auto xs = factor(ab.first, i);
    const auto ys = factor(ab.second, j);
    Sector s{i, j, fresh->elements.size(), xs.size() * ys.size()};
    if (s.dim == 0) continue;
    fresh->sectors.push_back(s);
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        fresh->index.emplace(BiMonomial{x, y}, fresh->elements.size());
        fresh->elements.push_back(BiMonomial{x, y});
      }
    }
  }
  std::unique_lock lock(mutex_);
  return w_cache_.try_emplace(key, std::move(fresh)).first->second;
}

SparseFpMatrix CohomologyEngine::mult_W(const BiPoly& g, Twist ab, int k) const {
  const auto [d1, d2] = g.bidegree();
  const auto source = basis_W(ab, k);
  const auto target = basis_W(shift(ab, d1, d2), k);
  SparseFpMatrix out(p(), target->dim(), source->dim());
  if (target->dim() == 0) return out;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  for (std::size_t col = 0; col < source->dim(); ++col) {
    const auto& e = source->elements[col];
    const bool lx = is_laurent(e.x);
    const bool ly = is_laurent(e.y);
    terms.clear();
    for (const auto& [m, c] : g.terms()) {
      BiMonomial prod = e * m;
      if (lx && !stays_laurent(prod.x)) continue;
      if (ly && !stays_laurent(prod.y)) continue;
      terms.emplace_back(static_cast<std::uint32_t>(target->index.at(prod)), c);
    }
    out.set_column(col, merge_pairs(terms, p()));
  }
  return out;
}

SparseFpMatrix CohomologyEngine::times_q_sparse(Twist ab, int k) const {
  return mult_W(ring_.q(), shift(ab, -1, -1), k);
}

FpMatrix CohomologyEngine::times_q_map(Twist ab, int k) const {
  return times_q_sparse(ab, k).to_dense();
}

std::size_t CohomologyEngine::q_rank(Twist ab, int k) const {
  if (h_W(n(), shift(ab, -1, -1), k) == 0 || h_W(n(), ab, k) == 0) return 0;
  const auto key = std::make_tuple(ab.first, ab.second, k);
  {
    std::shared_lock lock(mutex_);
    if (auto it = rank_cache_.find(key); it != rank_cache_.end()) return it->second;
  }
  const std::size_t r = rank(times_q_sparse(ab, k));
  std::unique_lock lock(mutex_);
  rank_cache_.emplace(key, r);
  return r;
}

std::int64_t CohomologyEngine::h_Y(Twist ab, int i) const {
  check_twist(ab);
  const int nn = n();
  const auto [a, b] = ab;
  if (i == 0) return static_cast<std::int64_t>(ring_.basis_R(a, b).size());
  if (i == nn - 1) {
    return h_W(nn, shift(ab, -1, -1), nn) - static_cast<std::int64_t>(q_rank(ab, nn));
  }
  if (i == nn) return h_W(nn, ab, nn) - static_cast<std::int64_t>(q_rank(ab, nn));
  if (i == 2 * nn - 1) {
    return h_W(nn, shift(ab, -1, -1), 2 * nn) - static_cast<std::int64_t>(q_rank(ab, 2 * nn));
  }
  return 0;
}

std::int64_t CohomologyEngine::chi_Y(Twist ab) const {
  std::int64_t chi = 0;
  for (int i = 0; i <= 2 * n() - 1; ++i) chi += (i % 2 == 0 ? 1 : -1) * h_Y(ab, i);
  return chi;
}

std::shared_ptr<const CohModel> CohomologyEngine::model_Y(Twist ab, int i) const {
  check_twist(ab);
  const auto key = std::make_tuple(ab.first, ab.second, i);
  {
    std::shared_lock lock(mutex_);
    if (auto it = y_cache_.find(key); it != y_cache_.end()) return it->second;
  }
  auto model = std::make_shared<CohModel>();
  model->variety = Variety::Y;
  model->twist = ab;
  model->degree = i;
  const int nn = n();
  if (i == 0) {
    model->realization = Realization::Direct;
    model->dim = ring_.basis_R(ab.first, ab.second).size();
  } else if (i == nn - 1 || i == 2 * nn - 1) {
    const int k = (i == nn - 1) ? nn : 2 * nn;
    model->realization = Realization::Kernel;
    model->ambient = basis_W(shift(ab, -1, -1), k);
    model->q_matrix = times_q_sparse(ab, k);
    model->subspace = kernel(model->q_matrix);
    model->dim = model->subspace.dim();
  } else if (i == nn) {
    model->realization = Realization::Cokernel;
    model->ambient = basis_W(ab, nn);
    model->q_matrix = times_q_sparse(ab, nn);
    model->subspace = image(model->q_matrix);
    const auto& piv = model->subspace.pivots();
    for (std::uint32_t c = 0; c < model->ambient->dim(); ++c) {
      if (!std::binary_search(piv.begin(), piv.end(), c)) model->complement.push_back(c);
    }
    model->dim = model->complement.size();
  } else {
    model->realization = Realization::Direct;
    model->dim = 0;
  }
  std::unique_lock lock(mutex_);
  return y_cache_.try_emplace(key, std::move(model)).first->second;
}

SparseFpMatrix CohomologyEngine::induced_map_Y_sparse(const BiPoly& g, int i, Twist source,
                                                      Twist target) const {
  const auto [d1, d2] = g.bidegree();
  if (shift(source, d1, d2) != target) {
    throw Error(ErrorKind::DegreeMismatch, "multiplier bidegree does not match the twist difference");
  }
  const auto src = model_Y(source, i);
  const auto tgt = model_Y(target, i);
  SparseFpMatrix out(p(), tgt->dim, src->dim);
  if (src->dim == 0 || tgt->dim == 0) return out;

  switch (src->realization) {
    case Realization::Direct:
      return ring_.mult_matrix_sparse(g, source.first, source.second);
    case Realization::Kernel: {
      const int k = (i == n() - 1) ? n() : 2 * n();
      const auto m = mult_W(g, shift(source, -1, -1), k);
      const auto& basis = src->subspace.basis();
      for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto w = m.apply(basis[col]);
#ifdef FROBCOH_EXTRA_CHECKS
        if (!tgt->subspace.contains(w)) {
          throw Error(ErrorKind::SideConditionFailed, "multiplication does not preserve the kernel");
        }
#endif
        // A member of an echelon span has its coordinates at the pivot columns.
        SparseVector coords;
        const auto& piv = tgt->subspace.pivots();
        for (const auto& e : w) {
          auto it = std::lower_bound(piv.begin(), piv.end(), e.index);
          if (it != piv.end() && *it == e.index) {
            coords.push_back({static_cast<std::uint32_t>(it - piv.begin()), e.value});
          }
        }
        out.set_column(col, std::move(coords));
      }
      return out;
    }
    case Realization::Cokernel: {
      const auto m = mult_W(g, source, n());
      std::vector<std::int32_t> slot(tgt->ambient->dim(), -1);
      for (std::size_t s = 0; s < tgt->complement.size(); ++s) {
        slot[tgt->complement[s]] = static_cast<std::int32_t>(s);
      }
      for (std::size_t col = 0; col < src->complement.size(); ++col) {
        const auto reduced = tgt->subspace.reduce(m.column(src->complement[col]));
        SparseVector coords;
        for (const auto& e : reduced) {
          coords.push_back({static_cast<std::uint32_t>(slot[e.index]), e.value});
        }
        out.set_column(col, std::move(coords));
      }
      return out;
    }
  }
  return out;
}

FpMatrix CohomologyEngine::induced_map_Y(const BiPoly& g, int i, Twist source, Twist target) const {
  return induced_map_Y_sparse(g, i, source, target).to_dense();
}

std::vector<HRow> CohomologyEngine::sweep_Y(Twist arange, Twist brange, unsigned threads) const {
  std::vector<Twist> twists;
  for (int a = arange.first; a <= arange.second; ++a) {
    for (int b = brange.first; b <= brange.second; ++b) twists.emplace_back(a, b);
  }
  const int top = 2 * n() - 1;
  std::vector<HRow> rows(twists.size() * static_cast<std::size_t>(top + 1));
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(twists.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t t = next++; t < twists.size(); t = next++) {
        for (int i = 0; i <= top; ++i) {
          rows[t * static_cast<std::size_t>(top + 1) + static_cast<std::size_t>(i)] =
              HRow{twists[t].first, twists[t].second, i, h_Y(twists[t], i)};
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_h_csv(std::ostream& out, const std::vector<HRow>& rows) {
  out << "a,b,i,h\n";
  for (const auto& r : rows) out << r.a << ',' << r.b << ',' << r.i << ',' << r.h << '\n';
}

}  // namespace frobcoh
