// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance_test                      exit 0 iff every criterion passes
//   acceptance_test --known-failures 6,8 exit 0 iff the failing set is exactly {6,8}

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "frobcoh/bundle_cohomology.hpp"
#include "frobcoh/certificate.hpp"
#include "frobcoh/error.hpp"
#include "frobcoh/json_schema.hpp"
#include "frobcoh/picard.hpp"

using namespace frobcoh;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no time limit
  std::function<Result()> body;
};

std::map<std::tuple<int, int, int>, std::int64_t> table(const CohomologyEngine& e, int lo, int hi) {
  std::map<std::tuple<int, int, int>, std::int64_t> out;
  for (const auto& r : e.sweep_Y({lo, hi}, {lo, hi})) out[{r.a, r.b, r.i}] = r.h;
  return out;
}

// Rank over F_2 of a dense 0/1 matrix given as rows of bits; independent of the library.
std::size_t rank_f2(std::vector<std::vector<bool>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && !m[piv][c]) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != r && m[k][c]) {
        for (std::size_t j = c; j < cols; ++j) m[k][j] = m[k][j] != m[r][j];
      }
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<int>> y_monomials(int vars, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(vars), 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == vars - 1) {
      e[static_cast<std::size_t>(v)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(v)] = k;
      rec(v + 1, left - k);
    }
  };
  rec(0, deg);
  return out;
}

// coker of [y_0^2 .. y_3^2] : S_b^4 -> S_(b+2) on pure y-monomials (a = 0 means no x, so no reduction).
std::int64_t brute_h1_FstarB(int b) {
  const auto src = y_monomials(4, b);
  const auto dst = y_monomials(4, b + 2);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < dst.size(); ++k) index[dst[k]] = k;
  std::vector<std::vector<bool>> rows;
  for (int i = 0; i < 4; ++i) {
    for (const auto& m : src) {
      auto t = m;
      t[static_cast<std::size_t>(i)] += 2;
      std::vector<bool> row(dst.size(), false);
      row[index.at(t)] = true;
      rows.push_back(std::move(row));
    }
  }
  return static_cast<std::int64_t>(dst.size() - rank_f2(rows));
}

std::string interval(const DimInterval& d) { return d.to_string(); }

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int k = 1; k < argc; ++k) {
    if (std::string(argv[k]) == "--known-failures" && k + 1 < argc) {
      std::stringstream ss(argv[++k]);
      std::string tok;
      while (std::getline(ss, tok, ',')) known.insert(std::stoi(tok));
    }
  }

  CohomologyEngine e2(2, 3);
  CohomologyEngine e3(3, 3);
  BundleCohomology b2(e2);
  BundleCohomology b3(e3);

  std::vector<Criterion> criteria;

  criteria.push_back({1, "vanishing pattern of h^i(O_Y(a,b)) on [-8,8]^2", 60.0, [&] {
                        const auto h = table(e2, -8, 8);
                        int bad = 0;
                        for (const auto& [k, v] : h) {
                          const auto [a, b, i] = k;
                          if (i == 1 && v != 0) ++bad;
                          if (i > 0 && a >= -2 && b >= -2 && v != 0) ++bad;
                          if (i == 0 && std::min(a, b) < 0 && v != 0) ++bad;
                        }
                        return Result{bad == 0 && h.size() == 17u * 17u * 6u,
                                      std::to_string(h.size()) + " groups, " + std::to_string(bad) + " violations"};
                      }});

  criteria.push_back({2, "Serre duality h^i(a,b) = h^(5-i)(-3-a,-3-b) on [-6,3]^2", 60.0, [&] {
                        const auto h = table(e2, -6, 3);
                        int bad = 0;
                        for (const auto& [k, v] : h) {
                          const auto [a, b, i] = k;
                          if (v != h.at({-3 - a, -3 - b, 5 - i})) ++bad;
                        }
                        return Result{bad == 0, std::to_string(h.size()) + " groups, " + std::to_string(bad) +
                                                    " mismatches"};
                      }});

  criteria.push_back({3, "Euler additivity chi_Y = chi_W(a,b) - chi_W(a-1,b-1) on [-6,3]^2", 0.0, [&] {
                        const auto h = table(e2, -6, 3);
                        int bad = 0;
                        for (int a = -6; a <= 3; ++a) {
                          for (int b = -6; b <= 3; ++b) {
                            std::int64_t chi = 0;
                            for (int i = 0; i <= 5; ++i) chi += (i % 2 ? -1 : 1) * h.at({a, b, i});
                            if (chi != chi_W(3, {a, b}) - chi_W(3, {a - 1, b - 1})) ++bad;
                          }
                        }
                        return Result{bad == 0, "100 twists, " + std::to_string(bad) + " mismatches"};
                      }});

  criteria.push_back({4, "h^1(F*B) = 6 at (0,0), 4 at (0,1), 0 for a < 0 or b < -p", 5.0, [&] {
                        const auto v00 = b2.h1_FstarB({0, 0}).value;
                        const auto v01 = b2.h1_FstarB({0, 1}).value;
                        const auto o00 = brute_h1_FstarB(0);
                        const auto o01 = brute_h1_FstarB(1);
                        int bad = 0;
                        for (int a = -8; a <= 8; ++a) {
                          for (int b = -8; b <= 8; ++b) {
                            if ((a < 0 || b < -2) && b2.h1_FstarB({a, b}).value != 0) ++bad;
                          }
                        }
                        std::ostringstream d;
                        d << "(0,0)=" << v00 << " oracle " << o00 << ", (0,1)=" << v01 << " oracle " << o01 << ", "
                          << bad << " nonzero in the vanishing range";
                        return Result{v00 == 6 && v01 == 4 && o00 == 6 && o01 == 4 && bad == 0, d.str()};
                      }});

  criteria.push_back({5, "cokernel formula equals the solver on the defining sequence over [-8,8]^2", 0.0, [&] {
                        int bad = 0;
                        int inexact = 0;
                        for (int a = -8; a <= 8; ++a) {
                          for (int b = -8; b <= 8; ++b) {
                            LesSolver solver(e2);
                            const auto got = solver.query(b2.add_FstarB(solver, {a, b}), 1);
                            if (!got.exact()) ++inexact;
                            if (got != DimInterval::exactly(b2.h1_FstarB({a, b}).value)) ++bad;
                          }
                        }
                        return Result{bad == 0, "289 twists, " + std::to_string(bad) + " mismatches, " +
                                                    std::to_string(inexact) + " inexact"};
                      }});

  auto sub_check_00 = [](const BundleCohomology& b) -> Result {
    try {
      const auto w = b.h1_sym2FstarB_lower({0, 0});
      const bool ok = contains(w.im_eta1, w.im_eta2) && w.d == 24;
      return {ok, "(0,0): im eta2 in im eta1, d = " + std::to_string(w.d)};
    } catch (const Error& e) {
      return {false, "(0,0): " + std::string(e.what())};
    }
  };

  criteria.push_back({6, "image-difference bound: 24 at (0,0); >= 1 at (1,5) p=2 and (0,6) p=3", 10.0, [&] {
                        const auto base = sub_check_00(b2);
                        const auto d15 = b2.h1_sym2FstarB_lower({1, 5});
                        const auto d06 = b3.h1_sym2FstarB_lower({0, 6});
                        std::ostringstream s;
                        s << base.detail << "; (1,5) p=2: d = " << d15.im_eta1.dim() << " - " << d15.im_eta2.dim()
                          << " = " << d15.d << "; (0,6) p=3: d = " << d06.im_eta1.dim() << " - "
                          << d06.im_eta2.dim() << " = " << d06.d;
                        return Result{base.pass && d15.d >= 1 && d06.d >= 1, s.str()};
                      }});

  criteria.push_back({7, "omega_X derivation equals the closed form for p,n <= 7; Fano pattern", 0.0, [&] {
                        int bad = 0;
                        int checked = 0;
                        for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
                          for (int n = 3; n <= 7; ++n) {
                            if (static_cast<int>(p) < n - 1) continue;
                            ++checked;
                            if (omega_X(p, n).value != omega_X_closed_form(p, n)) ++bad;
                          }
                        }
                        const bool ex = omega_X(2, 3).value == PicClass{-1, -1, -2} && fano_witness(2, 3).holds &&
                                        !fano_witness(3, 3).holds;
                        return Result{bad == 0 && ex, std::to_string(checked) + " pairs, (2,3) -> " +
                                                          omega_X(2, 3).value.to_string() + ", fano(2,3) = " +
                                                          (fano_witness(2, 3).holds ? "true" : "false") +
                                                          ", fano(3,3) = " +
                                                          (fano_witness(3, 3).holds ? "true" : "false")};
                      }});

  criteria.push_back({8, "cone certificate: schema-valid, deterministic, dim 7, index 1, not-CM (i=5, power 2)", 30.0, [&] {
                        const auto r1 = cone_certificate(2, 3);
                        const auto r2 = cone_certificate(2, 3);
                        const auto bytes = emit(r1.certificate, Format::Json);
                        const bool same = bytes == emit(r2.certificate, Format::Json);
                        const auto errors =
                            validate_json(nlohmann::json::parse(bytes), load_json_file(FROBCOH_SCHEMA_FILE));
                        int assumed = 0;
                        for (const auto& n : r1.certificate.nodes) assumed += n.status == NodeStatus::Assumed;
                        const bool witness = r1.witness_i == 5 && r1.witness_power == 2;
                        std::ostringstream s;
                        s << "schema " << (errors.empty() ? "ok" : "invalid") << ", deterministic "
                          << (same ? "yes" : "no") << ", dim Z = " << r1.dim_Z << ", index " << r1.index
                          << ", omega_Z line bundle " << (r1.omega_Z_line_bundle ? "yes" : "no") << ", ASSUMED nodes "
                          << assumed << ", not-CM " << (r1.not_cm ? "established" : "not established")
                          << " (witness i=" << r1.witness_i << " power " << r1.witness_power
                          << ", h^5(X, omega_X^2) in " << interval(r1.witness_bound) << ")";
                        const bool ok = errors.empty() && same && r1.dim_Z == 7 && r1.index == 1 &&
                                        r1.omega_Z_line_bundle && assumed == 1 &&
                                        r1.certificate.node("canonical").status == NodeStatus::Assumed && r1.not_cm &&
                                        witness;
                        return Result{ok, s.str()};
                      }});

  criteria.push_back({9, "dropping the y_n^p block of eta1 flips the (0,0) check of criterion 6", 0.0, [&] {
                        const auto clean = sub_check_00(b2);
                        BundleCohomology broken(e2, BundleOptions{true});
                        const auto mutated = sub_check_00(broken);
                        return Result{clean.pass && !mutated.pass,
                                      "unmutated " + std::string(clean.pass ? "passes" : "fails") + ", mutated " +
                                          (mutated.pass ? "passes" : "fails") + " [" + mutated.detail +
                                          "]; the overall criterion 6 already fails unmutated, so the sub-check is used"};
                      }});

  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.body();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s == 0.0 || s < c.limit_s;
    const bool pass = r.pass && in_time;
    if (!pass) failed.insert(c.id);
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s", s);
    std::cout << "CRITERION " << c.id << " " << (pass ? "PASS" : "FAIL") << " [" << timing
              << (c.limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "") << "] "
              << c.name << ": " << r.detail << (in_time ? "" : " (over time)") << "\n";
  }

  if (!known.empty()) {
    const bool match = failed == known;
    std::cout << "known failures " << (match ? "match" : "DIFFER") << ": expected {";
    for (int k : known) std::cout << " " << k;
    std::cout << " }, got {";
    for (int k : failed) std::cout << " " << k;
    std::cout << " }\n";
    return match ? 0 : 1;
  }
  return failed.empty() ? 0 : 1;
}
