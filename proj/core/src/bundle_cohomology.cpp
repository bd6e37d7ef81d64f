#include "frobcoh/bundle_cohomology.hpp"

#include "frobcoh/error.hpp"

namespace frobcoh {

namespace {

std::string twist_text(Twist ab) {
  return "(" + std::to_string(ab.first) + "," + std::to_string(ab.second) + ")";
}

}  // namespace

std::string twist_label(const std::string& name, Twist ab) { return name + twist_text(ab); }

EtaMap make_eta1(const CohomologyEngine& engine, Twist ab, const BundleOptions& options) {
  const int n = engine.n();
  const int p = static_cast<int>(engine.p());
  EtaMap eta;
  eta.kind = EtaKind::Eta1;
  eta.p = engine.p();
  eta.n = n;
  eta.twist = ab;
  eta.poly.source.assign(static_cast<std::size_t>(n + 1), ab);
  eta.poly.target = {{ab.first, ab.second + p}};
  eta.poly.entries.resize(1);
  for (int i = 0; i <= n; ++i) {
    if (options.drop_eta1_block && i == n) {
      eta.poly.entries[0].emplace_back(std::nullopt);
    } else {
      eta.poly.entries[0].emplace_back(engine.ring().y_power(i, p));
    }
  }
  eta.on_h0 = eta.poly.on_cohomology(engine, 0);
  return eta;
}

EtaMap make_eta2(const CohomologyEngine& engine, Twist ab) {
  const int n = engine.n();
  const int p = static_cast<int>(engine.p());
  const auto& ring = engine.ring();
  EtaMap eta;
  eta.kind = EtaKind::Eta2;
  eta.p = engine.p();
  eta.n = n;
  eta.twist = ab;
  eta.poly.target = {{ab.first, ab.second + 2 * p}};
  eta.poly.entries.resize(1);
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      eta.poly.source.push_back(ab);
      eta.poly.entries[0].emplace_back(ring.y_power(i, p) * ring.y_power(j, p));
    }
  }
  eta.on_h0 = eta.poly.on_cohomology(engine, 0);
  return eta;
}

EtaMap make_euler_column(const CohomologyEngine& engine, Twist ab) {
  const int n = engine.n();
  const int p = static_cast<int>(engine.p());
  EtaMap eta;
  eta.kind = EtaKind::EulerColumn;
  eta.p = engine.p();
  eta.n = n;
  eta.twist = ab;
  eta.poly.source = {{ab.first - p, ab.second}};
  eta.poly.target.assign(static_cast<std::size_t>(n + 1), ab);
  for (int i = 0; i <= n; ++i) {
    eta.poly.entries.push_back({engine.ring().x_power(i, p)});
  }
  eta.on_h0 = eta.poly.on_cohomology(engine, 0);
  return eta;
}

PolyMatrix make_sym_quotient(const CohomologyEngine& engine, Twist ab) {
  const int n = engine.n();
  const int p = static_cast<int>(engine.p());
  const auto& ring = engine.ring();
  PolyMatrix d;
  d.target.assign(static_cast<std::size_t>(n + 1), {ab.first, ab.second + p});
  d.entries.resize(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      d.source.push_back(ab);
      for (int r = 0; r <= n; ++r) {
        std::optional<BiPoly> entry;
        if (r == i && r == j) {
          if (p != 2) entry = ring.y_power(i, p) + ring.y_power(i, p);
        } else if (r == i) {
          entry = ring.y_power(j, p);
        } else if (r == j) {
          entry = ring.y_power(i, p);
        }
        d.entries[static_cast<std::size_t>(r)].push_back(std::move(entry));
      }
    }
  }
  return d;
}

BundleCohomology::BundleCohomology(const CohomologyEngine& engine, BundleOptions options)
    : engine_(engine), options_(options) {}

void BundleCohomology::require_n3() const {
  if (engine_.n() < 3) {
    throw Error(ErrorKind::HypothesisFailed,
                "bundle computations need n >= 3, got n = " + std::to_string(engine_.n()));
  }
}

SideCheck BundleCohomology::side(const std::string& name, Twist ab, int degree) const {
  return SideCheck{name, ab, degree, engine_.h_Y(ab, degree)};
}

CokernelWitness BundleCohomology::h1_FstarB(Twist ab) const {
  require_n3();
  const auto check = side("h1(O_Y" + twist_text(ab) + ")", ab, 1);
  if (!check.holds()) {
    throw Error(ErrorKind::SideConditionFailed,
                check.name + " = " + std::to_string(check.value) + ", expected 0");
  }
  const int p = static_cast<int>(engine_.p());
  const auto eta = make_eta1(engine_, ab, options_);
  CokernelWitness out;
  out.image = image(eta.on_h0);
  out.target_dim = eta.on_h0.rows();
  out.value = static_cast<std::int64_t>(out.target_dim - out.image.dim());
  out.shortcut = ab.first < 0 || ab.second < -p;
  if (out.shortcut && out.value != 0) {
    throw Error(ErrorKind::SideConditionFailed, "cokernel formula disagrees with the vanishing shortcut");
  }
  return out;
}

std::int64_t BundleCohomology::h0_FstarB(Twist ab) const {
  const auto eta = make_eta1(engine_, ab, options_);
  return static_cast<std::int64_t>(eta.on_h0.cols() - rank(eta.on_h0));
}

ContainmentWitness BundleCohomology::h1_sym2FstarB_lower(Twist ab) const {
  require_n3();
  const int n = engine_.n();
  const int p = static_cast<int>(engine_.p());
  if (ab.first < 0 || ab.second <= -n) {
    throw Error(ErrorKind::HypothesisFailed,
                "need a >= 0 and b > -n, got " + twist_text(ab) + " with n = " + std::to_string(n));
  }
  ContainmentWitness out;
  out.twist = ab;
  out.target_twist = {ab.first, ab.second + 2 * p};
  out.checks.push_back(side("h1(O_Y" + twist_text(ab) + ")", ab, 1));
  out.checks.push_back(side("h2(O_Y" + twist_text(ab) + ")", ab, 2));
  for (const auto& c : out.checks) {
    if (!c.holds()) {
      throw Error(ErrorKind::SideConditionFailed, c.name + " = " + std::to_string(c.value) + ", expected 0");
    }
  }
  const auto eta1 = make_eta1(engine_, {ab.first, ab.second + p}, options_);
  const auto eta2 = make_eta2(engine_, ab);
  out.target_dim = eta2.on_h0.rows();
  out.im_eta1 = image(eta1.on_h0);
  out.im_eta2 = image(eta2.on_h0);
  if (!contains(out.im_eta1, out.im_eta2)) {
    throw Error(ErrorKind::ContainmentFailed,
                "im eta2 is not contained in im eta1 at " + twist_text(ab) +
                    "; the lower bound for h1(Sym2 F*B) has no basis");
  }
  out.d = static_cast<std::int64_t>(quotient_dim(out.im_eta1, out.im_eta2));
  return out;
}

FstarGValue BundleCohomology::h1_FstarG(Twist ab) const {
  require_n3();
  const int p = static_cast<int>(engine_.p());
  const Twist shifted{ab.first - p, ab.second};
  FstarGValue out;
  out.checks.push_back(side("h1(O_Y" + twist_text(shifted) + ")", shifted, 1));
  out.checks.push_back(side("h2(O_Y" + twist_text(shifted) + ")", shifted, 2));
  out.side_conditions_hold = out.checks[0].holds() && out.checks[1].holds();
  if (out.side_conditions_hold) {
    out.value = DimInterval::exactly(h1_FstarB(ab).value);
    return out;
  }
  LesSolver solver(engine_);
  out.value = solver.query(add_FstarG(solver, ab), 1);
  return out;
}

Sym2GBound BundleCohomology::h1_sym2FstarG_lower(Twist ab) const {
  require_n3();
  const int p = static_cast<int>(engine_.p());
  if (!(ab.first < p || ab.second < -p)) {
    throw Error(ErrorKind::HypothesisFailed,
                "need a < p or b < -p, got " + twist_text(ab) + " with p = " + std::to_string(p));
  }
  Sym2GBound out;
  const Twist low{ab.first - 2 * p, ab.second};
  out.checks.push_back(side("h1(O_Y" + twist_text(low) + ")", low, 1));
  if (!out.checks.back().holds()) {
    throw Error(ErrorKind::HypothesisFailed, out.checks.back().name + " does not vanish");
  }
  const Twist shifted{ab.first - p, ab.second};
  out.h1_E = h1_FstarB(shifted).value;
  if (out.h1_E != 0) {
    throw Error(ErrorKind::HypothesisFailed,
                "h1(E" + twist_text(ab) + ") = h1(F*B" + twist_text(shifted) + ") = " +
                    std::to_string(out.h1_E) + " does not vanish");
  }
  out.fstarg_route = h1_FstarG(shifted);
  out.containment = h1_sym2FstarB_lower(ab);
  out.lower = out.containment.d;
  return out;
}

std::int64_t BundleCohomology::refine_sym2(LesSolver& solver, Twist ab) const {
  const auto node = solver.find_node("Sym2 F*B inside Fcal " + twist_text(ab));
  if (!node) throw Error(ErrorKind::UnknownLeaf, "no Sym2 F*B chain registered at " + twist_text(ab));
  const auto h0_Fcal = kernel(make_eta2(engine_, ab).on_h0);
  const auto d = make_sym_quotient(engine_, ab).on_cohomology(engine_, 0);
  Subspace img(engine_.p(), d.rows());
  for (const auto& v : h0_Fcal.basis()) img.insert(d.apply(v));
  const auto r = static_cast<std::int64_t>(img.dim());
  solver.bound_rank(*node, 1, DimInterval::exactly(r));
  return r;
}

RefinedSym2 BundleCohomology::sym2_refined(Twist ab) const {
  require_n3();
  const int p = static_cast<int>(engine_.p());
  LesSolver solver(engine_);
  const auto g = add_sym2FstarG(solver, ab);
  RefinedSym2 out;
  out.rank_on_h0 = refine_sym2(solver, ab);
  out.h0_Fcal = solver.query(twist_label("Fcal", ab), 0).lower;
  out.h0_target = h0_FstarB({ab.first, ab.second + p});
  out.coker_on_h0 = out.h0_target - out.rank_on_h0;
  out.h1_sym2FstarB = solver.query(twist_label("S2F*B", ab), 1);
  out.h1_sym2FstarG = solver.query(g, 1);
  return out;
}

std::string BundleCohomology::add_line_sum(LesSolver& solver, Twist ab, int copies) const {
  std::string id = twist_label("O", ab);
  if (copies != 1) id += "^" + std::to_string(copies);
  if (!solver.has(id)) solver.add_leaf(id, std::vector<Twist>(static_cast<std::size_t>(copies), ab));
  return id;
}

std::string BundleCohomology::add_FstarB(LesSolver& solver, Twist ab) const {
  const std::string id = twist_label("F*B", ab);
  if (solver.has(id)) return id;
  const int p = static_cast<int>(engine_.p());
  solver.add_object(id);
  const auto mid = add_line_sum(solver, ab, engine_.n() + 1);
  const auto quot = add_line_sum(solver, {ab.first, ab.second + p}, 1);
  solver.add_ses({"F*B defining sequence " + twist_text(ab), id, mid, quot, std::nullopt,
                  make_eta1(engine_, ab, options_).poly});
  return id;
}

std::string BundleCohomology::add_FstarG(LesSolver& solver, Twist ab) const {
  const std::string id = twist_label("F*G", ab);
  if (solver.has(id)) return id;
  const int p = static_cast<int>(engine_.p());
  const auto sub = add_line_sum(solver, {ab.first - p, ab.second}, 1);
  const auto mid = add_FstarB(solver, ab);
  solver.add_object(id);
  solver.add_ses({"Euler column " + twist_text(ab), sub, mid, id, std::nullopt, std::nullopt});
  return id;
}

std::string BundleCohomology::add_Fcal(LesSolver& solver, Twist ab) const {
  const std::string id = twist_label("Fcal", ab);
  if (solver.has(id)) return id;
  const int p = static_cast<int>(engine_.p());
  const int n = engine_.n();
  solver.add_object(id);
  const auto mid = add_line_sum(solver, ab, (n + 1) * (n + 2) / 2);
  const auto quot = add_line_sum(solver, {ab.first, ab.second + 2 * p}, 1);
  solver.add_ses({"Fcal defining sequence " + twist_text(ab), id, mid, quot, std::nullopt,
                  make_eta2(engine_, ab).poly});
  return id;
}

std::string BundleCohomology::add_sym2FstarB(LesSolver& solver, Twist ab) const {
  const std::string id = twist_label("S2F*B", ab);
  if (solver.has(id)) return id;
  const int p = static_cast<int>(engine_.p());
  const auto mid = add_Fcal(solver, ab);
  const auto quot = add_FstarB(solver, {ab.first, ab.second + p});
  solver.add_object(id);
  solver.add_ses({"Sym2 F*B inside Fcal " + twist_text(ab), id, mid, quot, std::nullopt, std::nullopt});
  return id;
}

std::string BundleCohomology::add_E(LesSolver& solver, Twist ab) const {
  const std::string id = twist_label("E", ab);
  if (solver.has(id)) return id;
  const int p = static_cast<int>(engine_.p());
  const auto sub = add_line_sum(solver, {ab.first - 2 * p, ab.second}, 1);
  const auto quot = add_FstarG(solver, {ab.first - p, ab.second});
  solver.add_object(id);
  solver.add_ses({"E filtration " + twist_text(ab), sub, id, quot, std::nullopt, std::nullopt});
  const auto iso = add_FstarB(solver, {ab.first - p, ab.second});
  solver.add_isomorphism(id, iso, "E = O(-p,0) (x) F*B");
  return id;
}

std::string BundleCohomology::add_sym2FstarG(LesSolver& solver, Twist ab) const {
  const std::string id = twist_label("S2F*G", ab);
  if (solver.has(id)) return id;
  const auto sub = add_E(solver, ab);
  const auto mid = add_sym2FstarB(solver, ab);
  solver.add_object(id);
  solver.add_ses({"Sym2 F*B onto Sym2 F*G " + twist_text(ab), sub, mid, id, std::nullopt, std::nullopt});
  return id;
}

}  // namespace frobcoh
