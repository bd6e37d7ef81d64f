#include "frobcoh/certificate.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

#include "frobcoh/bigraded_ring.hpp"
#include "frobcoh/error.hpp"
#include "frobcoh/picard.hpp"

namespace frobcoh {

namespace {

using nlohmann::json;

struct Payload {
  std::map<std::string, std::int64_t> dims;
  std::map<std::string, DimInterval> bounds;
  bool holds = true;
};

std::string twist_text(Twist ab) {
  return "(" + std::to_string(ab.first) + "," + std::to_string(ab.second) + ")";
}

json bound_json(const DimInterval& d) {
  return {{"lower", d.lower}, {"upper", d.bounded() ? json(d.upper) : json(nullptr)}};
}

DimInterval bound_from_json(const json& j) {
  DimInterval d;
  d.lower = j.at("lower").get<std::int64_t>();
  d.upper = j.at("upper").is_null() ? kUnbounded : j.at("upper").get<std::int64_t>();
  return d;
}

json recipe(const std::string& op, std::uint32_t p, int n) { return {{"op", op}, {"p", p}, {"n", n}}; }

json recipe(const std::string& op, std::uint32_t p, int n, Twist ab) {
  auto r = recipe(op, p, n);
  r["twist"] = {ab.first, ab.second};
  return r;
}

class Context {
 public:
  explicit Context(const PipelineOptions& options) : options_(options) {}

  const CohomologyEngine& engine(std::uint32_t p, int n) {
    auto& slot = engines_[{p, n}];
    if (!slot) slot = std::make_unique<CohomologyEngine>(p, n, options_.degree_cap);
    return *slot;
  }

  BundleCohomology bundle(std::uint32_t p, int n) { return BundleCohomology(engine(p, n), options_.bundle); }

  Payload compute(const json& r) {
    const auto op = r.at("op").get<std::string>();
    const auto p = r.at("p").get<std::uint32_t>();
    const auto n = r.at("n").get<int>();
    Twist ab{0, 0};
    if (r.contains("twist")) ab = {r["twist"][0].get<int>(), r["twist"][1].get<int>()};
    Payload out;
    if (op == "h_Y") {
      const auto h = engine(p, n).h_Y(ab, r.at("degree").get<int>());
      out.dims["h"] = h;
      out.holds = h == 0;
    } else if (op == "image_difference") {
      auto b = bundle(p, n);
      const auto w = b.h1_sym2FstarB_lower(ab);
      LesSolver solver(engine(p, n));
      const auto solved = solver.query(b.add_sym2FstarB(solver, ab), 1);
      out.dims["target"] = static_cast<std::int64_t>(w.target_dim);
      out.dims["im_eta1"] = static_cast<std::int64_t>(w.im_eta1.dim());
      out.dims["im_eta2"] = static_cast<std::int64_t>(w.im_eta2.dim());
      out.dims["d"] = w.d;
      out.dims["solver_lower_exceeds_d"] = solved.lower > w.d ? 1 : 0;
      out.bounds["h1_sym2FstarB"] = DimInterval{w.d, kUnbounded};
      out.bounds["solver_h1_sym2FstarB"] = solved;
    } else if (op == "h1_E") {
      const Twist shifted{ab.first - static_cast<int>(p), ab.second};
      const auto v = bundle(p, n).h1_FstarB(shifted).value;
      out.dims["h1"] = v;
      out.holds = v == 0;
    } else if (op == "sym_quotient") {
      const auto s = bundle(p, n).sym2_refined(ab);
      out.dims["h0_Fcal"] = s.h0_Fcal;
      out.dims["h0_target"] = s.h0_target;
      out.dims["rank"] = s.rank_on_h0;
      out.dims["coker"] = s.coker_on_h0;
      out.bounds["h1_sym2FstarB"] = s.h1_sym2FstarB;
      out.bounds["h1_sym2FstarG"] = s.h1_sym2FstarG;
    } else if (op == "fstarg_route") {
      const auto g = bundle(p, n).h1_FstarG(ab);
      for (const auto& c : g.checks) out.dims["h" + std::to_string(c.degree) + "_shift"] = c.value;
      out.bounds["h1_FstarG"] = g.value;
      out.holds = g.side_conditions_hold && g.value.upper == 0;
    } else if (op == "cone_dim") {
      out.dims["dim_X"] = dim_X(n);
      out.dims["dim_Z"] = dim_X(n) + 1;
    } else {
      throw Error(ErrorKind::InvalidParams, "unknown recipe " + op);
    }
    return out;
  }

 private:
  PipelineOptions options_;
  std::map<std::pair<std::uint32_t, int>, std::unique_ptr<CohomologyEngine>> engines_;
};

CertificateNode computed(Context& ctx, std::string id, std::string statement, Anchor anchor,
                         std::vector<std::string> inputs, json r) {
  CertificateNode node;
  node.id = std::move(id);
  node.status = NodeStatus::Computed;
  node.statement = std::move(statement);
  node.anchor = std::move(anchor);
  node.inputs = std::move(inputs);
  auto payload = ctx.compute(r);
  node.dims = std::move(payload.dims);
  node.bounds = std::move(payload.bounds);
  node.holds = payload.holds;
  node.recipe = std::move(r);
  return node;
}

CertificateNode rule(std::string id, std::string statement, Anchor anchor, std::vector<std::string> inputs,
                     bool holds = true) {
  CertificateNode node;
  node.id = std::move(id);
  node.status = NodeStatus::Rule;
  node.statement = std::move(statement);
  node.anchor = std::move(anchor);
  node.inputs = std::move(inputs);
  node.holds = holds;
  return node;
}

void append_theorem(Context& ctx, Certificate& cert) {
  const auto p = cert.p;
  const int n = cert.n;
  const int pp = static_cast<int>(p);
  const Twist ab{n - pp, n + pp};
  const Twist low{ab.first - 2 * pp, ab.second};
  const Twist shifted{ab.first - pp, ab.second};
  const std::string at = twist_text(ab);

  const auto omega = omega_X(p, n);
  auto om = rule("omega_X", "omega_X = " + omega.value.to_string() + " from determinants of the defining sequences",
                 {"canonical class of X", "omega_X = (p-n, p(n-2)-n; -n+1)"}, {},
                 omega.value == omega_X_closed_form(p, n));
  om.dims = {{"a", omega.value.a}, {"b", omega.value.b}, {"c", omega.value.c}, {"dim_X", omega.dim_X},
             {"dim_Y", omega.dim_Y}};
  cert.nodes.push_back(std::move(om));

  cert.nodes.push_back(rule("serre_X", "h^5(X, omega_X^2) = h^1(X, omega_X^-1)",
                            {"Serre duality on X", "h^i(X, M) = h^(dim X - i)(X, M^-1 (x) omega_X)"},
                            {"omega_X"}, dim_X(n) == 6));
  cert.nodes.back().dims = {{"dim_X", dim_X(n)}};

  const auto anti = -omega.value;
  cert.nodes.push_back(rule("project_to_Y",
                            "h^1(X, omega_X^-1) = h^1(Y, O_Y" + twist_text({static_cast<int>(anti.a),
                                                                            static_cast<int>(anti.b)}) +
                                " (x) Sym^2 F*G')",
                            {"projection to Y", "pi_* O_pi(c) = Sym^c F*G' and R^j pi_* O_pi(c) = 0 for j > 0, c >= 0"},
                            {"omega_X"}, anti.c == 2));
  cert.nodes.back().dims = {{"c", anti.c}};

  cert.nodes.push_back(rule("twist_absorb", "Sym^2 F*G' = Sym^2 F*G (x) O(0,2p), so the group is h^1(Y, Sym^2 F*G" + at + ")",
                            {"twist absorption", "F*G' = F*G (x) O(0,p)"}, {"project_to_Y"},
                            anti.a == ab.first && anti.b + 2 * pp == ab.second));
  cert.nodes.back().dims = {{"a", ab.first}, {"b", ab.second}};

  const std::string h1 = "side.h1(O_Y" + at + ")";
  const std::string h2 = "side.h2(O_Y" + at + ")";
  cert.nodes.push_back(computed(ctx, h1, "h^1(O_Y" + at + ") = 0", {"vanishing on Y", "h^1(O_Y(a,b)) = 0"}, {},
                                [&] { auto r = recipe("h_Y", p, n, ab); r["degree"] = 1; return r; }()));
  cert.nodes.push_back(computed(ctx, h2, "h^2(O_Y" + at + ") = 0", {"vanishing on Y", "h^2(O_Y(a,b)) = 0"}, {},
                                [&] { auto r = recipe("h_Y", p, n, ab); r["degree"] = 2; return r; }()));

  cert.nodes.push_back(computed(
      ctx, "image_difference",
      "im eta2 lies in im eta1 inside H^0(O_Y(a,b+2p)) and h^1(Sym^2 F*B" + at + ") >= dim im eta1 - dim im eta2",
      {"image-difference bound", "h^1(Sym^2 F*B(a,b)) >= dim im eta1 - dim im eta2"}, {h1, h2},
      recipe("image_difference", p, n, ab)));

  cert.nodes.push_back(computed(
      ctx, "sym_quotient",
      "coker of H^0(Fcal" + at + ") -> H^0(F*B" + twist_text({ab.first, ab.second + pp}) +
          ") injects into h^1(Sym^2 F*B" + at + ")",
      {"quotient map on sections", "e_i e_j -> e_i y_j^p + e_j y_i^p"}, {}, recipe("sym_quotient", p, n, ab)));

  const std::string hlow = "side.h1(O_Y" + twist_text(low) + ")";
  cert.nodes.push_back(computed(ctx, hlow, "h^1(O_Y" + twist_text(low) + ") = 0",
                                {"vanishing on Y", "h^1(O_Y(a-2p,b)) = 0"}, {},
                                [&] { auto r = recipe("h_Y", p, n, low); r["degree"] = 1; return r; }()));
  cert.nodes.push_back(computed(ctx, "h1_E", "h^1(E" + at + ") = h^1(F*B" + twist_text(shifted) + ") = 0",
                                {"E as a twist of F*B", "E(a,b) = F*B(a-p,b)"}, {}, recipe("h1_E", p, n, ab)));
  cert.nodes.push_back(rule("injection_E", "h^1(Sym^2 F*B" + at + ") injects into h^1(Sym^2 F*G" + at + ")",
                            {"injection through E", "0 -> E -> Sym^2 F*B -> Sym^2 F*G -> 0"}, {hlow, "h1_E"},
                            ab.first < pp || ab.second < -pp));
  cert.nodes.back().dims = {{"a", ab.first}, {"p", pp}};

  cert.nodes.push_back(computed(ctx, "fstarg_route",
                                "h^1(F*G" + twist_text(shifted) + ") = 0 from vanishing of h^1, h^2 of O_Y" +
                                    twist_text({shifted.first - pp, shifted.second}),
                                {"route through F*G (diagnostic)", "h^1(F*G(a,b)) = coker eta1 when h^1, h^2 of O_Y(a-p,b) vanish"},
                                {}, recipe("fstarg_route", p, n, shifted)));

  const auto& diff = cert.node("image_difference");
  const auto& quot = cert.node("sym_quotient");
  const std::int64_t d = diff.dims.at("d");
  DimInterval h5 = quot.bounds.at("h1_sym2FstarG");
  h5.lower = std::max(h5.lower, d);
  auto thm = rule("thm.h5", "h^5(X, omega_X^2) >= 1",
                  {"nonvanishing of H^5(X, omega_X^2)", "H^5(X, omega_X^2) != 0"},
                  {"serre_X", "project_to_Y", "twist_absorb", "injection_E", "image_difference", "sym_quotient"},
                  h5.lower >= 1);
  thm.dims = {{"lower_from_d", d}, {"lower_from_quotient", quot.dims.at("coker")}};
  thm.bounds = {{"h5", h5}};
  cert.nodes.push_back(std::move(thm));

  const auto solved = diff.bounds.at("solver_h1_sym2FstarB");
  if (solved.lower > d) {
    cert.notes.push_back("twist " + at + ": solver interval " + solved.to_string() +
                         " for h^1(Sym^2 F*B) lies above the image-difference value d = " + std::to_string(d));
  }
  if (d == 0) {
    cert.notes.push_back("twist " + at + ": im eta2 = im eta1, the image-difference bound is 0");
  }
  if (!cert.node("fstarg_route").holds) {
    cert.notes.push_back("h^1(E) = 0 is certified through E = F*B(a-p,b); the F*G route does not apply at " +
                         twist_text(shifted));
  }
}

void append_kodaira(Certificate& cert) {
  const auto w = fano_witness(cert.p, cert.n);
  auto fano = rule("fano", "-omega_X = " + w.anticanonical.to_string() + " lies in the very ample family (1,1;q), q > 0",
                   {"Fano witness", "-omega_X = (1,1;q), q > 0"}, {"omega_X"}, w.holds);
  fano.citation = kVeryAmpleCitation;
  fano.dims = {{"a", w.anticanonical.a}, {"b", w.anticanonical.b}, {"c", w.anticanonical.c}};
  cert.nodes.push_back(std::move(fano));
  const int i = dim_X(cert.n) - 1;
  auto k = rule("kodaira", "L = omega_X^-2 is ample and h^" + std::to_string(i) + "(X, L^-1) != 0 with " +
                               std::to_string(i) + " < dim X",
                {"Kodaira vanishing violation", "H^i(X, L^-1) != 0 for some i < dim X"}, {"fano", "thm.h5"},
                i < dim_X(cert.n));
  k.dims = {{"i", i}, {"dim_X", dim_X(cert.n)}, {"power", 2}};
  cert.nodes.push_back(std::move(k));
}

void check_theorem_params(std::uint32_t p, int n) {
  (void)RingParams::make(p, n);
  if (n != 3 || p > static_cast<std::uint32_t>(n)) {
    throw Error(ErrorKind::HypothesisFailed,
                "need 2 <= p <= n = 3, got p = " + std::to_string(p) + ", n = " + std::to_string(n));
  }
}

void require_fano(std::uint32_t p, int n) {
  (void)RingParams::make(p, n);
  if (!fano_witness(p, n).holds) {
    throw Error(ErrorKind::HypothesisFailed, "-omega_X = " + fano_witness(p, n).anticanonical.to_string() +
                                                 " is not of the form (1,1;q), q > 0");
  }
}

// h^i(Y, Sym^2 F*G(ab)) for every degree, with the sections-level rank fixed.
std::vector<DimInterval> sym2G_column(Context& ctx, std::uint32_t p, int n, Twist ab) {
  auto b = ctx.bundle(p, n);
  LesSolver solver(ctx.engine(p, n));
  const auto id = b.add_sym2FstarG(solver, ab);
  b.refine_sym2(solver, ab);
  std::vector<DimInterval> out;
  for (int i = 0; i <= solver.top_degree(); ++i) out.push_back(solver.query(id, i));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_dims(const CertificateNode& node) {
  std::string out;
  for (const auto& [k, v] : node.dims) out += (out.empty() ? "" : ";") + k + "=" + std::to_string(v);
  for (const auto& [k, v] : node.bounds) out += (out.empty() ? "" : ";") + k + "=" + v.to_string();
  return out;
}

}  // namespace

std::string_view to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Computed: return "COMPUTED";
    case NodeStatus::Rule: return "RULE";
    case NodeStatus::Assumed: return "ASSUMED";
  }
  return "?";
}

const CertificateNode& Certificate::node(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return n;
  }
  throw Error(ErrorKind::InvalidParams, "certificate has no node " + id);
}

bool Certificate::has(const std::string& id) const {
  return std::any_of(nodes.begin(), nodes.end(), [&](const CertificateNode& n) { return n.id == id; });
}

nlohmann::json Certificate::to_json() const {
  json out;
  out["kind"] = kind;
  out["parameters"] = {{"p", p}, {"n", n}};
  out["verdict"] = verdict;
  out["notes"] = notes;
  out["nodes"] = json::array();
  for (const auto& node : nodes) {
    json j;
    j["id"] = node.id;
    j["status"] = std::string(to_string(node.status));
    j["statement"] = node.statement;
    j["anchor"] = {{"location", node.anchor.location}, {"quote", node.anchor.quote}};
    j["inputs"] = node.inputs;
    j["holds"] = node.holds;
    json dims = json::object();
    for (const auto& [k, v] : node.dims) dims[k] = v;
    json bounds = json::object();
    for (const auto& [k, v] : node.bounds) bounds[k] = bound_json(v);
    j["payload"] = {{"dims", dims}, {"bounds", bounds}};
    if (!node.citation.empty()) j["citation"] = node.citation;
    if (!node.recipe.is_null()) j["recipe"] = node.recipe;
    out["nodes"].push_back(std::move(j));
  }
  return out;
}

std::map<std::string, bool> evaluate(const Certificate& cert, bool drop_assumed) {
  std::map<std::string, const CertificateNode*> by_id;
  for (const auto& node : cert.nodes) {
    if (!by_id.emplace(node.id, &node).second) {
      throw Error(ErrorKind::InvalidParams, "duplicate node " + node.id);
    }
  }
  std::map<std::string, int> state;
  std::map<std::string, bool> out;
  std::function<bool(const std::string&)> visit = [&](const std::string& id) -> bool {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorKind::InvalidParams, "dangling input " + id);
    if (state[id] == 2) return out[id];
    if (state[id] == 1) throw Error(ErrorKind::InvalidParams, "cycle through " + id);
    state[id] = 1;
    const auto& node = *it->second;
    bool ok = node.holds && !(drop_assumed && node.status == NodeStatus::Assumed);
    for (const auto& in : node.inputs) ok = visit(in) && ok;
    state[id] = 2;
    return out[id] = ok;
  };
  for (const auto& node : cert.nodes) visit(node.id);
  return out;
}

Certificate theorem_kod_fails(std::uint32_t p, int n, const PipelineOptions& options) {
  check_theorem_params(p, n);
  Context ctx(options);
  Certificate cert;
  cert.kind = "theorem_kod_fails";
  cert.p = p;
  cert.n = n;
  append_theorem(ctx, cert);
  const auto eval = evaluate(cert);
  const auto& thm = cert.node("thm.h5");
  const bool by_d = cert.node("image_difference").dims.at("d") >= 1;
  cert.verdict = {{"h5_nonvanishing", eval.at("thm.h5")},
                  {"h5", bound_json(thm.bounds.at("h5"))},
                  {"route", !eval.at("thm.h5") ? "none" : (by_d ? "image_difference" : "sym_quotient")}};
  return cert;
}

Certificate kodaira_violation(std::uint32_t p, int n, const PipelineOptions& options) {
  require_fano(p, n);
  check_theorem_params(p, n);
  Context ctx(options);
  Certificate cert;
  cert.kind = "kodaira_violation";
  cert.p = p;
  cert.n = n;
  append_theorem(ctx, cert);
  append_kodaira(cert);
  const auto eval = evaluate(cert);
  cert.verdict = {{"violation", eval.at("kodaira")},
                  {"i", cert.node("kodaira").dims.at("i")},
                  {"h5", bound_json(cert.node("thm.h5").bounds.at("h5"))}};
  return cert;
}

ConeReport cone_certificate(std::uint32_t p, int n, const PipelineOptions& options) {
  require_fano(p, n);
  check_theorem_params(p, n);
  Context ctx(options);
  Certificate cert;
  cert.kind = "cone_certificate";
  cert.p = p;
  cert.n = n;
  append_theorem(ctx, cert);
  append_kodaira(cert);

  cert.nodes.push_back(computed(ctx, "cone_dim", "dim Z = dim X + 1", {"affine cone", "Z = C_a(X, omega_X^-1)"}, {},
                                recipe("cone_dim", p, n)));
  const auto omega = omega_X(p, n).value;
  const auto anti = fano_witness(p, n).anticanonical;
  auto index = rule("index", "omega_X = L^-1 with L = omega_X^-1, so K_Z is Cartier of index 1",
                    {"index of K_Z", "omega_X = L^-r gives index at most r"}, {"omega_X", "fano"},
                    omega + anti == PicClass{});
  index.dims = {{"r", 1}};
  cert.nodes.push_back(std::move(index));
  cert.nodes.push_back(rule("omega_Z_line_bundle", "omega_Z is a line bundle",
                            {"index of K_Z", "index 1 means omega_Z is invertible"}, {"index"}));
  const int i = dim_X(n) - 1;
  auto not_cm = rule("not_cm", "Z is not Cohen-Macaulay: h^" + std::to_string(i) + "(X, L^-2) != 0 with 0 < " +
                                   std::to_string(i) + " < dim X",
                     {"cone CM criterion", "Z is CM iff H^i(X, L^q) = 0 for all q and 0 < i < dim X"},
                     {"kodaira", "cone_dim"}, 0 < i && i < dim_X(n));
  not_cm.dims = {{"i", i}, {"q", -2}, {"power", 2}};
  not_cm.bounds = {{"witness", cert.node("thm.h5").bounds.at("h5")}};
  cert.nodes.push_back(std::move(not_cm));
  CertificateNode canonical;
  canonical.id = "canonical";
  canonical.status = NodeStatus::Assumed;
  canonical.statement = "Z has canonical singularities";
  canonical.anchor = {"klt criterion for cones", "X Fano with K_Z Cartier of index 1 gives canonical singularities"};
  canonical.inputs = {"index", "fano"};
  canonical.citation = "klt criterion for affine cones over Fano varieties (literature result, not machine-checked)";
  cert.nodes.push_back(std::move(canonical));
  cert.notes.push_back("the CM criterion quantifies over every q; only the violation direction is certified");

  const auto eval = evaluate(cert);
  ConeReport report;
  report.dim_Z = static_cast<int>(cert.node("cone_dim").dims.at("dim_Z"));
  report.not_cm = eval.at("not_cm");
  report.witness_i = i;
  report.witness_q = -2;
  report.witness_power = 2;
  report.witness_bound = cert.node("thm.h5").bounds.at("h5");
  report.index = static_cast<int>(cert.node("index").dims.at("r"));
  report.omega_Z_line_bundle = eval.at("omega_Z_line_bundle");
  report.canonical = eval.at("canonical");
  for (const auto& node : cert.nodes) {
    if (node.status == NodeStatus::Assumed) report.assumptions.push_back(node.id + ": " + node.citation);
  }
  cert.verdict = {
      {"dim_Z", report.dim_Z},
      {"index", report.index},
      {"omega_Z_line_bundle", report.omega_Z_line_bundle},
      {"not_cm",
       {{"established", report.not_cm},
        {"witness", {{"i", i}, {"q", -2}, {"power", 2}, {"h", bound_json(report.witness_bound)}}}}},
      {"canonical", {{"holds", report.canonical}, {"status", "ASSUMED"}}},
      {"cm_for_all_q", "not checkable"}};
  report.certificate = std::move(cert);
  return report;
}

std::vector<CmEntry> cm_window(std::uint32_t p, int n, int q, const PipelineOptions& options) {
  if (q < -2 || q > 1) {
    throw Error(ErrorKind::WindowExceeded, "q = " + std::to_string(q) +
                                               " is outside the computable window {-2,-1,0,1}; it needs Sym^k with k >= 3");
  }
  require_fano(p, n);
  Context ctx(options);
  const auto anti = fano_witness(p, n).anticanonical;
  if (anti.c != 2) throw Error(ErrorKind::WindowExceeded, "L restricts to O_pi(c) with c != 2");
  const int dx = dim_X(n);
  const int dy = dim_Y(n);
  const Twist ab{static_cast<int>(anti.a), static_cast<int>(anti.b) + 2 * static_cast<int>(p)};
  // Serre duality: h^i(X, L^q) = h^(dx-i)(X, L^(-1-q)) since omega_X = L^-1.
  const bool dual = q < 0;
  const int base = dual ? -1 - q : q;
  std::vector<DimInterval> column;
  std::string source;
  if (base == 0) {
    for (int i = 0; i <= dy; ++i) column.push_back(DimInterval::exactly(ctx.engine(p, n).h_Y({0, 0}, i)));
    source = "h^j(Y, O_Y)";
  } else {
    column = sym2G_column(ctx, p, n, ab);
    source = "h^j(Y, Sym^2 F*G" + twist_text(ab) + ")";
  }
  std::vector<CmEntry> out;
  for (int i = 1; i < dx; ++i) {
    const int j = dual ? dx - i : i;
    CmEntry e;
    e.q = q;
    e.i = i;
    e.h = j <= dy ? column[static_cast<std::size_t>(j)] : DimInterval::exactly(0);
    e.source = source + ", j = " + std::to_string(j) + (dual ? " (Serre dual)" : "");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> replay(const nlohmann::json& cert, const PipelineOptions& options) {
  Context ctx(options);
  std::vector<std::string> out;
  for (const auto& node : cert.at("nodes")) {
    if (node.at("status") != "COMPUTED") continue;
    const auto id = node.at("id").get<std::string>();
    if (!node.contains("recipe")) {
      out.push_back(id + ": no recipe");
      continue;
    }
    const auto payload = ctx.compute(node["recipe"]);
    std::map<std::string, std::int64_t> dims;
    for (const auto& [k, v] : node["payload"]["dims"].items()) dims[k] = v.get<std::int64_t>();
    std::map<std::string, DimInterval> bounds;
    for (const auto& [k, v] : node["payload"]["bounds"].items()) bounds[k] = bound_from_json(v);
    if (dims != payload.dims) out.push_back(id + ": dims differ");
    if (bounds != payload.bounds) out.push_back(id + ": bounds differ");
    if (node.at("holds").get<bool>() != payload.holds) out.push_back(id + ": holds differs");
  }
  return out;
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw Error(ErrorKind::InvalidParams, "unknown format " + std::string(name));
}

std::string emit(const Certificate& cert, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << cert.to_json().dump(2) << "\n";
      break;
    case Format::Csv:
      os << "id,status,holds,statement,location,quote,inputs,payload\n";
      for (const auto& node : cert.nodes) {
        std::string inputs;
        for (const auto& in : node.inputs) inputs += (inputs.empty() ? "" : ";") + in;
        os << csv_field(node.id) << "," << to_string(node.status) << "," << (node.holds ? "true" : "false") << ","
           << csv_field(node.statement) << "," << csv_field(node.anchor.location) << ","
           << csv_field(node.anchor.quote) << "," << csv_field(inputs) << "," << csv_field(join_dims(node)) << "\n";
      }
      break;
    case Format::Text:
      os << cert.kind << " p=" << cert.p << " n=" << cert.n << "\n";
      for (const auto& node : cert.nodes) {
        os << "  [" << to_string(node.status) << "] " << node.id << (node.holds ? "" : " (fails)") << ": "
           << node.statement;
        const auto payload = join_dims(node);
        if (!payload.empty()) os << "  {" << payload << "}";
        os << "\n";
      }
      for (const auto& note : cert.notes) os << "  note: " << note << "\n";
      os << "verdict: " << cert.verdict.dump() << "\n";
      break;
  }
  return os.str();
}

}  // namespace frobcoh
