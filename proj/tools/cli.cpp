#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "frobcoh/bundle_cohomology.hpp"
#include "frobcoh/certificate.hpp"
#include "frobcoh/error.hpp"

namespace frobcoh::cli {

namespace {

using nlohmann::json;

struct Config {
  std::uint32_t p = 2;
  int n = 3;
  std::string format = "text";
  int degree_cap = 32;
  unsigned threads = 0;
  int a = 0;
  int b = 0;
  std::vector<int> sweep{-8, 8};
  std::vector<int> arange{-8, 8};
  std::vector<int> brange{-8, 8};
  std::string out_path;
  std::vector<int> qs;
  std::string table;
};

struct CheckFailed {
  std::string message;
};

std::string twist_text(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

json bound_json(const DimInterval& d) {
  return {{"lower", d.lower}, {"upper", d.bounded() ? json(d.upper) : json(nullptr)}};
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ContainmentFailed:
    case ErrorKind::SideConditionFailed:
    case ErrorKind::InconsistentSequence:
      return 1;
    default:
      return 2;
  }
}

// h^i(Y, (a,b)) over a box, read from FROBCOH_CACHE_DIR when present.
std::vector<HRow> h_table(const CohomologyEngine& engine, Twist ar, Twist br, unsigned threads) {
  const char* dir = std::getenv("FROBCOH_CACHE_DIR");
  std::filesystem::path file;
  if (dir && *dir) {
    file = std::filesystem::path(dir) /
           ("hY_p" + std::to_string(engine.p()) + "_n" + std::to_string(engine.n()) + "_a" +
            std::to_string(ar.first) + "_" + std::to_string(ar.second) + "_b" + std::to_string(br.first) + "_" +
            std::to_string(br.second) + ".csv");
    std::ifstream in(file);
    if (in) {
      std::vector<HRow> rows;
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) {
        HRow r;
        char c1, c2, c3;
        std::istringstream ls(line);
        if (ls >> r.a >> c1 >> r.b >> c2 >> r.i >> c3 >> r.h) rows.push_back(r);
      }
      return rows;
    }
  }
  auto rows = engine.sweep_Y(ar, br, threads);
  if (!file.empty()) {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
      std::ofstream out(tmp);
      write_h_csv(out, rows);
    }
    std::filesystem::rename(tmp, file);
  }
  return rows;
}

Twist pair_of(const std::vector<int>& v, const char* name) {
  if (v.size() != 2 || v[0] > v[1]) {
    throw Error(ErrorKind::InvalidParams, std::string(name) + " needs two bounds LOW HIGH");
  }
  return {v[0], v[1]};
}

void cmd_lemma_ab(const Config& cfg, const CohomologyEngine& engine, Format format, std::ostream& out) {
  const auto box = pair_of(cfg.sweep, "--sweep");
  const auto rows = h_table(engine, box, box, cfg.threads);
  const int n = engine.n();
  std::int64_t bad1 = 0, bad2 = 0, bad3 = 0;
  for (const auto& r : rows) {
    if (r.i == 1 && r.h != 0) ++bad1;
    if (r.i > 0 && r.a >= -(n - 1) && r.b >= -(n - 1) && r.h != 0) ++bad2;
    if (r.i == 0 && std::min(r.a, r.b) < 0 && r.h != 0) ++bad3;
  }
  if (format == Format::Csv) {
    write_h_csv(out, rows);
  } else if (format == Format::Json) {
    json j = {{"box", {box.first, box.second}},
              {"rows", rows.size()},
              {"violations", {{"h1_vanishes", bad1}, {"higher_vanish_above", bad2}, {"h0_vanishes_below", bad3}}}};
    out << j.dump(2) << "\n";
  } else {
    const std::string range = "[" + std::to_string(box.first) + "," + std::to_string(box.second) + "]^2";
    out << "line bundle cohomology on Y, p=" << engine.p() << " n=" << n << ", twists " << range << ", "
        << rows.size() << " groups\n";
    out << "  h^1(O_Y(a,b)) = 0 everywhere: " << (bad1 ? "FAIL" : "ok") << " (" << bad1 << " violations)\n";
    out << "  h^i(O_Y(a,b)) = 0 for i > 0, a,b >= " << -(n - 1) << ": " << (bad2 ? "FAIL" : "ok") << " (" << bad2
        << " violations)\n";
    out << "  h^0(O_Y(a,b)) = 0 when min(a,b) < 0: " << (bad3 ? "FAIL" : "ok") << " (" << bad3 << " violations)\n";
  }
  if (bad1 + bad2 + bad3 > 0) throw CheckFailed{"vanishing pattern violated"};
}

void cmd_bcoker(const Config& cfg, const BundleCohomology& bundle, Format format, std::ostream& out) {
  const auto w = bundle.h1_FstarB({cfg.a, cfg.b});
  const auto h0 = bundle.h0_FstarB({cfg.a, cfg.b});
  if (format == Format::Json) {
    out << json{{"twist", {cfg.a, cfg.b}}, {"h1", w.value}, {"h0", h0},
                {"target_dim", w.target_dim}, {"image_dim", w.image.dim()}, {"shortcut", w.shortcut}}
               .dump(2)
        << "\n";
  } else if (format == Format::Csv) {
    out << "a,b,h0,h1,target_dim,image_dim\n"
        << cfg.a << "," << cfg.b << "," << h0 << "," << w.value << "," << w.target_dim << "," << w.image.dim() << "\n";
  } else {
    out << "h^1(F*B" << twist_text(cfg.a, cfg.b) << ") = coker eta1 on H^0 = " << w.target_dim << " - "
        << w.image.dim() << " = " << w.value << (w.shortcut ? " (vanishing shortcut applies)" : "") << "\n";
    out << "h^0(F*B" << twist_text(cfg.a, cfg.b) << ") = " << h0 << "\n";
  }
}

void cmd_bg(const Config& cfg, const BundleCohomology& bundle, Format format, std::ostream& out) {
  const auto g = bundle.h1_FstarG({cfg.a, cfg.b});
  if (format == Format::Json) {
    json checks = json::array();
    for (const auto& c : g.checks) checks.push_back({{"name", c.name}, {"value", c.value}});
    out << json{{"twist", {cfg.a, cfg.b}}, {"h1", bound_json(g.value)},
                {"side_conditions_hold", g.side_conditions_hold}, {"checks", checks}}
               .dump(2)
        << "\n";
  } else if (format == Format::Csv) {
    out << "a,b,lower,upper,side_conditions_hold\n"
        << cfg.a << "," << cfg.b << "," << g.value.lower << "," << (g.value.bounded() ? std::to_string(g.value.upper) : "")
        << "," << (g.side_conditions_hold ? "true" : "false") << "\n";
  } else {
    for (const auto& c : g.checks) out << "  " << c.name << " = " << c.value << "\n";
    out << "h^1(F*G" << twist_text(cfg.a, cfg.b) << ") in " << g.value.to_string()
        << (g.side_conditions_hold ? " (equal to h^1(F*B))" : " (side conditions fail, solver interval)") << "\n";
  }
}

void cmd_hfb(const Config& cfg, const CohomologyEngine& engine, const BundleCohomology& bundle, Format format,
             std::ostream& out) {
  const Twist ab{cfg.a, cfg.b};
  const auto w = bundle.h1_sym2FstarB_lower(ab);
  LesSolver solver(engine);
  const auto solved = solver.query(bundle.add_sym2FstarB(solver, ab), 1);
  const auto refined = bundle.sym2_refined(ab);
  if (format == Format::Json) {
    out << json{{"twist", {cfg.a, cfg.b}},
                {"target_dim", w.target_dim},
                {"im_eta1", w.im_eta1.dim()},
                {"im_eta2", w.im_eta2.dim()},
                {"d", w.d},
                {"solver", bound_json(solved)},
                {"quotient_map_coker", refined.coker_on_h0},
                {"refined", bound_json(refined.h1_sym2FstarB)},
                {"solver_lower_exceeds_d", solved.lower > w.d}}
               .dump(2)
        << "\n";
  } else if (format == Format::Csv) {
    out << "a,b,target_dim,im_eta1,im_eta2,d,solver_lower,solver_upper,quotient_map_coker\n"
        << cfg.a << "," << cfg.b << "," << w.target_dim << "," << w.im_eta1.dim() << "," << w.im_eta2.dim() << ","
        << w.d << "," << solved.lower << "," << (solved.bounded() ? std::to_string(solved.upper) : "") << ","
        << refined.coker_on_h0 << "\n";
  } else {
    const auto target = twist_text(cfg.a, cfg.b + 2 * static_cast<int>(engine.p()));
    out << "im eta2 in im eta1 inside H^0(O_Y" << target << "), dim " << w.target_dim << ": ok\n";
    out << "h^1(Sym^2 F*B" << twist_text(cfg.a, cfg.b) << ") >= d = " << w.im_eta1.dim() << " - "
        << w.im_eta2.dim() << " = " << w.d << "\n";
    out << "  solver interval " << solved.to_string() << (solved.lower > w.d ? " (lower end exceeds d)" : "") << "\n";
    out << "  quotient map on sections: coker " << refined.coker_on_h0 << ", refined interval "
        << refined.h1_sym2FstarB.to_string() << "\n";
  }
}

void cmd_cm_window(const Config& cfg, const PipelineOptions& options, Format format, std::ostream& out) {
  std::vector<int> qs = cfg.qs.empty() ? std::vector<int>{-2, -1, 0, 1} : cfg.qs;
  std::vector<CmEntry> all;
  for (int q : qs) {
    auto row = cm_window(cfg.p, cfg.n, q, options);
    all.insert(all.end(), row.begin(), row.end());
  }
  int nonzero = 0;
  for (const auto& e : all) nonzero += e.h.lower > 0 ? 1 : 0;
  if (format == Format::Json) {
    json rows = json::array();
    for (const auto& e : all) rows.push_back({{"q", e.q}, {"i", e.i}, {"h", bound_json(e.h)}, {"source", e.source}});
    out << json{{"entries", rows}, {"certified_nonzero", nonzero}}.dump(2) << "\n";
  } else if (format == Format::Csv) {
    out << "q,i,lower,upper,source\n";
    for (const auto& e : all) {
      out << e.q << "," << e.i << "," << e.h.lower << "," << (e.h.bounded() ? std::to_string(e.h.upper) : "") << ",\""
          << e.source << "\"\n";
    }
  } else {
    out << "h^i(X, L^q), L = omega_X^-1, 0 < i < dim X\n";
    for (const auto& e : all) {
      out << "  q=" << e.q << " i=" << e.i << "  " << e.h.to_string() << "  " << e.source << "\n";
    }
    out << "certified nonzero entries: " << nonzero << "\n";
  }
  if (nonzero == 0) throw CheckFailed{"no entry of the window is certified nonzero"};
}

void cmd_table(const Config& cfg, const CohomologyEngine& engine, Format format, std::ostream& out) {
  if (cfg.table != "hY") throw Error(ErrorKind::InvalidParams, "unknown table " + cfg.table);
  const auto rows = h_table(engine, pair_of(cfg.arange, "--arange"), pair_of(cfg.brange, "--brange"), cfg.threads);
  if (format == Format::Json) {
    json j = json::array();
    for (const auto& r : rows) j.push_back({r.a, r.b, r.i, r.h});
    out << j.dump() << "\n";
  } else {
    write_h_csv(out, rows);
  }
}

void emit_certificate(const Certificate& cert, Format format, const std::string& path, std::ostream& out) {
  const auto bytes = emit(cert, format);
  if (path.empty()) {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidParams, "cannot write " + path);
  file << bytes;
  out << "wrote " << path << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Cohomology computations on the incidence variety and its Frobenius-twisted bundles", "frobcoh"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--p", cfg.p, "characteristic");
  app.add_option("--n", cfg.n, "dimension of the projective factors");
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--degree-cap", cfg.degree_cap, "largest |a|, |b| the ring will build");
  app.add_option("--threads", cfg.threads, "worker threads for sweeps (0: hardware)");

  auto* ab = app.add_subcommand("lemma-ab", "vanishing pattern of h^i(O_Y(a,b)) over a box");
  ab->add_option("--sweep", cfg.sweep, "LOW HIGH")->expected(2);
  auto add_twist = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a)->required();
    sub->add_option("--b", cfg.b)->required();
  };
  auto* bcoker = app.add_subcommand("lemma-bcoker", "h^1(F*B(a,b)) as the cokernel of eta1 on sections");
  add_twist(bcoker);
  auto* bg = app.add_subcommand("lemma-bg", "h^1(F*G(a,b))");
  add_twist(bg);
  auto* hfb = app.add_subcommand("lemma-hfb", "lower bound for h^1(Sym^2 F*B(a,b))");
  add_twist(hfb);
  auto* kod = app.add_subcommand("thm-kod-fails", "certificate for h^5(X, omega_X^2) != 0");
  kod->add_option("--out", cfg.out_path, "write the certificate here instead of stdout");
  auto* main2 = app.add_subcommand("certify-main2", "cone certificate for Z = C_a(X, omega_X^-1)");
  main2->add_option("--out", cfg.out_path, "write the certificate here instead of stdout");
  auto* cmw = app.add_subcommand("cm-window", "h^i(X, L^q) for q in -2..1");
  cmw->add_option("--q", cfg.qs, "restrict to these q");
  auto* table = app.add_subcommand("table", "raw tables");
  table->add_option("kind", cfg.table, "hY")->required();
  table->add_option("--arange", cfg.arange, "LOW HIGH")->expected(2);
  table->add_option("--brange", cfg.brange, "LOW HIGH")->expected(2);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    (void)RingParams::make(cfg.p, cfg.n);
    const auto format = parse_format(cfg.format);
    PipelineOptions options;
    options.degree_cap = cfg.degree_cap;
    CohomologyEngine engine(cfg.p, cfg.n, cfg.degree_cap);
    BundleCohomology bundle(engine, options.bundle);

    if (ab->parsed()) {
      cmd_lemma_ab(cfg, engine, format, out);
    } else if (bcoker->parsed()) {
      cmd_bcoker(cfg, bundle, format, out);
    } else if (bg->parsed()) {
      cmd_bg(cfg, bundle, format, out);
    } else if (hfb->parsed()) {
      cmd_hfb(cfg, engine, bundle, format, out);
    } else if (kod->parsed()) {
      const auto cert = theorem_kod_fails(cfg.p, cfg.n, options);
      emit_certificate(cert, format, cfg.out_path, out);
      if (!cert.verdict.at("h5_nonvanishing").get<bool>()) {
        throw CheckFailed{"h^5(X, omega_X^2) != 0 is not certified: lower bound " +
                          std::to_string(cert.node("thm.h5").bounds.at("h5").lower)};
      }
    } else if (main2->parsed()) {
      const auto report = cone_certificate(cfg.p, cfg.n, options);
      emit_certificate(report.certificate, format, cfg.out_path, out);
      if (!report.not_cm) throw CheckFailed{"not-CM verdict is not established"};
    } else if (cmw->parsed()) {
      cmd_cm_window(cfg, options, format, out);
    } else if (table->parsed()) {
      cmd_table(cfg, engine, format, out);
    }
  } catch (const CheckFailed& f) {
    err << "check failed: " << f.message << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}

}  // namespace frobcoh::cli
