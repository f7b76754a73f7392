#include "nugap/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>

#include "nugap/errors.hpp"
#include "nugap/generate.hpp"
#include "nugap/io.hpp"

namespace nugap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CommonFlags {
  int grid = 4096;
  double tol_invertible = -1.0;  // unset
  std::string plot_path;
  bool json_only = false;
  std::uint64_t seed = 0;

  NumericConfig config() const {
    NumericConfig cfg;
    cfg.grid_size = grid;
    if (tol_invertible > 0.0) cfg.tol_invertible = tol_invertible;
    return cfg;
  }
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_seed) {
  cmd->add_option("--grid", flags.grid, "circle grid size (power of two)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-invertible", flags.tol_invertible,
                  "modulus floor certifying invertibility");
  cmd->add_option("--plot", flags.plot_path, "write plot data CSV here");
  cmd->add_flag("--json-only", flags.json_only,
                "suppress everything except the result document");
  if (with_seed)
    cmd->add_option("--seed", flags.seed, "campaign seed");
}

void validate_grid(const CommonFlags& flags) {
  if (flags.grid < 64 || (flags.grid & (flags.grid - 1)) != 0)
    throw ParseError("--grid must be a power of two >= 64", "");
}

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string label_of(const PlantDocument& doc, const std::string& fallback) {
  return doc.label.value_or(fallback);
}

int cmd_numetric(const std::string& file1, const std::string& file2,
                 const CommonFlags& flags, std::ostream& out) {
  validate_grid(flags);
  const NumericConfig cfg = flags.config();
  const PlantDocument d1 = parse_plant_file(file1, cfg);
  const PlantDocument d2 = parse_plant_file(file2, cfg);
  if (d1.plant.rows() != d2.plant.rows() || d1.plant.cols() != d2.plant.cols())
    throw ParseError("plants must share dimensions", "");

  const GraphSymbols g1 = graph_symbols(d1.plant, cfg);
  const GraphSymbols g2 = graph_symbols(d2.plant, cfg);
  const NuMetricOutcome outcome = nu_metric(g1, g2, cfg);

  if (!flags.plot_path.empty()) {
    std::ofstream csv(flags.plot_path);
    if (!csv) throw ParseError("cannot open plot path", "");
    csv << "theta,sigma_max_gt2_g1,abs_det_g1s_g2,arg_det\n";
    for (int k = 0; k < flags.grid; ++k) {
      const double theta = kTwoPi * k / static_cast<double>(flags.grid);
      const Eigen::MatrixXcd cross = g2.eval_gt(theta) * g1.eval_g(theta);
      const double sigma = cross.jacobiSvd().singularValues()(0);
      const Complex det =
          (g1.eval_g(theta).adjoint() * g2.eval_g(theta)).determinant();
      csv << csv_num(theta) << ',' << csv_num(sigma) << ','
          << csv_num(std::abs(det)) << ',' << csv_num(std::arg(det)) << '\n';
    }
  }

  const Json doc = result_document(
      "numetric",
      {{label_of(d1, file1), plant_hash(d1.plant)},
       {label_of(d2, file2), plant_hash(d2.plant)}},
      cfg, emit_nu_metric(outcome));
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_margin(const std::string& plant_file, const std::string& ctrl_file,
               const CommonFlags& flags, std::ostream& out) {
  validate_grid(flags);
  const NumericConfig cfg = flags.config();
  const PlantDocument dp = parse_plant_file(plant_file, cfg);
  const PlantDocument dc = parse_plant_file(ctrl_file, cfg);
  if (dp.plant.rows() != dc.plant.cols() || dp.plant.cols() != dc.plant.rows())
    throw ParseError("controller dimensions must be dual to the plant", "");

  const GraphSymbols plant = graph_symbols(dp.plant, cfg);
  const ControllerSymbols ctrl = controller_symbols(dc.plant, cfg);
  const MarginReport report = stability_margin(plant, ctrl, cfg);

  if (!flags.plot_path.empty()) {
    std::ofstream csv(flags.plot_path);
    if (!csv) throw ParseError("cannot open plot path", "");
    csv << "theta,sigma_max_h\n";
    const MatrixSampler h = closed_loop_sampler(plant, ctrl, cfg);
    for (int k = 0; k < flags.grid; ++k) {
      const double theta = kTwoPi * k / static_cast<double>(flags.grid);
      double sigma = std::numeric_limits<double>::quiet_NaN();
      try {
        sigma = h(theta).jacobiSvd().singularValues()(0);
      } catch (const SingularAtPointError&) {
      }
      csv << csv_num(theta) << ',' << csv_num(sigma) << '\n';
    }
  }

  const Json doc = result_document(
      "margin",
      {{label_of(dp, plant_file), plant_hash(dp.plant)},
       {label_of(dc, ctrl_file), plant_hash(dc.plant)}},
      cfg, emit_margin(report));
  out << doc.dump(2) << '\n';
  return 0;
}

Json emit_rational_matrix_entries(const RationalMatrix& m,
                                  const NumericConfig& cfg) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      const RationalFn entry =
          rational_simplify(RationalFn(m.num.entry(i, j), m.den), cfg);
      Json e;
      Json num = Json::array();
      if (entry.num().is_zero()) {
        num.push_back(0.0);
      } else {
        for (const Complex& c : entry.num().coeffs()) {
          if (c.imag() == 0.0)
            num.push_back(c.real());
          else
            num.push_back(Json::array({c.real(), c.imag()}));
        }
      }
      Json den = Json::array();
      for (const Complex& c : entry.den().coeffs()) {
        if (c.imag() == 0.0)
          den.push_back(c.real());
        else
          den.push_back(Json::array({c.real(), c.imag()}));
      }
      e["num"] = std::move(num);
      e["den"] = std::move(den);
      row.push_back(std::move(e));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_factorize(const std::string& file, const std::string& side,
                  const CommonFlags& flags, std::ostream& out) {
  validate_grid(flags);
  const NumericConfig cfg = flags.config();
  const PlantDocument doc = parse_plant_file(file, cfg);

  Json payload;
  if (side == "right" || side == "both") {
    const NormalizedFactorization f = nrcf(doc.plant, cfg);
    Json right;
    right["N"] = emit_rational_matrix_entries(f.n, cfg);
    right["D"] = emit_rational_matrix_entries(f.d, cfg);
    right["residual"] = f.residual_norm;
    payload["right"] = std::move(right);
  }
  if (side == "left" || side == "both") {
    const NormalizedFactorization f = nlcf(doc.plant, cfg);
    Json left;
    left["Nt"] = emit_rational_matrix_entries(f.n, cfg);
    left["Dt"] = emit_rational_matrix_entries(f.d, cfg);
    left["residual"] = f.residual_norm;
    payload["left"] = std::move(left);
  }

  const Json result = result_document(
      "factorize", {{label_of(doc, file), plant_hash(doc.plant)}}, cfg,
      std::move(payload));
  out << result.dump(2) << '\n';
  return 0;
}

int cmd_winding(const std::string& file, const CommonFlags& flags,
                std::ostream& out) {
  validate_grid(flags);
  const NumericConfig cfg = flags.config();
  const PlantDocument doc = parse_plant_file(file, cfg);
  if (doc.plant.rows() != 1 || doc.plant.cols() != 1)
    throw ParseError("winding expects a siso rational symbol", "");

  const RationalFn symbol = doc.plant.entry(0, 0);
  const WindingReport report = winding_number(
      [&](double theta) { return symbol.eval(std::polar(1.0, theta)); }, cfg);

  const Json result = result_document(
      "winding", {{label_of(doc, file), plant_hash(doc.plant)}}, cfg,
      emit_winding(report));
  out << result.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// report: seeded property campaign over random plants.

struct CampaignRow {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  std::string detail;
};

int cmd_report(const CommonFlags& flags, int plants, int mimo_plants,
               int triples, int robust_triples, std::ostream& out) {
  validate_grid(flags);
  NumericConfig cfg = flags.config();
  cfg.grid_size = std::min(cfg.grid_size, 1024);  // campaign-scale grids

  std::vector<TransferMatrix> pool;
  std::vector<GraphSymbols> symbols;
  SplitStream root(flags.seed);

  GenConfig gen;
  gen.max_degree = 3;
  for (int k = 0; k < plants; ++k) {
    gen.seed = root.child(static_cast<std::uint64_t>(k)).next_u64();
    pool.push_back(random_plant(gen, cfg));
  }
  GenConfig mimo = gen;
  mimo.p = 2;
  mimo.m = 2;
  mimo.max_degree = 2;
  for (int k = 0; k < mimo_plants; ++k) {
    mimo.seed = root.child(1000 + static_cast<std::uint64_t>(k)).next_u64();
    pool.push_back(random_plant(mimo, cfg));
  }
  for (const TransferMatrix& p : pool) symbols.push_back(graph_symbols(p, cfg));

  std::map<std::pair<int, int>, double> pair_cache;
  auto dist = [&](int i, int j) {
    if (i == j) return nu_metric(symbols[static_cast<size_t>(i)],
                                 symbols[static_cast<size_t>(j)], cfg)
        .value;
    const std::pair<int, int> key = std::minmax(i, j);
    auto it = pair_cache.find(key);
    if (it != pair_cache.end()) return it->second;
    // Only same-shaped plants are comparable.
    const double v = nu_metric(symbols[static_cast<size_t>(key.first)],
                               symbols[static_cast<size_t>(key.second)], cfg)
                         .value;
    pair_cache.emplace(key, v);
    return v;
  };
  auto same_shape = [&](int i, int j) {
    return pool[static_cast<size_t>(i)].rows() ==
               pool[static_cast<size_t>(j)].rows() &&
           pool[static_cast<size_t>(i)].cols() ==
               pool[static_cast<size_t>(j)].cols();
  };

  std::vector<CampaignRow> rows;

  {  // identity and normalization
    CampaignRow identity{"metric identity d(P,P) = 0", true, 0.0, ""};
    CampaignRow normal{"normalization and annihilation residuals", true, 0.0,
                       ""};
    for (size_t k = 0; k < pool.size(); ++k) {
      const double d = dist(static_cast<int>(k), static_cast<int>(k));
      identity.worst = std::max(identity.worst, d);
      const double res = std::max(symbols[k].residual_right,
                                  symbols[k].residual_left);
      normal.worst = std::max(normal.worst, res);
    }
    identity.pass = identity.worst <= 1e-7;
    normal.pass = normal.worst <= 1e-7;
    rows.push_back(identity);
    rows.push_back(normal);
  }

  {  // symmetry over consecutive same-shape pairs
    CampaignRow row{"metric symmetry", true, 0.0, ""};
    for (size_t k = 0; k + 1 < pool.size(); ++k) {
      const int i = static_cast<int>(k), j = static_cast<int>(k + 1);
      if (!same_shape(i, j)) continue;
      const double dij = nu_metric(symbols[static_cast<size_t>(i)],
                                   symbols[static_cast<size_t>(j)], cfg)
                             .value;
      const double dji = nu_metric(symbols[static_cast<size_t>(j)],
                                   symbols[static_cast<size_t>(i)], cfg)
                             .value;
      row.worst = std::max(row.worst, std::abs(dij - dji));
    }
    row.pass = row.worst <= 1e-7;
    rows.push_back(row);
  }

  {  // triangle inequality over random same-shape triples
    CampaignRow row{"metric triangle inequality", true, 0.0, ""};
    SplitStream stream = root.child(2000);
    int done = 0;
    while (done < triples) {
      const int a = static_cast<int>(stream.uniform() * pool.size());
      const int b = static_cast<int>(stream.uniform() * pool.size());
      const int c = static_cast<int>(stream.uniform() * pool.size());
      if (a == b || b == c || a == c) continue;
      if (!same_shape(a, b) || !same_shape(b, c)) continue;
      const double violation = dist(a, c) - dist(a, b) - dist(b, c);
      row.worst = std::max(row.worst, violation);
      ++done;
    }
    row.pass = row.worst <= 1e-6;
    rows.push_back(row);
  }

  {  // robustness inequality
    CampaignRow row{"robustness inequality slack", true, 0.0, ""};
    SplitStream stream = root.child(3000);
    const double eps_grid[] = {1e-3, 1e-2, 1e-1};
    int done = 0, tried = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    while (done < robust_triples && tried < robust_triples * 20) {
      ++tried;
      const int idx = static_cast<int>(stream.uniform() * pool.size());
      const TransferMatrix& p0 = pool[static_cast<size_t>(idx)];
      std::optional<TransferMatrix> ctrl = bezout_controller(p0, cfg);
      if (!ctrl) continue;
      try {
        if (!stabilizes(p0, *ctrl, cfg).ok) continue;
        const double eps = eps_grid[done % 3];
        const TransferMatrix p = perturb_plant(p0, eps, stream.next_u64(), cfg);
        const RobustnessReport r = robustness_check(p0, p, *ctrl, cfg);
        min_slack = std::min(min_slack, r.slack);
        ++done;
      } catch (const Error&) {
        continue;
      }
    }
    row.worst = (done > 0) ? -min_slack : 0.0;
    row.pass = done > 0 && min_slack >= -1e-6;
    row.detail = std::to_string(done) + " triples";
    rows.push_back(row);
  }

  bool all_pass = true;
  Json table = Json::array();
  for (const CampaignRow& row : rows) {
    all_pass = all_pass && row.pass;
    Json r;
    r["suite"] = row.name;
    r["pass"] = row.pass;
    r["worst"] = row.worst;
    if (!row.detail.empty()) r["detail"] = row.detail;
    table.push_back(std::move(r));
  }

  Json payload;
  payload["seed"] = flags.seed;
  payload["plants"] = plants;
  payload["mimo_plants"] = mimo_plants;
  payload["triples"] = triples;
  payload["robust_triples"] = robust_triples;
  payload["suites"] = std::move(table);
  payload["all_pass"] = all_pass;

  const Json doc = result_document("report", {}, cfg, std::move(payload));
  if (!flags.json_only) {
    out << "suite                                      worst        verdict\n";
    out << "---------------------------------------------------------------\n";
    for (const CampaignRow& row : rows) {
      char line[128];
      std::snprintf(line, sizeof(line), "%-40s %12.3e  %s\n", row.name.c_str(),
                    row.worst, row.pass ? "PASS" : "FAIL");
      out << line;
    }
    out << "---------------------------------------------------------------\n";
  }
  out << doc.dump(2) << '\n';
  return all_pass ? 0 : 3;
}

Json error_json(const std::string& kind, const std::string& what,
                const std::string& pointer = "") {
  Json j;
  j["error"] = kind;
  j["what"] = what;
  if (!pointer.empty()) j["pointer"] = pointer;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"nu-gap metric toolkit for discrete-time rational plants"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string file1, file2, side = "both";
  int plants = 40, mimo_plants = 4, triples = 200, robust_triples = 120;

  CLI::App* numetric =
      app.add_subcommand("numetric", "nu-metric distance between two plants");
  numetric->add_option("plant1", file1, "first plant JSON file")->required();
  numetric->add_option("plant2", file2, "second plant JSON file")->required();
  add_common_flags(numetric, flags, false);

  CLI::App* margin =
      app.add_subcommand("margin", "closed-loop stability margin");
  margin->add_option("plant", file1, "plant JSON file")->required();
  margin->add_option("controller", file2, "controller JSON file")->required();
  add_common_flags(margin, flags, false);

  CLI::App* factorize = app.add_subcommand(
      "factorize", "normalized coprime factorizations of a plant");
  factorize->add_option("plant", file1, "plant JSON file")->required();
  factorize->add_option("--side", side, "right, left or both")
      ->check(CLI::IsMember({"right", "left", "both"}));
  add_common_flags(factorize, flags, false);

  CLI::App* winding = app.add_subcommand(
      "winding", "winding number of a rational circle symbol");
  winding->add_option("symbol", file1, "siso rational symbol JSON file")
      ->required();
  add_common_flags(winding, flags, false);

  CLI::App* report =
      app.add_subcommand("report", "seeded property-test campaign");
  report->add_option("--plants", plants, "SISO plant pool size");
  report->add_option("--mimo-plants", mimo_plants, "2x2 plant pool size");
  report->add_option("--triples", triples, "triangle-inequality triples");
  report->add_option("--robust-triples", robust_triples,
                     "robustness-inequality triples");
  add_common_flags(report, flags, true);

  try {
    std::vector<const char*> argv;
    argv.push_back("nugap");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << error_json("usage", e.what()).dump(2) << '\n';
    return 2;
  }

  try {
    if (numetric->parsed()) return cmd_numetric(file1, file2, flags, out);
    if (margin->parsed()) return cmd_margin(file1, file2, flags, out);
    if (factorize->parsed()) return cmd_factorize(file1, side, flags, out);
    if (winding->parsed()) return cmd_winding(file1, flags, out);
    if (report->parsed())
      return cmd_report(flags, plants, mimo_plants, triples, robust_triples,
                        out);
  } catch (const ParseError& e) {
    err << error_json("parse", e.what(), e.pointer).dump(2) << '\n';
    return 2;
  } catch (const InternalInconsistencyError& e) {
    err << error_json("internal_inconsistency", e.what()).dump(2) << '\n';
    return 4;
  } catch (const Error& e) {
    err << error_json("numeric", e.what()).dump(2) << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << error_json("numeric", e.what()).dump(2) << '\n';
    return 3;
  }
  return 2;
}

}  // namespace nugap
