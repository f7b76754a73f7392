#include "nugap/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nugap/errors.hpp"

namespace nugap {

namespace {

Complex parse_coefficient(const Json& node, const std::string& pointer) {
  if (node.is_number()) return Complex(node.get<double>());
  if (node.is_array() && node.size() == 2 && node[0].is_number() &&
      node[1].is_number())
    return Complex(node[0].get<double>(), node[1].get<double>());
  throw ParseError("coefficient must be a number or an [re, im] pair",
                   pointer);
}

Polynomial parse_poly(const Json& node, const std::string& pointer) {
  if (!node.is_array())
    throw ParseError("coefficient array expected", pointer);
  std::vector<Complex> coeffs;
  coeffs.reserve(node.size());
  for (size_t k = 0; k < node.size(); ++k)
    coeffs.push_back(
        parse_coefficient(node[k], pointer + "/" + std::to_string(k)));
  return Polynomial(std::move(coeffs));
}

RationalFn parse_entry(const Json& node, const std::string& pointer) {
  if (!node.is_object() || !node.contains("num") || !node.contains("den"))
    throw ParseError("entry must be an object with num and den arrays",
                     pointer);
  Polynomial num = parse_poly(node["num"], pointer + "/num");
  Polynomial den = parse_poly(node["den"], pointer + "/den");
  if (den.is_zero())
    throw ParseError("entry denominator is identically zero",
                     pointer + "/den");
  return RationalFn(std::move(num), std::move(den));
}

Json emit_coefficient(const Complex& c) {
  if (c.imag() == 0.0) return Json(c.real());
  return Json::array({c.real(), c.imag()});
}

Json emit_poly(const Polynomial& p) {
  Json arr = Json::array();
  if (p.is_zero()) {
    arr.push_back(0.0);
    return arr;
  }
  for (const Complex& c : p.coeffs()) arr.push_back(emit_coefficient(c));
  return arr;
}

}  // namespace

PlantDocument parse_plant(const std::string& json_text,
                          const NumericConfig& cfg) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "");
  }
  if (!doc.is_object()) throw ParseError("top-level object expected", "");

  PlantDocument out;
  out.schema_version =
      doc.contains("schema_version") && doc["schema_version"].is_string()
          ? doc["schema_version"].get<std::string>()
          : std::string(kSchemaVersion);
  if (doc.contains("label") && doc["label"].is_string())
    out.label = doc["label"].get<std::string>();

  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw ParseError("missing kind (\"siso\" or \"matrix\")", "/kind");
  out.kind = doc["kind"].get<std::string>();

  try {
    if (out.kind == "siso") {
      if (!doc.contains("num"))
        throw ParseError("missing num array", "/num");
      if (!doc.contains("den"))
        throw ParseError("missing den array", "/den");
      Polynomial num = parse_poly(doc["num"], "/num");
      Polynomial den = parse_poly(doc["den"], "/den");
      if (den.is_zero())
        throw ParseError("denominator is identically zero", "/den");
      out.plant =
          TransferMatrix::scalar(RationalFn(std::move(num), std::move(den)), cfg);
    } else if (out.kind == "matrix") {
      if (!doc.contains("entries") || !doc["entries"].is_array() ||
          doc["entries"].empty())
        throw ParseError("missing entries grid", "/entries");
      std::vector<std::vector<RationalFn>> entries;
      for (size_t i = 0; i < doc["entries"].size(); ++i) {
        const Json& row = doc["entries"][i];
        const std::string row_ptr = "/entries/" + std::to_string(i);
        if (!row.is_array() || row.empty())
          throw ParseError("entry row must be a nonempty array", row_ptr);
        std::vector<RationalFn> parsed_row;
        for (size_t j = 0; j < row.size(); ++j)
          parsed_row.push_back(
              parse_entry(row[j], row_ptr + "/" + std::to_string(j)));
        entries.push_back(std::move(parsed_row));
      }
      out.plant = TransferMatrix::from_entries(std::move(entries), cfg);
    } else {
      throw ParseError("kind must be \"siso\" or \"matrix\"", "/kind");
    }
  } catch (const PoleProximityError& e) {
    throw ParseError(std::string("plant rejected: ") + e.what(), "");
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("plant rejected: ") + e.what(), "");
  }
  return out;
}

PlantDocument parse_plant_file(const std::string& path,
                               const NumericConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, "");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_plant(buffer.str(), cfg);
}

Json emit_plant(const TransferMatrix& plant,
                const std::optional<std::string>& label) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  if (plant.rows() == 1 && plant.cols() == 1) {
    doc["kind"] = "siso";
    if (label) doc["label"] = *label;
    doc["num"] = emit_poly(plant.entry(0, 0).num());
    doc["den"] = emit_poly(plant.entry(0, 0).den());
    return doc;
  }
  doc["kind"] = "matrix";
  if (label) doc["label"] = *label;
  Json rows = Json::array();
  for (int i = 0; i < plant.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < plant.cols(); ++j) {
      Json entry;
      entry["num"] = emit_poly(plant.entry(i, j).num());
      entry["den"] = emit_poly(plant.entry(i, j).den());
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  return doc;
}

std::string plant_hash(const TransferMatrix& plant) {
  const std::string canonical = emit_plant(plant).dump();
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

Json emit_config(const NumericConfig& cfg) {
  Json j;
  j["tol_root"] = cfg.tol_root;
  j["tol_eval"] = cfg.tol_eval;
  j["tol_div"] = cfg.tol_div;
  j["tol_bezout"] = cfg.tol_bezout;
  j["tol_bezout_mat"] = cfg.tol_bezout_mat;
  j["tol_rank"] = cfg.tol_rank;
  j["dist_circle_min"] = cfg.dist_circle_min;
  j["tol_normalization"] = cfg.tol_normalization;
  j["tol_graph"] = cfg.tol_graph;
  j["tol_specfac"] = cfg.tol_specfac;
  j["tol_specfac_mat"] = cfg.tol_specfac_mat;
  j["tol_invertible"] = cfg.tol_invertible;
  j["tol_norm_rel"] = cfg.tol_norm_rel;
  j["tol_poisson"] = cfg.tol_poisson;
  j["grid_size"] = cfg.grid_size;
  j["validation_grid"] = cfg.validation_grid;
  j["positivity_grid"] = cfg.positivity_grid;
  j["winding_grid"] = cfg.winding_grid;
  j["winding_budget"] = cfg.winding_budget;
  j["refine_maxima"] = cfg.refine_maxima;
  j["bauer_initial_section"] = cfg.bauer_initial_section;
  j["bauer_max_section"] = cfg.bauer_max_section;
  j["max_dim"] = cfg.max_dim;
  j["max_entry_degree"] = cfg.max_entry_degree;
  return j;
}

Json emit_winding(const WindingReport& report) {
  Json j;
  j["winding"] = report.winding;
  j["min_modulus"] = report.min_modulus;
  j["samples_used"] = report.samples_used;
  j["max_phase_step"] = report.max_phase_step;
  return j;
}

Json emit_nu_metric(const NuMetricOutcome& outcome) {
  Json j;
  j["value"] = outcome.value;
  j["condition_met"] = outcome.condition_met;
  if (outcome.winding)
    j["winding"] = *outcome.winding;
  else
    j["winding"] = nullptr;
  j["min_modulus"] = outcome.min_modulus;
  if (outcome.theta_star)
    j["theta_star"] = *outcome.theta_star;
  else
    j["theta_star"] = nullptr;
  Json diag;
  diag["norm_grid"] = outcome.diagnostics.norm_grid;
  diag["winding_samples"] = outcome.diagnostics.winding_samples;
  diag["residual_1"] = outcome.diagnostics.residual_1;
  diag["residual_2"] = outcome.diagnostics.residual_2;
  j["diagnostics"] = std::move(diag);
  return j;
}

Json emit_margin(const MarginReport& report) {
  Json j;
  j["stabilizes"] = report.stabilizes;
  if (report.hinf_norm)
    j["hinf_norm"] = *report.hinf_norm;
  else
    j["hinf_norm"] = nullptr;
  j["margin"] = report.margin;
  j["det_winding"] = report.det_winding;
  j["det_min_modulus"] = report.det_min_modulus;
  j["boundary_marginal"] = report.boundary_marginal;
  return j;
}

Json result_document(
    const std::string& operation,
    const std::vector<std::pair<std::string, std::string>>& inputs,
    const NumericConfig& cfg, Json payload) {
  Json doc;
  doc["operation"] = operation;
  Json in = Json::array();
  for (const auto& [label, hash] : inputs) {
    Json item;
    item["label"] = label;
    item["hash"] = hash;
    in.push_back(std::move(item));
  }
  doc["inputs"] = std::move(in);
  doc["result"] = std::move(payload);
  doc["config"] = emit_config(cfg);
  doc["tool_version"] = kToolVersion;
  return doc;
}

}  // namespace nugap
