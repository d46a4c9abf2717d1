// Copyright 2026 The qmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmeter/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qmeter/model_zoo.hpp"

namespace qmeter {

namespace {

using nlohmann::json;

cplx parse_entry(const json& j, const char* what) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(what) + ": entries must be numbers or [re, im] pairs");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

double require_number(const json& obj, const char* key, const char* ctx) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw ConfigError(std::string(ctx) + ": missing numeric field '" + key + "'");
  return obj.at(key).get<double>();
}

int require_int(const json& obj, const char* key, const char* ctx) {
  const double v = require_number(obj, key, ctx);
  const double r = std::round(v);
  if (std::abs(v - r) > 0.0)
    throw ConfigError(std::string(ctx) + ": field '" + key + "' must be an integer");
  return static_cast<int>(r);
}

double number_or(const json& obj, const char* key, double fallback, const char* ctx) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw ConfigError(std::string(ctx) + ": field '" + key + "' must be a number");
  return obj.at(key).get<double>();
}

bool is_gaussian_spec(const json& j) {
  return j.is_object() && (j.contains("width") || j.contains("center"));
}

GridWavefunction resolve_grid_wavefunction(const json& spec, const CyclicGrid& g,
                                           const char* ctx) {
  if (is_gaussian_spec(spec)) {
    const double center = number_or(spec, "center", 0.0, ctx);
    const double width = require_number(spec, "width", ctx);
    return gaussian_state(g, center, width);
  }
  if (spec.is_object() && spec.contains("vector"))
    return GridWavefunction(g, parse_cvector(spec.at("vector")));
  throw ConfigError(std::string(ctx) +
                    ": expected {center, width} or {vector} on the lattice");
}

State resolve_state(const json& spec, int dim, const CyclicGrid* g, const char* ctx) {
  if (spec.is_object() && spec.contains("vector")) {
    const CVector v = parse_cvector(spec.at("vector"));
    if (v.size() != dim)
      throw ConfigError(std::string(ctx) + ": vector length " +
                        std::to_string(v.size()) + " does not match dimension " +
                        std::to_string(dim));
    return State::pure(v.normalized());
  }
  if (spec.is_object() && spec.contains("matrix")) {
    const CMatrix m = parse_cmatrix(spec.at("matrix"));
    if (m.rows() != dim)
      throw ConfigError(std::string(ctx) + ": matrix size does not match dimension " +
                        std::to_string(dim));
    return State(m);
  }
  if (is_gaussian_spec(spec)) {
    if (g == nullptr)
      throw ConfigError(std::string(ctx) +
                        ": gaussian specs need a lattice-backed space; give an "
                        "explicit vector or matrix instead");
    return State::pure(resolve_grid_wavefunction(spec, *g, ctx).amplitudes);
  }
  throw ConfigError(std::string(ctx) + ": expected {center, width}, {vector}, or {matrix}");
}

Observable resolve_observable(const json& spec, int dim, const CyclicGrid* g,
                              const char* ctx) {
  if (spec.is_string()) {
    const std::string name = spec.get<std::string>();
    if (name == "position" || name == "momentum") {
      if (g == nullptr || g->n != dim)
        throw ConfigError(std::string(ctx) + ": '" + name +
                          "' needs a lattice-valued object space");
      return name == "position" ? position_op(*g) : momentum_op(*g);
    }
    if (name == "pauli_x" || name == "pauli_y" || name == "pauli_z") {
      if (dim != 2)
        throw ConfigError(std::string(ctx) + ": '" + name + "' needs a 2-dim object");
      CMatrix m(2, 2);
      if (name == "pauli_x") m << 0, 1, 1, 0;
      if (name == "pauli_y") m << 0, cplx(0, -1), cplx(0, 1), 0;
      if (name == "pauli_z") m << 1, 0, 0, -1;
      return Observable(m);
    }
    throw ConfigError(std::string(ctx) + ": unknown observable name '" + name + "'");
  }
  const CMatrix m = parse_cmatrix(spec);
  if (m.rows() != dim)
    throw ConfigError(std::string(ctx) + ": matrix size does not match object dimension " +
                      std::to_string(dim));
  return Observable(m);
}

const json& require_key(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw ConfigError(std::string("config: missing '") + key + "' section");
  return doc.at(key);
}

}  // namespace

CMatrix parse_cmatrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ConfigError("matrix: expected a non-empty nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw ConfigError("matrix: ragged rows");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_entry(j[r][c], "matrix");
  }
  return m;
}

CVector parse_cvector(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("vector: expected a non-empty array");
  CVector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = parse_entry(j[i], "vector");
  return v;
}

json cmatrix_json(const CMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json cvector_json(const CVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i)
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

ResolvedConfig resolve_config(const json& doc) {
  const json& model = require_key(doc, "model");
  if (!model.contains("kind") || !model.at("kind").is_string())
    throw ConfigError("model: missing 'kind'");
  const std::string kind = model.at("kind").get<std::string>();

  ResolvedConfig out;
  if (kind == "von_neumann" || kind == "sharp_position") {
    const int n = require_int(model, "grid_size", "model");
    out.grid = CyclicGrid(n, number_or(model, "spacing", 1.0, "model"),
                          number_or(model, "hbar", 1.0, "model"));
    out.on_grid = true;
    GridWavefunction probe =
        resolve_grid_wavefunction(require_key(doc, "probe"), out.grid, "probe");
    out.model = kind == "von_neumann" ? von_neumann_model(out.grid, probe)
                                      : sharp_position_model(out.grid, probe);
  } else if (kind == "canonical") {
    const int n = require_int(model, "grid_size", "model");
    out.grid = CyclicGrid(n, number_or(model, "spacing", 1.0, "model"),
                          number_or(model, "hbar", 1.0, "model"));
    out.on_grid = false;  // the lattice carries the probe, not the object
    if (!model.contains("observable"))
      throw ConfigError("model: canonical kind needs an 'observable'");
    const json& spec = model.at("observable");
    Observable target =
        spec.is_string() && spec.get<std::string>().rfind("pauli_", 0) == 0
            ? resolve_observable(spec, 2, nullptr, "model.observable")
            : Observable(parse_cmatrix(spec));
    GridWavefunction probe =
        resolve_grid_wavefunction(require_key(doc, "probe"), out.grid, "probe");
    out.model = canonical_model(target, probe);
  } else if (kind == "custom") {
    const int d_obj = require_int(model, "dim_object", "model");
    const int d_probe = require_int(model, "dim_probe", "model");
    if (!model.contains("unitary") || !model.contains("pointer"))
      throw ConfigError("model: custom kind needs 'unitary' and 'pointer'");
    const CMatrix u = parse_cmatrix(model.at("unitary"));
    const CMatrix pointer = parse_cmatrix(model.at("pointer"));
    if (u.rows() != d_obj * d_probe)
      throw ConfigError("model: unitary size does not match dim_object * dim_probe");
    if (pointer.rows() != d_probe)
      throw ConfigError("model: pointer size does not match dim_probe");
    State sigma = resolve_state(require_key(doc, "probe"), d_probe, nullptr, "probe");
    out.model = IndirectModel(d_obj, d_probe, sigma, u, Observable(pointer),
                              number_or(model, "hbar", 1.0, "model"));
  } else {
    throw ConfigError("model: unknown kind '" + kind +
                      "' (expected von_neumann, sharp_position, canonical, or custom)");
  }

  const CyclicGrid* g = out.on_grid ? &out.grid : nullptr;
  const int d = out.model.dim_object;
  out.a = resolve_observable(require_key(doc, "observable_a"), d, g, "observable_a");
  out.b = resolve_observable(require_key(doc, "observable_b"), d, g, "observable_b");
  out.rho = resolve_state(require_key(doc, "state"), d, g, "state");
  return out;
}

const std::vector<std::string> kSweepParameters = {
    "probe_width", "probe_center", "state_width", "state_center", "grid_size", "hbar"};

json apply_sweep_parameter(const json& doc, const std::string& name, double value) {
  json out = doc;
  const auto need_gaussian = [&](const char* section) -> json& {
    json& spec = out[section];
    if (!is_gaussian_spec(spec))
      throw ConfigError(std::string("sweep: parameter '") + name + "' needs a " +
                        section + " given as {center, width}");
    return spec;
  };
  if (name == "probe_width")
    need_gaussian("probe")["width"] = value;
  else if (name == "probe_center")
    need_gaussian("probe")["center"] = value;
  else if (name == "state_width")
    need_gaussian("state")["width"] = value;
  else if (name == "state_center")
    need_gaussian("state")["center"] = value;
  else if (name == "grid_size") {
    if (std::abs(value - std::round(value)) > 0.0)
      throw ConfigError("sweep: grid_size values must be integers");
    out["model"]["grid_size"] = static_cast<int>(std::round(value));
  } else if (name == "hbar")
    out["model"]["hbar"] = value;
  else {
    std::string names;
    for (const auto& p : kSweepParameters) names += (names.empty() ? "" : ", ") + p;
    throw ConfigError("sweep: unknown parameter '" + name + "' (expected one of " +
                      names + ")");
  }
  return out;
}

SweepRow sweep_row(double param, const ResolvedConfig& cfg) {
  const UncertaintyReport r = evaluate(cfg.model, cfg.a, cfg.b, cfg.rho);
  SweepRow row;
  row.param = param;
  row.epsilon = r.epsilon;
  row.eta = r.eta;
  row.sigma_a = r.sigma_a;
  row.sigma_b = r.sigma_b;
  row.sigma_x = r.sigma_x;
  row.sigma_b_post = r.sigma_b_post;
  row.rhs = r.rhs;
  row.heis_lhs = r.relations.at("heisenberg").lhs;
  row.uvur_lhs = r.relations.at("uvur").lhs;
  row.gur_lhs = r.relations.at("gur").lhs;
  row.repetition_error = repetition_error(derive_instrument(cfg.model), cfg.rho);
  return row;
}

std::string format_sig(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string render_report_table(const UncertaintyReport& r) {
  std::ostringstream os;
  const auto line = [&os](const char* name, double v) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%-20s %s\n", name, format_sig(v).c_str());
    os << buf;
  };
  os << "quantity             value\n";
  line("epsilon", r.epsilon);
  line("eta", r.eta);
  line("sigma_a", r.sigma_a);
  line("sigma_b", r.sigma_b);
  line("sigma_x", r.sigma_x);
  line("sigma_b_post", r.sigma_b_post);
  line("cross_term_uvur", r.cross_term_uvur);
  line("cross_term_sigma_x", r.cross_term_sigma_x);
  line("cross_term_post", r.cross_term_post);
  line("rhs", r.rhs);
  os << "\nrelation             lhs              rhs              margin           status\n";
  for (const char* name : {"heisenberg", "uvur", "gur", "sigma_x", "post_measurement",
                           "nondisturbing", "precise"}) {
    const RelationResult& row = r.relations.at(name);
    const char* status =
        !row.applicable ? "n/a" : (row.satisfied ? "ok" : "VIOLATED");
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-20s %-16s %-16s %-16s %s\n", name,
                  format_sig(row.lhs).c_str(), format_sig(row.rhs).c_str(),
                  format_sig(row.margin).c_str(), status);
    os << buf;
  }
  os << "\nflags";
  const auto flag = [&os](const char* name, bool v) {
    os << ' ' << name << '=' << (v ? "yes" : "no");
  };
  flag("unbiased_noise", r.flags.unbiased_noise);
  flag("unbiased_disturbance", r.flags.unbiased_disturbance);
  flag("independent_noise", r.flags.independent_noise);
  flag("independent_disturbance", r.flags.independent_disturbance);
  flag("n_commutes_b", r.flags.n_commutes_b);
  flag("d_commutes_a", r.flags.d_commutes_a);
  os << '\n';
  return os.str();
}

json report_json(const UncertaintyReport& r) {
  json rels;
  for (const auto& [name, row] : r.relations)
    rels[name] = {{"lhs", row.lhs},
                  {"rhs", row.rhs},
                  {"margin", row.margin},
                  {"satisfied", row.satisfied},
                  {"applicable", row.applicable}};
  return {{"epsilon", r.epsilon},
          {"eta", r.eta},
          {"sigma_a", r.sigma_a},
          {"sigma_b", r.sigma_b},
          {"sigma_x", r.sigma_x},
          {"sigma_b_post", r.sigma_b_post},
          {"cross_term_uvur", r.cross_term_uvur},
          {"cross_term_sigma_x", r.cross_term_sigma_x},
          {"cross_term_post", r.cross_term_post},
          {"rhs", r.rhs},
          {"relations", rels},
          {"flags",
           {{"unbiased_noise", r.flags.unbiased_noise},
            {"unbiased_disturbance", r.flags.unbiased_disturbance},
            {"independent_noise", r.flags.independent_noise},
            {"independent_disturbance", r.flags.independent_disturbance},
            {"n_commutes_b", r.flags.n_commutes_b},
            {"d_commutes_a", r.flags.d_commutes_a}}}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "param,epsilon,eta,sigma_a,sigma_b,sigma_x,sigma_b_post,rhs,heis_lhs,uvur_lhs,"
      "gur_lhs,repetition_error\n";
  for (const SweepRow& r : rows) {
    const double cols[] = {r.param, r.epsilon,      r.eta,      r.sigma_a,
                           r.sigma_b, r.sigma_x,    r.sigma_b_post, r.rhs,
                           r.heis_lhs, r.uvur_lhs,  r.gur_lhs,  r.repetition_error};
    for (int i = 0; i < 12; ++i) {
      if (i) out += ',';
      out += format_sig(cols[i]);
    }
    out += '\n';
  }
  return out;
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const SweepRow& r : rows)
    out.push_back({{"param", r.param},
                   {"epsilon", r.epsilon},
                   {"eta", r.eta},
                   {"sigma_a", r.sigma_a},
                   {"sigma_b", r.sigma_b},
                   {"sigma_x", r.sigma_x},
                   {"sigma_b_post", r.sigma_b_post},
                   {"rhs", r.rhs},
                   {"heis_lhs", r.heis_lhs},
                   {"uvur_lhs", r.uvur_lhs},
                   {"gur_lhs", r.gur_lhs},
                   {"repetition_error", r.repetition_error}});
  return out;
}

DilationSpec parse_dilation_spec(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw ConfigError("dilation: missing 'kind'");
  const std::string kind = doc.at("kind").get<std::string>();
  DilationSpec spec;
  if (kind == "instrument") {
    spec.kind = DilationSpec::Kind::instrument;
    if (!doc.contains("outcomes") || !doc.at("outcomes").is_array())
      throw ConfigError("dilation: instrument needs an 'outcomes' array");
    std::vector<InstrumentOutcome> outs;
    for (const json& o : doc.at("outcomes")) {
      InstrumentOutcome out;
      out.value = require_number(o, "value", "dilation.outcomes");
      if (!o.contains("kraus") || !o.at("kraus").is_array() || o.at("kraus").empty())
        throw ConfigError("dilation: each outcome needs a 'kraus' array");
      for (const json& k : o.at("kraus")) out.kraus.push_back(parse_cmatrix(k));
      outs.push_back(std::move(out));
    }
    spec.instrument = Instrument(std::move(outs));
  } else if (kind == "povm") {
    spec.kind = DilationSpec::Kind::povm;
    if (!doc.contains("outcomes") || !doc.at("outcomes").is_array())
      throw ConfigError("dilation: povm needs an 'outcomes' array");
    std::vector<PovmOutcome> outs;
    for (const json& o : doc.at("outcomes")) {
      if (!o.contains("effect"))
        throw ConfigError("dilation: each outcome needs an 'effect' matrix");
      outs.push_back({require_number(o, "value", "dilation.outcomes"),
                      parse_cmatrix(o.at("effect"))});
    }
    spec.povm = Povm(std::move(outs));
  } else if (kind == "channel") {
    spec.kind = DilationSpec::Kind::channel;
    if (!doc.contains("kraus") || !doc.at("kraus").is_array() || doc.at("kraus").empty())
      throw ConfigError("dilation: channel needs a 'kraus' array");
    std::vector<CMatrix> kraus;
    for (const json& k : doc.at("kraus")) kraus.push_back(parse_cmatrix(k));
    spec.channel = Channel(std::move(kraus));
  } else {
    throw ConfigError("dilation: unknown kind '" + kind +
                      "' (expected instrument, povm, or channel)");
  }
  return spec;
}

json model_json(const IndirectModel& m) {
  return {{"dim_object", m.dim_object},
          {"dim_probe", m.dim_probe},
          {"hbar", m.hbar},
          {"unitary", cmatrix_json(m.dense_unitary())},
          {"probe_state", cmatrix_json(m.probe_state.matrix)},
          {"pointer", cmatrix_json(m.probe_observable.matrix)}};
}

}  // namespace qmeter
