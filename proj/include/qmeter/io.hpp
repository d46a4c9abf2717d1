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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qmeter/uncertainty.hpp"

namespace qmeter {

// Malformed or unresolvable configuration input.  Distinct from
// ValidationError: this one means the document itself is wrong (missing
// keys, unknown names, bad shapes), not that a well-formed object failed
// a mathematical check.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Complex matrices travel as row-major nested arrays of [re, im] pairs.
CMatrix parse_cmatrix(const nlohmann::json& j);
CVector parse_cvector(const nlohmann::json& j);
nlohmann::json cmatrix_json(const CMatrix& m);
nlohmann::json cvector_json(const CVector& v);

// A fully resolved analysis configuration.  Grid-backed models keep their
// lattice so sweeps can rebuild states on it.
struct ResolvedConfig {
  IndirectModel model;
  Observable a;
  Observable b;
  State rho;
  bool on_grid = false;
  CyclicGrid grid;
};

// Schema (all matrices as nested [re, im] arrays):
//   model:  kind "von_neumann" | "sharp_position" (grid_size, spacing, hbar)
//           | "canonical" (grid parameters + observable)
//           | "custom" (dim_object, dim_probe, unitary, pointer, hbar)
//   probe:  {center, width} gaussian on the model grid, or {vector} / {matrix}
//   observable_a / observable_b:
//           "position" | "momentum" | "pauli_x" | "pauli_y" | "pauli_z"
//           or an explicit matrix
//   state:  {center, width} gaussian, or {vector} / {matrix}
ResolvedConfig resolve_config(const nlohmann::json& doc);

// Parameters a sweep may vary; grid_size takes integral values.
extern const std::vector<std::string> kSweepParameters;
// Returns doc with the named parameter replaced by value.
nlohmann::json apply_sweep_parameter(const nlohmann::json& doc, const std::string& name,
                                     double value);

struct SweepRow {
  double param = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double sigma_x = 0.0;
  double sigma_b_post = 0.0;
  double rhs = 0.0;
  double heis_lhs = 0.0;
  double uvur_lhs = 0.0;
  double gur_lhs = 0.0;
  double repetition_error = 0.0;
};

SweepRow sweep_row(double param, const ResolvedConfig& cfg);

// Fixed 12-significant-digit rendering, C locale, "." decimal point.
std::string format_sig(double x);

std::string render_report_table(const UncertaintyReport& r);
nlohmann::json report_json(const UncertaintyReport& r);
// Header plus one line per row, LF endings, 12 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

// Dilation input: {"kind": "instrument" | "povm" | "channel", ...}.
struct DilationSpec {
  enum class Kind { instrument, povm, channel } kind = Kind::instrument;
  Instrument instrument;
  Povm povm;
  Channel channel;
};

DilationSpec parse_dilation_spec(const nlohmann::json& doc);
// Scheme serialized with dimensions, coupling, probe state, and pointer.
nlohmann::json model_json(const IndirectModel& m);

}  // namespace qmeter
