#pragma once

// Run configuration files, figure datasets and parameter sweeps.

#include <string>
#include <vector>

#include "qssa/integrator.hpp"
#include "qssa/params.hpp"
#include "qssa/report.hpp"

namespace qssa {

struct RunConfig {
  ReactionConfig reaction;
  double q = kDefaultQ;
  IntegrationOptions integration;
};

/// {k1, k_m1, k2, s0, e0, q, integration: {rel_tol, abs_tol, t_end}}; every
/// key optional on top of `defaults`. Unknown keys raise UsageError.
RunConfig parse_run_config(const Json& j, const RunConfig& defaults = {});
RunConfig load_run_config(const std::string& path, const RunConfig& defaults = {});
Json to_json(const RunConfig& rc);
IntegrationOptions parse_integration_options(const Json& j, const IntegrationOptions& defaults = {});

/// QSSA_OUT_DIR if set and non-empty, otherwise ".".
std::string default_out_dir();

/// Time compression 1 - 1/log(t + e) onto [0, 1).
double t_infinity(double t);

/// Enzyme grid shared by the crossing-time and error figures.
const std::vector<double>& figure_e0_grid();

const std::vector<std::string>& figure_ids();

struct FigureDataset {
  std::string figure_id;
  std::vector<std::string> files;  // CSV paths followed by the manifest path
  Json manifest;
  std::string manifest_hash;
};

/// Writes the CSVs of one figure into out_dir/<figure_id>/ plus
/// manifest.json. Throws UsageError for an unknown id.
FigureDataset run_figure(const std::string& figure_id, const std::string& out_dir,
                         const IntegrationOptions& options = {});

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepSpec {
  ReactionConfig base;
  std::string axis;  // e0, s0, k1, k_m1 or k2
  std::vector<double> values;
  double q = kDefaultQ;
  std::vector<std::string> outputs;
  IntegrationOptions integration;
};

/// Every name accepted in SweepSpec::outputs, in registry order.
const std::vector<std::string>& quantity_names();

/// One named quantity for one configuration. Quantities that are undefined
/// for the configuration (domain errors) evaluate to NaN.
double evaluate_quantity(const std::string& name, const RunConfig& rc);

struct SweepTable {
  std::vector<std::string> columns;  // axis first, then outputs
  std::vector<std::vector<double>> rows;
};

/// Throws UsageError for an unknown axis or quantity, or empty/non-positive values.
SweepTable run_sweep(const SweepSpec& spec);

/// run_sweep and write the table as CSV with a manifest-hash comment.
SweepTable sweep(const SweepSpec& spec, const std::string& out_path);

Json to_json(const SweepSpec& spec);

}  // namespace qssa
