// qssa: simulate the Michaelis-Menten mechanism, evaluate the closed-form
// crossing-time, depletion and error bounds, and certify them numerically.
//
// Exit status: 0 success, 1 hard-check failure or runtime error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qssa/bounds.hpp"
#include "qssa/csv.hpp"
#include "qssa/errors.hpp"
#include "qssa/experiments.hpp"
#include "qssa/report.hpp"
#include "qssa/validation.hpp"

namespace {

using namespace qssa;

struct Overrides {
  std::string config_path;
  std::optional<double> k1, k_m1, k2, s0, e0, q;
  std::optional<double> rel_tol, abs_tol, t_end;
};

void add_config_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app->add_option("--k1", o.k1, "binding rate constant");
  app->add_option("--k_m1", o.k_m1, "unbinding rate constant");
  app->add_option("--k2", o.k2, "catalytic rate constant");
  app->add_option("--s0", o.s0, "initial substrate");
  app->add_option("--e0", o.e0, "total enzyme");
  app->add_option("--q", o.q, "auxiliary constant q");
  app->add_option("--rel-tol", o.rel_tol, "relative integration tolerance");
  app->add_option("--abs-tol", o.abs_tol, "absolute integration tolerance");
  app->add_option("--t-end", o.t_end, "integration horizon");
}

RunConfig resolve(const Overrides& o) {
  RunConfig rc = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
  if (o.k1) rc.reaction.rates.k1 = *o.k1;
  if (o.k_m1) rc.reaction.rates.k_m1 = *o.k_m1;
  if (o.k2) rc.reaction.rates.k2 = *o.k2;
  if (o.s0) rc.reaction.s0 = *o.s0;
  if (o.e0) rc.reaction.e0 = *o.e0;
  if (o.q) rc.q = *o.q;
  if (o.rel_tol) rc.integration.rel_tol = *o.rel_tol;
  if (o.abs_tol) rc.integration.abs_tol = *o.abs_tol;
  if (o.t_end) rc.integration.t_end = *o.t_end;
  validate_options(rc.integration);
  return rc;
}

// Opens `path` for writing, or returns stdout when empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_json(const Json& j, const std::string& out) {
  Sink sink(out);
  sink.stream() << j.dump(2) << '\n';
}

void print_checks(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    const char* status = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
    std::cout << std::left << std::setw(5) << status << std::setw(26) << r.name
              << (r.severity == Severity::soft ? "soft " : "hard ")
              << "margin=" << format_number(r.worst_margin) << " slack=" << format_number(r.slack);
    if (!r.notes.empty()) std::cout << "  " << r.notes;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Michaelis-Menten QSSA bounds and numerical certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qssa 0.1.0");

  Overrides ov;
  std::string out;
  std::string out_dir;

  auto* simulate = app.add_subcommand("simulate", "integrate the mass-action system, CSV trajectory");
  add_config_flags(simulate, ov);
  simulate->add_option("--out", out, "output CSV (default stdout)");

  auto* crossing = app.add_subcommand("crossing", "locate the crossing of the QSS manifold");
  add_config_flags(crossing, ov);
  crossing->add_option("--out", out, "output JSON (default stdout)");

  auto* bounds = app.add_subcommand("bounds", "closed-form crossing-time and error bounds");
  add_config_flags(bounds, ov);
  bounds->add_option("--out", out, "output JSON (default stdout)");

  auto* depletion = app.add_subcommand("depletion", "substrate depletion bounds against the measured value");
  add_config_flags(depletion, ov);
  depletion->add_option("--out", out, "output JSON (default stdout)");

  auto* verify = app.add_subcommand("verify", "certify every bound on one configuration");
  add_config_flags(verify, ov);
  verify->add_option("--out", out, "also write the results as JSON");

  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "write the dataset of one figure");
  figure->add_option("id", figure_id, "figure id")->required();
  figure->add_option("--out-dir", out_dir, "output root (default $QSSA_OUT_DIR or .)");
  figure->add_option("--rel-tol", ov.rel_tol, "relative integration tolerance");

  std::string axis;
  std::vector<double> values;
  std::vector<std::string> outputs;
  bool list_quantities = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate quantities along one parameter axis");
  add_config_flags(sweep_cmd, ov);
  sweep_cmd->add_option("--axis", axis, "e0, s0, k1, k_m1 or k2");
  sweep_cmd->add_option("--values", values, "axis values")->delimiter(',');
  sweep_cmd->add_option("--outputs", outputs, "quantity names")->delimiter(',');
  sweep_cmd->add_flag("--list", list_quantities, "print the quantity names and exit");
  sweep_cmd->add_option("--out", out, "output CSV (default stdout)");

  auto* report = app.add_subcommand("report", "quick-reference JSON report");
  add_config_flags(report, ov);
  report->add_option("--out", out, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*figure) {
      IntegrationOptions opts;
      if (ov.rel_tol) opts.rel_tol = *ov.rel_tol;
      const auto ds = run_figure(figure_id, out_dir.empty() ? default_out_dir() : out_dir, opts);
      for (const auto& f : ds.files) std::cout << f << '\n';
      return 0;
    }
    if (*sweep_cmd && list_quantities) {
      for (const auto& n : quantity_names()) std::cout << n << '\n';
      return 0;
    }

    const RunConfig rc = resolve(ov);
    const ReactionConfig& cfg = rc.reaction;

    if (*simulate) {
      const auto ctx = prepare_verification(cfg, rc.integration);
      Sink sink(out);
      CsvWriter csv(sink.stream());
      csv.comment("manifest_hash=" + hex64(fnv1a64(to_json(rc).dump())));
      write_trajectory_csv(csv, ctx.trajectory, ctx.crossing ? &*ctx.crossing : nullptr);
    } else if (*crossing) {
      validate_for_bounds(cfg);
      emit_json(to_json(find_crossing(cfg, rc.integration)), out);
    } else if (*bounds) {
      emit_json(bound_report(cfg, rc.q), out);
    } else if (*depletion) {
      const auto db = depletion_bounds(cfg, rc.q);
      const auto x = find_crossing(cfg, rc.integration);
      Json j;
      j["bounds"] = to_json(db);
      j["measured"] = (cfg.s0 - x.s_cross) / cfg.s0;
      j["t_cross"] = x.t_cross;
      emit_json(j, out);
    } else if (*verify) {
      const auto results = verify_all(cfg, rc.q, rc.integration);
      print_checks(results);
      if (!out.empty()) emit_json(to_json(results), out);
      return all_hard_passed(results) ? 0 : 1;
    } else if (*sweep_cmd) {
      if (axis.empty() || values.empty() || outputs.empty()) {
        throw UsageError("sweep needs --axis, --values and --outputs");
      }
      SweepSpec spec{cfg, axis, values, rc.q, outputs, rc.integration};
      if (!out.empty()) {
        sweep(spec, out);
      } else {
        const auto table = run_sweep(spec);
        CsvWriter csv(std::cout);
        csv.comment("manifest_hash=" + hex64(fnv1a64(to_json(spec).dump())));
        csv.header(table.columns);
        for (const auto& row : table.rows) csv.row(row);
      }
    } else if (*report) {
      emit_json(quick_reference(cfg, rc.q), out);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "qssa: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "qssa: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qssa: " << e.what() << '\n';
    return 1;
  }
}
