// pbk: command-line driver for the kernel experiments.
//
//   pbk <experiment> [--config file.json] [inline flags]
//
// Inline flags override the config file. Exit status: 0 when the experiment's
// thresholds hold, 1 when they do not, 2 for configuration or precondition
// errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pbk/harness.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<int> k_min, k_max, nodes, trials, dim, grid;
  std::optional<double> k_ratio, e, t0, a, b;
  std::optional<std::string> z0, out, svg, kind;
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--k-min", f.k_min, "smallest k of the geometric grid");
  cmd->add_option("--k-max", f.k_max, "largest k of the geometric grid");
  cmd->add_option("--k-ratio", f.k_ratio, "ratio of the geometric k grid");
  cmd->add_option("--e", f.e, "energy level E");
  cmd->add_option("--t0", f.t0, "orbit time t0 in radians");
  cmd->add_option("--a", f.a, "gradient-flow offset a of the first probe point");
  cmd->add_option("--b", f.b, "gradient-flow offset b of the second probe point");
  cmd->add_option("--z0", f.z0, "base point: re,im (chart) or re0,im0,re1,im1 (homogeneous)");
  cmd->add_option("--nodes", f.nodes, "quadrature nodes on [-pi, pi] (0 = automatic)");
  cmd->add_option("--out", f.out, "CSV output path (default: standard output)");
  cmd->add_option("--svg", f.svg, "SVG plot output path");
  cmd->add_option("--seed", f.seed, "64-bit seed of the random trials");
  cmd->add_flag("--no-timestamp", f.no_timestamp, "omit the timestamp comment line of the CSV");
  cmd->add_option("--trials", f.trials, "number of random trials (selftest-hilbert)");
  cmd->add_option("--dim", f.dim, "fixed matrix dimension (selftest-hilbert)");
  cmd->add_option("--kind", f.kind, "partial or equivariant (heatmap)");
  cmd->add_option("--grid", f.grid, "grid points per side (heatmap)");
}

pbk::ExperimentConfig build_config(const std::string& name, const Flags& f) {
  auto cfg = pbk::ExperimentConfig::defaults_for(name);
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    std::stringstream text;
    text << in.rdbuf();
    pbk::apply_json(cfg, text.str());
  }
  if (f.k_min) cfg.k_min = *f.k_min;
  if (f.k_max) cfg.k_max = *f.k_max;
  if (f.k_min || f.k_max) cfg.k_list.clear();
  if (f.k_ratio) cfg.k_ratio = *f.k_ratio;
  if (f.e) cfg.e = *f.e;
  if (f.t0) cfg.t0 = *f.t0;
  if (f.a) cfg.a = *f.a;
  if (f.b) cfg.b = *f.b;
  if (f.z0) cfg.z0 = pbk::parse_point(*f.z0);
  if (f.nodes) cfg.nodes = *f.nodes;
  if (f.out) cfg.out = *f.out;
  if (f.svg) cfg.svg = *f.svg;
  if (f.seed) cfg.seed = *f.seed;
  if (f.no_timestamp) cfg.timestamp = false;
  if (f.trials) cfg.trials = *f.trials;
  if (f.dim) cfg.dim_min = cfg.dim_max = *f.dim;
  if (f.kind) cfg.kind = *f.kind;
  if (f.grid) cfg.grid = *f.grid;
  return cfg;
}

int run(const pbk::ExperimentConfig& cfg) {
  const pbk::ExperimentResult result = pbk::run_experiment(cfg);
  const std::string producer = "pbk " + cfg.experiment;
  std::ostream* report = &std::cout;
  if (cfg.out.empty()) {
    pbk::write_csv(std::cout, result.table, producer, cfg.timestamp);
    report = &std::cerr;
  } else {
    std::ofstream csv(cfg.out);
    if (!csv) throw pbk::ConfigError("cannot write " + cfg.out);
    pbk::write_csv(csv, result.table, producer, cfg.timestamp);
  }
  if (!cfg.svg.empty()) {
    std::ofstream svg(cfg.svg);
    if (!svg) throw pbk::ConfigError("cannot write " + cfg.svg);
    std::visit(
        [&](const auto& plot) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(plot)>, std::monostate>)
            svg << pbk::render_svg(plot);
        },
        result.plot);
  }
  for (const auto& [key, value] : result.summary) *report << key << " = " << value << '\n';
  *report << cfg.experiment << ": " << (result.passed ? "PASS" : "FAIL") << '\n';
  return result.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial Bergman kernel experiments on CP^1"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags;
  for (const auto& name : pbk::experiment_names()) add_flags(app.add_subcommand(name), flags[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& name : pbk::experiment_names())
      if (app.got_subcommand(name)) return run(build_config(name, flags[name]));
  } catch (const pbk::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
