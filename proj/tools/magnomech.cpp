// magnomech: point evaluations, parameter sweeps, figure datasets and peak
// summaries for the cavity magnomechanical entanglement model.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magnomech/magnomech.hpp"

namespace fs = std::filesystem;
using namespace magnomech;

namespace {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_config = 2,
  exit_unstable = 3,
  exit_nonconvergence = 4,
  exit_io = 5,
  exit_parse = 6,
};

struct GlobalOptions {
  std::string params_file;
  std::vector<std::string> overrides;
  std::string out;
  std::string format = "csv";
  unsigned workers = default_worker_count();
};

SystemParams resolve_params(const GlobalOptions& g, SystemParams base = baseline_params()) {
  SystemParams p = g.params_file.empty() ? base : params_from_json(read_json_file(g.params_file), base);
  for (const auto& o : g.overrides) apply_override(p, o);
  for (const auto& w : validate(p)) std::cerr << "warning: " << w << '\n';
  return p;
}

nlohmann::json complex_json(const std::optional<cplx>& z) {
  if (!z) return nullptr;
  return nlohmann::json::array({z->real(), z->imag()});
}

nlohmann::json pair_json(const PairResult& r) {
  nlohmann::json j;
  for (Pair p : all_pairs) {
    const std::string name(pair_name(p));
    j["e_" + name] = r.e(p);
    j["nu_min_" + name] = r.nu_min(p);
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string render(const SweepResult& r, const std::string& format) {
  std::ostringstream ss;
  if (format == "csv") write_csv(r, ss);
  else write_json_lines(r, ss);
  return ss.str();
}

std::string sidecar_path(const std::string& data_path) {
  fs::path p(data_path);
  p.replace_extension(".meta.json");
  return p.string();
}

// ---------------------------------------------------------------------------

int cmd_point(const GlobalOptions& g, bool pair) {
  const SystemParams p = resolve_params(g);
  const PointEvaluation ev = evaluate_point(p);

  nlohmann::json j;
  j["params"] = params_to_json(p);
  j["steady_state"] = {
      {"m_s", complex_json(ev.steady.m_s)},
      {"n_s", complex_json(ev.steady.n_s)},
      {"q_s", ev.steady.q_s},
      {"p_s", ev.steady.p_s},
      {"coupling_G_eff_over_2pi_hz",
       nlohmann::json::array({to_hz(ev.steady.coupling_G_eff.real()),
                              to_hz(ev.steady.coupling_G_eff.imag())})},
      {"delta_m_eff_over_2pi_hz", to_hz(ev.steady.delta_m_eff)},
      {"iterations", ev.steady.iterations},
  };
  j["stability_margin"] = ev.margin;
  j["lyapunov_residual"] = ev.residual;
  j["min_symplectic_eigenvalue"] = ev.min_symplectic;
  j["entanglement"] = pair_json(ev.pairs);

  if (pair) {
    const NonrecipResult nr = nonrecip_all(p, p.delta_B);
    j["nonreciprocity"] = {
        {"delta_B_magnitude_over_2pi_hz", to_hz(std::abs(p.delta_B))},
        {"plus", pair_json(nr.plus)},
        {"minus", pair_json(nr.minus)},
        {"n_nm", nr.n_nm()},
        {"n_mb", nr.n_mb()},
        {"n_nb", nr.n_nb()},
    };
  }

  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) std::cout << text;
  else write_text(g.out, text);
  return exit_ok;
}

int run_and_write(const SweepSpec& spec, const GlobalOptions& g, const std::string& data_path,
                  std::optional<std::string_view> preset) {
  SweepOptions opt;
  opt.workers = g.workers;
  const SweepResult r = run_sweep(spec, opt);
  write_text(data_path, render(r, g.format));
  write_text(sidecar_path(data_path),
             sidecar_json(r.spec, preset, fs::path(data_path).filename().string()).dump(2) + "\n");
  return exit_ok;
}

int cmd_sweep(const GlobalOptions& g, const std::string& spec_file,
              const std::vector<std::string>& axes, const std::vector<std::string>& quantities,
              bool pair) {
  if (g.out.empty()) throw ConfigError("sweep needs --out");
  SweepSpec spec;
  spec.base = resolve_params(g);
  if (!spec_file.empty()) sweep_from_json(spec, read_json_file(spec_file));
  if (!axes.empty()) {
    if (axes.size() > 2) throw InvalidSpec("at most two --axis options");
    spec.axis1 = parse_axis(axes[0]);
    spec.axis2.reset();
    if (axes.size() == 2) spec.axis2 = parse_axis(axes[1]);
  } else if (spec_file.empty()) {
    throw InvalidSpec("sweep needs --axis or --spec");
  }
  if (!quantities.empty()) {
    spec.quantities.clear();
    for (const auto& q : quantities) spec.quantities.push_back(parse_quantity(q));
  }
  if (pair) spec.nonrecip_pairing = true;
  return run_and_write(spec, g, g.out, std::nullopt);
}

int cmd_figure(const GlobalOptions& g, std::vector<std::string> ids, int points) {
  if (ids.size() == 1 && ids[0] == "all") ids.assign(figure_ids.begin(), figure_ids.end());
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const std::string ext = g.format == "csv" ? ".csv" : ".jsonl";
  for (const auto& id : ids) {
    SweepSpec spec = figure_preset(id, points);
    spec.base = resolve_params(g, spec.base);
    run_and_write(spec, g, (dir / (id + ext)).string(), id);
    std::cerr << "wrote " << (dir / (id + ext)).string() << '\n';
  }
  return exit_ok;
}

int cmd_peaks(const GlobalOptions& g, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open '" + file + "'");
  const Table t = read_csv(in);
  const auto peaks = find_peaks(t);

  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json j;
  j["file"] = file;
  j["peaks"] = nlohmann::json::array();
  for (const auto& p : peaks) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [lo, hi] : p.windows) w.push_back({lo, hi});
    j["peaks"].push_back({{"quantity", p.quantity},
                          {"group", opt(p.group)},
                          {"argmax", opt(p.argmax)},
                          {"max", opt(p.max)},
                          {"windows", w}});
  }
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) std::cout << text;
  else write_text(g.out, text);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement and nonreciprocity of a cavity magnomechanical system"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--params", g.params_file, "Parameter document (JSON) or metadata sidecar");
  app.add_option("--set", g.overrides, "Override a parameter, key=value (repeatable)");
  app.add_option("--out", g.out, "Output file (point, sweep, peaks) or directory (figure)");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json-lines"}));
  app.add_option("--workers", g.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  bool point_pair = false;
  auto* point = app.add_subcommand("point", "Evaluate a single parameter point");
  point->add_flag("--pair", point_pair, "Also evaluate -|delta_B| and report contrast ratios");

  std::string spec_file;
  std::vector<std::string> axes, quantities;
  bool sweep_pair = false;
  auto* sweep = app.add_subcommand("sweep", "Run a 1-D or 2-D parameter sweep");
  sweep->add_option("--spec", spec_file, "Sweep document (JSON) or metadata sidecar");
  sweep->add_option("--axis", axes, "parameter:start:stop:count[:unit] (up to two)");
  sweep->add_option("--quantities", quantities, "Quantities to record")->delimiter(',');
  sweep->add_flag("--pair", sweep_pair, "Evaluate every point at +|delta_B| and -|delta_B|");

  std::vector<std::string> ids;
  int points = default_grid_points;
  auto* figure = app.add_subcommand("figure", "Write the dataset for one or more figure panels");
  figure->add_option("ids", ids, "Figure ids (fig1a ... fig6c) or 'all'")->required();
  figure->add_option("--points", points, "Grid points along the main axis")->check(CLI::Range(2, 100000));

  std::string peaks_file;
  auto* peaks = app.add_subcommand("peaks", "Summarize the maxima of a sweep CSV");
  peaks->add_option("file", peaks_file, "CSV written by sweep or figure")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }

  try {
    if (*point) return cmd_point(g, point_pair);
    if (*sweep) return cmd_sweep(g, spec_file, axes, quantities, sweep_pair);
    if (*figure) return cmd_figure(g, ids, points);
    if (*peaks) return cmd_peaks(g, peaks_file);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const Unstable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_unstable;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_nonconvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_parse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_internal;
}
