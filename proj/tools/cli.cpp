// Copyright 2026 The tsui Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsui/curve_table.hpp"
#include "tsui/errors.hpp"
#include "tsui/fit.hpp"
#include "tsui/fock.hpp"
#include "tsui/gaussian.hpp"
#include "tsui/metrology.hpp"
#include "tsui/noise_dataset.hpp"
#include "tsui/simulator.hpp"
#include "tsui/text_util.hpp"

namespace tsui::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// Failure while fitting data, as opposed to bad flags or malformed input.
class FitStageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string output;
  std::string format = "csv";
  int verbosity = 0;
  std::optional<std::uint64_t> seed;
  std::string command_line;
};

struct Output {
  std::string main;
  std::vector<std::pair<std::string, std::string>> files;  // path, contents
};

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "tsui";
  for (const auto& a : args) s += " " + a;
  return s;
}

std::string extension(const Global& g) { return g.format == "json" ? ".json" : ".csv"; }

std::string render(const CurveTable& t, const Global& g) {
  return g.format == "json" ? t.to_json() + "\n" : t.to_csv();
}

std::vector<double> grid_flag(const std::string& text, const char* name) {
  try {
    return parse_grid(text);
  } catch (const DomainError& e) {
    throw DomainError(std::string("--") + name + ": " + e.what());
  }
}

// ---------------------------------------------------------------- curves

struct EtaFlags {
  std::string eta;
  std::string eta_p;
  std::string eta_c;
};

std::vector<TransmissionPair> eta_pairs(const EtaFlags& f,
                                        TransmissionPair fallback) {
  if (!f.eta.empty()) {
    std::vector<TransmissionPair> out;
    for (double e : grid_flag(f.eta, "eta")) out.push_back({e, e});
    return out;
  }
  if (f.eta_p.empty() && f.eta_c.empty()) return {fallback};
  const auto ep = f.eta_p.empty() ? std::vector<double>{fallback.eta_p}
                                  : grid_flag(f.eta_p, "eta-p");
  const auto ec = f.eta_c.empty() ? std::vector<double>{fallback.eta_c}
                                  : grid_flag(f.eta_c, "eta-c");
  const std::size_t n = std::max(ep.size(), ec.size());
  if ((ep.size() != n && ep.size() != 1) || (ec.size() != n && ec.size() != 1)) {
    throw DomainError("--eta-p and --eta-c lists must have equal length");
  }
  std::vector<TransmissionPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({ep[ep.size() == 1 ? 0 : i], ec[ec.size() == 1 ? 0 : i]});
  }
  return out;
}

struct CurvesArgs {
  std::string figure;
  std::string gain;
  std::string lambda = "0:1:0.01";
  double alpha = 100.0;
  EtaFlags eta;
};

CurveTable renamed(const CurveTable& t, std::string figure) {
  CurveTable out(std::move(figure), t.columns());
  for (const auto& [k, v] : t.metadata()) out.add_metadata(k, v);
  for (const auto& r : t.rows()) out.add_row(r);
  return out;
}

Output cmd_curves(const CurvesArgs& a, const Global& g) {
  const auto gains = grid_flag(a.gain, "gain");
  CurveTable table("", {"x"});
  if (a.figure == "fig3") {
    table = curve_sensitivity_vs_gain(a.alpha, gains);
  } else if (a.figure == "fig4b" || a.figure == "fig8") {
    const bool fig8 = a.figure == "fig8";
    auto pairs = eta_pairs(a.eta, fig8 ? TransmissionPair{0.745, 0.775}
                                       : TransmissionPair{1.0, 1.0});
    const bool has_lossless = std::any_of(pairs.begin(), pairs.end(), [](auto p) {
      return p.eta_p == 1.0 && p.eta_c == 1.0;
    });
    if (fig8 && !has_lossless) pairs.push_back({1.0, 1.0});
    table = curve_lambda_opt_vs_gain(pairs, gains);
    if (fig8) table = renamed(table, "fig8");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      table.add_metadata("eta_p_" + std::to_string(i), format_number(pairs[i].eta_p));
      table.add_metadata("eta_c_" + std::to_string(i), format_number(pairs[i].eta_c));
    }
  } else {
    const auto lambdas = grid_flag(a.lambda, "lambda");
    std::vector<InterferometerParams> params;
    for (double gain : gains) {
      for (const auto& e : eta_pairs(a.eta, {1.0, 1.0})) {
        params.emplace_back(gain, e.eta_p, e.eta_c);
      }
    }
    table = a.figure == "fig4a" ? curve_noise_vs_lambda(params, lambdas)
                                : curve_snri_vs_lambda(params, lambdas);
  }
  table.add_metadata("command", g.command_line);
  return {render(table, g), {}};
}

// ------------------------------------------------------------ lambda-opt

struct LambdaOptArgs {
  double gain = 0.0;
  std::optional<double> eta;
  double eta_p = 1.0;
  double eta_c = 1.0;
};

Output cmd_lambda_opt(const LambdaOptArgs& a, const Global& g) {
  const InterferometerParams p(a.gain, a.eta ? *a.eta : a.eta_p,
                               a.eta ? *a.eta : a.eta_c);
  const double l = lambda_opt(p);
  if (g.format == "json") {
    ordered_json j;
    j["gain"] = p.gain();
    j["eta_p"] = p.eta_p();
    j["eta_c"] = p.eta_c();
    j["lambda_opt"] = l;
    j["noise_db"] = joint_noise_power(p, l).variance_db;
    j["snri_sql2_db"] = snri(p, l, SqlKind::kSql2);
    j["snri_sql1_db"] = snri(p, l, SqlKind::kSql1);
    return {j.dump(2) + "\n", {}};
  }
  return {format_number(l) + "\n", {}};
}

// -------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string lambda = "0:1:0.05";
  int trials = 1;
  std::string records;
  bool fig2 = false;
  double fig2_lambda = 1.0;
};

SimConfig load_config(const SimulateArgs& a, const Global& g) {
  const std::string text = read_file(a.config);
  std::set<std::string> replaced;
  std::string extra;
  for (const auto& o : a.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      throw DomainError("--set expects key=value, got '" + o + "'");
    }
    const std::string key(trim(std::string_view(o).substr(0, eq)));
    if (!replaced.insert(key).second) {
      throw DomainError("--set given twice for '" + key + "'");
    }
    extra += key + " = " + std::string(trim(std::string_view(o).substr(eq + 1))) + "\n";
  }
  std::string merged;
  for (auto line : split_lines(text)) {
    const auto eq = line.find('=');
    const auto hash = line.find('#');
    if (eq != std::string_view::npos && (hash == std::string_view::npos || eq < hash) &&
        replaced.count(std::string(trim(line.substr(0, eq))))) {
      continue;
    }
    merged += std::string(line) + "\n";
  }
  SimConfig c = parse_sim_config(merged + extra);
  if (g.seed) c.rng_seed = *g.seed;
  c.validate();
  return c;
}

std::string dataset_text(const NoiseDataset& d, const Global& g) {
  if (g.format != "json") return d.to_csv();
  ordered_json j;
  j["source"] = std::string(source_name(d.source()));
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : d.metadata()) meta[k] = v;
  j["metadata"] = meta;
  j["rows"] = ordered_json::array();
  for (const auto& r : d.rows()) {
    j["rows"].push_back({{"lambda", r.lambda}, {"noise_db", r.noise_db},
                         {"sigma_db", r.sigma_db}});
  }
  return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> config_pairs(const SimConfig& c) {
  const std::string text = c.to_config_text();
  std::vector<std::pair<std::string, std::string>> out;
  for (auto line : split_lines(text)) {
    const auto eq = line.find('=');
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::string records_csv(const MeasurementRecord& r) {
  std::string s;
  for (const auto& [k, v] : config_pairs(r.config)) s += "# " + k + ": " + v + "\n";
  s += "sample,probe,conjugate\n";
  for (std::size_t i = 0; i < r.probe.size(); ++i) {
    s += std::to_string(i) + "," + format_number(r.probe[i]) + "," +
         format_number(r.conjugate[i]) + "\n";
  }
  return s;
}

std::string fig2_text(const Fig2Result& r, const SimConfig& c, const Global& g) {
  const std::vector<std::pair<std::string, double>> values{
      {"lambda", r.lambda},
      {"improvement_db", r.improvement_db()},
      {"tone_ratio", r.tone_ratio()},
      {"squeezed_floor_db", r.squeezed_floor.power_db},
      {"coherent_floor_db", r.coherent_floor.power_db},
      {"squeezed_tone_db", r.squeezed_tone.power_db},
      {"coherent_tone_db", r.coherent_tone.power_db}};
  if (g.format == "json") {
    ordered_json j;
    for (const auto& [k, v] : values) j[k] = v;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : config_pairs(c)) cfg[k] = v;
    j["config"] = cfg;
    j["command"] = g.command_line;
    return j.dump(2) + "\n";
  }
  std::string s;
  for (const auto& [k, v] : config_pairs(c)) s += "# " + k + ": " + v + "\n";
  s += "# command: " + g.command_line + "\nquantity,value\n";
  for (const auto& [k, v] : values) s += k + "," + format_number(v) + "\n";
  return s;
}

Output cmd_simulate(const SimulateArgs& a, const Global& g, std::ostream& err) {
  const SimConfig c = load_config(a, g);
  Output out;
  if (a.fig2) {
    out.main = fig2_text(fig2_comparison(c, a.fig2_lambda), c, g);
  } else {
    const auto grid = grid_flag(a.lambda, "lambda");
    const auto t0 = std::chrono::steady_clock::now();
    NoiseDataset d = measure_noise_vs_lambda(c, grid, a.trials);
    if (g.verbosity > 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      err << "simulated " << grid.size() << " points x " << a.trials << " trials in "
          << format_number(dt.count()) << " s\n";
    }
    d.add_metadata("command", g.command_line);
    out.main = dataset_text(d, g);
  }
  if (!a.records.empty()) out.files.emplace_back(a.records, records_csv(simulate_records(c)));
  return out;
}

// ------------------------------------------------------------------- fit

struct FitArgs {
  std::vector<std::string> data;
  std::optional<double> loss_offset;
  bool free_loss = false;
  std::optional<double> initial_gain;
  std::optional<double> initial_eta_c;
  int max_iterations = 200;
  std::string overlay;
  std::string lambda = "0:1:0.01";
  std::string report;
  double reference_eta_p = 0.745;
  double reference_eta_c = 0.775;
};

std::string fit_csv(const FitResult& f, const Global& g) {
  std::string s = "# loss_offset: " +
                  (f.loss_offset ? format_number(*f.loss_offset) : std::string("free")) +
                  "\n# chi_square: " + format_number(f.chi_square) +
                  "\n# dof: " + std::to_string(f.dof) +
                  "\n# condition_number: " + format_number(f.condition_number) + "\n";
  for (const auto& w : f.warnings) s += "# warning: " + w + "\n";
  s += "# command: " + g.command_line + "\nparameter,value,sigma\n";
  const std::vector<std::tuple<const char*, double, double>> rows{
      {"gain", f.gain, f.sigma_gain},
      {"eta_p", f.eta_p, f.sigma_eta_p},
      {"eta_c", f.eta_c, f.sigma_eta_c},
      {"scale_db", f.scale_db, f.sigma_scale_db},
      {"squeezing", f.squeezing, f.sigma_squeezing},
      {"lambda_opt_fit", f.lambda_opt_fit, f.sigma_lambda_opt_fit},
      {"lambda_opt_direct", f.lambda_opt_direct, f.sigma_lambda_opt_direct}};
  for (const auto& [k, v, e] : rows) {
    s += std::string(k) + "," + format_number(v) + "," + format_number(e) + "\n";
  }
  return s;
}

Output cmd_fit(const FitArgs& a, const Global& g, std::ostream& err) {
  FitOptions o;
  if (a.free_loss) {
    o.loss_offset = std::nullopt;
  } else if (a.loss_offset) {
    o.loss_offset = *a.loss_offset;
  }
  o.initial_gain = a.initial_gain;
  o.initial_eta_c = a.initial_eta_c;
  o.max_iterations = a.max_iterations;
  o.validate();
  std::vector<NoiseDataset> data;
  for (const auto& path : a.data) data.push_back(load_noise_csv(path));
  const auto grid = grid_flag(a.lambda, "lambda");

  Output out;
  if (data.size() == 1) {
    FitResult f;
    try {
      f = fit_noise_curve(data[0], o);
    } catch (const FitFailure& e) {
      err << "best effort:\n" << e.best_effort().summary();
      throw;
    } catch (const DomainError& e) {
      throw FitStageError(e.what());
    }
    for (const auto& w : f.warnings) err << "warning: " << w << "\n";
    if (g.verbosity > 0) err << f.summary();
    if (g.format == "json") {
      auto j = ordered_json::parse(f.to_json());
      j["command"] = g.command_line;
      out.main = j.dump(2) + "\n";
    } else {
      out.main = fit_csv(f, g);
    }
    if (!a.overlay.empty()) {
      for (SqlKind k : {SqlKind::kSql1, SqlKind::kSql2}) {
        CurveTable t = overlay_theory(f, k, grid);
        t.add_metadata("command", g.command_line);
        out.files.emplace_back(
            a.overlay + (k == SqlKind::kSql1 ? "_sql1" : "_sql2") + extension(g), render(t, g));
      }
    }
    if (!a.report.empty()) throw DomainError("--report needs at least two --data files");
    return out;
  }
  if (!a.overlay.empty()) throw DomainError("--overlay takes a single --data file");
  GainReport r{CurveTable("fig8", {"gain"}), {}};
  try {
    r = lambda_opt_vs_gain_report(data, o, {a.reference_eta_p, a.reference_eta_c});
  } catch (const DomainError& e) {
    throw FitStageError(e.what());
  }
  for (const auto& f : r.failures) err << "warning: fit failed for " << f << "\n";
  r.table.add_metadata("command", g.command_line);
  out.main = render(r.table, g);
  if (!a.report.empty()) {
    out.files.emplace_back(a.report, std::move(out.main));
    out.main.clear();
  }
  return out;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  int cutoff = kDefaultFockCutoff;
  std::string gain = "1,1.2,1.5,2";
  std::string alpha = "0,0.5,1";
  std::string eta = "1,0.76";
  std::string lambda = "0,0.5,1";
  double tolerance = 1e-6;
  bool no_pipeline = false;
};

double scaled_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

template <typename A, typename B>
double max_scaled_error(const A& got, const B& want) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < want.size(); ++i) {
    e = std::max(e, scaled_error(got.data()[i], want.data()[i]));
  }
  return e;
}

std::string line(const char* check, double gain, double alpha, double eta,
                 double lambda, double want, double got, double error,
                 const char* status) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%-9s %5.3g %5.3g %5.3g %6.4g %14.9f %14.9f %9.2e  %s\n", check,
                gain, alpha, eta, lambda, want, got, error, status);
  return buf;
}

Output cmd_verify(const VerifyArgs& a, const Global& g, std::ostream& err,
                  int& exit_code) {
  const auto gains = grid_flag(a.gain, "gain");
  const auto alphas = grid_flag(a.alpha, "alpha");
  const auto etas = grid_flag(a.eta, "eta");
  const auto lambdas = grid_flag(a.lambda, "lambda");
  if (!(a.tolerance > 0.0)) throw DomainError("--tolerance must be > 0");
  if (a.cutoff < 10) throw DomainError("--cutoff must be >= 10");
  for (double gain : gains) InterferometerParams(gain, 1.0, 1.0);
  for (double e : etas) InterferometerParams(1.0, e, e);
  for (double l : lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw DomainError("--lambda values must lie in [0,1]");
  }

  std::string table =
      "check      gain alpha   eta lambda       gaussian           fock     error  status\n";
  int passed = 0, warned = 0, failed = 0;
  for (double gain : gains) {
    for (double alpha : alphas) {
      std::optional<FockState> pure;
      try {
        pure = build_seeded_tmss_fock(gain, alpha, a.cutoff);
      } catch (const TruncationError& e) {
        err << "warning: G=" << format_number(gain) << " alpha=" << format_number(alpha)
            << " truncated at cutoff " << e.cutoff() << " (norm deficit "
            << format_number(e.deficit()) << "); skipped\n";
        for (double eta : etas) {
          table += line("oracle", gain, alpha, eta, NAN, NAN, NAN, NAN, "TRUNCATED");
          ++warned;
        }
        continue;
      }
      const bool flagged = pure->report().warn();
      if (flagged) {
        err << "warning: G=" << format_number(gain) << " alpha=" << format_number(alpha)
            << " norm deficit " << format_number(pure->report().norm_deficit)
            << " at cutoff " << a.cutoff << "\n";
      }
      for (double eta : etas) {
        const InterferometerParams p(gain, eta, eta, alpha);
        const FockState f = apply_loss_fock(
            apply_loss_fock(*pure, eta, Mode::kProbe), eta, Mode::kConjugate);
        const GaussianState want = lossy_state(p);
        const GaussianState got = oracle_moments(f);
        const double moment_err = std::max(max_scaled_error(got.mean, want.mean),
                                           max_scaled_error(got.cov, want.cov));
        for (double l : lambdas) {
          const double w = joint_noise_power(p, l).variance;
          const double v = oracle_quadrature_variance(f, l);
          const double e = std::max(moment_err, scaled_error(v, w));
          const char* status = "PASS";
          if (e <= a.tolerance) {
            ++passed;
          } else if (flagged) {
            status = "WARN";
            ++warned;
          } else {
            status = "FAIL";
            ++failed;
          }
          table += line("oracle", gain, alpha, eta, l, w, v, e, status);
        }
      }
    }
  }

  if (!a.no_pipeline) {
    SimConfig c;
    c.params = InterferometerParams(1.67, 0.76, 0.79);
    c.duration = 0.25;
    if (g.seed) c.rng_seed = *g.seed;
    const auto grid = parse_grid("0:1:0.05");
    const FitResult f = fit_noise_curve(measure_noise_vs_lambda(c, grid, 1));
    const double e = std::abs(f.gain - 1.67);
    const bool ok = e <= 2.0 * f.sigma_gain;
    (ok ? passed : failed)++;
    table += line("pipeline", 1.67, 0.0, 0.76, f.lambda_opt_fit, 1.67, f.gain,
                  e / f.sigma_gain, ok ? "PASS" : "FAIL");
  }
  table += std::to_string(passed) + " passed, " + std::to_string(warned) +
           " warned, " + std::to_string(failed) + " failed\n";
  if (failed > 0) exit_code = kRuntimeFailure;
  return {table, {}};
}

void write_outputs(const Output& o, const Global& g, std::ostream& out) {
  for (const auto& [path, text] : o.files) write_file_atomic(path, text);
  if (g.output.empty()) {
    out << o.main;
  } else if (!o.main.empty()) {
    write_file_atomic(g.output, o.main);
  }
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  const std::string_view s = trim(text);
  auto number = [&](std::string_view part) {
    const auto v = parse_double(trim(part));
    if (!v || !std::isfinite(*v)) {
      throw DomainError("bad number '" + std::string(trim(part)) + "' in grid '" +
                        std::string(s) + "'");
    }
    return *v;
  };
  if (s.empty()) throw DomainError("empty grid");
  if (s.find(':') != std::string_view::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw DomainError("grid must be start:stop:step");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0)) throw DomainError("grid step must be > 0");
    if (stop < start) throw DomainError("grid stop is below start");
    const double span = (stop - start) / step;
    if (span > 1e7) throw DomainError("grid has too many points");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-12 / step)) + 1;
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = start + static_cast<double>(k) * step;
    if (std::abs(out.back() - stop) <= 1e-12) out.back() = stop;
    return out;
  }
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(number(part));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Two-mode squeezed light interferometry toolkit", "tsui"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  g.command_line = join_args(args);
  app.add_option("-o,--output", g.output, "Write the main result to this file");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("-v,--verbose", g.verbosity, "Print progress and fit summaries");
  app.add_option("--seed", g.seed, "Override the random seed");

  auto add_eta = [](CLI::App* sub, EtaFlags& e) {
    auto* both = sub->add_option("--eta", e.eta, "Transmission of both beams (list)");
    sub->add_option("--eta-p", e.eta_p, "Probe transmission (list)")->excludes(both);
    sub->add_option("--eta-c", e.eta_c, "Conjugate transmission (list)")->excludes(both);
  };

  CurvesArgs curves;
  auto* c = app.add_subcommand("curves", "Write theory curves for a figure");
  c->add_option("figure", curves.figure, "fig3, fig4a, fig4b, fig6 or fig8")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4a", "fig4b", "fig6", "fig8"}));
  c->add_option("--gain", curves.gain, "Gain grid start:stop:step or list")->required();
  c->add_option("--lambda", curves.lambda, "Lambda grid")->capture_default_str();
  c->add_option("--alpha", curves.alpha, "Seed amplitude for fig3")->capture_default_str();
  add_eta(c, curves.eta);

  LambdaOptArgs lo;
  auto* l = app.add_subcommand("lambda-opt", "Print the optimal weight");
  l->add_option("--gain", lo.gain, "Gain G >= 1")->required();
  auto* lboth = l->add_option("--eta", lo.eta, "Transmission of both beams");
  l->add_option("--eta-p", lo.eta_p, "Probe transmission")->excludes(lboth);
  l->add_option("--eta-c", lo.eta_c, "Conjugate transmission")->excludes(lboth);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Simulate homodyne records and noise spectra");
  s->add_option("--config", sim.config, "Simulator config file")->required();
  s->add_option("--set", sim.overrides, "Override a config key (key=value)");
  s->add_option("--lambda", sim.lambda, "Lambda grid")->capture_default_str();
  s->add_option("--trials", sim.trials, "Independent records per point")->capture_default_str()
      ->check(CLI::Range(1, 1000));
  s->add_option("--records", sim.records, "Also write the raw record CSV here");
  s->add_flag("--fig2", sim.fig2, "Squeezed vs coherent noise floor comparison");
  s->add_option("--fig2-lambda", sim.fig2_lambda, "Weight for --fig2")->capture_default_str();

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "Fit noise-vs-lambda data");
  f->add_option("--data", fit.data, "Noise dataset CSV (repeat for a gain report)")
      ->required();
  auto* off = f->add_option("--loss-offset", fit.loss_offset,
                            "Tie eta_p = eta_c - offset (default 0.03)");
  f->add_flag("--free-loss", fit.free_loss, "Fit eta_p and eta_c independently")
      ->excludes(off);
  f->add_option("--initial-gain", fit.initial_gain, "Extra starting gain");
  f->add_option("--initial-eta-c", fit.initial_eta_c, "Extra starting eta_c");
  f->add_option("--max-iterations", fit.max_iterations, "Iterations per start")->capture_default_str();
  f->add_option("--overlay", fit.overlay, "Write SNRI overlays to PREFIX_sql{1,2}");
  f->add_option("--lambda", fit.lambda, "Overlay lambda grid")->capture_default_str();
  f->add_option("--report", fit.report, "Write the lambda_opt vs gain table here");
  f->add_option("--reference-eta-p", fit.reference_eta_p, "Theory column eta_p")->capture_default_str();
  f->add_option("--reference-eta-c", fit.reference_eta_c, "Theory column eta_c")->capture_default_str();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check the Gaussian model against Fock numerics");
  v->add_option("--cutoff", ver.cutoff, "Fock cutoff per mode")->capture_default_str();
  v->add_option("--gain", ver.gain, "Gains")->capture_default_str();
  v->add_option("--alpha", ver.alpha, "Seed amplitudes")->capture_default_str();
  v->add_option("--eta", ver.eta, "Transmissions (both beams)")->capture_default_str();
  v->add_option("--lambda", ver.lambda, "Weights")->capture_default_str();
  v->add_option("--tolerance", ver.tolerance, "Error tolerance")->capture_default_str();
  v->add_flag("--no-pipeline", ver.no_pipeline, "Skip the simulate-and-fit check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  int code = kOk;
  try {
    Output o;
    if (c->parsed()) {
      o = cmd_curves(curves, g);
    } else if (l->parsed()) {
      o = cmd_lambda_opt(lo, g);
    } else if (s->parsed()) {
      o = cmd_simulate(sim, g, err);
    } else if (f->parsed()) {
      o = cmd_fit(fit, g, err);
    } else {
      o = cmd_verify(ver, g, err, code);
    }
    write_outputs(o, g, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedConfiguration& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return code;
}

}  // namespace tsui::cli
