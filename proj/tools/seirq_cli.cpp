// Command-line front end. Talks to the library exclusively through the C
// interface, exercising the same surface an external binding would use.
//
// Exit codes: 0 success, 2 unusable input or configuration, 3 a verification
// or analysis failure on valid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seirq/seirq.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAnalysis = 3;

[[noreturn]] void die_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitUsage);
}

// Failed library calls end the run; whether that is a usage problem or an
// analysis result depends on the call site, so the caller picks the code.
void check(seirq_status st, int exit_code = kExitUsage) {
  if (st == SEIRQ_OK) return;
  std::cerr << "error: " << seirq_last_error() << "\n";
  std::exit(exit_code);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) die_usage("cannot open config file '" + path + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    die_usage("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) die_usage("config file must hold a JSON object");
  return cfg;
}

// Flags win over the config file: a key is consulted only when its flag was
// not given on the command line.
template <typename T>
void merge(const CLI::App& app, const std::string& flag, const json& cfg,
           const std::string& key, T& value) {
  if (app.count(flag) > 0) return;
  if (!cfg.contains(key)) return;
  try {
    value = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    die_usage("config key '" + key + "' has the wrong type");
  }
}

std::string format_row(long day, const seirq_state& x) {
  char line[192];
  std::snprintf(line, sizeof line, "%ld,%.16e,%.16e,%.16e,%.16e\n", day, x.s,
                x.e, x.i, x.r);
  return line;
}

// Opens path for writing, with "-" meaning stdout.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (path == "-") return;
    file_.open(path);
    if (!file_) die_usage("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Shared scenario options for simulate and fit.
struct ScenarioOptions {
  double a = NAN, b = NAN, beta = NAN, q = NAN;
  double s0 = 0, e0 = 0, i0 = 0, r0 = 0;
  long steps = 300;
  double population = 0;  // 0 = not configured
  bool counts = false;
  std::string config_path;
};

void add_param_flags(CLI::App* cmd, ScenarioOptions& o) {
  cmd->add_option("--config", o.config_path,
                  "JSON config file; explicit flags win over it");
  cmd->add_option("--a", o.a, "incubation rate");
  cmd->add_option("--b", o.b, "recovery rate");
  cmd->add_option("--beta", o.beta, "contact-transmission rate");
  cmd->add_option("--q", o.q, "exposed-contact scaling");
}

void add_state_flags(CLI::App* cmd, ScenarioOptions& o) {
  cmd->add_option("--s0", o.s0, "initial susceptible fraction (or count)");
  cmd->add_option("--e0", o.e0, "initial exposed fraction (or count)");
  cmd->add_option("--i0", o.i0, "initial infectious fraction (or count)");
  cmd->add_option("--r0", o.r0, "initial recovered fraction (or count)");
  cmd->add_option("--population", o.population,
                  "population size; sets the completion threshold to 1/N");
  cmd->add_flag("--counts", o.counts,
                "read --s0/--e0/--i0/--r0 as absolute counts summing to the "
                "population");
}

void merge_params(const CLI::App& cmd, const json& cfg, ScenarioOptions& o) {
  merge(cmd, "--a", cfg, "a", o.a);
  merge(cmd, "--b", cfg, "b", o.b);
  merge(cmd, "--beta", cfg, "beta", o.beta);
  merge(cmd, "--q", cfg, "q", o.q);
}

void merge_state(const CLI::App& cmd, const json& cfg, ScenarioOptions& o) {
  merge(cmd, "--s0", cfg, "s0", o.s0);
  merge(cmd, "--e0", cfg, "e0", o.e0);
  merge(cmd, "--i0", cfg, "i0", o.i0);
  merge(cmd, "--r0", cfg, "r0", o.r0);
  merge(cmd, "--population", cfg, "population", o.population);
  merge(cmd, "--counts", cfg, "counts", o.counts);
}

seirq_params require_params(const ScenarioOptions& o) {
  for (const auto& [name, v] : {std::pair<const char*, double>{"a", o.a},
                                {"b", o.b},
                                {"beta", o.beta},
                                {"q", o.q}}) {
    if (std::isnan(v))
      die_usage(std::string("parameter '") + name +
                "' missing: give --" + name + " or a config entry");
  }
  seirq_params p{o.beta, o.q, o.a, o.b};
  char msg[512];
  const int violations = seirq_params_validate(&p, msg, sizeof msg);
  if (violations != 0) die_usage(std::string("inadmissible parameters: ") + msg);
  return p;
}

seirq_state resolve_state(const ScenarioOptions& o) {
  seirq_state x{o.s0, o.e0, o.i0, o.r0};
  if (o.counts) {
    if (!(o.population > 0))
      die_usage("counts mode requires --population > 0");
    const double total = x.s + x.e + x.i + x.r;
    if (!(std::fabs(total - o.population) <= 1e-6 * o.population))
      die_usage("counts must sum to the population (sum = " +
                std::to_string(total) + ", population = " +
                std::to_string(o.population) + ")");
    x = {x.s / o.population, x.e / o.population, x.i / o.population,
         x.r / o.population};
  }
  return x;
}

json state_json(const seirq_state& x) {
  return json{{"s", x.s}, {"e", x.e}, {"i", x.i}, {"r", x.r}};
}

json params_json(const seirq_params& p) {
  return json{{"a", p.a}, {"b", p.b}, {"beta", p.beta}, {"q", p.q}};
}

// ---- simulate -----------------------------------------------------------

int run_simulate(const ScenarioOptions& o, double threshold_override,
                 const std::string& out_path, const std::string& format,
                 const std::string& summary_path) {
  const seirq_params p = require_params(o);
  const seirq_state x0 = resolve_state(o);

  seirq_trajectory* traj = nullptr;
  check(seirq_simulate(&p, &x0, o.steps, &traj));
  const long days = seirq_trajectory_days(traj);

  double threshold = NAN;
  if (threshold_override > 0)
    threshold = threshold_override;
  else if (o.population > 0)
    threshold = 1.0 / o.population;

  long peak_day = 0;
  double peak_value = 0;
  check(seirq_trajectory_peak(traj, &peak_day, &peak_value));

  long completion = -1;
  if (!std::isnan(threshold))
    check(seirq_trajectory_completion_day(traj, threshold, &completion));

  long decay_day = -1;
  check(seirq_trajectory_decay_entry_day(traj, &decay_day));

  seirq_limit_report limit{};
  check(seirq_find_limit(&p, &x0, 0, 0, &limit));

  json summary{
      {"params", params_json(p)},
      {"initial_state", state_json(x0)},
      {"days", days},
      {"peak", {{"day", peak_day}, {"infectious", peak_value}}},
      {"completion",
       {{"threshold", std::isnan(threshold) ? json(nullptr) : json(threshold)},
        {"day", completion < 0 ? json(nullptr) : json(completion)}}},
      {"decay_entry_day", decay_day < 0 ? json(nullptr) : json(decay_day)},
      {"limit",
       {{"state", state_json(limit.limit)},
        {"iterations", limit.iterations},
        {"converged", limit.converged != 0},
        {"critical_alpha",
         limit.bound_applicable ? json(limit.critical) : json(nullptr)},
        {"below_critical",
         limit.bound_applicable ? json(limit.bound_ok != 0) : json(nullptr)}}}};
  if (o.population > 0) {
    summary["population"] = o.population;
    summary["peak"]["infectious_count"] = peak_value * o.population;
  }

  OutputFile out(out_path);
  if (format == "csv") {
    out.stream() << "n,s,e,i,r\n";
    for (long n = 0; n <= days; ++n) {
      seirq_state x{};
      check(seirq_trajectory_state(traj, n, &x));
      out.stream() << format_row(n, x);
    }
  } else if (format == "json") {
    json doc{{"summary", summary}, {"states", json::array()}};
    for (long n = 0; n <= days; ++n) {
      seirq_state x{};
      check(seirq_trajectory_state(traj, n, &x));
      json row = state_json(x);
      row["n"] = n;
      doc["states"].push_back(std::move(row));
    }
    out.stream() << doc.dump(2) << "\n";
  } else {
    die_usage("unknown format '" + format + "' (expected csv or json)");
  }

  if (summary_path == "-") {
    std::cout << summary.dump(2) << "\n";
  } else if (!summary_path.empty()) {
    std::ofstream sf(summary_path);
    if (!sf) die_usage("cannot open summary file '" + summary_path + "'");
    sf << summary.dump(2) << "\n";
  } else if (format == "csv") {
    std::cerr << summary.dump(2) << "\n";
  }

  seirq_trajectory_free(traj);
  return kExitOk;
}

// ---- analyze ------------------------------------------------------------

int run_analyze(const ScenarioOptions& o, std::vector<double> alphas,
                const std::vector<double>& sweep,
                const std::string& out_path) {
  const seirq_params p = require_params(o);

  if (!sweep.empty() && !alphas.empty())
    die_usage("give either --alpha values or --sweep, not both");
  if (alphas.empty()) {
    double lo = 0.0, hi = 1.0, step = 0.1;
    if (!sweep.empty()) {
      lo = sweep[0];
      hi = sweep[1];
      step = sweep[2];
    }
    if (!(step > 0)) die_usage("sweep step must be > 0");
    if (!(lo <= hi)) die_usage("sweep needs LO <= HI");
    // Multiples of step from lo, never past hi; the epsilon keeps an exact
    // endpoint from being dropped to rounding.
    const long count = static_cast<long>((hi - lo) / step + 1e-9);
    for (long k = 0; k <= count; ++k) {
      const double alpha = lo + step * static_cast<double>(k);
      alphas.push_back(alpha > hi ? hi : alpha);
    }
  }

  double critical = NAN;
  const seirq_status crit_status = seirq_critical_alpha(&p, &critical);

  json doc{{"params", params_json(p)},
           {"critical_alpha",
            crit_status == SEIRQ_OK ? json(critical) : json(nullptr)},
           {"reports", json::array()}};

  for (double alpha : alphas) {
    seirq_spectral_report rep{};
    check(seirq_spectral(&p, alpha, &rep));
    doc["reports"].push_back(
        {{"alpha", rep.alpha},
         {"mu1", rep.mu1},
         {"mu2", rep.mu2},
         {"mu3", rep.mu3},
         {"discriminant", rep.discriminant},
         {"regime", seirq_regime_name(rep.regime)},
         {"dims",
          {{"stable", rep.dim_stable},
           {"center", rep.dim_center},
           {"unstable", rep.dim_unstable}}}});
  }

  OutputFile out(out_path);
  out.stream() << doc.dump(2) << "\n";
  return kExitOk;
}

// ---- qso ----------------------------------------------------------------

int run_qso(const ScenarioOptions& o, const std::string& out_path) {
  // The tensor is defined for any finite parameters; verification is the
  // point of this command, so inadmissible values must get through to it.
  for (const auto& [name, v] : {std::pair<const char*, double>{"a", o.a},
                                {"b", o.b},
                                {"beta", o.beta},
                                {"q", o.q}}) {
    if (std::isnan(v))
      die_usage(std::string("parameter '") + name +
                "' missing: give --" + name + " or a config entry");
  }
  const seirq_params p{o.beta, o.q, o.a, o.b};

  seirq_tensor* tensor = nullptr;
  check(seirq_tensor_build(&p, &tensor));

  size_t needed = 0;
  check(seirq_tensor_format(tensor, nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(seirq_tensor_format(tensor, text.data(), text.size(), &needed));
  text.resize(needed - 1);

  {
    OutputFile out(out_path);
    out.stream() << text;
  }

  seirq_tensor_report rep{};
  check(seirq_tensor_verify(tensor, 0, &rep));
  seirq_tensor_free(tensor);

  json verdict{{"params", params_json(p)},
               {"symmetry_ok", rep.symmetry_ok != 0},
               {"nonneg_ok", rep.nonneg_ok != 0},
               {"stochastic_ok", rep.stochastic_ok != 0},
               {"worst_symmetry", rep.worst_symmetry},
               {"worst_negativity", rep.worst_negativity},
               {"worst_stochastic", rep.worst_stochastic}};
  std::cerr << verdict.dump(2) << "\n";

  const bool ok = rep.symmetry_ok && rep.nonneg_ok && rep.stochastic_ok;
  return ok ? kExitOk : kExitAnalysis;
}

// ---- fit ----------------------------------------------------------------

seirq_axis parse_axis(const std::vector<double>& v, const std::string& name) {
  if (v.size() != 3)
    die_usage("--" + name + " needs three values: LO HI POINTS");
  const double points = v[2];
  if (points < 1 || points != std::floor(points))
    die_usage("--" + name + " POINTS must be a positive integer");
  return {v[0], v[1], static_cast<int>(points)};
}

int run_fit(const ScenarioOptions& o, const CLI::App& cmd, const json& cfg,
            long peak_day, long completion_day, bool has_completion,
            std::vector<double> box_a, std::vector<double> box_b,
            std::vector<double> box_beta, std::vector<double> box_q,
            const std::string& out_path) {
  if (!(o.population > 0))
    die_usage("fit requires --population > 0 (defines the completion "
              "threshold 1/N)");
  const seirq_state x0 = resolve_state(o);

  seirq_target target{};
  target.x0 = x0;
  target.peak_day = peak_day;
  target.population = o.population;
  target.has_completion_day = has_completion ? 1 : 0;
  target.completion_day = completion_day;

  seirq_search_box box = seirq_default_search_box();
  auto apply_axis = [&](const char* flag, const char* key,
                        std::vector<double>& v, seirq_axis& axis) {
    merge(cmd, flag, cfg, key, v);
    if (!v.empty()) axis = parse_axis(v, std::string(flag).substr(2));
  };
  apply_axis("--box-a", "box_a", box_a, box.a);
  apply_axis("--box-b", "box_b", box_b, box.b);
  apply_axis("--box-beta", "box_beta", box_beta, box.beta);
  apply_axis("--box-q", "box_q", box_q, box.q);

  seirq_fit_result* result = nullptr;
  check(seirq_fit(&box, &target, &result));

  json ranked = json::array();
  const long n = seirq_fit_result_size(result);
  for (long rank = 0; rank < n; ++rank) {
    seirq_params cand{};
    double loss = 0;
    check(seirq_fit_result_entry(result, rank, &cand, &loss));
    ranked.push_back({{"params", params_json(cand)}, {"loss", loss}});
  }

  json axis_json;
  for (const auto& [name, axis] :
       {std::pair<const char*, seirq_axis>{"a", box.a},
        {"b", box.b},
        {"beta", box.beta},
        {"q", box.q}}) {
    axis_json[name] = {{"lo", axis.lo}, {"hi", axis.hi},
                       {"points", axis.points}};
  }

  json doc{{"target",
            {{"peak_day", peak_day},
             {"completion_day",
              has_completion ? json(completion_day) : json(nullptr)},
             {"population", o.population},
             {"initial_state", state_json(x0)}}},
           {"box", axis_json},
           {"evaluations", seirq_fit_result_evaluations(result)},
           {"best", ranked.empty() ? json(nullptr) : ranked.front()},
           {"ranked", ranked}};
  seirq_fit_result_free(result);

  OutputFile out(out_path);
  out.stream() << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time SEIR epidemic model on the population simplex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(seirq_version()));

  ScenarioOptions sim_o, ana_o, qso_o, fit_o;

  // simulate
  auto* sim = app.add_subcommand("simulate",
                                 "iterate the map and write the trajectory");
  add_param_flags(sim, sim_o);
  add_state_flags(sim, sim_o);
  sim->add_option("--steps", sim_o.steps, "days to simulate");
  double threshold_override = 0;
  sim->add_option("--completion-threshold", threshold_override,
                  "override the completion threshold (fraction, not count)");
  std::string sim_out = "-", sim_format = "csv", sim_summary;
  sim->add_option("--out", sim_out, "trajectory destination ('-' = stdout)");
  sim->add_option("--format", sim_format, "csv or json");
  sim->add_option("--summary", sim_summary,
                  "summary destination ('-' = stdout; default stderr)");

  // analyze
  auto* ana = app.add_subcommand("analyze",
                                 "classify fixed points of the map");
  add_param_flags(ana, ana_o);
  std::vector<double> alphas, sweep;
  ana->add_option("--alpha", alphas,
                  "fixed-point coordinates to classify (repeatable)");
  ana->add_option("--sweep", sweep, "sweep LO HI STEP over alpha")
      ->expected(3);
  std::string ana_out = "-";
  ana->add_option("--out", ana_out, "report destination ('-' = stdout)");

  // qso
  auto* qso = app.add_subcommand(
      "qso", "dump the quadratic-operator tensor and verify its axioms");
  add_param_flags(qso, qso_o);
  std::string qso_out = "-";
  qso->add_option("--out", qso_out, "tensor dump destination ('-' = stdout)");

  // fit
  auto* fit = app.add_subcommand("fit",
                                 "grid-search parameters against target days");
  add_param_flags(fit, fit_o);  // --a etc. unused but --config shared
  add_state_flags(fit, fit_o);
  long peak_day = 0, completion_day = 0;
  auto* peak_opt = fit->add_option("--peak-day", peak_day,
                                   "observed peak day (required)");
  auto* comp_opt = fit->add_option("--completion-day", completion_day,
                                   "observed completion day (optional)");
  std::vector<double> box_a, box_b, box_beta, box_q;
  fit->add_option("--box-a", box_a, "a axis: LO HI POINTS")->expected(3);
  fit->add_option("--box-b", box_b, "b axis: LO HI POINTS")->expected(3);
  fit->add_option("--box-beta", box_beta, "beta axis: LO HI POINTS")
      ->expected(3);
  fit->add_option("--box-q", box_q, "q axis: LO HI POINTS")->expected(3);
  std::string fit_out = "-";
  fit->add_option("--out", fit_out, "report destination ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (sim->parsed()) {
    json cfg;
    if (!sim_o.config_path.empty()) cfg = load_config(sim_o.config_path);
    merge_params(*sim, cfg, sim_o);
    merge_state(*sim, cfg, sim_o);
    merge(*sim, "--steps", cfg, "steps", sim_o.steps);
    merge(*sim, "--completion-threshold", cfg, "completion_threshold",
          threshold_override);
    return run_simulate(sim_o, threshold_override, sim_out, sim_format,
                        sim_summary);
  }
  if (ana->parsed()) {
    json cfg;
    if (!ana_o.config_path.empty()) cfg = load_config(ana_o.config_path);
    merge_params(*ana, cfg, ana_o);
    return run_analyze(ana_o, alphas, sweep, ana_out);
  }
  if (qso->parsed()) {
    json cfg;
    if (!qso_o.config_path.empty()) cfg = load_config(qso_o.config_path);
    merge_params(*qso, cfg, qso_o);
    return run_qso(qso_o, qso_out);
  }
  if (fit->parsed()) {
    json cfg;
    if (!fit_o.config_path.empty()) cfg = load_config(fit_o.config_path);
    merge_state(*fit, cfg, fit_o);
    merge(*fit, "--peak-day", cfg, "peak_day", peak_day);
    merge(*fit, "--completion-day", cfg, "completion_day", completion_day);
    const bool has_completion =
        comp_opt->count() > 0 || cfg.contains("completion_day");
    if (peak_opt->count() == 0 && !cfg.contains("peak_day"))
      die_usage("fit requires --peak-day or a 'peak_day' config entry");
    return run_fit(fit_o, *fit, cfg, peak_day, completion_day, has_completion,
                   box_a, box_b, box_beta, box_q, fit_out);
  }
  return kExitUsage;
}
