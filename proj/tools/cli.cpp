#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "ghill/asymptotics.hpp"
#include "ghill/data_io.hpp"
#include "ghill/diagnostics.hpp"
#include "ghill/distributions.hpp"
#include "ghill/errors.hpp"
#include "ghill/estimators.hpp"
#include "ghill/plot_series.hpp"

namespace ghill::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string model;
  std::optional<std::string> column;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> k;
  std::vector<double> p;
  double level = 0.95;
  std::size_t replicates = 1000;
  double fraction = 0.9;
  std::size_t exceedances = 200;
  std::string output;
  std::string format;
  double gamma = 1.0;
  std::optional<double> rho;
  std::vector<double> t;
  std::string curve = "second-order";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<double> kDefaultPlotP = {-0.1, -1.0};
constexpr std::string_view kSnowInput = "builtin:snow";

void add_source(CLI::App* sub, Options& o) {
  auto* input = sub->add_option("--input", o.input,
                                "Data file (one number per line, or CSV with --column); '-' reads stdin; "
                                "'builtin:snow' selects the embedded 41-value snow-load data");
  auto* model = sub->add_option("--model", o.model,
                                "Simulate from a model, e.g. pareto:alpha=2 hallweiss:alpha=1,rho=-1 "
                                "hillhorror:alpha=1 logerlang21 slowvarlog");
  input->excludes(model);
  sub->add_option("--column", o.column, "CSV column holding the observations");
  sub->add_option("--n", o.n, "Sample size drawn with --model")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for --model draws")->capture_default_str();
}

void add_output(CLI::App* sub, Options& o, const std::string& default_format) {
  sub->add_option("--output", o.output, "Write the result to this path (atomically) instead of stdout");
  sub->add_option("--format", o.format, "Output format (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
}

Sample load_sample(const Options& o, std::istream& in) {
  if (o.input.empty() == o.model.empty()) throw UsageError("exactly one of --input or --model is required");
  if (!o.model.empty()) {
    if (o.n < 1) throw UsageError("--n must be >= 1");
    return Sample(sample(parse_model_spec(o.model), o.n, Seed{o.seed}));
  }
  if (o.input == kSnowInput) {
    const auto snow = snow_fixture();
    return Sample(std::vector<double>(snow.begin(), snow.end()));
  }
  if (o.input == "-") return Sample(read_values(in, o.column));
  return Sample(load_values(o.input, o.column));
}

std::size_t require_k(const Options& o, std::size_t n) {
  if (!o.k) throw UsageError("--k is required");
  if (*o.k < 1 || *o.k >= n) {
    throw UsageError("--k must be in [1, " + std::to_string(n - 1) + "] for n = " + std::to_string(n));
  }
  return *o.k;
}

double single_p(const Options& o) {
  if (o.p.size() > 1) throw UsageError("this command takes a single --p");
  return o.p.empty() ? 0.0 : o.p.front();
}

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json series_json(const PlotSeries& s) {
  ordered_json j;
  j["x_label"] = s.x_label;
  j["x"] = s.x;
  ordered_json curves = ordered_json::object();
  for (const auto& [name, values] : s.curves) {
    ordered_json arr = ordered_json::array();
    for (double v : values) arr.push_back(number_or_null(v));
    curves[name] = arr;
  }
  j["curves"] = curves;
  if (s.band) {
    ordered_json lo = ordered_json::array(), hi = ordered_json::array();
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      lo.push_back(number_or_null(s.band->lower[i]));
      hi.push_back(number_or_null(s.band->upper[i]));
    }
    j["band"] = {{"lower", lo}, {"upper", hi}};
  } else {
    j["band"] = nullptr;
  }
  j["meta"] = s.meta;
  return j;
}

std::string render_series(const PlotSeries& s, const Options& o) {
  if (o.format == "json") return series_json(s).dump(2) + "\n";
  std::ostringstream os;
  write_csv(os, s);
  return os.str();
}

std::string render_json(const ordered_json& j, const Options& o) {
  if (o.format == "csv") throw UsageError("this command emits JSON only");
  return j.dump(2) + "\n";
}

/// Writes next to the target and renames so readers never see a partial file.
void emit(const std::string& content, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << content;
    return;
  }
  const std::filesystem::path target(o.output);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + tmp.string() + "'");
    f << content;
    f.close();
    if (!f) throw UsageError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw UsageError("cannot move output into '" + target.string() + "'");
  }
}

ordered_json estimate_json(const EstimateResult& r, double level) {
  ordered_json j;
  j["n"] = r.n;
  j["k"] = r.spec.k;
  j["p"] = r.spec.p;
  j["gamma_hat"] = r.gamma_hat;
  j["h"] = r.h_value ? ordered_json(*r.h_value) : ordered_json(nullptr);
  j["std_err"] = r.std_err ? ordered_json(*r.std_err) : ordered_json(nullptr);
  if (r.ci) {
    j["ci"] = {{"lower", r.ci->lower}, {"upper", r.ci->upper}, {"level", r.ci->level}};
    j["ci_reason"] = nullptr;
  } else {
    j["ci"] = nullptr;
    if (!confidence_interval_defined(r.spec.k, level)) {
      j["ci_reason"] = "sqrt(k) must exceed the normal quantile for level " + format_number(level);
    } else {
      j["ci_reason"] = "standard error undefined: p * gamma_hat >= 1/2";
    }
  }
  return j;
}

std::string cmd_estimate(const Options& o, std::istream& in) {
  const auto s = load_sample(o, in);
  const auto k = require_k(o, s.size());
  if (!(o.level > 0.0 && o.level < 1.0)) throw UsageError("--level must be in (0, 1)");
  auto r = generalized_hill(s, k, single_p(o));
  attach_asymptotics(r, o.level);
  return render_json(estimate_json(r, o.level), o);
}

std::string cmd_hillplot(const Options& o, std::istream& in) {
  const auto s = load_sample(o, in);
  const auto& ps = o.p.empty() ? kDefaultPlotP : o.p;
  return render_series(hill_plot_series(s, ps, o.level), o);
}

std::string cmd_fixedk(const Options& o, std::istream& in) {
  const auto s = load_sample(o, in);
  const auto k = require_k(o, s.size());
  const auto& ps = o.p.empty() ? kDefaultPlotP : o.p;
  return render_series(fixed_k_series(s, k, ps), o);
}

std::string cmd_meplot(const Options& o, std::istream& in) {
  return render_series(mean_excess_series(load_sample(o, in)), o);
}

std::string cmd_bootstrap(const Options& o, std::istream& in) {
  const auto s = load_sample(o, in);
  BootstrapConfig cfg;
  cfg.replicates = o.replicates;
  cfg.subsample_fraction = o.fraction;
  cfg.exceedance_target = o.exceedances;
  cfg.k = o.k.value_or(80);
  cfg.seed = Seed{o.seed};
  const std::string source = o.model.empty() ? o.input : o.model;
  return render_series(bootstrap_band(s, cfg, single_p(o), source).series, o);
}

std::string cmd_diag2nd(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  const auto model = parse_model_spec(o.model);
  if (o.curve == "c") {
    const std::vector<double> ns = o.t.empty() ? std::vector<double>{1e3, 1e4, 1e5, 1e6} : o.t;
    const auto rule = [](double n) { return static_cast<std::size_t>(std::floor(std::sqrt(n))); };
    return render_series(c_curve(model, ns, rule), o);
  }
  const std::vector<double> ts = o.t.empty() ? std::vector<double>{1e2, 1e3, 1e4, 1e5} : o.t;
  return render_series(to_plot_series(second_order_curve(model, ts), model), o);
}

std::string cmd_optp(const Options& o) {
  if (!(o.gamma > 0.0) || !std::isfinite(o.gamma)) throw UsageError("--gamma must be positive");
  const auto best = optimal_p_berry_esseen(o.gamma);
  const auto [lo, hi] = berry_esseen_superiority_interval();
  ordered_json j;
  j["gamma"] = o.gamma;
  j["p_opt"] = best.p;
  j["x_opt"] = best.x;
  j["phi_opt"] = best.phi;
  j["phi_hill"] = berry_esseen_phi(PGamma{0.0});
  j["interval"] = {lo / o.gamma, hi / o.gamma};
  if (o.rho) {
    j["rho"] = *o.rho;
    j["p_star"] = paulauskas_p_star(o.gamma, *o.rho);
  }
  return render_json(j, o);
}

std::string cmd_simulate(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  if (o.n < 1) throw UsageError("--n must be >= 1");
  const auto xs = sample(parse_model_spec(o.model), o.n, Seed{o.seed});
  if (o.format == "json") return ordered_json(xs).dump() + "\n";
  std::string text;
  for (double x : xs) text += format_number(x) + "\n";
  return text;
}

std::string cmd_snow_demo(const Options& o) {
  const auto snow = snow_fixture();
  const Sample s(std::vector<double>(snow.begin(), snow.end()));
  const double u = 1.65;
  std::size_t n_u = 0;
  for (double x : snow) n_u += x > u ? 1 : 0;
  const std::size_t k = 17;
  auto hill = generalized_hill(s, k, 0.0);
  attach_asymptotics(hill, o.level);
  const auto gh = generalized_hill(s, k, -0.1);
  const double x = 2.5;
  const double prob = pot_tail_probability(s.size(), n_u, u, hill.gamma_hat, x);
  ordered_json j;
  j["n"] = s.size();
  j["threshold"] = u;
  j["n_exceed"] = n_u;
  j["k"] = k;
  j["gamma_hill"] = hill.gamma_hat;
  j["gamma_gh"] = {{"p", -0.1}, {"value", gh.gamma_hat}};
  if (hill.ci) {
    j["ci"] = {{"lower", hill.ci->lower}, {"upper", hill.ci->upper}, {"level", hill.ci->level}};
  } else {
    j["ci"] = nullptr;
  }
  j["tail_probability"] = {{"x", x}, {"value", prob}, {"per_1000", 1000.0 * prob}};
  return render_json(j, o);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tail-index inference with the generalized Hill estimator", "ghill"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  Options o;

  auto* estimate = app.add_subcommand("estimate", "Point estimate, standard error and confidence interval (JSON)");
  add_source(estimate, o);
  estimate->add_option("--k", o.k, "Number of top order statistics");
  estimate->add_option("--p", o.p, "Power parameter (0 selects the Hill estimator)")->expected(1);
  estimate->add_option("--level", o.level, "Confidence level")->capture_default_str();
  add_output(estimate, o, "json");

  auto* hillplot = app.add_subcommand("hillplot", "Hill plot with generalized curves and normal band (CSV)");
  add_source(hillplot, o);
  hillplot->add_option("--p", o.p, "Power parameter, repeatable (default 0,-0.1,-1; the Hill curve is always present)");
  hillplot->add_option("--level", o.level, "Band confidence level")->capture_default_str();
  add_output(hillplot, o, "csv");

  auto* fixedk = app.add_subcommand("fixedk", "Estimates at fixed k over growing prefixes n = k+1..N (CSV)");
  add_source(fixedk, o);
  fixedk->add_option("--k", o.k, "Number of top order statistics");
  fixedk->add_option("--p", o.p, "Power parameter, repeatable (default 0,-0.1,-1)");
  add_output(fixedk, o, "csv");

  auto* meplot = app.add_subcommand("meplot", "Empirical mean excess function (CSV)");
  add_source(meplot, o);
  add_output(meplot, o, "csv");

  auto* bootstrap = app.add_subcommand("bootstrap", "Subsampling band of the fixed-k estimator (CSV)");
  add_source(bootstrap, o);
  bootstrap->add_option("--k", o.k, "Number of top order statistics (default 80)");
  bootstrap->add_option("--p", o.p, "Power parameter (default 0)")->expected(1);
  bootstrap->add_option("--replicates", o.replicates, "Number of subsamples")->capture_default_str();
  bootstrap->add_option("--fraction", o.fraction, "Subsample size as a fraction of N")->capture_default_str();
  bootstrap->add_option("--exceedances", o.exceedances, "Exceedances kept per subsample")->capture_default_str();
  add_output(bootstrap, o, "csv");

  auto* diag = app.add_subcommand("diag2nd", "Second-order diagnostics J, gamma representations, delta, a* (CSV)");
  diag->add_option("--model", o.model, "Model spec")->required();
  diag->add_option("--t", o.t, "Grid points, repeatable (default 1e2,1e3,1e4,1e5; for --curve c: n grid 1e3..1e6)");
  diag->add_option("--curve", o.curve, "second-order: J and representations over t; c: sqrt(k)(J(n/k) - gamma) with k = floor(sqrt(n))")
      ->check(CLI::IsMember({"second-order", "c"}))
      ->capture_default_str();
  add_output(diag, o, "csv");

  auto* optp = app.add_subcommand("optp", "Berry-Esseen optimal p and the superiority interval (JSON)");
  optp->add_option("--gamma", o.gamma, "Extreme value index")->capture_default_str();
  optp->add_option("--rho", o.rho, "Second-order parameter (<= 0); adds the Paulauskas-Vaiciulis p*");
  add_output(optp, o, "json");

  auto* simulate = app.add_subcommand("simulate", "Draw a sample from a model (one value per line)");
  simulate->add_option("--model", o.model, "Model spec")->required();
  simulate->add_option("--n", o.n, "Sample size")->capture_default_str();
  simulate->add_option("--seed", o.seed, "Seed")->capture_default_str();
  add_output(simulate, o, "csv");

  auto* snow = app.add_subcommand("snow-demo", "Threshold, estimates, interval and tail probability for the snow data (JSON)");
  snow->add_option("--level", o.level, "Confidence level")->capture_default_str();
  add_output(snow, o, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  try {
    std::string content;
    if (estimate->parsed()) content = cmd_estimate(o, in);
    else if (hillplot->parsed()) content = cmd_hillplot(o, in);
    else if (fixedk->parsed()) content = cmd_fixedk(o, in);
    else if (meplot->parsed()) content = cmd_meplot(o, in);
    else if (bootstrap->parsed()) content = cmd_bootstrap(o, in);
    else if (diag->parsed()) content = cmd_diag2nd(o);
    else if (optp->parsed()) content = cmd_optp(o);
    else if (simulate->parsed()) content = cmd_simulate(o);
    else content = cmd_snow_demo(o);
    emit(content, o, out);
    return ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return data;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return numeric;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ghill::cli
