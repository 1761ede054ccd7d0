#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>
#include <variant>

#include "dimmax/error.hpp"
#include "dimmax/parallel.hpp"
#include "dimmax_cli/app.hpp"
#include "dimmax_cli/report_json.hpp"

#ifndef DIMMAX_VERSION
#define DIMMAX_VERSION "unknown"
#endif

namespace dimmax::cli {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string weights_csv(const ProbVec& p) {
  std::ostringstream s;
  s << std::setprecision(17) << "k,p_k\n";
  for (std::size_t k = 1; k <= p.support_n(); ++k) s << k << ',' << p.weights()[k - 1] << '\n';
  return s.str();
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// The default tail range when it holds at least 4 digits, otherwise all
// digits; for n < 4 the line through p_1 with slope -2d.
LineFit plot_line(const ProbVec& p, double d) {
  const std::size_t n = p.support_n();
  auto [lo, hi] = default_fit_range(n);
  if (hi < lo + 3) {
    lo = 1;
    hi = n;
  }
  if (hi >= lo + 3 && p.interior()) {
    const PowerLawFit f = fit_tail_exponent(p, lo, hi);
    return {f.slope, f.intercept};
  }
  return {-2.0 * d, std::log(p.weights()[0])};
}

std::string plot_tsv(const ProbVec& p, const LineFit& line) {
  std::ostringstream s;
  s << std::setprecision(17) << "log_k\tlog_p_k\tfitted\n";
  for (std::size_t k = 1; k <= p.support_n(); ++k) {
    const double pk = p.weights()[k - 1];
    if (!(pk > 0.0)) continue;
    const double lk = std::log(static_cast<double>(k));
    s << lk << '\t' << std::log(pk) << '\t' << line.intercept + line.slope * lk << '\n';
  }
  return s.str();
}

std::string tail_tsv(const ProbVec& p, double d) {
  std::ostringstream s;
  write_tail_tsv(s, tail_rows(p, d));
  return s.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

struct Artifacts {
  json report;
  const ProbVec* weights = nullptr;  // for weights.csv / plot.tsv / tail.tsv
  double dimension = 0.0;
};

// Shape diagnostics of an optimizer output: tail fit (when the default
// range is usable), comparability over that range and the ratio audit.
json shape_summary(const ProbVec& p, double d, double residual) {
  json j;
  const auto [lo, hi] = default_fit_range(p.support_n());
  if (hi >= lo + 3) {
    const PowerLawFit f = fit_tail_exponent(p, lo, hi);
    j["tail_fit"] = to_json(f);
    j["tail_fit"]["slope_plus_2d"] = f.slope + 2.0 * d;
    const ComparabilityBracket b = comparability(p, d, lo, hi);
    j["comparability"] = {{"min_scaled", b.min_scaled},
                          {"max_scaled", b.max_scaled},
                          {"factor", b.factor()}};
  } else {
    j["tail_fit"] = nullptr;
    j["comparability"] = nullptr;
  }
  if (p.interior() && d > 0.0 && d < 1.0) {
    j["ratio_audit"] = to_json(check_ratio_bounds(p, d, 10.0 * residual));
  } else {
    j["ratio_audit"] = nullptr;
  }
  return j;
}

json lyapunov_estimates(const ProbVec& p, const RunConfig& c) {
  json j;
  std::optional<Estimate> cyl;
  std::size_t depth = 0;
  if (c.depth) {
    depth = *c.depth;
  } else {
    const EvalMethod m = default_method(p);
    if (const auto* cm = std::get_if<CylinderMethod>(&m)) depth = cm->depth;
  }
  if (depth > 0) {
    cyl = lyapunov_by_cylinders(p, depth);
    j["cylinder"] = to_json(*cyl);
    j["cylinder"]["depth"] = depth;
  } else {
    j["cylinder"] = nullptr;
  }
  const auto disc = c.discretization();
  const Estimate op = lyapunov_by_operator(p, disc, c.iterations);
  j["operator"] = to_json(op);
  j["operator"]["iterations"] = c.iterations;
  j["operator"]["nodes"] = disc.resolution();
  if (cyl) {
    j["difference"] = std::abs(cyl->value - op.value);
    j["agree"] = std::abs(cyl->value - op.value) <= cyl->err + op.err;
  } else {
    j["difference"] = nullptr;
    j["agree"] = nullptr;
  }
  return j;
}

EvalMethod primary_method(const ProbVec& p, const RunConfig& c) {
  if (c.depth) return CylinderMethod{*c.depth};
  EvalMethod m = default_method(p);
  if (std::holds_alternative<OperatorMethod>(m)) return OperatorMethod{c.iterations, c.discretization()};
  return m;
}

struct CommandResult {
  json body;
  std::optional<ProbVec> weights;
  double dimension = 0.0;
  bool converged = true;
};

CommandResult cmd_evaluate(const RunConfig& c) {
  const ProbVec p(*c.weights);
  CommandResult r;
  const EvalReport ev = dimension(p, primary_method(p, c));
  r.body["weights"] = to_json(p);
  r.body["evaluation"] = to_json(ev);
  r.body["lyapunov_estimates"] = lyapunov_estimates(p, c);
  if (p.interior() && ev.entropy > 0.0) {
    r.body["gradient"] = to_json(grad_dimension(p, c.discretization()));
  } else {
    r.body["gradient"] = nullptr;
  }
  r.weights = p;
  r.dimension = ev.dimension;
  return r;
}

OptimizeOptions optimize_options(const RunConfig& c) {
  OptimizeOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.method = c.method;
  o.disc = c.discretization();
  return o;
}

CommandResult cmd_optimize(const RunConfig& c) {
  const OptimizeResult res = maximize_on_simplex(*c.n, optimize_options(c));
  CommandResult r;
  r.body["result"] = to_json(res);
  r.body["shape"] = shape_summary(res.p, res.grad.dimension, res.grad.crit_residual);
  r.weights = res.p;
  r.dimension = res.grad.dimension;
  r.converged = res.converged;
  return r;
}

CommandResult cmd_sweep(const RunConfig& c) {
  const SweepResult s = sweep_n(c.n_list, optimize_options(c));
  CommandResult r;
  r.body["sweep"] = to_json(s);
  const SweepEntry& last = s.per_n.back();
  r.body["shape"] = shape_summary(last.p, last.dimension, last.residual);
  bool increasing = true;
  for (std::size_t i = 1; i < s.per_n.size(); ++i) {
    increasing = increasing && s.per_n[i].dimension > s.per_n[i - 1].dimension;
  }
  r.body["sweep"]["strictly_increasing"] = increasing;
  r.weights = last.p;
  r.dimension = last.dimension;
  for (const auto& e : s.per_n) r.converged = r.converged && e.converged;
  return r;
}

CommandResult cmd_diagnose(const RunConfig& c) {
  const auto disc = c.discretization();
  CommandResult r;
  ProbVec p = c.weights ? ProbVec(*c.weights) : ProbVec({1.0});
  if (!c.weights) {
    const OptimizeResult opt = maximize_on_simplex(*c.n, optimize_options(c));
    r.converged = opt.converged;
    p = opt.p;
    r.body["source"] = {{"kind", "optimum"},
                        {"n", *c.n},
                        {"converged", opt.converged},
                        {"crit_residual", opt.grad.crit_residual}};
  } else {
    r.body["source"] = {{"kind", "weights"}};
  }
  r.body["weights"] = to_json(p);

  json d;
  const std::vector<double> one(disc.resolution(), 1.0);
  double dev = 0.0;
  for (double v : apply_operator(p, one, disc)) dev = std::max(dev, std::abs(v - 1.0));
  d["stochasticity_max_deviation"] = dev;

  const auto battery = trig_battery(c.battery, c.seed);
  d["contraction"] = to_json(contraction_check(p, disc, battery));

  const auto v = battery.front();
  const auto w = battery.size() > 1 ? battery[1] : battery.front();
  d["correlation"] = to_json(correlation_decay(p, v, w, c.correlation_depth, disc));
  d["correlation"]["v"] = v.label;
  d["correlation"]["w"] = w.label;

  const PressureProbe probe = pressure_probe(p, disc);
  const Estimate lam = lyapunov_by_operator(p, disc, c.iterations);
  d["pressure"] = to_json(probe);
  d["pressure"]["lyapunov_operator"] = lam.value;
  d["pressure"]["d1_minus_lyapunov"] = probe.d1 - lam.value;

  json mixed = json::array();
  if (p.interior() && p.support_n() >= 2) {
    const auto g = grad_lyapunov(p, disc);
    const std::size_t n = p.support_n();
    std::vector<std::pair<Digit, Digit>> pairs{{1, 2}};
    if (n > 2) pairs.emplace_back(1, static_cast<Digit>(n));
    for (const auto& [i, j] : pairs) {
      const double delta = std::min(1e-4, 0.5 * std::min(p.weight(i), p.weight(j)));
      const double fd = pressure_mixed_partial(p, i, j, disc, delta);
      mixed.push_back({{"i", i},
                       {"j", j},
                       {"pressure_mixed_partial", fd},
                       {"dlam_difference", g.dlam[i - 1] - g.dlam[j - 1]},
                       {"abs_difference", std::abs(fd - (g.dlam[i - 1] - g.dlam[j - 1]))}});
    }
  }
  d["mixed_partials"] = mixed;
  r.body["diagnostics"] = d;
  r.weights = p;
  r.dimension = dimension(p, OperatorMethod{c.iterations, disc}).dimension;
  return r;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  int code = kExitOk;
  std::string message = "ok";
  CommandResult result;
  try {
    config.validate();
    switch (config.command) {
      case Command::evaluate: result = cmd_evaluate(config); break;
      case Command::optimize: result = cmd_optimize(config); break;
      case Command::sweep: result = cmd_sweep(config); break;
      case Command::diagnose: result = cmd_diagnose(config); break;
    }
    if (!result.converged) {
      code = kExitNotConverged;
      message = "optimization did not reach the requested tolerance; artifacts are partial";
    }
  } catch (const ConfigError& e) {
    log << "dimmax: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    log << "dimmax: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetError& e) {
    log << "dimmax: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    log << "dimmax: no convergence: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const std::exception& e) {
    log << "dimmax: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }

  json report = result.body;
  report["schema_version"] = kSchemaVersion;
  report["command"] = to_string(config.command);
  report["config"] = to_json(config);
  report["status"] = {{"converged", result.converged}, {"exit_code", code}, {"message", message}};

  try {
    fs::create_directories(config.out_dir);
    const bool all = config.format == OutputFormat::all;
    if (all || config.format == OutputFormat::json) {
      write_atomic(config.out_dir / "report.json", report.dump(2) + "\n");
      const json meta = {{"generated_at", utc_timestamp()},
                         {"dimmax_version", DIMMAX_VERSION},
                         {"threads", worker_count()}};
      write_atomic(config.out_dir / "metadata.json", meta.dump(2) + "\n");
    }
    if (result.weights && (all || config.format == OutputFormat::csv)) {
      write_atomic(config.out_dir / "weights.csv", weights_csv(*result.weights));
    }
    if (result.weights && (all || config.format == OutputFormat::tsv)) {
      write_atomic(config.out_dir / "plot.tsv",
                   plot_tsv(*result.weights, plot_line(*result.weights, result.dimension)));
      write_atomic(config.out_dir / "tail.tsv", tail_tsv(*result.weights, result.dimension));
    }
  } catch (const std::exception& e) {
    log << "dimmax: cannot write artifacts: " << e.what() << '\n';
    return kExitNumeric;
  }
  if (code != kExitOk) log << "dimmax: " << message << '\n';
  return code;
}

}  // namespace dimmax::cli
