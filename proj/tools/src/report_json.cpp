#include "dimmax_cli/report_json.hpp"

namespace dimmax::cli {

using nlohmann::json;

namespace {

json vec(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

const char* scheme_name(OperatorDiscretization::Scheme s) {
  return s == OperatorDiscretization::Scheme::chebyshev ? "chebyshev" : "uniform_grid";
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  j["n"] = c.n ? json(*c.n) : json(nullptr);
  j["n_list"] = c.n_list;
  j["depth"] = c.depth ? json(*c.depth) : json(nullptr);
  j["iters"] = c.iterations;
  j["nodes"] = c.nodes;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["max_iter"] = c.max_iter;
  j["method"] = to_string(c.method);
  j["format"] = to_string(c.format);
  return j;
}

json to_json(const ProbVec& p) { return vec(p.weights()); }

json to_json(const Estimate& e) { return {{"value", e.value}, {"err", e.err}}; }

json to_json(const EvalReport& r) {
  json method;
  if (r.method.kind == MethodTag::Kind::cylinder) {
    method = {{"kind", "cylinder"}, {"depth", r.method.depth}};
  } else {
    method = {{"kind", "operator"},
              {"iterations", r.method.iterations},
              {"nodes", r.method.nodes},
              {"scheme", scheme_name(r.method.scheme)}};
  }
  method["label"] = r.method.describe();
  return {{"entropy", r.entropy},
          {"lyapunov", r.lyapunov},
          {"dimension", r.dimension},
          {"entropy_err", r.entropy_err},
          {"lyapunov_err", r.lyapunov_err},
          {"rigorous", r.rigorous},
          {"method", method}};
}

json to_json(const GradReport& g) {
  return {{"entropy", g.entropy},
          {"lyapunov", g.lyapunov},
          {"dimension", g.dimension},
          {"dh", g.dh},
          {"dlam", g.dlam},
          {"dlam_leading", g.dlam_leading},
          {"dlam_correction", g.dlam_correction},
          {"dd", g.dd},
          {"digit_integrals", g.digit_integrals},
          {"criticality", g.criticality},
          {"crit_residual", g.crit_residual}};
}

json to_json(const OptimizeResult& r) {
  return {{"n", r.p.support_n()},
          {"weights", to_json(r.p)},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"method", to_string(r.method)},
          {"residual_history", r.residual_history},
          {"dimension_history", r.dimension_history},
          {"evaluation", to_json(r.report)},
          {"gradient", to_json(r.grad)}};
}

json to_json(const SweepEntry& e) {
  return {{"n", e.n},
          {"dimension", e.dimension},
          {"residual", e.residual},
          {"converged", e.converged},
          {"iterations", e.iterations},
          {"weights", to_json(e.p)}};
}

json to_json(const Extrapolation& e) {
  return {{"valid", e.valid},
          {"limit", e.limit},
          {"scale", e.scale},
          {"exponent", e.exponent},
          {"used_n", e.used_n},
          {"holdout_residual", e.holdout_residual ? json(*e.holdout_residual) : json(nullptr)},
          {"note", e.note}};
}

json to_json(const SweepResult& s) {
  json per_n = json::array();
  for (const auto& e : s.per_n) per_n.push_back(to_json(e));
  return {{"per_n", per_n},
          {"d_max", s.d_max},
          {"D_estimate", s.D_estimate},
          {"extrapolation", to_json(s.extrapolation)}};
}

json to_json(const PowerLawFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared},
          {"k_lo", f.k_lo},
          {"k_hi", f.k_hi}};
}

json to_json(const RatioAudit& a) {
  json violations = json::array();
  for (const auto& v : a.violations) {
    violations.push_back({{"i", v.i},
                          {"j", v.j},
                          {"log_ratio", v.log_ratio},
                          {"lower", v.lower},
                          {"upper", v.upper},
                          {"margin", v.margin}});
  }
  return {{"pairs_checked", a.pairs_checked},
          {"slack", a.slack},
          {"ok", a.ok()},
          {"violations", violations}};
}

json to_json(const ContractionReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"label", e.label},
                       {"derivative_sup", e.derivative_sup},
                       {"value_sup", e.value_sup},
                       {"derivative_of_w_sup", e.derivative_of_w_sup},
                       {"ratio", e.ratio},
                       {"lipschitz_ratio", e.lipschitz_ratio}});
  }
  return {{"bound", kContractionBound},
          {"entries", entries},
          {"max_ratio", r.max_ratio},
          {"max_lipschitz_ratio", r.max_lipschitz_ratio},
          {"slack", r.slack},
          {"flagged", r.flagged},
          {"lipschitz_flagged", r.lipschitz_flagged}};
}

json to_json(const CorrelationReport& r) {
  return {{"certificates", r.certificates},
          {"direct", r.direct},
          {"v_mean", r.v_mean},
          {"w_mean", r.w_mean},
          {"v_sup", r.v_sup}};
}

json to_json(const PressureProbe& p) {
  return {{"t_grid", p.t_grid}, {"logs", p.logs}, {"d1", p.d1}, {"d2", p.d2}, {"step", p.step}};
}

}  // namespace dimmax::cli
