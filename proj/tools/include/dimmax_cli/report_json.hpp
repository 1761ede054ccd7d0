#pragma once

#include <json.hpp>

#include "dimmax/gradient.hpp"
#include "dimmax/measure_eval.hpp"
#include "dimmax/operator_diagnostics.hpp"
#include "dimmax/optimizer.hpp"
#include "dimmax/tail_analysis.hpp"
#include "dimmax_cli/run_config.hpp"

namespace dimmax::cli {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const RunConfig& c);
nlohmann::json to_json(const ProbVec& p);
nlohmann::json to_json(const Estimate& e);
nlohmann::json to_json(const EvalReport& r);
nlohmann::json to_json(const GradReport& g);
nlohmann::json to_json(const OptimizeResult& r);
nlohmann::json to_json(const SweepEntry& e);
nlohmann::json to_json(const Extrapolation& e);
nlohmann::json to_json(const SweepResult& s);
nlohmann::json to_json(const PowerLawFit& f);
nlohmann::json to_json(const RatioAudit& a);
nlohmann::json to_json(const ContractionReport& r);
nlohmann::json to_json(const CorrelationReport& r);
nlohmann::json to_json(const PressureProbe& p);

}  // namespace dimmax::cli
