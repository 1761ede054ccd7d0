#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dimmax/optimizer.hpp"

namespace dimmax::cli {

enum class Command { evaluate, optimize, sweep, diagnose };
enum class OutputFormat { json, csv, tsv, all };

const char* to_string(Command c);
const char* to_string(OutputFormat f);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxAlphabet = 16384;
inline constexpr std::size_t kMaxIterations = 100000;
inline constexpr std::size_t kMaxDegree = 1024;

struct RunConfig {
  Command command = Command::evaluate;
  std::optional<std::size_t> n;
  std::vector<std::size_t> n_list;
  std::optional<std::vector<double>> weights;
  // Cylinder depth; when unset the evaluator picks the deepest enumeration
  // within budget.
  std::optional<std::size_t> depth;
  std::size_t iterations = kDefaultOperatorIterations;
  // Chebyshev degree of the operator discretization (nodes = degree + 1).
  std::size_t nodes = OperatorDiscretization::kDefaultDegree;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t max_iter = 5000;
  AscentMethod method = AscentMethod::fixed_point;
  std::size_t battery = 20;
  std::size_t correlation_depth = 40;
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::all;

  // Throws ConfigError when a value is out of range or a required input for
  // the command is missing.
  void validate() const;
  OperatorDiscretization discretization() const;
};

// "0.5, 0.25 0.25", or "@path" naming a file with the same content or a
// weights.csv file written by a previous run (header "k,p_k").
std::vector<double> parse_weights(std::string_view arg);
std::vector<std::size_t> parse_n_list(std::string_view text);

}  // namespace dimmax::cli
