#include "dimmax_cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dimmax::cli {

const char* to_string(Command c) {
  switch (c) {
    case Command::evaluate: return "evaluate";
    case Command::optimize: return "optimize";
    case Command::sweep: return "sweep";
    case Command::diagnose: return "diagnose";
  }
  return "unknown";
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::tsv: return "tsv";
    case OutputFormat::all: return "all";
  }
  return "unknown";
}

namespace {

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < text.size()) {
    while (i < text.size() && sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !sep(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ConfigError(std::string("cannot parse ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weights file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A weights.csv file: header "k,p_k", then one row per digit.
std::vector<double> parse_csv_rows(const std::string& text) {
  std::vector<double> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t expected = 1;
  while (std::getline(lines, line)) {
    const auto toks = tokens(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ConfigError("weights CSV rows must have two columns");
    if (toks[0] == "k") continue;
    if (parse_number<std::size_t>(toks[0], "digit") != expected) {
      throw ConfigError("weights CSV digits must run 1, 2, 3, ...");
    }
    out.push_back(parse_number<double>(toks[1], "weight"));
    ++expected;
  }
  return out;
}

}  // namespace

std::vector<double> parse_weights(std::string_view arg) {
  std::vector<double> out;
  if (!arg.empty() && arg.front() == '@') {
    const std::string text = read_file(std::string(arg.substr(1)));
    if (text.rfind("k,p_k", 0) == 0) {
      out = parse_csv_rows(text);
    } else {
      for (auto tok : tokens(text)) out.push_back(parse_number<double>(tok, "weight"));
    }
  } else {
    for (auto tok : tokens(arg)) out.push_back(parse_number<double>(tok, "weight"));
  }
  if (out.empty()) throw ConfigError("no weights given");
  return out;
}

std::vector<std::size_t> parse_n_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto tok : tokens(text)) out.push_back(parse_number<std::size_t>(tok, "n"));
  if (out.empty()) throw ConfigError("empty --n-list");
  return out;
}

void RunConfig::validate() const {
  auto check_n = [](std::size_t v) {
    if (v < 2 || v > kMaxAlphabet) {
      throw ConfigError("n must lie in [2, " + std::to_string(kMaxAlphabet) + "], got " +
                        std::to_string(v));
    }
  };
  if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
  if (iterations < 1 || iterations > kMaxIterations) throw ConfigError("--iters out of range");
  if (max_iter < 1 || max_iter > kMaxIterations) throw ConfigError("--max-iter out of range");
  if (nodes + 1 < OperatorDiscretization::kMinNodes || nodes > kMaxDegree) {
    throw ConfigError("--nodes must lie in [" + std::to_string(OperatorDiscretization::kMinNodes - 1) +
                      ", " + std::to_string(kMaxDegree) + "]");
  }
  if (depth && (*depth < 1 || *depth > kMaxCylinderDepth)) {
    throw ConfigError("--depth must lie in [1, " + std::to_string(kMaxCylinderDepth) + "]");
  }
  if (battery < 1) throw ConfigError("battery size must be positive");
  switch (command) {
    case Command::evaluate:
      if (!weights) throw ConfigError("evaluate needs --weights");
      break;
    case Command::optimize:
      if (!n) throw ConfigError("optimize needs --n");
      check_n(*n);
      break;
    case Command::sweep:
      if (n_list.empty()) throw ConfigError("sweep needs --n-list");
      for (std::size_t i = 0; i < n_list.size(); ++i) {
        check_n(n_list[i]);
        if (i > 0 && n_list[i] <= n_list[i - 1]) {
          throw ConfigError("--n-list must be strictly increasing");
        }
      }
      break;
    case Command::diagnose:
      if (!weights && !n) throw ConfigError("diagnose needs --weights or --n");
      if (!weights) check_n(*n);
      break;
  }
}

OperatorDiscretization RunConfig::discretization() const {
  return OperatorDiscretization::chebyshev(nodes);
}

}  // namespace dimmax::cli
