#include "dimmax_cli/app.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>

namespace dimmax::cli {

namespace {

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ',';
    out += p;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal dimension of Bernoulli measures for the Gauss map", "dimmax"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a flat key=value file");
  app.set_version_flag("--version", std::string(DIMMAX_VERSION));

  RunConfig config;
  std::optional<std::size_t> n;
  std::vector<std::string> n_list;
  std::vector<std::string> weights;
  std::optional<std::size_t> depth;
  std::string out_dir = ".";

  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json},
                                                    {"csv", OutputFormat::csv},
                                                    {"tsv", OutputFormat::tsv},
                                                    {"all", OutputFormat::all}};
  const std::map<std::string, AscentMethod> methods{{"fixed_point", AscentMethod::fixed_point},
                                                    {"exp_gradient", AscentMethod::exp_gradient}};

  app.add_option("--n", n, "Alphabet size (optimize, diagnose)");
  app.add_option("--n-list", n_list, "Comma-separated increasing alphabet sizes (sweep)");
  app.add_option("--weights", weights, "Comma list of p_1..p_n, or @file");
  app.add_option("--depth", depth, "Cylinder enumeration depth");
  app.add_option("--iters", config.iterations, "Operator iterations")->capture_default_str();
  app.add_option("--nodes", config.nodes, "Chebyshev degree of the operator discretization")
      ->capture_default_str();
  app.add_option("--tol", config.tol, "Tolerance on the criticality residual")->capture_default_str();
  app.add_option("--max-iter", config.max_iter, "Optimizer iteration cap")->capture_default_str();
  app.add_option("--method", config.method, "Ascent method")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case))
      ->option_text("{fixed_point,exp_gradient} [fixed_point]");
  app.add_option("--seed", config.seed, "Seed for randomized test batteries")->capture_default_str();
  app.add_option("--battery", config.battery, "Number of battery functions (diagnose)")
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Directory for artifacts")->capture_default_str();
  app.add_option("--format", config.format, "Artifacts to write")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("{json,csv,tsv,all} [all]");

  auto* evaluate = app.add_subcommand("evaluate", "Entropy, Lyapunov exponent and dimension of p");
  auto* optimize = app.add_subcommand("optimize", "Maximize the dimension over P_n");
  auto* sweep = app.add_subcommand("sweep", "Maximize over P_n for each n in --n-list");
  auto* diagnose = app.add_subcommand("diagnose", "Transfer operator and pressure diagnostics");

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dimmax: " << e.what() << '\n';
    return kExitConfig;
  }

  if (evaluate->parsed()) config.command = Command::evaluate;
  if (optimize->parsed()) config.command = Command::optimize;
  if (sweep->parsed()) config.command = Command::sweep;
  if (diagnose->parsed()) config.command = Command::diagnose;

  try {
    config.n = n;
    config.depth = depth;
    config.out_dir = out_dir;
    if (!n_list.empty()) config.n_list = parse_n_list(joined(n_list));
    if (!weights.empty()) config.weights = parse_weights(joined(weights));
  } catch (const ConfigError& e) {
    err << "dimmax: configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(config, err);
}

}  // namespace dimmax::cli
