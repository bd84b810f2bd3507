#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fpl/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy logic programs with Borel-set truth values"};

  std::string file;
  std::string query;
  std::string engine = "topdown";
  std::string strategy = "df";
  fpl::SessionConfig config;
  bool interactive = false;

  // FPL_DEPTH replaces the built-in default; --depth still wins.
  if (const char* env = std::getenv("FPL_DEPTH")) {
    try {
      config.depth_limit = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "FPL_DEPTH: not a count: " << env << "\n";
      return 2;
    }
  }

  app.add_option("file", file, "Program to load (.fpl)");
  app.add_option("-q,--query", query, "Run one query and exit");
  app.add_option("--engine", engine, "Evaluation engine")
      ->check(CLI::IsMember({"topdown", "fixpoint"}));
  app.add_option("--strategy", strategy, "Top-down search order")
      ->check(CLI::IsMember({"df", "bf"}));
  app.add_option("--depth", config.depth_limit, "Transition limit per derivation")
      ->check(CLI::PositiveNumber);
  app.add_option("--eps", config.eps, "Strict-bound margin and lfp tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--trace", config.trace, "Print one line per transition");
  app.add_flag("-i,--interactive", interactive, "Start the REPL after loading");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the runtime-error status; help and version exit 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.engine = engine == "fixpoint" ? fpl::EngineKind::Fixpoint : fpl::EngineKind::TopDown;
  config.strategy = strategy == "bf" ? fpl::Strategy::BreadthFirst : fpl::Strategy::DepthFirst;
  if (config.depth_limit == 0) {
    std::cerr << "depth limit must be positive\n";
    return 2;
  }

  if (!file.empty() && !interactive) {
    std::optional<std::string> q;
    if (!query.empty()) q = query;
    return fpl::run_file(file, q, config, std::cout, std::cerr);
  }
  std::optional<std::string> path;
  if (!file.empty()) path = file;
  return fpl::run_repl(path, config, std::cin, std::cout, std::cerr, isatty(STDIN_FILENO) != 0);
}
