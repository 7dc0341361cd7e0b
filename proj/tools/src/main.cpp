#include <algorithm>
#include <exception>
#include <functional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hypertest/error.hpp"

int main(int argc, char** argv) {
  using namespace hypertest;
  cli::GlobalOptions global;
  global.workers = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"hypertest: community-structure tests for hypergraphs"};
  app.set_version_flag("--version", HYPERTEST_VERSION);
  app.require_subcommand(1);
  app.add_option("--seed", global.seed, "seed for every random draw (default: drawn and printed)");
  app.add_option("--workers", global.workers, "simulation threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--output,-o", global.output,
                 "output path (report file, CSV, or file prefix for generate/ingest)");
  app.add_option("--format", global.format, "report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::function<int()> action;
  cli::add_subcommands(app, global, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::InvalidConfig ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
