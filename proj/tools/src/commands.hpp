#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace CLI {
class App;
}

namespace hypertest::cli {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string output;
  std::string format = "text";
};

/// Bad flag combinations detected after parsing; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Registers every subcommand on `app`. The chosen one stores its body in
/// `action`, which main runs after parsing.
void add_subcommands(CLI::App& app, GlobalOptions& global, std::function<int()>& action);

}  // namespace hypertest::cli
