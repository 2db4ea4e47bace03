#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sshe::cli {

enum class Command { ssh, single_well, bands, reduce, homotopy, finite_volume };
enum class OutputFormat { csv, pretty };

std::string command_name(Command c);

/// A fully resolved invocation: every parameter of the command is present
/// (defaults filled in), numeric values already validated.
struct RunConfig {
  Command command = Command::homotopy;
  std::map<std::string, std::string> parameters;
  std::optional<std::filesystem::path> output_path;
  std::optional<std::filesystem::path> svg_path;
  OutputFormat format = OutputFormat::pretty;

  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  bool has(const std::string& key) const;
};

/// Thrown for --help; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `args` excludes the program name: {command, flags...}. Config-file values
/// (flat `key = value`, via --config) are overridden by flags; defaults fill
/// the rest. Throws UsageError or ValidationError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs the command, writes the CSV and its manifest when an output path is
/// set, and prints the summary (or CSV with --format csv) to `out`.
int run(const RunConfig& config, std::ostream& out);

/// parse_config + run with error-to-exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sshe::cli
