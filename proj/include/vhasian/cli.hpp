#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vhasian/pricing.hpp"

namespace vhasian {

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
inline constexpr int numeric = 3;
}  // namespace exit_codes

enum class OutputFormat { table, csv, json };

OutputFormat parse_output_format(const std::string& name);
std::string to_string(OutputFormat format);

struct CliConfig {
  ModelParams params;
  double alpha = 1.0;
  QuadratureSpec quad;
  std::size_t n_steps = kDefaultRiccatiSteps;
  OutputFormat format = OutputFormat::table;
  bool parallel = false;

  void validate() const;
  Kernel kernel() const { return Kernel::from_alpha(alpha); }

  friend bool operator==(const CliConfig& a, const CliConfig& b);
};

/// One priced cell as rendered by the CLI.
struct PriceRecord {
  OptionType type = OptionType::fixed_asian_call;
  double T = 0.0;
  std::optional<double> K;
  double alpha = 1.0;
  PriceResult result;
};

/// JSON document {"config": ..., "result": ...}. `price` is rounded to four
/// decimals; `price_full` keeps every bit.
std::string to_json_text(const CliConfig& config, const PriceRecord& record);
std::pair<CliConfig, PriceRecord> from_json_text(const std::string& text);

/// Entry point behind the `vhasian` executable. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vhasian
