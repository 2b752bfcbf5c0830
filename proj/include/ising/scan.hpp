#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ising {

inline constexpr const char* kVersion = "1.0.0";

enum class ScanCommand { gl, entropy, scan_lambda, scan_d, surface, fit_k, model_compare, oracle_check };
enum class OutputFormat { csv, json };

const char* command_name(ScanCommand c);

/// Parses "x", "a,b,c", "start:end:count" (inclusive linspace, count >= 2),
/// or comma-joined mixtures. Throws ValidationError.
std::vector<double> parse_real_list(const std::string& text);

/// Like parse_real_list, but every value must be an integer. Also accepts
/// "start:end" as the inclusive unit-step range.
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// A validated scan. Grids are kept in the order they are evaluated and
/// printed.
struct ScanRequest {
  ScanCommand command = ScanCommand::entropy;
  std::vector<double> lambdas;
  std::vector<std::int64_t> block_sizes;  // L values
  std::vector<std::int64_t> distances;    // d values
  std::vector<std::int64_t> chain_sizes;  // n, oracle-check only
  std::int64_t l_max = 0;                 // gl only
  std::pair<std::int64_t, std::int64_t> fit_range{10, 200};
  bool k_given = false;                   // model-compare: skip the fit
  double k_const = 0.0;
  OutputFormat format = OutputFormat::csv;
  std::string output = "-";
  unsigned threads = 1;
  /// Raw option text as supplied, echoed into the JSON meta block.
  std::vector<std::pair<std::string, std::string>> params;

  /// Throws ValidationError on empty grids or out-of-domain values.
  void validate() const;
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Evaluates the grid. Throws NumericError naming the failing grid point.
ScanTable evaluate_scan(const ScanRequest& req);

/// CSV: comma separated, header row, 17 significant digits. Empty cells for
/// values that are undefined at a grid point.
std::string render_csv(const ScanTable& table);

/// {"meta": {"command", "params", "version"}, "rows": [{column: value}]}.
std::string render_json(const ScanTable& table, const ScanRequest& req);

/// Evaluates, renders and writes to req.output ("-" is `out`). Returns the
/// process exit code: 0 ok, 1 numeric failure, 2 validation error; messages
/// go to `err`.
int run_scan(const ScanRequest& req, std::ostream& out, std::ostream& err);

}  // namespace ising
