#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace minkqm::cli {

enum class OutputFormat { human, json, csv };

struct ResultItem {
  std::string name;
  std::string value;
  std::optional<std::string> radius;
  std::optional<bool> exact;
};

struct CheckItem {
  std::string name;
  bool pass = false;
};

/// One row of a moment table (CSV columns L, method, value, radius, params).
struct MomentRow {
  int L = 0;
  std::string method, value, radius, params;
};

struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<ResultItem> results;
  std::vector<CheckItem> checks;
  std::vector<MomentRow> rows;
  /// Replaces the default human rendering when set.
  std::optional<std::string> human_text;

  bool all_pass() const;
};

nlohmann::ordered_json to_json(const Report& r);
void render(const Report& r, OutputFormat format, std::ostream& out);

/// Caps and options shared by the subcommands.
struct RunConfig {
  int precision = 10;
  OutputFormat output = OutputFormat::human;
  std::optional<std::string> cache_path;
  std::optional<int> threads;
  std::optional<int> lmax, Q, B, n, N, K, nodes;
  std::optional<double> T, X;
  std::string rule = "tanh-sinh";

  double eps() const;
  void validate() const;
};

/// Individual commands; each throws the library errors on bad input.
Report qm_eval(const std::string& x, const RunConfig& cfg);
Report cf_expand(const std::string& x, const RunConfig& cfg);
Report cf_convert(const std::string& x, const RunConfig& cfg);
Report moments_compute(int L, const std::string& method, const RunConfig& cfg);
Report moments_table(int Lmax, const std::string& method, const RunConfig& cfg);
Report conjecture_qseq(int n, const RunConfig& cfg);
Report conjecture_m2(const RunConfig& cfg);
Report verify_all(const RunConfig& cfg, std::ostream* progress = nullptr);

/// Exit codes: 0 success, 1 failed checks, 2 usage or domain error, 3 precision unreachable,
/// 4 resource cap.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace minkqm::cli
