#include <algorithm>
#include <cmath>
#include <ostream>

#include "minkqm/cli.hpp"
#include "minkqm/errors.hpp"

namespace minkqm::cli {

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return c.pass; });
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json doc;
  doc["command"] = r.command;
  doc["inputs"] = r.inputs;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const ResultItem& item : r.results) {
    nlohmann::ordered_json j;
    j["name"] = item.name;
    j["value"] = item.value;
    if (item.radius) j["radius"] = *item.radius;
    if (item.exact) j["exact"] = *item.exact;
    results.push_back(std::move(j));
  }
  doc["results"] = std::move(results);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckItem& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
  doc["checks"] = std::move(checks);
  return doc;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void render(const Report& r, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::json:
      out << to_json(r).dump(2) << '\n';
      return;
    case OutputFormat::csv:
      if (!r.rows.empty()) {
        out << "L,method,value,radius,params\n";
        for (const MomentRow& row : r.rows) {
          out << row.L << ',' << csv_field(row.method) << ',' << csv_field(row.value) << ',' << csv_field(row.radius)
              << ',' << csv_field(row.params) << '\n';
        }
      } else {
        out << "name,value,radius,exact\n";
        for (const ResultItem& item : r.results) {
          out << csv_field(item.name) << ',' << csv_field(item.value) << ',' << csv_field(item.radius.value_or(""))
              << ',' << (item.exact ? (*item.exact ? "true" : "false") : "") << '\n';
        }
      }
      for (const CheckItem& c : r.checks) out << "check," << csv_field(c.name) << ",," << (c.pass ? "pass" : "fail") << '\n';
      return;
    case OutputFormat::human:
      if (r.human_text) {
        out << *r.human_text << '\n';
      } else {
        for (const ResultItem& item : r.results) {
          out << item.name << " = " << item.value;
          if (item.radius && *item.radius != "0") out << " ± " << *item.radius;
          out << '\n';
        }
      }
      for (const CheckItem& c : r.checks) out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << '\n';
      if (!r.checks.empty()) {
        const auto passed = std::count_if(r.checks.begin(), r.checks.end(), [](const CheckItem& c) { return c.pass; });
        out << passed << '/' << r.checks.size() << " checks passed\n";
      }
      return;
  }
}

double RunConfig::eps() const { return std::pow(10.0, -precision); }

void RunConfig::validate() const {
  if (precision < 6) throw DomainError("--precision must be at least 6 digits");
  if (precision > 60) throw ResourceLimit("--precision is capped at 60 digits");
  auto positive = [](const std::optional<int>& v, const char* name) {
    if (v && *v <= 0) throw DomainError(std::string("--") + name + " must be positive");
  };
  positive(threads, "threads");
  positive(lmax, "lmax");
  positive(Q, "Q");
  positive(B, "B");
  positive(n, "n");
  positive(N, "N");
  positive(K, "K");
  positive(nodes, "nodes");
  if (T && !(*T > 0)) throw DomainError("--T must be positive");
  if (X && !(*X > 0)) throw DomainError("--X must be positive");
}

}  // namespace minkqm::cli
