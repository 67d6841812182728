#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hcs {

using ordered_json = nlohmann::ordered_json;

// Structured record of one lemma/theorem check.  The verdict is a pure
// function of the named residuals against the named tolerances: for every
// tolerance entry there is a residual of the same name, and the check
// passes iff every residual <= its tolerance.
struct VerificationReport {
  std::string statement_id;
  ordered_json inputs = ordered_json::object();
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, double>> empirical_constants;
  std::vector<std::pair<std::string, double>> tolerances;
  bool passed = false;

  void add_residual(const std::string& name, double v) {
    residuals.emplace_back(name, v);
  }
  void add_constant(const std::string& name, double v) {
    empirical_constants.emplace_back(name, v);
  }
  void add_tolerance(const std::string& name, double v) {
    tolerances.emplace_back(name, v);
  }
  double residual(const std::string& name) const;
  // recompute `passed` from residuals vs tolerances
  bool evaluate();
  static bool recompute_passed(const ordered_json& report_json);

  ordered_json to_json() const;
};

struct ReportBundle {
  ordered_json config = ordered_json::object();
  std::string config_hash;
  bool deterministic = false;
  std::vector<VerificationReport> reports;

  bool all_passed() const;
  ordered_json to_json() const;  // adds generated_at unless deterministic
  void write(const std::string& path) const;
};

// FNV-1a over the canonical config serialization
std::string hash_config(const ordered_json& config);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace hcs
