#include "hcs/report.hpp"

#include <chrono>
#include <fstream>

#include "hcs/error.hpp"

namespace hcs {

double VerificationReport::residual(const std::string& name) const {
  for (const auto& [k, v] : residuals)
    if (k == name) return v;
  raise(ErrorCode::InvalidArgument, "no residual named " + name);
}

bool VerificationReport::evaluate() {
  passed = true;
  for (const auto& [name, tol] : tolerances) {
    bool found = false;
    for (const auto& [rn, rv] : residuals)
      if (rn == name) {
        found = true;
        if (!(rv <= tol)) passed = false;
      }
    if (!found) passed = false;
  }
  return passed;
}

bool VerificationReport::recompute_passed(const ordered_json& j) {
  for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
    if (!j.at("residuals").contains(it.key())) return false;
    if (!(j.at("residuals").at(it.key()).get<double>() <= it.value().get<double>()))
      return false;
  }
  return true;
}

ordered_json VerificationReport::to_json() const {
  ordered_json j;
  j["statement_id"] = statement_id;
  j["inputs"] = inputs;
  ordered_json r = ordered_json::object();
  for (const auto& [k, v] : residuals) r[k] = v;
  j["residuals"] = r;
  ordered_json c = ordered_json::object();
  for (const auto& [k, v] : empirical_constants) c[k] = v;
  j["empirical_constants"] = c;
  ordered_json t = ordered_json::object();
  for (const auto& [k, v] : tolerances) t[k] = v;
  j["tolerances"] = t;
  j["passed"] = passed;
  return j;
}

bool ReportBundle::all_passed() const {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

ordered_json ReportBundle::to_json() const {
  ordered_json j;
  j["config"] = config;
  j["config_hash"] = config_hash;
  if (!deterministic) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    j["generated_at"] =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
  }
  ordered_json rs = ordered_json::array();
  for (const auto& r : reports) rs.push_back(r.to_json());
  j["reports"] = rs;
  j["all_passed"] = all_passed();
  return j;
}

void ReportBundle::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::InvalidArgument, "cannot open " + path);
  out << to_json().dump(2) << "\n";
}

std::string hash_config(const ordered_json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::InvalidArgument, "cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace hcs
