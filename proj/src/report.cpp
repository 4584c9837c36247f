#include "thg/report.hpp"

#include <algorithm>

namespace thg {

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::Indeterminate || b == Verdict::Indeterminate) return Verdict::Indeterminate;
  return Verdict::True;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Confirmed: return "confirmed";
    case CheckStatus::Vacuous: return "vacuous";
    case CheckStatus::Violation: return "VIOLATION";
    case CheckStatus::Indeterminate: return "indeterminate";
    case CheckStatus::DocumentedException: return "documented-exception";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "FAIL";
}

bool is_failure(CheckStatus s) { return s == CheckStatus::Fail || s == CheckStatus::Violation; }

void CheckReport::append(const CheckReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

bool CheckReport::ok() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const CheckEntry& e) { return is_failure(e.status); }));
}

std::size_t CheckReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const CheckEntry& e) { return e.status == s; }));
}

nlohmann::ordered_json to_json(const CheckEntry& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["model"] = e.model;
  j["n"] = e.n;
  j["status"] = to_string(e.status);
  j["rule"] = e.rule;
  j["reference"] = e.reference;
  j["provenance"] = e.provenance;
  j["detail"] = e.detail;
  return j;
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) out.push_back(to_json(e));
  return out;
}

}  // namespace thg
