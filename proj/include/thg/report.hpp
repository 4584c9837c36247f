#pragma once

// Three-valued verdicts and check reports shared by the fox, rhodes and cli modules.

#include <string>
#include <vector>

#include <json.hpp>

namespace thg {

/// Indeterminate means the model lacks the data to decide; it is never false.
enum class Verdict { True, False, Indeterminate };

inline Verdict verdict_of(bool b) { return b ? Verdict::True : Verdict::False; }
Verdict verdict_and(Verdict a, Verdict b);
std::string to_string(Verdict v);

enum class CheckStatus {
  Pass,
  Fail,
  Confirmed,
  Vacuous,
  Violation,
  Indeterminate,
  DocumentedException,
  NotApplicable,
};

std::string to_string(CheckStatus s);
bool is_failure(CheckStatus s);

struct CheckEntry {
  std::string id;          // stable check identifier, e.g. "fox.sequence"
  std::string model;
  int n = 0;               // degree, 0 when not degree-specific
  CheckStatus status = CheckStatus::Pass;
  std::string rule;        // rule that produced the verdict
  std::string reference;   // the property under test
  std::string provenance;  // "published", "derived" or "forced"
  std::string detail;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  void add(CheckEntry e) { entries.push_back(std::move(e)); }
  void append(const CheckReport& other);
  bool ok() const;
  std::size_t failures() const;
  std::size_t count(CheckStatus s) const;
};

nlohmann::ordered_json to_json(const CheckEntry& e);
nlohmann::ordered_json to_json(const CheckReport& r);

}  // namespace thg
