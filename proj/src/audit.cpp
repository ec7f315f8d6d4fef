// Copyright 2026 The mechlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mechlab/audit.hpp"

#include <algorithm>

namespace mechlab {

void AuditReport::add_violation(Violation v) {
  ++violation_count_;
  max_violation_ = std::max(max_violation_, v.slack);
  if (violations_.size() < kMaxStoredViolations) {
    violations_.push_back(std::move(v));
  }
}

void AuditReport::merge(const AuditReport& other) {
  checked_ += other.checked_;
  violation_count_ += other.violation_count_;
  max_violation_ = std::max(max_violation_, other.max_violation_);
  for (const Violation& v : other.violations_) {
    if (violations_.size() >= kMaxStoredViolations) break;
    violations_.push_back(v);
  }
  for (const std::string& n : other.notes_) notes_.push_back(n);
}

nlohmann::json to_json(const AuditReport& report) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const Violation& v : report.violations()) {
    nlohmann::json types = nlohmann::json::array();
    for (const TypePoint& p : v.witnesses) types.push_back(p.v);
    witnesses.push_back(
        {{"types", types}, {"slack", v.slack}, {"detail", v.detail}});
  }
  nlohmann::json out = {
      {"check", report.check()},
      {"pass", report.passed()},
      {"tolerance", report.tolerance()},
      {"checked", report.checked()},
      {"violation_count", report.violation_count()},
      {"max_violation", report.max_violation()},
      {"witnesses", witnesses},
  };
  if (!report.notes().empty()) out["notes"] = report.notes();
  return out;
}

}  // namespace mechlab
