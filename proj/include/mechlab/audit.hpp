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

#ifndef MECHLAB_AUDIT_HPP_
#define MECHLAB_AUDIT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "mechlab/typespace.hpp"

namespace mechlab {

struct Violation {
  std::vector<TypePoint> witnesses;
  double slack = 0.0;  // magnitude by which the checked inequality fails
  std::string detail;
};

// Outcome of a property check. passed is true iff no violation was recorded.
// Only the first kMaxStoredViolations witnesses are kept; violation_count
// counts all of them.
class AuditReport {
 public:
  static constexpr std::size_t kMaxStoredViolations = 64;

  AuditReport() = default;
  AuditReport(std::string check, double tolerance)
      : check_(std::move(check)), tolerance_(tolerance) {}

  void add_violation(Violation v);
  void count_checked(std::size_t k = 1) { checked_ += k; }
  // Folds the violations of another report into this one.
  void merge(const AuditReport& other);
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  bool passed() const { return violation_count_ == 0; }
  const std::string& check() const { return check_; }
  double tolerance() const { return tolerance_; }
  std::size_t checked() const { return checked_; }
  std::size_t violation_count() const { return violation_count_; }
  double max_violation() const { return max_violation_; }
  const std::vector<Violation>& violations() const { return violations_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::string check_;
  double tolerance_ = 0.0;
  std::size_t checked_ = 0;
  std::size_t violation_count_ = 0;
  double max_violation_ = 0.0;
  std::vector<Violation> violations_;
  std::vector<std::string> notes_;
};

nlohmann::json to_json(const AuditReport& report);

}  // namespace mechlab

#endif  // MECHLAB_AUDIT_HPP_
