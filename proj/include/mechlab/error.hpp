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

#ifndef MECHLAB_ERROR_HPP_
#define MECHLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mechlab {

// Raised on violated preconditions: malformed grids, unknown types, domain
// mismatches, failed solver runs that the caller asked to be fatal.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mechlab

#endif  // MECHLAB_ERROR_HPP_
