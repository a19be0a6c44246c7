// Copyright 2026 The fmc-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMC_LOCATION_H_
#define FMC_LOCATION_H_

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace fmc {

// A named stack of the machine. The default-constructed location is the main
// location, which is never written in concrete syntax.
class Location {
 public:
  Location() = default;
  explicit Location(std::string name) : name_(std::move(name)) {
    if (name_.empty()) throw std::invalid_argument("empty location name");
  }

  static Location Main() { return Location(); }

  bool is_main() const { return name_.empty(); }
  const std::string& name() const { return name_; }

  // Display name; the main location renders as "λ".
  std::string display() const { return is_main() ? "λ" : name_; }

  auto operator<=>(const Location&) const = default;
  bool operator==(const Location&) const = default;

 private:
  std::string name_;
};

}  // namespace fmc

#endif  // FMC_LOCATION_H_
