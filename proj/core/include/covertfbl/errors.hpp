// Copyright 2026 The covertfbl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace covertfbl {

// Raised when an iterative solver exhausts its iteration budget before
// meeting its stopping rule.  Domain violations (arguments outside a
// function's documented domain) raise std::domain_error instead, and
// structural misuse (e.g. passing a KL-mode constraint to the exact-mode
// solver) raises std::invalid_argument.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace covertfbl
