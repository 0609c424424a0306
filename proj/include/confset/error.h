// Copyright 2026 The Confset Authors.
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

#ifndef CONFSET_ERROR_H_
#define CONFSET_ERROR_H_

#include <stdexcept>
#include <string>

namespace confset {

// Malformed arguments: dimension mismatches, out-of-range parameters,
// incompatible data kinds.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A formula was evaluated outside the region where it is defined
// (nonpositive floor arguments, p-belief below its threshold, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Every model in a Bayesian rule assigns zero likelihood to the data.
class InconsistentDataError : public std::runtime_error {
 public:
  explicit InconsistentDataError(const std::string& what)
      : std::runtime_error(what) {}
};

// Experiment configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace confset

#endif  // CONFSET_ERROR_H_
