// Copyright 2026 The Authors.
//
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

#ifndef NETGAME_ERRORS_HPP_
#define NETGAME_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace netgame {

// Input files or argument combinations that cannot be accepted.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& file, int line, int column, const std::string& msg)
      : ValidationError(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

class DimensionMismatch : public ValidationError {
 public:
  explicit DimensionMismatch(const std::string& msg) : ValidationError(msg) {}
};

// A pair (i, j) whose spillover coefficient is negative, so the game is not
// supermodular and the lattice solvers lose their guarantees.
struct SpilloverViolation {
  int i;
  int j;
  double beta;
};

class SupermodularityViolation : public ValidationError {
 public:
  explicit SupermodularityViolation(std::vector<SpilloverViolation> violations)
      : ValidationError(describe(violations)), violations(std::move(violations)) {}
  std::vector<SpilloverViolation> violations;

 private:
  static std::string describe(const std::vector<SpilloverViolation>& v);
};

class RankDeficient : public ValidationError {
 public:
  explicit RankDeficient(const std::string& msg) : ValidationError(msg) {}
};

class BudgetExceeded : public ValidationError {
 public:
  explicit BudgetExceeded(const std::string& msg) : ValidationError(msg) {}
};

class AlreadyTreated : public ValidationError {
 public:
  explicit AlreadyTreated(int unit)
      : ValidationError("unit " + std::to_string(unit) + " is already treated") {}
};

class DegenerateNetwork : public ValidationError {
 public:
  explicit DegenerateNetwork(const std::string& msg) : ValidationError(msg) {}
};

// An invariant the algorithms themselves guarantee was observed to fail
// (e.g. a supermodular game with no pure Nash equilibrium).
class InternalConsistencyError : public std::logic_error {
 public:
  explicit InternalConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace netgame

#endif  // NETGAME_ERRORS_HPP_
