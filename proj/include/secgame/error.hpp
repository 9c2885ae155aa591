// Copyright 2026 The secgame Authors
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

#ifndef SECGAME_ERROR_HPP_
#define SECGAME_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace secgame {

// Raised for precondition violations and solver failures anywhere in the
// library. Callers that need to distinguish causes inspect the message.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative solver hits its iteration cap. Carries the best
// value seen so far so callers can report it.
class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what, double best)
      : Error(what), best_(best) {}
  double best() const { return best_; }

 private:
  double best_;
};

}  // namespace secgame

#endif  // SECGAME_ERROR_HPP_
