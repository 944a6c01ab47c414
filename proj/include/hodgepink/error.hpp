// Copyright 2026 The hodgepink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HODGEPINK_ERROR_HPP
#define HODGEPINK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hpk {

// All recoverable failures derive from Error. `kind` is stable machine text,
// `what()` carries the human-readable certificate.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define HPK_DEFINE_ERROR(NAME)                                              \
  class NAME : public Error {                                               \
   public:                                                                  \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}            \
  };

HPK_DEFINE_ERROR(PrecisionLoss)
HPK_DEFINE_ERROR(InsufficientPrecision)
HPK_DEFINE_ERROR(RamificationBudgetExceeded)
HPK_DEFINE_ERROR(ExtensionBudgetExceeded)
HPK_DEFINE_ERROR(HypothesisFailed)
HPK_DEFINE_ERROR(NoConvergence)
HPK_DEFINE_ERROR(EndpointMismatch)
HPK_DEFINE_ERROR(NotFStable)
HPK_DEFINE_ERROR(NotInJ)
HPK_DEFINE_ERROR(WeightMismatch)
HPK_DEFINE_ERROR(JetOrderTooSmall)
HPK_DEFINE_ERROR(ShapeViolation)
HPK_DEFINE_ERROR(NotInvertible)
HPK_DEFINE_ERROR(ParseError)
HPK_DEFINE_ERROR(InternalError)

#undef HPK_DEFINE_ERROR

}  // namespace hpk

#endif  // HODGEPINK_ERROR_HPP
