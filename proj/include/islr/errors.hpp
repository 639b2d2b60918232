// Copyright 2026 The islr-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace islr {

/// An argument lies outside the mathematical domain of an operation
/// (delay out of range, sequence too short, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Caller violated a precondition that ties two objects together
/// (assignment sized for a different model, nonpositive penalty weight, ...).
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive search was asked to enumerate more states than it allows.
class BudgetError : public std::length_error {
  public:
    using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
            : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace islr
