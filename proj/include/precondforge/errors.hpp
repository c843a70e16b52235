// Copyright 2026 The PrecondForge Authors
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

namespace precondforge {

// Error classes map onto the CLI exit-code taxonomy: configuration problems
// exit 2, I/O and transport failures exit 3, contract violations exit 4.
enum class ErrorKind { kConfig, kIo, kTransport, kContract };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

// Remote tagger / filler failures. Carries the statement the request was
// made for, when known.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, std::string stmt_id = {})
      : Error(ErrorKind::kTransport,
              stmt_id.empty() ? what : what + " [stmt " + stmt_id + "]"),
        stmt_id_(std::move(stmt_id)) {}
  const std::string& stmt_id() const noexcept { return stmt_id_; }

 private:
  std::string stmt_id_;
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorKind::kContract, what) {}
};

class ExtractionError : public ContractError {
 public:
  ExtractionError(const std::string& what, std::string stmt_id)
      : ContractError(what + " [stmt " + stmt_id + "]"),
        stmt_id_(std::move(stmt_id)) {}
  const std::string& stmt_id() const noexcept { return stmt_id_; }

 private:
  std::string stmt_id_;
};

// eta_from_rates denominator vanishes.
class SingularityError : public ContractError {
 public:
  using ContractError::ContractError;
};

// eta_from_rates result falls outside [0, 1].
class InconsistentRatesError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Score radicand is meaningfully negative.
class DomainError : public ContractError {
 public:
  using ContractError::ContractError;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return 2;
    case ErrorKind::kIo: return 3;
    case ErrorKind::kTransport: return 3;
    case ErrorKind::kContract: return 4;
  }
  return 1;
}

}  // namespace precondforge
