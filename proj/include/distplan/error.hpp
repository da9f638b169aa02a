#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace distplan {

using Index = std::int64_t;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation accepts (negative index,
/// zero processors, arithmetic overflow).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed program, kernel or descriptor. `field` addresses the offending
/// element, e.g. "kernels[1].signature.offsets".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A sparse signature has no row for an output index that some
/// distribution references.
class MissingRowError : public Error {
 public:
  explicit MissingRowError(Index row)
      : Error("sparse signature has no row for output index " + std::to_string(row)),
        row_(row) {}

  Index row() const noexcept { return row_; }

 private:
  Index row_;
};

/// Some processor needs an input index that no processor owns.
class UncoverableError : public Error {
 public:
  UncoverableError(std::string kernel, int proc, Index index)
      : Error("kernel '" + kernel + "' is uncoverable: processor " + std::to_string(proc) +
              " needs index " + std::to_string(index) + " which no processor owns"),
        kernel_(std::move(kernel)),
        proc_(proc),
        index_(index) {}

  const std::string& kernel() const noexcept { return kernel_; }
  int proc() const noexcept { return proc_; }
  Index index() const noexcept { return index_; }

 private:
  std::string kernel_;
  int proc_;
  Index index_;
};

/// Internal inconsistency detected while simulating: an unfilled halo slot,
/// or two senders delivering different values for the same index.
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace distplan
