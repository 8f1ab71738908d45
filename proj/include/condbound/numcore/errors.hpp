#ifndef CONDBOUND_NUMCORE_ERRORS_HPP
#define CONDBOUND_NUMCORE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace condbound {

/// Shape mismatch between operands (non-square input, wrong vector length).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// The instance lies on the degenerate locus of its problem: singular
/// matrix, multiple root, right-hand side orthogonal to the image.
/// Distinct from DomainError so callers can skip such instances.
class DegenerateInstance : public std::runtime_error {
 public:
  explicit DegenerateInstance(const std::string& msg) : std::runtime_error(msg) {}
};

/// A certification step could not be completed at the available precision.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& msg, long bits)
      : std::runtime_error(msg + " (precision " + std::to_string(bits) + " bits)"),
        bits_(bits) {}
  long bits() const noexcept { return bits_; }

 private:
  long bits_;
};

/// Exact coefficient growth exceeded the configured bit budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& msg, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(msg), required_(required), budget_(budget) {}
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A checked property failed; the message carries the witness.
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace condbound

#endif  // CONDBOUND_NUMCORE_ERRORS_HPP
