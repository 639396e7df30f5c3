#pragma once

#include <stdexcept>
#include <string>

namespace twelvej {

// Malformed inputs: bad spin strings, magnetic-number parity mismatches,
// indices out of range, special-formula pattern mismatches.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Triangle/selection-rule violation in an operation that requires admissible
// arguments (symbol evaluations themselves return exact zero instead).
class SelectionRuleError : public std::domain_error {
 public:
  explicit SelectionRuleError(const std::string& what) : std::domain_error(what) {}
};

// Geometrically forbidden or caustic configuration. Carries the dimensionless
// Cayley-Menger margins (or the offending determinant) for diagnostics.
class RegionError : public std::runtime_error {
 public:
  RegionError(const std::string& what, double m1, double m2)
      : std::runtime_error(what), margin1(m1), margin2(m2) {}
  explicit RegionError(const std::string& what, double det = 0.0)
      : std::runtime_error(what), margin1(det), margin2(det) {}

  double margin1 = 0.0;
  double margin2 = 0.0;
};

// A sweep whose configuration admits no j5 value at all.
class EmptyRangeError : public std::runtime_error {
 public:
  explicit EmptyRangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twelvej
