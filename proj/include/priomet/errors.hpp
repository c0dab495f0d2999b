#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace priomet {

enum class ErrorKind {
  Asymmetric,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TriangleViolation,
  Disconnected,
  LengthMismatch,
  NotMonotone,
  SumAtLeastOne,
  SameVertex,
  EmptyTerminalSet,
  OrderingMismatch,
  DegenerateDiameter,
  NotATree,
  BadWeight,
  SelfLoop,
  InvalidParams,
  ParseError,
};

const char* error_kind_name(ErrorKind kind);

/// Input rejected by a validator; carries the witnessing indices when any.
struct ValidationError : std::runtime_error {
  ErrorKind kind;
  std::array<long, 3> witness{-1, -1, -1};

  ValidationError(ErrorKind k, const std::string& message,
                  std::array<long, 3> w = {-1, -1, -1})
      : std::runtime_error(std::string(error_kind_name(k)) + ": " + message),
        kind(k),
        witness(w) {}
};

/// A postcondition the library itself guarantees was observed to fail.
/// The CLI maps this to exit code 3; it is never swallowed.
struct InvariantBreach : std::logic_error {
  explicit InvariantBreach(const std::string& message)
      : std::logic_error("invariant breach: " + message) {}
};

inline void require_invariant(bool ok, const char* what) {
  if (!ok) throw InvariantBreach(what);
}

}  // namespace priomet
