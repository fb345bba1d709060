#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permsym {

enum class ErrorKind {
  ZeroMomentum,
  DegenerateAxis,
  CollinearDegenerate,
  IndeterminatePhi,
  InexactTie,
  SameParticle,
  InvalidSequence,
  UnknownIdentity,
  TooManyFermions,
  BudgetExceeded,
  Validation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for the geometry failures (exit code 3 in the CLI).
  bool is_geometric() const noexcept;

private:
  ErrorKind kind_;
};

} // namespace permsym
