#include "permsym/error.hpp"

namespace permsym {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::ZeroMomentum: return "ZeroMomentum";
  case ErrorKind::DegenerateAxis: return "DegenerateAxis";
  case ErrorKind::CollinearDegenerate: return "CollinearDegenerate";
  case ErrorKind::IndeterminatePhi: return "IndeterminatePhi";
  case ErrorKind::InexactTie: return "InexactTie";
  case ErrorKind::SameParticle: return "SameParticle";
  case ErrorKind::InvalidSequence: return "InvalidSequence";
  case ErrorKind::UnknownIdentity: return "UnknownIdentity";
  case ErrorKind::TooManyFermions: return "TooManyFermions";
  case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  case ErrorKind::Validation: return "Validation";
  }
  return "Unknown";
}

bool Error::is_geometric() const noexcept {
  switch (kind_) {
  case ErrorKind::ZeroMomentum:
  case ErrorKind::DegenerateAxis:
  case ErrorKind::CollinearDegenerate:
  case ErrorKind::IndeterminatePhi:
    return true;
  default:
    return false;
  }
}

} // namespace permsym
