#pragma once

#include <stdexcept>
#include <string>

namespace mixpois {

/// Raised when an iterative numerical routine cannot reach its requested
/// tolerance. Carries the tolerance that was actually achieved so callers
/// can report how far off the computation ended up.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double requested, double achieved)
      : std::runtime_error(what + " (requested tolerance " +
                           std::to_string(requested) + ", achieved " +
                           std::to_string(achieved) + ")"),
        requested_(requested),
        achieved_(achieved) {}

  double requested_tolerance() const { return requested_; }
  double achieved_tolerance() const { return achieved_; }

 private:
  double requested_;
  double achieved_;
};

}  // namespace mixpois
