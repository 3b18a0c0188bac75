#pragma once

#include <stdexcept>
#include <string>

namespace wn {

/// Input outside an operation's documented domain.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A certified tolerance would exceed a hard resource cap (e.g. the
/// truncation-index cap). Carries the bound that is achievable.
class resource_error : public std::runtime_error {
 public:
  resource_error(const std::string& what, double achievable)
      : std::runtime_error(what), achievable_bound(achievable) {}

  double achievable_bound;
};

/// A result was computed but its certificate is wider than requested.
/// Carries the best enclosure obtained.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double value, double half_width)
      : std::runtime_error(what), best_value(value), best_half_width(half_width) {}

  double best_value;
  double best_half_width;
};

/// Two representations that are mathematically equal disagreed beyond
/// tolerance, or an internal invariant failed.
class consistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wn
