#ifndef TWOPROJ_ERRORS_HPP
#define TWOPROJ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twoproj {

/// Raised by the polynomial parser; carries the offset of the offending
/// character in the input string.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Invalid argument or out-of-domain input (bad interval, bad rank, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal numerical-consistency failure: an invariant that should hold by
/// construction was violated beyond round-off (e.g. a radicand far below
/// zero, or negative subspace dimensions in a pair analysis).
class internal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twoproj

#endif
