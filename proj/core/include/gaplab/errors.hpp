#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

// Malformed or inconsistent input (bad dimensions, schema violations,
// violated preconditions). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical failure on well-formed input: singular systems, violated
// monotonicity, quadrature that does not converge. Exit code 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a player's conjecture fails; carries the offending index.
class PlayerError : public NumericalError {
 public:
  PlayerError(int player, const std::string& what)
      : NumericalError("player " + std::to_string(player) + ": " + what),
        player_(player) {}

  int player() const noexcept { return player_; }

 private:
  int player_;
};

}  // namespace gaplab
