#ifndef PDTSP_TYPES_H
#define PDTSP_TYPES_H

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace pdtsp {

// Travel costs. Integral matrices stay exact as long as every partial sum
// stays below 2^53, which covers any instance this library can hold.
using Cost = double;

// Visit ids: 0 is the depot, 1..2n are customer visits and 2n+1 is the
// terminal copy of the depot that closes every tour sequence.
using Visit = int;

// Positions inside a tour sequence.
using Index = int;

using Rng = std::mt19937_64;

inline constexpr Cost INFINITE_COST = std::numeric_limits<Cost>::infinity();

// Absolute threshold below which a delta counts as an improvement.
inline constexpr Cost IMPROVEMENT_EPS = 1e-9;

enum class TourMode { closed, open };

enum class Rounding { none, nearest };

inline bool improves(Cost delta) {
  return delta < -IMPROVEMENT_EPS;
}

class Exception : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InputError : public Exception {
public:
  using Exception::Exception;
};

class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string& message)
    : InputError("line " + std::to_string(line) + ": " + message),
      line_(line) {
  }

  std::size_t line() const {
    return line_;
  }

private:
  std::size_t line_;
};

} // namespace pdtsp

#endif
