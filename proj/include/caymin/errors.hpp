#pragma once

#include <stdexcept>
#include <string>

namespace caymin {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An element was passed to a model it does not belong to.
struct ModelMismatchError : Error {
  explicit ModelMismatchError(const std::string& what) : Error(what) {}
};

// A word, vector, group spec or JSON document could not be parsed.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Ball construction hit its vertex budget. Carries the largest radius whose
// sphere was fully explored before the budget ran out.
struct BallTooLargeError : Error {
  BallTooLargeError(const std::string& what, int achieved)
      : Error(what), achieved_radius(achieved) {}
  int achieved_radius;
};

struct RadiusOutOfRangeError : Error {
  explicit RadiusOutOfRangeError(const std::string& what) : Error(what) {}
};

// Malformed certificate: a vertex index falls outside the host graph.
struct IndexOutOfBoundsError : Error {
  explicit IndexOutOfBoundsError(const std::string& what) : Error(what) {}
};

// brute_force_minor refuses hosts above its size cap.
struct HostTooLargeError : Error {
  explicit HostTooLargeError(const std::string& what) : Error(what) {}
};

struct EmptyTerminalSetError : Error {
  explicit EmptyTerminalSetError(const std::string& what) : Error(what) {}
};

// The requested component does not touch the outer sphere.
struct DeadComponentError : Error {
  explicit DeadComponentError(const std::string& what) : Error(what) {}
};

// decompose_23 requires N >= 2.
struct TooShortError : Error {
  explicit TooShortError(const std::string& what) : Error(what) {}
};

// A detour repair was attempted on a ray segment shorter than two edges.
struct SegmentTooShortError : Error {
  explicit SegmentTooShortError(const std::string& what) : Error(what) {}
};

}  // namespace caymin
