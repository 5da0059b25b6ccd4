#pragma once

#include <stdexcept>
#include <string>

namespace tfpack {

// Malformed graph input: loops, duplicate edges, out-of-range endpoints,
// mismatched orders.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Textual input that does not follow a grammar (cycle types, DOT, JSON).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size guard was hit (canonical labeling, planarity, search soft limits).
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A construction was asked for something it cannot produce: unsupported
// cycle type, non-embeddable part, violated template precondition.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Persisted fixture or result document failed schema or invariant checks.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tfpack
