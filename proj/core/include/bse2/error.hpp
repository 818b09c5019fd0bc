#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bse2 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  enum class Kind { TooFewVertices, SelfLoop, IndexOutOfRange, DuplicateEdge };

  GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A measured pair (or, for congruence, any vertex pair) with coincident
/// endpoints. `edge()` is the edge label, or npos for a pair outside the graph.
class DegenerateEdgeError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  DegenerateEdgeError(std::size_t edge, std::size_t head, std::size_t tail,
                      const std::string& what)
      : Error(what), edge_(edge), head_(head), tail_(tail) {}

  std::size_t edge() const noexcept { return edge_; }
  std::size_t head() const noexcept { return head_; }
  std::size_t tail() const noexcept { return tail_; }

 private:
  std::size_t edge_;
  std::size_t head_;
  std::size_t tail_;
};

/// Dimension or argument mismatch between inputs.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Non-finite matrix entries passed to a decomposition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bse2
