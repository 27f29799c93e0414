#pragma once

#include <stdexcept>
#include <string>

namespace glc {

// Error codes follow the operation contracts; one exception type keeps the
// call sites simple while tests can still match on the code.
enum class Errc {
  DirectionMismatch,
  PortAlreadyCovered,
  UnknownNode,
  UnknownEdge,
  UnknownLeaf,
  InvalidGraph,
  SyntaxError,
  UnknownMove,
  StaleBinding,
  SideConditionViolated,
  DirectionNotAllowed,
  NotABottleneck,
  CopiesNotIsomorphic,
  AmbiguousAnchor,
  NoMatch,
  UnknownStrategy,
  UnknownName,
  RoleMismatch,
  CyclicGraph,
  MissingInput,
  SymbolUnassigned,
  DivisionByZeroScale,
  NotARedex,
  UnknownCrossing,
  NoLoop,
  InvalidDiagram,
  BadArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace glc
