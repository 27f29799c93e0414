#include "glc/error.hpp"

namespace glc {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DirectionMismatch: return "DirectionMismatch";
    case Errc::PortAlreadyCovered: return "PortAlreadyCovered";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::UnknownLeaf: return "UnknownLeaf";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownMove: return "UnknownMove";
    case Errc::StaleBinding: return "StaleBinding";
    case Errc::SideConditionViolated: return "SideConditionViolated";
    case Errc::DirectionNotAllowed: return "DirectionNotAllowed";
    case Errc::NotABottleneck: return "NotABottleneck";
    case Errc::CopiesNotIsomorphic: return "CopiesNotIsomorphic";
    case Errc::AmbiguousAnchor: return "AmbiguousAnchor";
    case Errc::NoMatch: return "NoMatch";
    case Errc::UnknownStrategy: return "UnknownStrategy";
    case Errc::UnknownName: return "UnknownName";
    case Errc::RoleMismatch: return "RoleMismatch";
    case Errc::CyclicGraph: return "CyclicGraph";
    case Errc::MissingInput: return "MissingInput";
    case Errc::SymbolUnassigned: return "SymbolUnassigned";
    case Errc::DivisionByZeroScale: return "DivisionByZeroScale";
    case Errc::NotARedex: return "NotARedex";
    case Errc::UnknownCrossing: return "UnknownCrossing";
    case Errc::NoLoop: return "NoLoop";
    case Errc::InvalidDiagram: return "InvalidDiagram";
    case Errc::BadArgument: return "BadArgument";
  }
  return "Error";
}

}  // namespace glc
