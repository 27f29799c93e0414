#pragma once

#include <string>

#include "glc/graph.hpp"

namespace glc {

// Line-oriented .glc text format (UTF-8, '#' comments):
//   node <id> lambda|app|fanout|term
//   node <id> dil <scale>
//   edge <id>.<port> -> <id>.<port>
//   in <leafid> -> <id>.<port>
//   out <id>.<port> -> <leafid>
//   wire <leafid> -> <leafid>
//   loop <count>
// Leaf declaration order defines the boundary ordering.
PortGraph parse_glc(const std::string& text);
std::string emit_glc(const PortGraph& g, bool with_ids = false);

// Deterministic DOT rendering; gate kind as the node label, port numbers as
// head/tail labels, one standalone cycle marker per free loop.
std::string to_dot(const PortGraph& g);

}  // namespace glc
