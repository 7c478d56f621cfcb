#ifndef SKEWSTONE_DOT_HPP
#define SKEWSTONE_DOT_HPP

#include <sstream>
#include <string>
#include <vector>

#include "skewstone/algebra.hpp"

namespace skewstone {

// DOT digraph of the covering relation of the natural partial order, with
// each D-class as a same-rank group.
inline std::string hasse_dot(const FiniteLeftSkewBA& s,
                             const std::string& graph_name = "hasse") {
  auto d = d_classes(s);
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n  rankdir=BT;\n";
  for (int a = 0; a < s.size; ++a)
    out << "  n" << a << " [label=\"" << s.name(a) << "\"];\n";
  for (const auto& cls : d.classes) {
    out << "  { rank=same;";
    for (int a : cls) out << " n" << a << ";";
    out << " }\n";
  }
  for (int a = 0; a < s.size; ++a)
    for (int b = 0; b < s.size; ++b) {
      if (a == b || !s.leq(a, b)) continue;
      bool covering = true;
      for (int c = 0; c < s.size && covering; ++c)
        if (c != a && c != b && s.leq(a, c) && s.leq(c, b)) covering = false;
      if (covering) out << "  n" << a << " -> n" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace skewstone

#endif  // SKEWSTONE_DOT_HPP
