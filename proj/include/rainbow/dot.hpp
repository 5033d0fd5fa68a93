#ifndef RAINBOW_DOT_HPP
#define RAINBOW_DOT_HPP

#include <rainbow/core.hpp>

#include <sstream>

namespace rainbow {

/// Color names indexed by color - 1. The first four follow the usual
/// hues (1 blue, 2 red, 3 green, 4 orange).
inline std::vector<std::string> default_palette()
{
    return {"blue", "red", "green", "orange", "purple", "brown",
            "cyan", "magenta", "gold", "gray", "black", "pink"};
}

/// Graphviz description: one cluster per part, one colored edge per cross pair.
inline std::string export_dot(const Coloring & c, const std::vector<std::string> & palette = default_palette())
{
    if (palette.size() > 12)
        throw std::invalid_argument("export_dot: at most 12 palette entries");
    if (static_cast<int>(palette.size()) < c.num_colors())
        throw std::invalid_argument("export_dot: palette has " + std::to_string(palette.size()) + " entries but the coloring uses " +
                                    std::to_string(c.num_colors()) + " colors");

    const auto & spec = c.spec();
    std::ostringstream out;
    out << "graph coloring {\n";
    out << "  node [shape=circle];\n";
    for (int p = 0; p < spec.num_parts(); ++p) {
        out << "  subgraph cluster_" << p << " {\n";
        out << "    label=\"part " << p << "\";\n";
        for (Vertex v : spec.members(p))
            out << "    " << v << ";\n";
        out << "  }\n";
    }
    for (const auto & e : c.edges())
        out << "  " << e.u << " -- " << e.v << " [color=\"" << palette[e.color - 1] << "\", label=\"" << e.color << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace rainbow

#endif
