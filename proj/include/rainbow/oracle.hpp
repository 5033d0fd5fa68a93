#ifndef RAINBOW_ORACLE_HPP
#define RAINBOW_ORACLE_HPP

#include <rainbow/core.hpp>
#include <rainbow/verifier.hpp>

#include <functional>
#include <numeric>
#include <optional>

namespace rainbow {

class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SearchBudget {
    int max_colors = 4;
    int max_edges = 16;
    /// Stop after visiting this many colorings (0 = unlimited).
    long long node_limit = 0;
};

/// Cross-part pairs in lexicographic (u, v) order; the fixed edge order for
/// canonical colorings.
inline std::vector<std::pair<Vertex, Vertex>> edge_order(const PartitionSpec & spec)
{
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < spec.num_vertices(); ++u)
        for (Vertex v = u + 1; v < spec.num_vertices(); ++v)
            if (spec.part(u) != spec.part(v))
                out.emplace_back(u, v);
    return out;
}

/// Restricted-growth form: recolor so colors appear in first-use order along
/// the edge order. Palette size is kept.
inline Coloring canonicalize(const Coloring & c)
{
    std::vector<Color> map(c.num_colors() + 1, 0);
    Color next = 1;
    Coloring out(c.spec(), c.num_colors());
    for (auto [u, v] : edge_order(c.spec())) {
        Color old = c.color(u, v);
        if (map[old] == 0)
            map[old] = next++;
        out.set(u, v, map[old]);
    }
    return out;
}

/// Visits one coloring per color-relabeling orbit among colorings with at
/// most `num_colors` colors; the palette of each visited coloring is
/// num_colors. The visitor returns false to stop.
inline void enumerate_colorings_canonical(const PartitionSpec & spec, int num_colors, const SearchBudget & budget,
                                          const std::function<bool(const Coloring &)> & visit)
{
    auto edges = edge_order(spec);
    if (static_cast<int>(edges.size()) > budget.max_edges)
        throw BudgetExceeded("oracle: " + std::to_string(edges.size()) + " edges exceed the budget of " +
                             std::to_string(budget.max_edges));
    if (num_colors < 1)
        throw std::invalid_argument("oracle: need at least one color");

    Coloring c(spec, num_colors);
    long long visited = 0;
    bool stop = false;
    auto assign = [&](auto && self, std::size_t i, Color used) -> void {
        if (stop)
            return;
        if (i == edges.size()) {
            if (budget.node_limit > 0 && ++visited > budget.node_limit)
                throw BudgetExceeded("oracle: node limit reached");
            if (!visit(c))
                stop = true;
            return;
        }
        const Color top = std::min(used + 1, num_colors);
        for (Color col = 1; col <= top && !stop; ++col) {
            c.set(edges[i].first, edges[i].second, col);
            self(self, i + 1, std::max(used, col));
        }
    };
    assign(assign, 0, 0);
}

struct RckResult {
    /// Empty when no coloring with at most max_colors colors works.
    std::optional<int> value;
    std::optional<Coloring> witness;
};

/// Exact rc_k by exhaustive search over canonical colorings.
inline RckResult rc_k_exact(const PartitionSpec & spec, int k, const SearchBudget & budget)
{
    if (k < 1)
        throw std::invalid_argument("rc_k_exact: k must be >= 1");
    if (structural_connectivity(spec) < k)
        throw std::invalid_argument("rc_k_exact: graph is not " + std::to_string(k) + "-connected");

    RckResult result;
    std::optional<std::pair<Vertex, Vertex>> hint;
    for (int colors = 1; colors <= budget.max_colors && !result.value; ++colors) {
        enumerate_colorings_canonical(spec, colors, budget, [&](const Coloring & c) {
            // Fewer colors were already tried at a smaller palette.
            if (static_cast<int>(c.image().size()) != colors)
                return true;
            auto failing = find_failing_pair(c, k, hint);
            if (failing) {
                hint = failing;
                return true;
            }
            // Relabeling colors must not change the verdict.
            std::vector<Color> rev(colors);
            std::iota(rev.rbegin(), rev.rend(), 1);
            if (find_failing_pair(c.permuted(rev), k))
                throw std::logic_error("rc_k_exact: verdict changed under color relabeling");
            result.value = colors;
            result.witness = c;
            return false;
        });
    }
    return result;
}

} // namespace rainbow

#endif
