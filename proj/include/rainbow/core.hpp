#ifndef RAINBOW_CORE_HPP
#define RAINBOW_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rainbow {

using Vertex = int;
using Color = int;
using Path = std::vector<Vertex>;

/// Largest palette the library handles; colors along a path are tracked in a 64-bit mask.
inline constexpr int max_palette = 64;

/// Raised when a serialized coloring violates the file schema.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Part sizes (n_1, ..., n_t) of a complete multipartite graph. Vertex ids are
/// flat and contiguous per part: part i owns [offset(i), offset(i) + size(i)).
class PartitionSpec {
  public:
    PartitionSpec() = default;

    explicit PartitionSpec(std::vector<int> sizes) : sizes_(std::move(sizes))
    {
        if (sizes_.size() < 2)
            throw std::invalid_argument("PartitionSpec: need at least two parts");
        offsets_.reserve(sizes_.size() + 1);
        offsets_.push_back(0);
        for (std::size_t i = 0; i < sizes_.size(); ++i) {
            if (sizes_[i] < 1)
                throw std::invalid_argument("PartitionSpec: part " + std::to_string(i) + " is empty");
            offsets_.push_back(offsets_.back() + sizes_[i]);
            part_of_.insert(part_of_.end(), sizes_[i], static_cast<int>(i));
        }
    }

    PartitionSpec(std::initializer_list<int> sizes) : PartitionSpec(std::vector<int>(sizes)) {}

    [[nodiscard]] int num_parts() const noexcept { return static_cast<int>(sizes_.size()); }
    [[nodiscard]] int num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }
    [[nodiscard]] const std::vector<int> & sizes() const noexcept { return sizes_; }
    [[nodiscard]] int size(int p) const { return sizes_.at(p); }
    [[nodiscard]] int offset(int p) const { return offsets_.at(p); }

    [[nodiscard]] bool valid(Vertex v) const noexcept { return v >= 0 && v < num_vertices(); }

    [[nodiscard]] int part(Vertex v) const
    {
        check(v);
        return part_of_[v];
    }

    /// The (part, index) view of a flat id.
    [[nodiscard]] std::pair<int, int> locate(Vertex v) const
    {
        int p = part(v);
        return {p, v - offsets_[p]};
    }

    [[nodiscard]] Vertex vertex(int p, int index) const
    {
        if (p < 0 || p >= num_parts() || index < 0 || index >= sizes_[p])
            throw std::out_of_range("PartitionSpec: no vertex " + std::to_string(index) + " in part " + std::to_string(p));
        return offsets_[p] + index;
    }

    /// All ids of part p in increasing order.
    [[nodiscard]] std::vector<Vertex> members(int p) const
    {
        std::vector<Vertex> out(size(p));
        std::iota(out.begin(), out.end(), offsets_[p]);
        return out;
    }

    [[nodiscard]] long long num_edges() const noexcept
    {
        long long n = num_vertices(), same = 0;
        for (int s : sizes_)
            same += static_cast<long long>(s) * (s - 1) / 2;
        return n * (n - 1) / 2 - same;
    }

    void check(Vertex v) const
    {
        if (!valid(v))
            throw std::out_of_range("vertex id " + std::to_string(v) + " outside 0.." + std::to_string(num_vertices() - 1));
    }

    friend bool operator==(const PartitionSpec & a, const PartitionSpec & b) { return a.sizes_ == b.sizes_; }

  private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    std::vector<int> part_of_;
};

/// True iff u and v lie in different parts. Throws on invalid ids.
inline bool adjacent(const PartitionSpec & spec, Vertex u, Vertex v)
{
    return spec.part(u) != spec.part(v);
}

struct ColoredEdge {
    Vertex u;
    Vertex v;
    Color color;

    friend bool operator==(const ColoredEdge &, const ColoredEdge &) = default;
};

/// Edge coloring of a complete multipartite graph with palette 1..num_colors.
/// Only cross-part pairs carry a color; asking for a same-part pair is an error.
class Coloring {
  public:
    Coloring() = default;

    Coloring(PartitionSpec spec, int num_colors) : spec_(std::move(spec)), num_colors_(num_colors)
    {
        if (num_colors < 1 || num_colors > max_palette)
            throw std::invalid_argument("Coloring: num_colors must lie in 1.." + std::to_string(max_palette));
        const auto n = static_cast<std::size_t>(spec_.num_vertices());
        colors_.assign(n * n, 0);
    }

    [[nodiscard]] const PartitionSpec & spec() const noexcept { return spec_; }
    [[nodiscard]] int num_colors() const noexcept { return num_colors_; }
    [[nodiscard]] int num_vertices() const noexcept { return spec_.num_vertices(); }

    [[nodiscard]] Color color(Vertex u, Vertex v) const
    {
        require_cross(u, v);
        Color c = raw(u, v);
        if (c == 0)
            throw std::logic_error("Coloring: edge {" + std::to_string(u) + "," + std::to_string(v) + "} has no color");
        return c;
    }

    [[nodiscard]] Color operator()(Vertex u, Vertex v) const { return color(u, v); }

    /// Unchecked lookup; 0 for same-part or unassigned pairs.
    [[nodiscard]] Color raw(Vertex u, Vertex v) const noexcept
    {
        return colors_[static_cast<std::size_t>(u) * num_vertices() + v];
    }

    void set(Vertex u, Vertex v, Color c)
    {
        require_cross(u, v);
        if (c < 1 || c > num_colors_)
            throw std::invalid_argument("Coloring: color " + std::to_string(c) + " outside 1.." + std::to_string(num_colors_));
        const auto n = static_cast<std::size_t>(num_vertices());
        colors_[u * n + v] = static_cast<std::uint8_t>(c);
        colors_[v * n + u] = static_cast<std::uint8_t>(c);
    }

    /// Every cross-part pair carries a color.
    [[nodiscard]] bool complete() const
    {
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v = u + 1; v < num_vertices(); ++v)
                if (spec_.part(u) != spec_.part(v) && raw(u, v) == 0)
                    return false;
        return true;
    }

    /// Sorted list of colors that actually occur.
    [[nodiscard]] std::vector<Color> image() const
    {
        std::vector<bool> seen(num_colors_ + 1, false);
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v = u + 1; v < num_vertices(); ++v)
                seen[raw(u, v)] = true;
        std::vector<Color> out;
        for (Color c = 1; c <= num_colors_; ++c)
            if (seen[c])
                out.push_back(c);
        return out;
    }

    /// Every palette color occurs (otherwise num_colors is only a palette bound).
    [[nodiscard]] bool tight() const { return static_cast<int>(image().size()) == num_colors_; }

    /// Cross-part edges with u < v in lexicographic order.
    [[nodiscard]] std::vector<ColoredEdge> edges() const
    {
        std::vector<ColoredEdge> out;
        out.reserve(static_cast<std::size_t>(spec_.num_edges()));
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v = u + 1; v < num_vertices(); ++v)
                if (spec_.part(u) != spec_.part(v))
                    out.push_back({u, v, raw(u, v)});
        return out;
    }

    /// Relabel colors: new color of an edge is perm[old - 1]. perm must be a
    /// bijection onto 1..num_colors.
    [[nodiscard]] Coloring permuted(std::span<const Color> perm) const
    {
        if (static_cast<int>(perm.size()) != num_colors_)
            throw std::invalid_argument("Coloring::permuted: permutation length mismatch");
        std::vector<Color> check(perm.begin(), perm.end());
        std::sort(check.begin(), check.end());
        for (int i = 0; i < num_colors_; ++i)
            if (check[i] != i + 1)
                throw std::invalid_argument("Coloring::permuted: not a permutation of 1..num_colors");
        Coloring out = *this;
        for (auto & c : out.colors_)
            if (c != 0)
                c = static_cast<std::uint8_t>(perm[c - 1]);
        return out;
    }

    friend bool operator==(const Coloring & a, const Coloring & b)
    {
        return a.spec_ == b.spec_ && a.num_colors_ == b.num_colors_ && a.colors_ == b.colors_;
    }

  private:
    void require_cross(Vertex u, Vertex v) const
    {
        if (spec_.part(u) == spec_.part(v))
            throw std::invalid_argument("Coloring: {" + std::to_string(u) + "," + std::to_string(v) + "} is a same-part pair");
    }

    PartitionSpec spec_;
    int num_colors_ = 0;
    std::vector<std::uint8_t> colors_;
};

/// Distinct vertices, consecutive ones adjacent, edge colors pairwise distinct.
/// Malformed input (bad ids, length < 2, unassigned edges) yields false.
inline bool is_rainbow_path(const Coloring & c, std::span<const Vertex> p)
{
    const auto & spec = c.spec();
    if (p.size() < 2)
        return false;
    if (static_cast<int>(p.size()) - 1 > c.num_colors())
        return false;
    for (Vertex v : p)
        if (!spec.valid(v))
            return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] == p[j])
                return false;
    std::uint64_t used = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (spec.part(p[i]) == spec.part(p[i + 1]))
            return false;
        Color col = c.raw(p[i], p[i + 1]);
        if (col == 0)
            return false;
        std::uint64_t bit = std::uint64_t{1} << (col - 1);
        if (used & bit)
            return false;
        used |= bit;
    }
    return true;
}

/// A set of u-v paths together with the proof case (or search) that produced it.
struct WitnessFamily {
    Vertex u = 0;
    Vertex v = 0;
    std::vector<Path> paths;
    std::string provenance;
};

/// At least k paths, each a rainbow u-v path, with pairwise disjoint interiors
/// that avoid both endpoints.
inline bool family_is_valid(const Coloring & c, const WitnessFamily & fam, int k)
{
    if (static_cast<int>(fam.paths.size()) < k)
        return false;
    std::vector<bool> used(static_cast<std::size_t>(c.num_vertices()), false);
    for (const auto & p : fam.paths) {
        if (p.size() < 2 || p.front() != fam.u || p.back() != fam.v)
            return false;
        if (!is_rainbow_path(c, p))
            return false;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            if (used[p[i]])
                return false;
            used[p[i]] = true;
        }
    }
    return true;
}

// JSON encoding ------------------------------------------------------------

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Coloring & c)
{
    ordered_json j;
    j["parts"] = c.spec().sizes();
    j["num_colors"] = c.num_colors();
    j["tight"] = c.tight();
    auto edges = ordered_json::array();
    for (const auto & e : c.edges())
        edges.push_back({e.u, e.v, e.color});
    j["edges"] = std::move(edges);
    return j;
}

inline ordered_json to_json(const WitnessFamily & fam)
{
    ordered_json j;
    j["u"] = fam.u;
    j["v"] = fam.v;
    j["provenance"] = fam.provenance;
    j["paths"] = fam.paths;
    return j;
}

namespace detail {
    template <typename Json>
    int read_int(const Json & j, const std::string & what)
    {
        if (!j.is_number_integer())
            throw FormatError(what + ": expected an integer");
        return j.template get<int>();
    }
}

/// Parses and validates the coloring schema. Rejects duplicate edges,
/// same-part pairs, u >= v, colors outside 1..num_colors, missing edges and a
/// "tight" flag that claims colors the edges do not use.
template <typename Json>
Coloring coloring_from_json(const Json & j)
{
    if (!j.is_object())
        throw FormatError("coloring: expected a JSON object");
    for (const char * key : {"parts", "num_colors", "edges"})
        if (!j.contains(key))
            throw FormatError(std::string("coloring: missing key \"") + key + "\"");

    const auto & parts = j.at("parts");
    if (!parts.is_array())
        throw FormatError("coloring: \"parts\" must be an array");
    std::vector<int> sizes;
    for (std::size_t i = 0; i < parts.size(); ++i)
        sizes.push_back(detail::read_int(parts[i], "parts[" + std::to_string(i) + "]"));

    PartitionSpec spec;
    try {
        spec = PartitionSpec(sizes);
    } catch (const std::invalid_argument & e) {
        throw FormatError(std::string("coloring: ") + e.what());
    }
    int num_colors = detail::read_int(j.at("num_colors"), "num_colors");
    if (num_colors < 1 || num_colors > max_palette)
        throw FormatError("coloring: num_colors " + std::to_string(num_colors) + " outside 1.." + std::to_string(max_palette));

    Coloring c(spec, num_colors);
    const auto & edges = j.at("edges");
    if (!edges.is_array())
        throw FormatError("coloring: \"edges\" must be an array");

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto & e = edges[i];
        const std::string where = "edge #" + std::to_string(i);
        if (!e.is_array() || e.size() != 3)
            throw FormatError(where + ": expected [u, v, color]");
        int u = detail::read_int(e[0], where + " u");
        int v = detail::read_int(e[1], where + " v");
        int col = detail::read_int(e[2], where + " color");
        const std::string desc = where + " [" + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(col) + "]";
        if (!spec.valid(u) || !spec.valid(v))
            throw FormatError(desc + ": vertex id outside 0.." + std::to_string(spec.num_vertices() - 1));
        if (u >= v)
            throw FormatError(desc + ": endpoints must satisfy u < v");
        if (spec.part(u) == spec.part(v))
            throw FormatError(desc + ": same-part pair (part " + std::to_string(spec.part(u)) + ")");
        if (col < 1 || col > num_colors)
            throw FormatError(desc + ": color outside 1.." + std::to_string(num_colors));
        if (c.raw(u, v) != 0)
            throw FormatError(desc + ": duplicate edge");
        c.set(u, v, col);
    }

    for (Vertex u = 0; u < spec.num_vertices(); ++u)
        for (Vertex v = u + 1; v < spec.num_vertices(); ++v)
            if (spec.part(u) != spec.part(v) && c.raw(u, v) == 0)
                throw FormatError("coloring: edge {" + std::to_string(u) + "," + std::to_string(v) + "} has no color");

    if (j.contains("tight")) {
        if (!j.at("tight").is_boolean())
            throw FormatError("coloring: \"tight\" must be a boolean");
        if (j.at("tight").template get<bool>() && !c.tight())
            throw FormatError("coloring: marked tight but not every color in 1.." + std::to_string(num_colors) + " is used");
    }
    return c;
}

} // namespace rainbow

#endif
