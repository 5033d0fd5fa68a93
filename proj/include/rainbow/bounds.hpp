#ifndef RAINBOW_BOUNDS_HPP
#define RAINBOW_BOUNDS_HPP

#include <rainbow/core.hpp>
#include <rainbow/verifier.hpp>

#include <map>
#include <optional>
#include <random>

namespace rainbow {

/// Minimum part size forcing rc_k <= 4 (t = 2) or <= 3 (t >= 3): ceil(2k / (t - 1)).
inline int f_formula(int k, int t)
{
    if (k < 2 || t < 2)
        throw std::invalid_argument("f_formula: need k >= 2 and t >= 2");
    return (2 * k + t - 2) / (t - 1);
}

/// Uniform independent color per cross edge; identical output for identical seeds.
inline Coloring random_coloring(const PartitionSpec & spec, int num_colors, std::uint64_t seed)
{
    Coloring c(spec, num_colors);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(1, num_colors);
    for (Vertex u = 0; u < spec.num_vertices(); ++u)
        for (Vertex v = u + 1; v < spec.num_vertices(); ++v)
            if (spec.part(u) != spec.part(v))
                c.set(u, v, dist(rng));
    return c;
}

/// Color profile of x toward every vertex outside x's part.
inline std::vector<Color> color_profile(const Coloring & c, Vertex x)
{
    std::vector<Color> row;
    const int px = c.spec().part(x);
    for (Vertex w = 0; w < c.num_vertices(); ++w)
        if (c.spec().part(w) != px)
            row.push_back(c.raw(x, w));
    return row;
}

/// Lexicographically first pair of vertices in big_part with identical color
/// profiles toward all other parts.
inline std::optional<std::pair<Vertex, Vertex>> find_color_twins(const Coloring & c, int big_part)
{
    const auto & spec = c.spec();
    if (big_part < 0 || big_part >= spec.num_parts())
        throw std::out_of_range("find_color_twins: no part " + std::to_string(big_part));
    std::map<std::vector<Color>, Vertex> first_seen;
    std::optional<std::pair<Vertex, Vertex>> best;
    for (Vertex x : spec.members(big_part)) {
        auto [it, fresh] = first_seen.emplace(color_profile(c, x), x);
        if (!fresh && (!best || std::pair{it->second, x} < *best))
            best = std::pair{it->second, x};
    }
    return best;
}

/// Twin scan over every part; returns the lexicographically first pair.
inline std::optional<std::pair<Vertex, Vertex>> find_color_twins_any(const Coloring & c)
{
    std::optional<std::pair<Vertex, Vertex>> best;
    for (int p = 0; p < c.spec().num_parts(); ++p)
        if (auto tw = find_color_twins(c, p); tw && (!best || *tw < *best))
            best = tw;
    return best;
}

enum class LowerBoundScenario { bipartite5, multipartite4 };

inline const char * to_string(LowerBoundScenario s)
{
    return s == LowerBoundScenario::bipartite5 ? "bipartite5" : "multipartite4";
}

/// Proof that a given coloring is not rainbow k-connected: two color twins in
/// the big part are joined by fewer than k internally disjoint rainbow paths.
struct LowerBoundCertificate {
    LowerBoundScenario scenario = LowerBoundScenario::bipartite5;
    int k = 0;
    int m = 0;
    std::vector<int> small_sizes;
    int big_part = 0;
    Vertex twin1 = 0;
    Vertex twin2 = 0;
    int max_count = 0;
    /// Arithmetic ceiling on the count: floor(|B| / 2), strictly below k.
    int path_bound = 0;
    WitnessFamily family;
};

namespace detail {

    inline long long checked_pow(long long base, int exp)
    {
        long long r = 1;
        for (int i = 0; i < exp; ++i) {
            if (r > (1LL << 50) / base)
                return -1;
            r *= base;
        }
        return r;
    }

    /// Index of the part of size m; the remaining sizes must equal `small` in order.
    inline int locate_big_part(const PartitionSpec & spec, int m, const std::vector<int> & small)
    {
        for (int p = 0; p < spec.num_parts(); ++p) {
            if (spec.size(p) != m)
                continue;
            std::vector<int> rest;
            for (int q = 0; q < spec.num_parts(); ++q)
                if (q != p)
                    rest.push_back(spec.size(q));
            if (rest == small)
                return p;
        }
        throw std::invalid_argument("lower bound: coloring's parts do not match the declared sizes");
    }

    inline LowerBoundCertificate certify(LowerBoundScenario scenario, int k, int m, std::vector<int> small,
                                         const Coloring & c)
    {
        LowerBoundCertificate cert;
        cert.scenario = scenario;
        cert.k = k;
        cert.m = m;
        cert.big_part = locate_big_part(c.spec(), m, small);
        cert.small_sizes = std::move(small);

        auto twins = find_color_twins(c, cert.big_part);
        if (!twins)
            throw std::logic_error("lower bound: pigeonhole produced no twins");
        cert.twin1 = twins->first;
        cert.twin2 = twins->second;

        int outside = 0;
        for (int s : cert.small_sizes)
            outside += s;
        cert.path_bound = outside / 2;

        auto packing = max_disjoint_rainbow(c, {cert.twin1, cert.twin2, PackingMode::maximize, 0, 0});
        cert.max_count = packing.count;
        cert.family = std::move(packing.family);
        if (cert.max_count > cert.path_bound || cert.max_count >= k)
            throw std::logic_error("lower bound: twin count " + std::to_string(cert.max_count) + " contradicts the bound");
        return cert;
    }

} // namespace detail

/// Certificate that a <= 4-coloring of K_{s,m} (k <= s <= 2k-1, m > 4^s) is not
/// rainbow k-connected. Part order in the coloring may be (s, m) or (m, s).
inline LowerBoundCertificate certify_bipartite_lower(int k, int s, int m, const Coloring & c)
{
    if (k < 1 || s < k || s > 2 * k - 1)
        throw std::invalid_argument("bipartite lower bound: need k <= s <= 2k - 1");
    const long long need = detail::checked_pow(4, s);
    if (need < 0 || m < need + 1)
        throw std::invalid_argument("bipartite lower bound: need m >= 4^s + 1");
    if (c.num_colors() > 4)
        throw std::invalid_argument("bipartite lower bound: coloring may use at most 4 colors");
    if (c.spec().num_parts() != 2)
        throw std::invalid_argument("bipartite lower bound: coloring must be bipartite");
    return detail::certify(LowerBoundScenario::bipartite5, k, m, {s}, c);
}

/// Certificate that a <= 3-coloring of K_{m, s_1, ..., s_{t-1}} with
/// ceil(k/(t-1)) <= s_i <= ceil(2k/(t-1)) - 1 and m > 3^(sum s_i) is not
/// rainbow k-connected.
inline LowerBoundCertificate certify_multipartite_lower(int k, int t, const std::vector<int> & small_sizes, int m,
                                                        const Coloring & c)
{
    if (t < 3 || static_cast<int>(small_sizes.size()) != t - 1)
        throw std::invalid_argument("multipartite lower bound: need t >= 3 and t - 1 small parts");
    if (k < 1)
        throw std::invalid_argument("multipartite lower bound: k must be >= 1");
    const int lo = (k + t - 2) / (t - 1);
    const int hi = (2 * k + t - 2) / (t - 1) - 1;
    int total = 0;
    for (int s : small_sizes) {
        if (s < lo || s > hi)
            throw std::invalid_argument("multipartite lower bound: part size " + std::to_string(s) + " outside " +
                                        std::to_string(lo) + ".." + std::to_string(hi));
        total += s;
    }
    const long long need = detail::checked_pow(3, total);
    if (need < 0 || m < need + 1)
        throw std::invalid_argument("multipartite lower bound: need m >= 3^(sum s_i) + 1");
    if (c.num_colors() > 3)
        throw std::invalid_argument("multipartite lower bound: coloring may use at most 3 colors");
    return detail::certify(LowerBoundScenario::multipartite4, k, m, small_sizes, c);
}

inline ordered_json to_json(const LowerBoundCertificate & cert)
{
    ordered_json j;
    j["scenario"] = to_string(cert.scenario);
    j["k"] = cert.k;
    j["m"] = cert.m;
    j["small_sizes"] = cert.small_sizes;
    j["big_part"] = cert.big_part;
    j["twins"] = {cert.twin1, cert.twin2};
    j["max_count"] = cert.max_count;
    j["path_bound"] = cert.path_bound;
    j["family"] = to_json(cert.family);
    return j;
}

} // namespace rainbow

#endif
