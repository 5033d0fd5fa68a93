#ifndef RAINBOW_CONSTRUCTIONS_HPP
#define RAINBOW_CONSTRUCTIONS_HPP

#include <rainbow/core.hpp>

#include <array>
#include <memory>
#include <optional>
#include <variant>

namespace rainbow {

enum class Family { bipartite4, ctk, extension, mnn, k2416 };

inline const char * to_string(Family f)
{
    switch (f) {
    case Family::bipartite4: return "bipartite4";
    case Family::ctk: return "ctk";
    case Family::extension: return "extension";
    case Family::mnn: return "mnn";
    case Family::k2416: return "k2416";
    }
    return "?";
}

inline Family family_from_string(const std::string & s)
{
    for (Family f : {Family::bipartite4, Family::ctk, Family::extension, Family::mnn, Family::k2416})
        if (s == to_string(f))
            return f;
    throw std::invalid_argument("unknown construction family \"" + s + "\"");
}

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// Four-block coloring of K_{a,b}. Part 0 is A, part 1 is B.
struct Bipartite4Meta {
    int k = 0;
    /// blocks[side][half]: side 0 = A, 1 = B; half 0 = A_1 / B_1.
    std::array<std::array<std::vector<Vertex>, 2>, 2> blocks;
    /// First k vertices of each block.
    std::array<std::array<std::vector<Vertex>, 2>, 2> designated;
};

/// The 3-coloring c_{t,K}. Even t: parts 2i, 2i+1 (0-based) become A_{i+1},
/// B_{i+1}. Odd t: the last part is X and the rest are paired as for even t.
struct CtkMeta {
    int t = 0;
    int k = 0;
    int s = 0;
    int s1 = 0;
    int s2 = 0;
    std::optional<int> x_part;
    std::vector<int> a_parts;
    std::vector<int> b_parts;
    /// First min(s, size) vertices of every input part.
    std::vector<std::vector<Vertex>> designated;
};

/// 2-coloring of K_{m,n,n}: parts A, B, C in input order; strings[i] is the
/// bit string of the i-th A vertex, strings[0] = 1^s 0^s.
struct MnnMeta {
    int m = 0;
    int n = 0;
    int s = 0;
    std::vector<std::string> strings;
};

/// The fixed 2-coloring of K_{2,4,16}. C ids: c_1..c_8 then c_1'..c_8'.
struct K2416Meta {
    std::vector<std::string> strings;
};

struct Construction;

/// Parts p and q grown by one vertex each (a1, a2, appended to the part).
struct ExtensionMeta {
    int p = 0;
    int q = 0;
    Vertex a1 = 0;
    Vertex a2 = 0;
    Vertex a1_anchor = 0;
    Vertex a2_anchor = 0;
    bool transposed = false;
    std::vector<Vertex> old_to_new;
    /// Base construction (untransposed); null when only a bare coloring was extended.
    std::shared_ptr<const Construction> base;
};

struct ConstructionMeta {
    std::variant<Bipartite4Meta, CtkMeta, ExtensionMeta, MnnMeta, K2416Meta> data;
    /// Arguments that rebuild this construction via construct_from_params.
    ordered_json params;

    [[nodiscard]] Family family() const { return static_cast<Family>(data.index()); }
};

struct Construction {
    Coloring coloring;
    ConstructionMeta meta;
};

// Colorings -----------------------------------------------------------------

inline Construction color_bipartite4(int a, int b, int k)
{
    if (k < 1)
        throw std::invalid_argument("bipartite4: k must be >= 1");
    if (a < 2 * k || b < 2 * k)
        throw std::invalid_argument("bipartite4: both sides need at least 2k = " + std::to_string(2 * k) + " vertices");

    PartitionSpec spec{a, b};
    Bipartite4Meta m;
    m.k = k;
    for (int side = 0; side < 2; ++side) {
        auto members = spec.members(side);
        const int half = ceil_div(spec.size(side), 2);
        m.blocks[side][0].assign(members.begin(), members.begin() + half);
        m.blocks[side][1].assign(members.begin() + half, members.end());
        for (int h = 0; h < 2; ++h)
            m.designated[side][h].assign(m.blocks[side][h].begin(), m.blocks[side][h].begin() + k);
    }

    Coloring c(spec, 4);
    for (int ha = 0; ha < 2; ++ha)
        for (int hb = 0; hb < 2; ++hb)
            for (Vertex x : m.blocks[0][ha])
                for (Vertex y : m.blocks[1][hb])
                    c.set(x, y, 1 + 2 * ha + hb);

    ConstructionMeta meta{m, {{"family", "bipartite4"}, {"a", a}, {"b", b}, {"k", k}}};
    return {std::move(c), std::move(meta)};
}

inline Construction color_ctk(const PartitionSpec & spec, int k = 1)
{
    const int t = spec.num_parts();
    if (t < 2)
        throw std::invalid_argument("ctk: need t >= 2");
    if (k < 1)
        throw std::invalid_argument("ctk: k must be >= 1");

    CtkMeta m;
    m.t = t;
    m.k = k;
    m.s = ceil_div(2 * k, t - 1);
    m.s1 = ceil_div(m.s, 2);
    m.s2 = m.s / 2;
    const int paired = t % 2 == 0 ? t : t - 1;
    for (int i = 0; i < paired; i += 2) {
        m.a_parts.push_back(i);
        m.b_parts.push_back(i + 1);
    }
    if (t % 2 == 1)
        m.x_part = t - 1;
    for (int p = 0; p < t; ++p) {
        auto members = spec.members(p);
        members.resize(std::min<std::size_t>(members.size(), m.s));
        m.designated.push_back(std::move(members));
    }

    // side: 0 = A, 1 = B, 2 = X; pair: index i of A_i / B_i.
    std::vector<int> side(t), pair(t, -1);
    for (std::size_t i = 0; i < m.a_parts.size(); ++i) {
        side[m.a_parts[i]] = 0;
        side[m.b_parts[i]] = 1;
        pair[m.a_parts[i]] = pair[m.b_parts[i]] = static_cast<int>(i);
    }
    if (m.x_part)
        side[*m.x_part] = 2;

    auto rule = [&](int p, int q) -> Color {
        if (side[p] == 2 || side[q] == 2) {
            int other = side[p] == 2 ? side[q] : side[p];
            return other == 0 ? 1 : 3;
        }
        if (side[p] == side[q])
            return 1;
        return pair[p] == pair[q] ? 2 : 3;
    };

    Coloring c(spec, t == 2 ? 2 : 3);
    for (Vertex u = 0; u < spec.num_vertices(); ++u)
        for (Vertex v = u + 1; v < spec.num_vertices(); ++v)
            if (spec.part(u) != spec.part(v))
                c.set(u, v, rule(spec.part(u), spec.part(v)));

    ConstructionMeta meta{m, {{"family", "ctk"}, {"sizes", spec.sizes()}, {"k", k}}};
    return {std::move(c), std::move(meta)};
}

namespace detail {

    inline std::string bits_of(unsigned value, int width)
    {
        std::string s(width, '0');
        for (int i = 0; i < width; ++i)
            if (value >> (width - 1 - i) & 1U)
                s[i] = '1';
        return s;
    }

    /// Stored palette for the {0,1} colorings: bit 0 -> color 1, bit 1 -> color 2.
    inline Color bit_color(char bit) { return bit == '1' ? 2 : 1; }

    inline ordered_json bit_palette() { return {{"0", 1}, {"1", 2}}; }

    inline Construction extend(const Coloring & base, int p, int q, std::shared_ptr<const Construction> record)
    {
        const auto & bspec = base.spec();
        const int t = bspec.num_parts();
        if (t < 3)
            throw std::invalid_argument("extension: base needs t >= 3 parts");
        if (base.num_colors() != 2)
            throw std::invalid_argument("extension: base must be a 2-coloring");
        if (p < 0 || q < 0 || p >= t || q >= t || p == q)
            throw std::invalid_argument("extension: need two distinct valid part indices");

        auto sizes = bspec.sizes();
        ++sizes[p];
        ++sizes[q];
        PartitionSpec spec(sizes);

        ExtensionMeta m;
        m.p = p;
        m.q = q;
        m.old_to_new.resize(bspec.num_vertices());
        for (Vertex v = 0; v < bspec.num_vertices(); ++v) {
            auto [part, idx] = bspec.locate(v);
            m.old_to_new[v] = spec.vertex(part, idx);
        }
        m.a1 = spec.vertex(p, sizes[p] - 1);
        m.a2 = spec.vertex(q, sizes[q] - 1);
        const Vertex old1 = bspec.vertex(p, 0), old2 = bspec.vertex(q, 0);
        m.a1_anchor = m.old_to_new[old1];
        m.a2_anchor = m.old_to_new[old2];
        m.transposed = base.color(old1, old2) == 2;
        m.base = std::move(record);

        const std::array<Color, 2> swap{2, 1};
        const Coloring src = m.transposed ? base.permuted(swap) : base;

        Coloring c(spec, 2);
        for (Vertex u = 0; u < bspec.num_vertices(); ++u)
            for (Vertex v = u + 1; v < bspec.num_vertices(); ++v)
                if (bspec.part(u) != bspec.part(v))
                    c.set(m.old_to_new[u], m.old_to_new[v], src.raw(u, v));
        // Each new vertex copies its anchor's row.
        for (auto [fresh, anchor] : {std::pair{m.a1, old1}, std::pair{m.a2, old2}})
            for (Vertex w = 0; w < bspec.num_vertices(); ++w)
                if (bspec.part(w) != bspec.part(anchor))
                    c.set(fresh, m.old_to_new[w], src.raw(anchor, w));
        c.set(m.a1, m.a2, 1);
        c.set(m.a1, m.a2_anchor, 2);
        c.set(m.a1_anchor, m.a2, 2);

        ordered_json params{{"family", "extension"}, {"p", p}, {"q", q}};
        params["base"] = m.base ? m.base->meta.params : ordered_json(nullptr);
        return {std::move(c), ConstructionMeta{std::move(m), std::move(params)}};
    }

} // namespace detail

/// Grows parts p and q of a rainbow 2-connected 2-coloring by one vertex each.
/// Witness generation needs the base construction; this overload keeps it.
inline Construction color_extension(const Construction & base, int p, int q)
{
    return detail::extend(base.coloring, p, q, std::make_shared<const Construction>(base));
}

/// Same, from a bare coloring; the result carries no witness record.
inline Construction color_extension(const Coloring & base, int p, int q)
{
    return detail::extend(base, p, q, nullptr);
}

inline Construction color_mnn(int m, int n)
{
    if (n < 2)
        throw std::invalid_argument("mnn: n must be >= 2");
    const int s = n / 2;
    if (2 * s > 30)
        throw std::invalid_argument("mnn: n too large");
    const long long limit = 1LL << (2 * s);
    if (m < 1 || m > limit)
        throw std::invalid_argument("mnn: m must lie in 1.." + std::to_string(limit));

    MnnMeta meta;
    meta.m = m;
    meta.n = n;
    meta.s = s;
    const unsigned lead = ((1U << s) - 1U) << s;
    meta.strings.push_back(detail::bits_of(lead, 2 * s));
    for (unsigned x = 0; static_cast<int>(meta.strings.size()) < m; ++x)
        if (x != lead)
            meta.strings.push_back(detail::bits_of(x, 2 * s));

    PartitionSpec spec{m, n, n};
    Coloring c(spec, 2);
    // Group t (1-based) of the j-th B/C vertex (1-based).
    auto group = [s](int j) { return std::min((j + 1) / 2, s); };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            c.set(spec.vertex(1, i - 1), spec.vertex(2, j - 1), i == j ? 1 : 2);
    for (int i = 0; i < m; ++i)
        for (int j = 1; j <= n; ++j) {
            const int t = group(j);
            c.set(spec.vertex(0, i), spec.vertex(1, j - 1), detail::bit_color(meta.strings[i][t - 1]));
            c.set(spec.vertex(0, i), spec.vertex(2, j - 1), detail::bit_color(meta.strings[i][s + t - 1]));
        }

    ConstructionMeta cm{meta, {{"family", "mnn"}, {"m", m}, {"n", n}}};
    return {std::move(c), std::move(cm)};
}

inline Construction color_2_4_16()
{
    K2416Meta meta;
    for (unsigned x = 0; x < 16; ++x) {
        auto bits = detail::bits_of(x, 4);
        if (std::count(bits.begin(), bits.end(), '0') % 2 == 1)
            meta.strings.push_back(bits);
    }

    PartitionSpec spec{2, 4, 16};
    Coloring c(spec, 2);
    const Vertex a1 = spec.vertex(0, 0), a2 = spec.vertex(0, 1);
    for (int j = 0; j < 4; ++j) {
        c.set(a1, spec.vertex(1, j), 1);
        c.set(a2, spec.vertex(1, j), 1);
    }
    for (int i = 0; i < 8; ++i) {
        const Vertex left = spec.vertex(2, i), right = spec.vertex(2, 8 + i);
        c.set(a1, left, 1);
        c.set(a2, right, 1);
        c.set(a1, right, 2);
        c.set(a2, left, 2);
        for (int j = 0; j < 4; ++j) {
            const Color col = detail::bit_color(meta.strings[i][j]);
            c.set(spec.vertex(1, j), left, col);
            c.set(spec.vertex(1, j), right, col);
        }
    }

    ConstructionMeta cm{meta, {{"family", "k2416"}}};
    return {std::move(c), std::move(cm)};
}

/// Rebuilds a construction from its recorded params.
template <typename Json>
Construction construct_from_params(const Json & params)
{
    const Family f = family_from_string(params.at("family").template get<std::string>());
    switch (f) {
    case Family::bipartite4:
        return color_bipartite4(params.at("a").template get<int>(), params.at("b").template get<int>(),
                                params.at("k").template get<int>());
    case Family::ctk:
        return color_ctk(PartitionSpec(params.at("sizes").template get<std::vector<int>>()),
                         params.value("k", 1));
    case Family::mnn:
        return color_mnn(params.at("m").template get<int>(), params.at("n").template get<int>());
    case Family::k2416:
        return color_2_4_16();
    case Family::extension:
        if (!params.contains("base") || params.at("base").is_null())
            throw std::invalid_argument("extension: params carry no base construction");
        return color_extension(construct_from_params(params.at("base")), params.at("p").template get<int>(),
                               params.at("q").template get<int>());
    }
    throw std::logic_error("unreachable");
}

// Witness families -----------------------------------------------------------

namespace detail {

    class FamilyBuilder {
      public:
        FamilyBuilder(Vertex u, Vertex v, bool reversed) : reversed_(reversed)
        {
            fam_.u = reversed ? v : u;
            fam_.v = reversed ? u : v;
        }

        void add(Path p)
        {
            if (reversed_)
                std::reverse(p.begin(), p.end());
            fam_.paths.push_back(std::move(p));
        }

        WitnessFamily finish(std::string provenance)
        {
            fam_.provenance = std::move(provenance);
            return std::move(fam_);
        }

      private:
        WitnessFamily fam_;
        bool reversed_;
    };

    inline void outside_hypotheses(const std::string & what)
    {
        throw std::invalid_argument("witness_paths: " + what);
    }

    inline WitnessFamily bipartite_witness(const Bipartite4Meta & m, const PartitionSpec & spec, Vertex u, Vertex v, int k)
    {
        if (k > m.k)
            outside_hypotheses("bipartite4 coloring was built for k = " + std::to_string(m.k));
        auto half_of = [&](Vertex x) {
            const auto & first = m.blocks[spec.part(x)][0];
            return std::find(first.begin(), first.end(), x) != first.end() ? 0 : 1;
        };

        const bool reversed = spec.part(u) == 1 && spec.part(v) == 0;
        if (reversed)
            std::swap(u, v);
        FamilyBuilder out(u, v, reversed);
        const int own = spec.part(u), opp = 1 - own;
        const int hu = half_of(u);
        const auto & sibling = m.designated[own][1 - hu];
        const std::string where = std::string(" (u in ") + (own == 0 ? "A" : "B") + std::to_string(hu + 1);

        if (spec.part(v) == own) {
            if (half_of(v) == hu) {
                for (int j = 0; j < m.k; ++j)
                    out.add({u, m.designated[opp][0][j], sibling[j], m.designated[opp][1][j], v});
                return out.finish("bipartite Case 1" + where + ", v in the same block)");
            }
            for (int j = 0; j < m.k; ++j)
                out.add({u, m.designated[opp][0][j], v});
            return out.finish("bipartite Case 2" + where + ", v in the sibling block)");
        }
        const int hv = half_of(v);
        for (int j = 0; j < m.k; ++j)
            out.add({u, m.designated[opp][1 - hv][j], sibling[j], v});
        return out.finish("bipartite Case 3" + where + ", v on the other side)");
    }

    inline WitnessFamily ctk_witness(const CtkMeta & m, const PartitionSpec & spec, Vertex u, Vertex v, int k)
    {
        if (m.t < 3)
            outside_hypotheses("ctk witnesses need t >= 3");
        if (k > m.k)
            outside_hypotheses("ctk coloring was built for k = " + std::to_string(m.k));
        for (int p = 0; p < m.t; ++p)
            if (spec.size(p) < m.s)
                outside_hypotheses("part " + std::to_string(p) + " is smaller than s = " + std::to_string(m.s));

        const int h = static_cast<int>(m.a_parts.size());
        std::vector<int> side(m.t, 2), pair(m.t, -1);
        for (int i = 0; i < h; ++i) {
            side[m.a_parts[i]] = 0;
            side[m.b_parts[i]] = 1;
            pair[m.a_parts[i]] = pair[m.b_parts[i]] = i;
        }
        auto side_of = [&](Vertex x) { return side[spec.part(x)]; };
        auto pair_of = [&](Vertex x) { return pair[spec.part(x)]; };

        bool reversed = false;
        if ((side_of(u) == 2 && side_of(v) != 2) || (side_of(u) == 1 && side_of(v) == 0)) {
            std::swap(u, v);
            reversed = true;
        }
        FamilyBuilder out(u, v, reversed);
        const int s = m.s;

        // Relabel pair indices so that u's pair is 1 and v's (if different) is 2.
        std::vector<int> order;
        auto place = [&](int i) {
            if (i >= 0 && std::find(order.begin(), order.end(), i) == order.end())
                order.push_back(i);
        };
        place(pair_of(u));
        place(pair_of(v));
        for (int i = 0; i < h; ++i)
            place(i);

        // own(i) / opp(i): designated lists of relabeled pair i (1-based) on
        // u's side and on the opposite side.
        const bool flipped = side_of(u) == 1;
        auto own = [&](int i) -> const std::vector<Vertex> & {
            int idx = order[i - 1];
            return m.designated[flipped ? m.b_parts[idx] : m.a_parts[idx]];
        };
        auto opp = [&](int i) -> const std::vector<Vertex> & {
            int idx = order[i - 1];
            return m.designated[flipped ? m.a_parts[idx] : m.b_parts[idx]];
        };
        auto via_pairs = [&](int from) {
            for (int i = from; i <= h; ++i)
                for (int j = 0; j < s; ++j)
                    out.add({u, own(i)[j], opp(i)[j], v});
        };
        const std::string side_note = flipped ? " (sides swapped)" : "";

        if (m.t % 2 == 1) {
            const auto & xs = m.designated[*m.x_part];
            if (side_of(u) == 2) {
                via_pairs(1);
                return out.finish("odd-t Case 2");
            }
            const int sv = side_of(v);
            if (sv == side_of(u) && pair_of(v) == pair_of(u)) {
                via_pairs(2);
                for (int j = 0; j < s; ++j)
                    out.add({u, xs[j], opp(1)[j], v});
                return out.finish("odd-t Case 1.1" + side_note);
            }
            if (sv == side_of(u)) {
                via_pairs(3);
                for (int j = 0; j < s; ++j)
                    out.add({u, xs[j], opp(2)[j], v});
                for (int j = 0; j < s; ++j)
                    out.add({u, opp(1)[j], v});
                return out.finish("odd-t Case 1.2" + side_note);
            }
            if (sv == 2 && flipped) {
                // X-B edges carry color 3, so the A-side family does not mirror;
                // route through A instead (B-A is 2 or 3, A-X is 1).
                for (int i = 1; i <= h; ++i)
                    for (int j = 0; j < s; ++j)
                        out.add({u, opp(i)[j], v});
                return out.finish("odd-t Case 1.4 (u in B)");
            }
            if (sv == 2) {
                via_pairs(2);
                for (int j = 0; j < s; ++j)
                    out.add({u, opp(1)[j], v});
                return out.finish("odd-t Case 1.4");
            }
            for (int i = 2; i <= h; ++i)
                for (int j = 0; j < s; ++j)
                    out.add({u, own(i)[j], v});
            for (int j = 0; j < s; ++j)
                out.add({u, xs[j], v});
            return out.finish("odd-t Case 1.3");
        }

        const int sv = side_of(v);
        if (sv == side_of(u) && pair_of(v) == pair_of(u)) {
            for (int j = 0; j < m.s1; ++j)
                out.add({u, own(2)[j], opp(2)[j], v});
            for (int j = 0; j < m.s2; ++j)
                out.add({u, own(2)[m.s1 + j], opp(1)[m.s1 + j], v});
            for (int j = 0; j < m.s2; ++j)
                out.add({u, opp(1)[j], opp(2)[m.s1 + j], v});
            via_pairs(3);
            return out.finish("even-t Case 1" + side_note);
        }
        if (sv == side_of(u)) {
            via_pairs(3);
            for (int i = 1; i <= 2; ++i)
                for (int j = 0; j < s; ++j)
                    out.add({u, opp(i)[j], v});
            return out.finish("even-t Case 2" + side_note);
        }
        for (int i = 2; i <= h; ++i)
            for (int j = 0; j < s; ++j)
                out.add({u, own(i)[j], v});
        // v sits in relabeled pair 1 or 2; i* is the smallest index avoiding it.
        const int v_label = pair_of(v) == pair_of(u) ? 1 : 2;
        const int i_star = v_label == 1 ? 2 : 1;
        for (int j = 0; j < s; ++j)
            out.add({u, opp(i_star)[j], v});
        return out.finish("even-t Case 3" + side_note + " i*=" + std::to_string(i_star));
    }

    inline WitnessFamily mnn_witness(const MnnMeta & m, const PartitionSpec & spec, Vertex u, Vertex v)
    {
        bool reversed = false;
        if (spec.part(u) > spec.part(v)) {
            std::swap(u, v);
            reversed = true;
        }
        FamilyBuilder out(u, v, reversed);
        const int s = m.s, n = m.n;
        auto index = [&](Vertex x) { return spec.locate(x).second + 1; };
        auto at = [&](int part, int j) { return spec.vertex(part, j - 1); };
        auto group = [s](int j) { return std::min((j + 1) / 2, s); };
        auto group_members = [&](int t) {
            std::vector<int> g{2 * t - 1, 2 * t};
            if (t == s && n % 2 == 1)
                g.push_back(2 * s + 1);
            return g;
        };
        auto mate = [&](int t, int j) {
            for (int x : group_members(t))
                if (x != j)
                    return x;
            throw std::logic_error("mnn: group with a single member");
        };
        const int pu = spec.part(u), pv = spec.part(v);
        const int i = index(u), j = index(v);

        if (pu == pv && pu != 0) {
            const int other = 3 - pu;
            out.add({u, at(other, i), v});
            out.add({u, at(other, j), v});
            return out.finish(pu == 1 ? "mnn Case 1" : "mnn Case 1 (B<->C)");
        }
        if (pu == 1 && pv == 2) {
            out.add({u, v});
            out.add({u, at(0, 1), v});
            return out.finish("mnn Case 2");
        }
        if (pu == 0 && pv != 0) {
            const auto & bits = m.strings[i - 1];
            const int t = group(j);
            out.add({u, v});
            if (pv == 1) {
                if (bits[s + t - 1] == '0')
                    out.add({u, at(2, mate(t, j)), v});
                else
                    out.add({u, at(2, j), v});
                return out.finish("mnn Case 3");
            }
            if (bits[t - 1] == '0')
                out.add({u, at(1, mate(t, j)), v});
            else
                out.add({u, at(1, j), v});
            return out.finish("mnn Case 3 (B<->C)");
        }
        const auto & x = m.strings[i - 1];
        const auto & y = m.strings[j - 1];
        int pos = 0;
        while (pos < 2 * s && x[pos] == y[pos])
            ++pos;
        if (pos == 2 * s)
            throw std::logic_error("mnn: duplicate bit strings");
        const int t = pos + 1;
        const int part = t <= s ? 1 : 2;
        const int tt = t <= s ? t : t - s;
        out.add({u, at(part, 2 * tt - 1), v});
        out.add({u, at(part, 2 * tt), v});
        return out.finish("mnn Case 4");
    }

    inline WitnessFamily k2416_witness(const K2416Meta & m, const PartitionSpec & spec, Vertex u, Vertex v)
    {
        // Classes: 0 = A, 1 = B, 2 = C_L, 3 = C_R.
        auto cls = [&](Vertex x) {
            auto [p, idx] = spec.locate(x);
            return p < 2 ? p : (idx < 8 ? 2 : 3);
        };
        bool reversed = false;
        if (cls(u) > cls(v)) {
            std::swap(u, v);
            reversed = true;
        }
        FamilyBuilder out(u, v, reversed);
        const Vertex a1 = spec.vertex(0, 0), a2 = spec.vertex(0, 1);
        auto b = [&](int j) { return spec.vertex(1, j - 1); };
        auto c = [&](int i) { return spec.vertex(2, i - 1); };
        auto c_prime = [&](int i) { return spec.vertex(2, 8 + i - 1); };
        auto string_of = [&](Vertex x) { return m.strings[spec.locate(x).second % 8]; };
        const int cu = cls(u), cv = cls(v);

        if (cu == 0 && cv == 0) {
            out.add({u, c(1), v});
            out.add({u, c(2), v});
            return out.finish("k2416 Case 1");
        }
        if (cu == 0 && cv >= 2) {
            const auto & bits = string_of(v);
            const int j = static_cast<int>(bits.find('1')) + 1;
            out.add({u, v});
            out.add({u, b(j), v});
            return out.finish("k2416 Case 2 (y in C)");
        }
        if (cu == 0 && cv == 1) {
            const int col = spec.locate(v).second;
            int i = 0;
            while (m.strings[i][col] != '1')
                ++i;
            out.add({u, v});
            if (u == a1) {
                out.add({u, c(i + 1), v});
                return out.finish("k2416 Case 2 (y in B)");
            }
            out.add({u, c_prime(i + 1), v});
            return out.finish("k2416 Case 2 (y in B, a1<->a2 with C_L<->C_R)");
        }
        if (cu == 1 && cv >= 2) {
            out.add({u, v});
            out.add({u, cv == 2 ? a2 : a1, v});
            return out.finish("k2416 Case 3");
        }
        if (cu == 1 && cv == 1) {
            const int p = spec.locate(u).second, q = spec.locate(v).second;
            int i = 0;
            while (m.strings[i][p] == m.strings[i][q])
                ++i;
            out.add({u, c(i + 1), v});
            out.add({u, c_prime(i + 1), v});
            return out.finish("k2416 Case 4 (string " + m.strings[i] + ")");
        }
        if (cu != cv) {
            out.add({u, a1, v});
            out.add({u, a2, v});
            return out.finish("k2416 Case 5");
        }
        const auto & x = string_of(u);
        const auto & y = string_of(v);
        std::vector<int> differ;
        for (int j = 0; j < 4; ++j)
            if (x[j] != y[j])
                differ.push_back(j + 1);
        if (differ.size() < 2)
            throw std::logic_error("k2416: strings differ in fewer than two bits");
        out.add({u, b(differ[0]), v});
        out.add({u, b(differ[1]), v});
        return out.finish("k2416 Case 6");
    }

} // namespace detail

inline WitnessFamily witness_paths(const ConstructionMeta & meta, const Coloring & c, Vertex u, Vertex v, int k);

namespace detail {

    inline WitnessFamily extension_witness(const ExtensionMeta & m, const Coloring & c, Vertex u, Vertex v, int k)
    {
        if (!m.base)
            outside_hypotheses("extension has no base construction to route through");
        const auto & base = *m.base;
        const auto & bspec = base.coloring.spec();
        const Vertex old1 = bspec.vertex(m.p, 0), old2 = bspec.vertex(m.q, 0);

        std::vector<Vertex> new_to_old(c.num_vertices(), -1);
        for (Vertex x = 0; x < static_cast<Vertex>(m.old_to_new.size()); ++x)
            new_to_old[m.old_to_new[x]] = x;

        // Route the pair through an isomorphic copy of the base graph given by
        // `down` (new id -> base id); base ids map back through `up`.
        auto route = [&](auto down, auto up, const std::string & how) {
            auto fam = witness_paths(base.meta, base.coloring, down(u), down(v), k);
            WitnessFamily out;
            out.u = u;
            out.v = v;
            for (const auto & p : fam.paths) {
                Path q;
                for (Vertex x : p)
                    q.push_back(up(x));
                out.paths.push_back(std::move(q));
            }
            out.provenance = "extension " + how + " / " + fam.provenance;
            return out;
        };
        auto plain_up = [&](Vertex x) { return m.old_to_new[x]; };

        if (new_to_old[u] >= 0 && new_to_old[v] >= 0)
            return route([&](Vertex x) { return new_to_old[x]; }, plain_up, "(original pair)");

        auto is_anchor = [&](Vertex x) { return x == m.a1_anchor || x == m.a2_anchor; };
        if (!is_anchor(u) && !is_anchor(v)) {
            // New vertices stand in for their anchors.
            auto down = [&](Vertex x) { return x == m.a1 ? old1 : x == m.a2 ? old2 : new_to_old[x]; };
            auto up = [&](Vertex x) { return x == old1 ? m.a1 : x == old2 ? m.a2 : m.old_to_new[x]; };
            return route(down, up, "(anchors replaced)");
        }

        // One endpoint is an anchor, the other a new vertex.
        const bool u_new = new_to_old[u] < 0;
        const Vertex fresh = u_new ? u : v;
        const Vertex anchor = u_new ? v : u;
        const bool same_side = (fresh == m.a1 && anchor == m.a1_anchor) || (fresh == m.a2 && anchor == m.a2_anchor);
        if (same_side) {
            const Vertex other_new = fresh == m.a1 ? m.a2 : m.a1;
            const Vertex other_anchor = fresh == m.a1 ? m.a2_anchor : m.a1_anchor;
            FamilyBuilder out(fresh, anchor, !u_new);
            out.add({fresh, other_new, anchor});
            out.add({fresh, other_anchor, anchor});
            return out.finish("extension (a_i, a_i')");
        }
        // Pair {a_i, a_j'}: drop a_i' and a_j; a_i plays a_i'.
        const Vertex stand_in = fresh == m.a1 ? old1 : old2;
        auto down = [&](Vertex x) { return x == fresh ? stand_in : new_to_old[x]; };
        auto up = [&](Vertex x) { return x == stand_in ? fresh : m.old_to_new[x]; };
        return route(down, up, "(a_i, a_j')");
    }

} // namespace detail

/// The explicit disjoint rainbow path family from the proof case covering
/// (u, v). Throws when the pair or parameters fall outside the hypotheses.
inline WitnessFamily witness_paths(const ConstructionMeta & meta, const Coloring & c, Vertex u, Vertex v, int k)
{
    const auto & spec = c.spec();
    spec.check(u);
    spec.check(v);
    if (u == v)
        detail::outside_hypotheses("endpoints coincide");
    if (k < 1)
        detail::outside_hypotheses("k must be >= 1");

    return std::visit(
        [&](const auto & m) -> WitnessFamily {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Bipartite4Meta>) {
                return detail::bipartite_witness(m, spec, u, v, k);
            } else if constexpr (std::is_same_v<T, CtkMeta>) {
                return detail::ctk_witness(m, spec, u, v, k);
            } else {
                if (k > 2)
                    detail::outside_hypotheses("2-colorings are only rainbow 2-connected");
                if constexpr (std::is_same_v<T, MnnMeta>)
                    return detail::mnn_witness(m, spec, u, v);
                else if constexpr (std::is_same_v<T, K2416Meta>)
                    return detail::k2416_witness(m, spec, u, v);
                else
                    return detail::extension_witness(m, c, u, v, k);
            }
        },
        meta.data);
}

inline WitnessFamily witness_paths(const Construction & con, Vertex u, Vertex v, int k)
{
    return witness_paths(con.meta, con.coloring, u, v, k);
}

// Metadata encoding ------------------------------------------------------------

inline ordered_json to_json(const ConstructionMeta & meta)
{
    ordered_json j;
    j["family"] = to_string(meta.family());
    j["params"] = meta.params;
    std::visit(
        [&](const auto & m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Bipartite4Meta>) {
                j["k"] = m.k;
                j["labeling"] = {{"A", 0}, {"B", 1}, {"A1", m.blocks[0][0]}, {"A2", m.blocks[0][1]},
                                 {"B1", m.blocks[1][0]}, {"B2", m.blocks[1][1]}};
                j["designated"] = {{"a1", m.designated[0][0]}, {"a2", m.designated[0][1]},
                                   {"b1", m.designated[1][0]}, {"b2", m.designated[1][1]}};
            } else if constexpr (std::is_same_v<T, CtkMeta>) {
                j["k"] = m.k;
                j["s"] = m.s;
                j["s1"] = m.s1;
                j["s2"] = m.s2;
                j["labeling"] = {{"X", m.x_part ? ordered_json(*m.x_part) : ordered_json(nullptr)},
                                 {"A", m.a_parts}, {"B", m.b_parts}};
                j["designated"] = m.designated;
            } else if constexpr (std::is_same_v<T, MnnMeta>) {
                j["s"] = m.s;
                j["strings"] = m.strings;
                j["palette"] = detail::bit_palette();
            } else if constexpr (std::is_same_v<T, K2416Meta>) {
                j["strings"] = m.strings;
                j["palette"] = detail::bit_palette();
            } else {
                j["grown_parts"] = {m.p, m.q};
                j["new_vertices"] = {m.a1, m.a2};
                j["anchors"] = {m.a1_anchor, m.a2_anchor};
                j["transposed"] = m.transposed;
                j["palette"] = detail::bit_palette();
                j["base"] = m.base ? to_json(m.base->meta) : ordered_json(nullptr);
            }
        },
        meta.data);
    return j;
}

/// Coloring JSON with an extra "meta" block.
inline ordered_json to_json(const Construction & con)
{
    auto j = to_json(con.coloring);
    j["meta"] = to_json(con.meta);
    return j;
}

} // namespace rainbow

#endif
