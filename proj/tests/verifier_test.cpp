#include <rainbow/bounds.hpp>
#include <rainbow/constructions.hpp>
#include <rainbow/verifier.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"

using namespace rainbow;

namespace {

Coloring monochrome(const PartitionSpec & spec)
{
    Coloring c(spec, 1);
    for (Vertex u = 0; u < spec.num_vertices(); ++u)
        for (Vertex v = u + 1; v < spec.num_vertices(); ++v)
            if (spec.part(u) != spec.part(v))
                c.set(u, v, 1);
    return c;
}

/// Calls f on every coloring of spec with colors 1..L (no symmetry removal).
template <typename F>
void for_each_coloring(const PartitionSpec & spec, int L, F f)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < spec.num_vertices(); ++u)
        for (Vertex v = u + 1; v < spec.num_vertices(); ++v)
            if (spec.part(u) != spec.part(v))
                edges.emplace_back(u, v);
    std::vector<int> digits(edges.size(), 1);
    while (true) {
        Coloring c(spec, L);
        for (std::size_t i = 0; i < edges.size(); ++i)
            c.set(edges[i].first, edges[i].second, digits[i]);
        f(c);
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == L)
            digits[i++] = 1;
        if (i == digits.size())
            return;
        ++digits[i];
    }
}

} // namespace

TEST(EnumerateRainbowPaths, MonochromeAdjacentPairHasOnlyTheEdge)
{
    auto c = monochrome(PartitionSpec{2, 2});
    auto paths = enumerate_rainbow_paths(c, 0, 2, 4);
    ASSERT_EQ(paths.size(), 1U);
    EXPECT_EQ(paths[0], (Path{0, 2}));
}

TEST(EnumerateRainbowPaths, FourBlockColoringOfK22)
{
    // K_{2,2} has four vertices, so the two A vertices are joined by exactly
    // the two length-2 paths; both are rainbow (colors 1,3 and 2,4).
    auto c = color_bipartite4(2, 2, 1).coloring;
    auto paths = enumerate_rainbow_paths(c, 0, 1, 4);
    EXPECT_EQ(paths, oracle::all_rainbow_paths(c, 0, 1));
    EXPECT_EQ(paths, (std::vector<Path>{{0, 2, 1}, {0, 3, 1}}));
}

TEST(EnumerateRainbowPaths, CapOfOneOnNonAdjacentPairIsEmpty)
{
    auto c = color_bipartite4(4, 4, 2).coloring;
    EXPECT_TRUE(enumerate_rainbow_paths(c, 0, 1, 1).empty());
}

TEST(EnumerateRainbowPaths, MatchesBruteForceAndIsLexicographic)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        PartitionSpec spec = trial % 2 ? PartitionSpec{2, 2, 2} : PartitionSpec{1, 2, 3};
        auto c = random_coloring(spec, 2 + trial % 3, rng());
        Vertex u = static_cast<Vertex>(rng() % 6), v = static_cast<Vertex>(rng() % 6);
        if (u == v)
            continue;
        auto paths = enumerate_rainbow_paths(c, u, v, c.num_colors());
        EXPECT_EQ(paths, oracle::all_rainbow_paths(c, u, v)) << trial;
        EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
    }
}

TEST(EnumerateRainbowPaths, CapBeyondPaletteChangesNothing)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto c = random_coloring(PartitionSpec{2, 2, 3}, 3, seed);
        auto at_cap = enumerate_rainbow_paths(c, 0, 1, 3);
        EXPECT_EQ(at_cap, enumerate_rainbow_paths(c, 0, 1, 6));
        EXPECT_EQ(at_cap, enumerate_rainbow_paths(c, 0, 1, 100));
    }
}

TEST(MaxDisjointRainbow, TwinsInFourColoredK2_17)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto c = random_coloring(PartitionSpec{2, 17}, 4, seed);
        auto twins = find_color_twins(c, 1);
        ASSERT_TRUE(twins);
        auto r = max_disjoint_rainbow(c, {twins->first, twins->second, PackingMode::maximize, 0, 0});
        EXPECT_LE(r.count, 1);
        EXPECT_TRUE(family_is_valid(c, r.family, r.count));
    }
}

TEST(MaxDisjointRainbow, K2416ReachesTwoOnEveryPair)
{
    auto c = color_2_4_16().coloring;
    for (Vertex u = 0; u < c.num_vertices(); ++u)
        for (Vertex v = u + 1; v < c.num_vertices(); ++v) {
            auto r = max_disjoint_rainbow(c, {u, v, PackingMode::decision, 2, 0});
            ASSERT_EQ(r.count, 2) << u << "," << v;
        }
}

TEST(MaxDisjointRainbow, MonochromeSamePartPairHasNone)
{
    auto c = monochrome(PartitionSpec{2, 2});
    auto r = max_disjoint_rainbow(c, {0, 1, PackingMode::maximize, 0, 0});
    EXPECT_EQ(r.count, 0);
    EXPECT_TRUE(r.family.paths.empty());
}

TEST(MaxDisjointRainbow, DecisionModeIsCappedMaximum)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto c = random_coloring(PartitionSpec{2, 2, 2}, 3, seed);
        for (int k = 1; k <= 4; ++k) {
            auto full = max_disjoint_rainbow(c, {0, 1, PackingMode::maximize, 0, 0});
            auto dec = max_disjoint_rainbow(c, {0, 1, PackingMode::decision, k, 0});
            EXPECT_EQ(dec.count, std::min(k, full.count));
            EXPECT_TRUE(family_is_valid(c, dec.family, dec.count));
        }
    }
}

// Exhaustive agreement with subset enumeration on every <= 3-coloring of
// K_{2,2} and K_{1,1,2}.
TEST(MaxDisjointRainbow, AgreesWithSubsetOracleExhaustively)
{
    int checked = 0;
    for (auto spec : {PartitionSpec{2, 2}, PartitionSpec{1, 1, 2}}) {
        for (int L = 1; L <= 3; ++L) {
            for_each_coloring(spec, L, [&](const Coloring & c) {
                for (Vertex u = 0; u < c.num_vertices(); ++u)
                    for (Vertex v = u + 1; v < c.num_vertices(); ++v) {
                        auto r = max_disjoint_rainbow(c, {u, v, PackingMode::maximize, 0, 0});
                        ASSERT_EQ(r.count, oracle::max_packing_by_subsets(oracle::all_rainbow_paths(c, u, v)));
                        ASSERT_TRUE(family_is_valid(c, r.family, r.count));
                        ++checked;
                    }
            });
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(MaxDisjointRainbow, AgreesWithSubsetOracleOnLargerRandomInstances)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = random_coloring(PartitionSpec{2, 2, 3}, 3, rng());
        Vertex u = static_cast<Vertex>(rng() % 7), v = static_cast<Vertex>(rng() % 7);
        if (u == v)
            continue;
        auto paths = oracle::all_rainbow_paths(c, u, v);
        if (paths.size() > 22)
            continue;
        auto r = max_disjoint_rainbow(c, {u, v, PackingMode::maximize, 0, 0});
        EXPECT_EQ(r.count, oracle::max_packing_by_subsets(paths)) << trial;
    }
}

TEST(Verify, FourBlockColoringPassesForSmallK)
{
    for (int k = 1; k <= 3; ++k) {
        auto con = color_bipartite4(2 * k, 2 * k, k);
        EXPECT_TRUE(verify_rainbow_k_connected(con.coloring, k).pass) << k;
    }
}

TEST(Verify, CtkOnK222PassesAtTwo)
{
    auto con = color_ctk(PartitionSpec{2, 2, 2}, 2);
    auto report = verify_rainbow_k_connected(con.coloring, 2);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(con.coloring.image().size(), 3U);
}

TEST(Verify, MonochromeK22FailsWithDiagnostics)
{
    auto c = monochrome(PartitionSpec{2, 2});
    auto report = verify_rainbow_k_connected(c, 1);
    EXPECT_FALSE(report.pass);
    ASSERT_TRUE(report.failure);
    EXPECT_EQ(report.failure->family.u, 0);
    EXPECT_EQ(report.failure->family.v, 1);
    EXPECT_EQ(report.failure->count, 0);
    auto j = to_json(report);
    EXPECT_EQ(j["verdict"], "fail");
    EXPECT_EQ(j["failing_pair"]["max_count"], 0);
}

TEST(Verify, ResultIndependentOfWorkerCount)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto c = random_coloring(PartitionSpec{2, 3, 3}, 3, seed);
        for (auto mode : {PackingMode::decision, PackingMode::maximize}) {
            auto one = verify_rainbow_k_connected(c, 2, {mode, 1, std::nullopt});
            auto many = verify_rainbow_k_connected(c, 2, {mode, 4, std::nullopt});
            EXPECT_EQ(to_json(one).dump(), to_json(many).dump());
        }
    }
}

TEST(Verify, SinglePairQuery)
{
    auto c = color_2_4_16().coloring;
    VerifyOptions opt;
    opt.only_pair = std::pair{5, 0};
    auto report = verify_rainbow_k_connected(c, 2, opt);
    ASSERT_EQ(report.pairs.size(), 1U);
    EXPECT_EQ(report.pairs[0].u, 0);
    EXPECT_EQ(report.pairs[0].v, 5);
    EXPECT_TRUE(report.pass);
}

TEST(Verify, ColorPermutationInvariance)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int L = 2 + trial % 3;
        auto c = random_coloring(PartitionSpec{2, 2, 2}, L, rng());
        std::vector<Color> perm(L);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto d = c.permuted(perm);
        auto a = verify_rainbow_k_connected(c, 2, {PackingMode::maximize, 1, std::nullopt});
        auto b = verify_rainbow_k_connected(d, 2, {PackingMode::maximize, 1, std::nullopt});
        ASSERT_EQ(a.pairs.size(), b.pairs.size());
        for (std::size_t i = 0; i < a.pairs.size(); ++i)
            ASSERT_EQ(a.pairs[i].count, b.pairs[i].count) << trial;
    }
}

TEST(Verify, MonotoneInK)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_coloring(PartitionSpec{2, 2, 3}, 3 + trial % 2, rng());
        bool previous = true;
        for (int k = 1; k <= 4; ++k) {
            bool now = verify_rainbow_k_connected(c, k).pass;
            EXPECT_FALSE(now && !previous) << trial << " k=" << k;
            previous = now;
        }
    }
}

TEST(StructuralConnectivity, MatchesVertexCutSearch)
{
    EXPECT_EQ(structural_connectivity(PartitionSpec{2, 2, 2}), 4);
    EXPECT_EQ(structural_connectivity(PartitionSpec{1, 1}), 1);
    EXPECT_EQ(structural_connectivity(PartitionSpec{17, 2}), 2);
    for (auto spec : {PartitionSpec{2, 2, 2}, PartitionSpec{1, 1}, PartitionSpec{1, 2, 3}, PartitionSpec{4, 1},
                      PartitionSpec{3, 3, 1, 2}})
        EXPECT_EQ(structural_connectivity(spec), oracle::vertex_connectivity(spec));
    EXPECT_EQ(oracle::vertex_connectivity(PartitionSpec{2, 2, 2}), 4);
}
