#include <rainbow/bounds.hpp>
#include <rainbow/constructions.hpp>
#include <rainbow/oracle.hpp>
#include <rainbow/verifier.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"

using namespace rainbow;

namespace {

std::size_t count_canonical(const PartitionSpec & spec, int L)
{
    std::size_t n = 0;
    enumerate_colorings_canonical(spec, L, {}, [&](const Coloring &) {
        ++n;
        return true;
    });
    return n;
}

} // namespace

TEST(Canonical, CountsMatchBruteForceOrbits)
{
    EXPECT_EQ(count_canonical(PartitionSpec{1, 1}, 3), 1U);
    EXPECT_EQ(count_canonical(PartitionSpec{2, 2}, 2), 8U);
    EXPECT_EQ(count_canonical(PartitionSpec{1, 1, 1}, 3), 5U);
    for (const auto & sizes : {std::vector<int>{1, 1}, {2, 2}, {1, 1, 1}, {1, 2}, {1, 1, 2}})
        for (int L = 1; L <= 4; ++L)
            EXPECT_EQ(count_canonical(PartitionSpec(sizes), L), oracle::count_orbits(PartitionSpec(sizes), L));
}

TEST(Canonical, VisitsDistinctCanonicalForms)
{
    std::set<std::vector<Color>> seen;
    enumerate_colorings_canonical(PartitionSpec{2, 2}, 3, {}, [&](const Coloring & c) {
        EXPECT_EQ(canonicalize(c), c);
        std::vector<Color> form;
        for (const auto & e : c.edges())
            form.push_back(e.color);
        EXPECT_TRUE(seen.insert(form).second);
        return true;
    });
}

TEST(Canonical, InvariantUnderColorBijections)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int L = 1 + static_cast<int>(rng() % 5);
        auto c = random_coloring(PartitionSpec{2, 2, 1}, L, rng());
        std::vector<Color> perm(L);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        EXPECT_EQ(canonicalize(c.permuted(perm)), canonicalize(c));
    }
}

TEST(Canonical, BudgetIsEnforced)
{
    EXPECT_THROW(count_canonical(PartitionSpec{3, 3, 3}, 2), BudgetExceeded);
    SearchBudget tiny;
    tiny.node_limit = 3;
    EXPECT_THROW(enumerate_colorings_canonical(PartitionSpec{2, 2}, 2, tiny, [](const Coloring &) { return true; }),
                 BudgetExceeded);
}

TEST(RcK, SmallValues)
{
    EXPECT_EQ(rc_k_exact(PartitionSpec{1, 1, 1}, 1, {}).value, 1);
    EXPECT_EQ(rc_k_exact(PartitionSpec{2, 2}, 1, {}).value, 2);
    EXPECT_EQ(rc_k_exact(PartitionSpec{1, 1}, 1, {}).value, 1);
    auto r = rc_k_exact(PartitionSpec{2, 2, 2}, 2, {});
    ASSERT_TRUE(r.value);
    EXPECT_EQ(*r.value, 2);
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(verify_rainbow_k_connected(*r.witness, 2).pass);
}

TEST(RcK, WitnessIsTightAndVerifies)
{
    for (const auto & [sizes, k] : std::vector<std::pair<std::vector<int>, int>>{
             {{1, 2}, 1}, {{2, 2}, 2}, {{1, 1, 2}, 2}, {{1, 1, 1, 1}, 2}, {{2, 3}, 2}}) {
        auto r = rc_k_exact(PartitionSpec(sizes), k, {});
        ASSERT_TRUE(r.value);
        EXPECT_EQ(static_cast<int>(r.witness->image().size()), *r.value);
        EXPECT_TRUE(verify_rainbow_k_connected(*r.witness, k).pass);
        // Nothing smaller works.
        if (*r.value > 1) {
            SearchBudget fewer;
            fewer.max_colors = *r.value - 1;
            EXPECT_FALSE(rc_k_exact(PartitionSpec(sizes), k, fewer).value);
        }
    }
}

TEST(RcK, Errors)
{
    EXPECT_THROW(rc_k_exact(PartitionSpec{1, 3}, 2, {}), std::invalid_argument);
    EXPECT_THROW(rc_k_exact(PartitionSpec{2, 2}, 0, {}), std::invalid_argument);
    EXPECT_THROW(rc_k_exact(PartitionSpec{4, 4, 4}, 2, {}), BudgetExceeded);
}

TEST(RcK, MonotoneInK)
{
    for (const auto & sizes : {std::vector<int>{2, 2}, {1, 1, 1, 1}, {2, 2, 2}, {2, 3}}) {
        PartitionSpec spec(sizes);
        int previous = 0;
        for (int k = 1; k <= std::min(3, structural_connectivity(spec)); ++k) {
            auto r = rc_k_exact(spec, k, {});
            if (!r.value)
                break; // needs more colors than the search allows
            EXPECT_GE(*r.value, previous);
            previous = *r.value;
        }
    }
}

TEST(RcK, BelowConstructionColorCounts)
{
    auto bip = color_bipartite4(2, 2, 1);
    EXPECT_LE(*rc_k_exact(PartitionSpec{2, 2}, 1, {}).value, bip.coloring.num_colors());
    auto ctk = color_ctk(PartitionSpec{2, 2, 2}, 2);
    EXPECT_LE(*rc_k_exact(PartitionSpec{2, 2, 2}, 2, {}).value, ctk.coloring.num_colors());
    auto mnn = color_mnn(1, 2);
    EXPECT_LE(*rc_k_exact(PartitionSpec{1, 2, 2}, 2, {}).value, mnn.coloring.num_colors());
}
