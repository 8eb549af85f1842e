#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ditstar/heuristics.hpp"

using namespace ditstar;

TEST_CASE("admissible cost")
{
    CHECK(admissibleCost({0.1, 0.1}, {0.1, 0.1}) == 0.0);
    CHECK(admissibleCost({0.0, 0.0}, {0.3, 0.4}) == doctest::Approx(0.5));
    RandomStream rng(3);
    for (int i = 0; i < 100; ++i)
    {
        const StateVec a = sampleUniform(3, rng);
        const StateVec b = sampleUniform(3, rng);
        const StateVec m = sampleUniform(3, rng);
        CHECK(admissibleCost(a, b) <= admissibleCost(a, m) + admissibleCost(m, b) + 1e-12);
    }
}

TEST_CASE("reverse queue key")
{
    SUBCASE("goal-adjacent edge")
    {
        VertexEstimates root;
        root.hHat = 0.0;
        root.eBar = 0u;
        root.dsF = 0u;
        const ReverseKey k = reverseKey(root, 0.25, 10u, 0.5, 20u, {0u});
        CHECK(k.k1 == doctest::Approx(0.25 + 0.5));
        CHECK(k.k2 == doctest::Approx(30.0));
        CHECK(k.k3 == doctest::Approx(0.0));
    }
    SUBCASE("worked cost composition")
    {
        VertexEstimates src;
        src.hHat = 0.1;
        src.eBar = 0u;
        src.dsF = 0u;
        const ReverseKey k =
            reverseKey(src, admissibleCost({0.3, 0.5}, {0.7, 0.5}), 0u, 0.2, 0u, {0u});
        CHECK(k.k1 == doctest::Approx(0.7));
    }
    SUBCASE("direction term breaks cost and effort ties")
    {
        VertexEstimates src;
        src.hHat = 0.1;
        src.eBar = 5u;
        src.dsF = 0u;
        const ReverseKey low = reverseKey(src, 0.2, 3u, 0.1, 4u, {10u});
        const ReverseKey high = reverseKey(src, 0.2, 3u, 0.1, 4u, {40u});
        CHECK(low < high);
        CHECK_FALSE(high < low);
    }
    SUBCASE("sorting is insertion-order independent")
    {
        RandomStream rng(7);
        std::vector<ReverseKey> keys;
        for (int i = 0; i < 100; ++i)
        {
            keys.push_back({rng.uniform01(), rng.uniform01(),
                            static_cast<double>(rng.uniformInt(5))});
        }
        // Force some exact ties.
        keys[10] = keys[3];
        keys[11].k1 = keys[4].k1;
        std::vector<ReverseKey> shuffled = keys;
        std::reverse(shuffled.begin(), shuffled.end());
        const auto tupleOf = [](const ReverseKey &k) { return std::make_tuple(k.k1, k.k2, k.k3); };
        const auto less = [&](const ReverseKey &a, const ReverseKey &b) {
            return tupleOf(a) < tupleOf(b);
        };
        std::sort(keys.begin(), keys.end());
        std::sort(shuffled.begin(), shuffled.end());
        std::vector<ReverseKey> oracle = keys;
        std::sort(oracle.begin(), oracle.end(), less);
        for (std::size_t i = 0; i < keys.size(); ++i)
        {
            CHECK(tupleOf(keys[i]) == tupleOf(shuffled[i]));
            CHECK(tupleOf(keys[i]) == tupleOf(oracle[i]));
        }
    }
}

TEST_CASE("direction cost composition")
{
    SUBCASE("root edge")
    {
        VertexEstimates root;
        root.dsF = 0u;
        CHECK(sHatDirection(root) == 0u);
    }
    SUBCASE("admissible term equals the accumulated ticks")
    {
        RandomStream rng(11);
        for (int i = 0; i < 100; ++i)
        {
            VertexEstimates v;
            v.dsF = rng.uniformInt(100000);
            CHECK(sHatDirection(v) == v.dsF);
        }
    }
    SUBCASE("inadmissible term matches a brute-force scan")
    {
        struct Edge
        {
            VertexEstimates src;
            DirectionCost cost;
            VertexEstimates dst;
        };
        std::vector<Edge> queue;
        RandomStream rng(13);
        for (int i = 0; i < 5; ++i)
        {
            Edge e;
            e.src.dsF = rng.uniformInt(500);
            e.cost.ticks = rng.uniformInt(500);
            e.dst.dgBar = rng.uniformInt(500);
            queue.push_back(e);
        }
        std::size_t best = 0;
        std::uint64_t bestValue = kTicksUnreached;
        for (std::size_t i = 0; i < queue.size(); ++i)
        {
            const std::uint64_t direct =
                queue[i].src.dsF + queue[i].cost.ticks + queue[i].dst.dgBar;
            CHECK(sBarDirection(queue[i].src, queue[i].cost, queue[i].dst) == direct);
            if (direct < bestValue)
            {
                bestValue = direct;
                best = i;
            }
        }
        std::size_t argmin = 0;
        for (std::size_t i = 1; i < queue.size(); ++i)
        {
            if (sBarDirection(queue[i].src, queue[i].cost, queue[i].dst) <
                sBarDirection(queue[argmin].src, queue[argmin].cost, queue[argmin].dst))
            {
                argmin = i;
            }
        }
        CHECK(argmin == best);
    }
    SUBCASE("collinear chain toward the goal costs nothing")
    {
        VertexEstimates v;
        v.dsF = 0u;
        CHECK(sBarDirection(v, {0u}, VertexEstimates{}) == 0u);
    }
}
