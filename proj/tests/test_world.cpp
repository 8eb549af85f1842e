#include <doctest.h>

#include <cmath>

#include "ditstar/world.hpp"

using namespace ditstar;

TEST_CASE("hyperrect containment and distance")
{
    HyperRect r{{0.2, 0.2}, {0.6, 0.6}};
    CHECK(r.containsInterior({0.4, 0.4}));
    CHECK_FALSE(r.containsInterior({0.2, 0.4}));  // face counts as outside
    CHECK_FALSE(r.containsInterior({0.6, 0.6}));
    CHECK_FALSE(r.containsInterior({0.1, 0.4}));
    CHECK(r.squaredDistance({0.4, 0.4}) == 0.0);
    CHECK(r.squaredDistance({0.7, 0.4}) == doctest::Approx(0.01));
    CHECK(r.squaredDistance({0.7, 0.7}) == doctest::Approx(0.02));
}

TEST_CASE("narrow passage geometry")
{
    const Environment env = makeNarrowPassage(2);
    CHECK(env.dim == 2);
    CHECK(env.obstacles.size() == 2);
    CHECK(isStateValid(env, {0.5, 0.61}));
    CHECK_FALSE(isStateValid(env, {0.5, 0.5}));
    CHECK(isStateValid(env, env.start));
    CHECK(isStateValid(env, env.goal));

    // Gap spans [0.60, 0.62] in the second coordinate, wall [0.4, 0.6] in the
    // first.
    CHECK(isStateValid(env, {0.5, 0.605}));
    CHECK(isStateValid(env, {0.5, 0.615}));
    CHECK_FALSE(isStateValid(env, {0.5, 0.59}));
    CHECK_FALSE(isStateValid(env, {0.5, 0.63}));
    CHECK(isStateValid(env, {0.39, 0.5}));
    CHECK(isStateValid(env, {0.61, 0.5}));

    const Environment env8 = makeNarrowPassage(8);
    CHECK(env8.dim == 8);
    CHECK(isStateValid(env8, env8.start));
    CHECK(isStateValid(env8, env8.goal));
}

TEST_CASE("random rectangle generator")
{
    SUBCASE("empty obstacle set")
    {
        const Environment env = makeRandomRectangles(2, 0, 0, 0.1, 0.5);
        CHECK(env.obstacles.empty());
        CHECK(isMotionValid(env, env.start, env.goal, {}));
    }
    SUBCASE("deterministic per seed")
    {
        const Environment a = makeRandomRectangles(2, 5, 77, 0.1, 0.5);
        const Environment b = makeRandomRectangles(2, 5, 77, 0.1, 0.5);
        REQUIRE(a.obstacles.size() == b.obstacles.size());
        for (std::size_t i = 0; i < a.obstacles.size(); ++i)
        {
            CHECK(a.obstacles[i].lower == b.obstacles[i].lower);
            CHECK(a.obstacles[i].upper == b.obstacles[i].upper);
        }
    }
    SUBCASE("start and goal stay valid across seeds")
    {
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            const Environment env = makeRandomRectangles(4, 10, seed, 0.1, 0.5);
            CHECK(isStateValid(env, env.start));
            CHECK(isStateValid(env, env.goal));
            for (const auto &rect : env.obstacles)
            {
                for (int d = 0; d < env.dim; ++d)
                {
                    CHECK(rect.lower[d] >= 0.0);
                    CHECK(rect.upper[d] <= 1.0);
                    CHECK(rect.lower[d] < rect.upper[d]);
                }
            }
        }
    }
}

TEST_CASE("state validity")
{
    Environment env;
    env.dim = 2;
    CHECK(isStateValid(env, {0.5, 0.5}));  // empty obstacle list
    env.obstacles.push_back({{0.2, 0.2}, {0.6, 0.6}});
    CHECK(isStateValid(env, {0.2, 0.4}));  // on a face
    CHECK_FALSE(isStateValid(env, {0.4, 0.4}));
}

TEST_CASE("motion validity")
{
    const Environment env = makeNarrowPassage(2);
    SUBCASE("zero-length motion")
    {
        CHECK(isMotionValid(env, {0.3, 0.5}, {0.3, 0.5}, {}));
    }
    SUBCASE("wall blocks the direct segment")
    {
        CHECK_FALSE(isMotionValid(env, {0.3, 0.5}, {0.7, 0.5}, {}));
    }
    SUBCASE("gap admits the offset segment")
    {
        CHECK(isMotionValid(env, {0.3, 0.61}, {0.7, 0.61}, {}));
    }
    SUBCASE("direction independent")
    {
        RandomStream rng(23);
        for (int i = 0; i < 150; ++i)
        {
            const StateVec a = sampleUniform(2, rng);
            const StateVec b = sampleUniform(2, rng);
            CHECK(isMotionValid(env, a, b, {}) == isMotionValid(env, b, a, {}));
        }
    }
    SUBCASE("obstacle-free segments stay valid as the resolution coarsens")
    {
        RandomStream rng(29);
        int tested = 0;
        while (tested < 100)
        {
            const StateVec a = sampleUniform(2, rng);
            const StateVec b = sampleUniform(2, rng);
            // Only segments with real clearance are guaranteed valid at every
            // resolution; grazing segments depend on where samples land.
            double clearanceSq = 1.0;
            for (int k = 0; k <= 200; ++k)
            {
                const double t = k / 200.0;
                const StateVec x{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
                for (const auto &rect : env.obstacles)
                {
                    clearanceSq = std::min(clearanceSq, rect.squaredDistance(x));
                }
            }
            if (clearanceSq < 1e-4)
            {
                continue;
            }
            for (const double res : {0.001, 0.005, 0.01, 0.05})
            {
                MotionCheckConfig coarse;
                coarse.resolution = res;
                CHECK(isMotionValid(env, a, b, coarse));
            }
            ++tested;
        }
    }
}

TEST_CASE("motion effort estimate")
{
    CHECK(effortEstimate({0.3, 0.5}, {0.3, 0.5}, {}) == 0);
    CHECK(effortEstimate({0.3, 0.5}, {0.7, 0.5}, {}) == 29);
    RandomStream rng(31);
    for (int i = 0; i < 100; ++i)
    {
        const StateVec a = sampleUniform(3, rng);
        const StateVec b = sampleUniform(3, rng);
        CHECK(effortEstimate(a, b, {}) == effortEstimate(b, a, {}));
    }
}

TEST_CASE("environment JSON round trip")
{
    const Environment env = makeNarrowPassage(3);
    const Environment back = environmentFromJson(environmentToJson(env));
    CHECK(back.dim == env.dim);
    CHECK(back.start == env.start);
    CHECK(back.goal == env.goal);
    REQUIRE(back.obstacles.size() == env.obstacles.size());
    for (std::size_t i = 0; i < env.obstacles.size(); ++i)
    {
        CHECK(back.obstacles[i].lower == env.obstacles[i].lower);
        CHECK(back.obstacles[i].upper == env.obstacles[i].upper);
    }
}
