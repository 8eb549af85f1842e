#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ditstar/space.hpp"

using namespace ditstar;

namespace
{
    // Independent evaluation of the rewiring radius used to cross-check the
    // library implementation.
    double radiusOracle(std::size_t q, int n, double eta, double rewireFactor, double lambda)
    {
        const double zeta = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
        const double base =
            2.0 * (1.0 + 1.0 / n) * (lambda / zeta) * (std::log(static_cast<double>(q)) / q);
        return rewireFactor * eta * std::pow(base, 1.0 / n);
    }
}  // namespace

TEST_CASE("euclidean distance")
{
    CHECK(euclidean({0.0, 0.0}, {0.0, 0.0}) == 0.0);
    CHECK(euclidean({0.0, 0.0}, {0.3, 0.4}) == doctest::Approx(0.5));
    RandomStream rng(7);
    for (int i = 0; i < 100; ++i)
    {
        const StateVec a = sampleUniform(3, rng);
        const StateVec b = sampleUniform(3, rng);
        CHECK(euclidean(a, b) == doctest::Approx(euclidean(b, a)));
        CHECK(euclidean(a, b) >= 0.0);
    }
}

TEST_CASE("random stream determinism")
{
    RandomStream a(42);
    RandomStream b(42);
    for (int i = 0; i < 1000; ++i)
    {
        CHECK(a.uniform01() == b.uniform01());
    }
    RandomStream c(42);
    RandomStream d(43);
    bool anyDiffer = false;
    for (int i = 0; i < 32; ++i)
    {
        anyDiffer = anyDiffer || c.uniform01() != d.uniform01();
    }
    CHECK(anyDiffer);
}

TEST_CASE("uniform sampling")
{
    SUBCASE("range containment")
    {
        RandomStream rng(1);
        for (int i = 0; i < 100; ++i)
        {
            const StateVec x = sampleUniform(2, rng);
            REQUIRE(x.size() == 2);
            for (const double v : x)
            {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
    SUBCASE("same seed replays the same states")
    {
        RandomStream a(5);
        RandomStream b(5);
        for (int i = 0; i < 200; ++i)
        {
            CHECK(sampleUniform(3, a) == sampleUniform(3, b));
        }
    }
    SUBCASE("per-dimension mean")
    {
        RandomStream rng(9);
        std::vector<double> sums(4, 0.0);
        const int count = 10000;
        for (int i = 0; i < count; ++i)
        {
            const StateVec x = sampleUniform(4, rng);
            for (int d = 0; d < 4; ++d)
            {
                sums[d] += x[d];
            }
        }
        for (int d = 0; d < 4; ++d)
        {
            CHECK(sums[d] / count >= 0.48);
            CHECK(sums[d] / count <= 0.52);
        }
    }
    SUBCASE("dimension below two rejected")
    {
        RandomStream rng(0);
        CHECK_THROWS_AS(sampleUniform(1, rng), std::invalid_argument);
    }
}

TEST_CASE("informed sampling")
{
    SUBCASE("ellipse membership")
    {
        InformedSet set({0.3, 0.5}, {0.7, 0.5}, 0.5);
        RandomStream rng(3);
        for (int i = 0; i < 1000; ++i)
        {
            const StateVec x = sampleInformed(set, rng);
            const double through = euclidean(set.start, x) + euclidean(x, set.goal);
            CHECK(through <= set.cBest + 1e-9);
            for (const double v : x)
            {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
    SUBCASE("degenerate spheroid collapses to the segment")
    {
        InformedSet set({0.2, 0.2}, {0.8, 0.8}, euclidean({0.2, 0.2}, {0.8, 0.8}));
        RandomStream rng(11);
        for (int i = 0; i < 100; ++i)
        {
            const StateVec x = sampleInformed(set, rng);
            const double through = euclidean(set.start, x) + euclidean(x, set.goal);
            CHECK(through == doctest::Approx(set.cMin).epsilon(1e-9));
        }
    }
    SUBCASE("membership holds across random problems")
    {
        RandomStream rng(17);
        for (int c = 0; c < 100; ++c)
        {
            const int dim = 2 + static_cast<int>(rng.uniformInt(4));
            const StateVec s = sampleUniform(dim, rng);
            const StateVec g = sampleUniform(dim, rng);
            const double cMin = euclidean(s, g);
            if (cMin < 1e-6)
            {
                continue;
            }
            InformedSet set(s, g, cMin * (1.0 + rng.uniform01()));
            const StateVec x = sampleInformed(set, rng);
            CHECK(euclidean(s, x) + euclidean(x, g) <= set.cBest + 1e-9);
        }
    }
    SUBCASE("cBest below cMin rejected")
    {
        CHECK_THROWS_AS(InformedSet({0.0, 0.0}, {1.0, 0.0}, 0.5), std::invalid_argument);
    }
}

TEST_CASE("unit ball volume")
{
    CHECK(unitBallVolume(1) == doctest::Approx(2.0));
    CHECK(unitBallVolume(2) == doctest::Approx(std::numbers::pi));
    CHECK(unitBallVolume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    for (int n = 3; n <= 20; ++n)
    {
        const double expected = unitBallVolume(n - 2) * 2.0 * std::numbers::pi / n;
        CHECK(unitBallVolume(n) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("informed set measure")
{
    CHECK(lebesgueInformed(InformedSet({0.1, 0.1}, {0.9, 0.9})) == 1.0);
    CHECK(lebesgueInformed(InformedSet({0.1, 0.1}, {0.9, 0.9},
                                       euclidean({0.1, 0.1}, {0.9, 0.9}))) ==
          doctest::Approx(0.0));
    InformedSet set({0.3, 0.5}, {0.7, 0.5}, 0.5);
    CHECK(lebesgueInformed(set) == doctest::Approx(0.11781).epsilon(1e-4));
    // Large spheroids clamp to the unit cube volume.
    InformedSet wide({0.0, 0.5}, {1.0, 0.5}, 5.0);
    CHECK(lebesgueInformed(wide) == 1.0);
}

TEST_CASE("connection radius")
{
    RggParams p;
    p.dim = 2;
    p.eta = 1.001;
    p.rewireFactor = 1.0;
    CHECK(connectionRadius(100, p, 1.0) == doctest::Approx(0.20991).epsilon(1e-3));
    CHECK(std::abs(connectionRadius(100, p, 1.0) - 0.20991) < 1e-4);

    SUBCASE("shrinks with more samples")
    {
        CHECK(connectionRadius(1000, p, 1.0) < connectionRadius(100, p, 1.0));
    }
    SUBCASE("matches the independent oracle on a parameter grid")
    {
        int points = 0;
        for (int n = 2; n <= 6; ++n)
        {
            for (const std::size_t q : {10u, 50u, 100u, 500u, 1000u})
            {
                for (const double lambda : {0.05, 0.25, 0.5, 1.0})
                {
                    RggParams g;
                    g.dim = n;
                    g.eta = 1.001;
                    g.rewireFactor = 1.1;
                    const double got = connectionRadius(q, g, lambda);
                    const double want = radiusOracle(q, n, g.eta, g.rewireFactor, lambda);
                    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
                    ++points;
                }
            }
        }
        CHECK(points >= 100);
    }
    SUBCASE("needs at least two samples")
    {
        CHECK_THROWS_AS(connectionRadius(1, p, 1.0), std::domain_error);
    }
}
