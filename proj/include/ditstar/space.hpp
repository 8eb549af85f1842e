#ifndef DITSTAR_SPACE_HPP
#define DITSTAR_SPACE_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ditstar
{
    /// A point in the n-dimensional unit-hypercube configuration space.
    using StateVec = std::vector<double>;

    constexpr double kInf = std::numeric_limits<double>::infinity();

    double euclidean(const StateVec &a, const StateVec &b);

    /// Deterministic random stream. Each double consumes a fixed number of
    /// engine steps, so identical seeds replay identical sequences on any host.
    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed);

        /// Uniform on [0, 1). One engine step.
        double uniform01();

        /// Uniform on [lo, hi).
        double uniform(double lo, double hi);

        /// Standard normal via Box-Muller. Two engine steps per pair.
        double normal();

        /// Uniform integer in [0, n).
        std::uint64_t uniformInt(std::uint64_t n);

    private:
        std::uint64_t next();

        std::uint64_t state_[4];
        double spareNormal_{0.0};
        bool hasSpare_{false};
    };

    struct InformedSet
    {
        StateVec start;
        StateVec goal;
        double cBest{kInf};
        double cMin{0.0};

        InformedSet(StateVec s, StateVec g, double best = kInf);
    };

    struct RggParams
    {
        double eta{1.001};
        int dim{2};
        double rewireFactor{1.1};
    };

    /// Each coordinate drawn independently uniform on [0,1]; consumes exactly
    /// dim draws from the stream.
    StateVec sampleUniform(int dim, RandomStream &rng);

    /// Direct prolate-hyperspheroid sampling of the informed set, rejecting
    /// states outside the unit cube. Requires a finite cBest.
    StateVec sampleInformed(const InformedSet &set, RandomStream &rng);

    /// Volume of the n-dimensional unit ball.
    double unitBallVolume(int n);

    /// Lebesgue measure of the informed set, clamped to the unit cube.
    double lebesgueInformed(const InformedSet &set);

    /// RGG rewiring radius for q sampled states.
    double connectionRadius(std::size_t q, const RggParams &params, double lambdaInformed);
}  // namespace ditstar

#endif
