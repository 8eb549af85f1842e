#include "ditstar/space.hpp"

#include <algorithm>
#include <cmath>

namespace ditstar
{
    double euclidean(const StateVec &a, const StateVec &b)
    {
        if (a.size() != b.size())
        {
            throw std::invalid_argument("euclidean: dimension mismatch");
        }
        double sq = 0.0;
        for (std::size_t i = 0u; i < a.size(); ++i)
        {
            const double d = a[i] - b[i];
            sq += d * d;
        }
        return std::sqrt(sq);
    }

    namespace
    {
        std::uint64_t splitmix64(std::uint64_t &x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        std::uint64_t rotl(std::uint64_t v, int k)
        {
            return (v << k) | (v >> (64 - k));
        }
    }  // namespace

    RandomStream::RandomStream(std::uint64_t seed)
    {
        // xoshiro256++ seeded through splitmix64.
        std::uint64_t s = seed;
        for (auto &word : state_)
        {
            word = splitmix64(s);
        }
    }

    std::uint64_t RandomStream::next()
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double RandomStream::uniform01()
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double RandomStream::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform01();
    }

    double RandomStream::normal()
    {
        if (hasSpare_)
        {
            hasSpare_ = false;
            return spareNormal_;
        }
        // Box-Muller keeps the draw count fixed at two per pair.
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0)
        {
            u1 = 0x1.0p-53;
        }
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spareNormal_ = r * std::sin(theta);
        hasSpare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t RandomStream::uniformInt(std::uint64_t n)
    {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) % n;
    }

    InformedSet::InformedSet(StateVec s, StateVec g, double best)
      : start(std::move(s)), goal(std::move(g)), cBest(best), cMin(euclidean(start, goal))
    {
        if (std::isfinite(cBest) && cBest < cMin)
        {
            throw std::invalid_argument("InformedSet: cBest below cMin");
        }
    }

    StateVec sampleUniform(int dim, RandomStream &rng)
    {
        if (dim < 2)
        {
            throw std::invalid_argument("sampleUniform: dimension must be >= 2");
        }
        StateVec x(static_cast<std::size_t>(dim));
        for (auto &coord : x)
        {
            coord = rng.uniform01();
        }
        return x;
    }

    StateVec sampleInformed(const InformedSet &set, RandomStream &rng)
    {
        if (!std::isfinite(set.cBest))
        {
            throw std::invalid_argument("sampleInformed: cBest must be finite");
        }
        const std::size_t n = set.start.size();

        // Transverse spheroid axis; zero when the set degenerates to the segment.
        const double a = set.cBest / 2.0;
        const double bsq = set.cBest * set.cBest - set.cMin * set.cMin;
        const double b = bsq > 0.0 ? std::sqrt(bsq) / 2.0 : 0.0;

        StateVec centre(n);
        StateVec axis(n);  // unit vector start -> goal
        for (std::size_t i = 0u; i < n; ++i)
        {
            centre[i] = 0.5 * (set.start[i] + set.goal[i]);
            axis[i] = set.cMin > 0.0 ? (set.goal[i] - set.start[i]) / set.cMin : 0.0;
        }

        // Householder reflection mapping e1 onto the transverse axis. The ball
        // is rotation symmetric, so a reflection serves as the rotation.
        StateVec house(n, 0.0);
        double houseSq = 0.0;
        if (set.cMin > 0.0)
        {
            house = axis;
            house[0] -= 1.0;
            for (const double h : house)
            {
                houseSq += h * h;
            }
        }

        constexpr int kMaxTries = 100000;
        // When the spheroid is much larger than the unit cube (common in high
        // dimension before the solution tightens), almost every spheroid
        // sample lands outside the cube. Uniform cube samples filtered by the
        // path-length bound then cover the same set with high acceptance.
        constexpr int kSpheroidTries = 64;
        StateVec x(n);
        for (int attempt = 0; attempt < kSpheroidTries; ++attempt)
        {
            // Uniform sample in the unit n-ball: normalized Gaussian direction
            // scaled by u^(1/n).
            StateVec ball(n);
            double norm = 0.0;
            for (auto &coord : ball)
            {
                coord = rng.normal();
                norm += coord * coord;
            }
            norm = std::sqrt(norm);
            if (norm <= 0.0)
            {
                continue;
            }
            const double radius = std::pow(rng.uniform01(), 1.0 / static_cast<double>(n));
            for (auto &coord : ball)
            {
                coord *= radius / norm;
            }

            // Stretch by the spheroid axes, rotate onto the start-goal axis,
            // translate to the centroid.
            StateVec stretched(n);
            stretched[0] = a * ball[0];
            for (std::size_t i = 1u; i < n; ++i)
            {
                stretched[i] = b * ball[i];
            }
            if (houseSq > 0.0)
            {
                double dot = 0.0;
                for (std::size_t i = 0u; i < n; ++i)
                {
                    dot += house[i] * stretched[i];
                }
                const double scale = 2.0 * dot / houseSq;
                for (std::size_t i = 0u; i < n; ++i)
                {
                    stretched[i] -= scale * house[i];
                }
            }
            bool inside = true;
            for (std::size_t i = 0u; i < n; ++i)
            {
                x[i] = centre[i] + stretched[i];
                if (x[i] < 0.0 || x[i] > 1.0)
                {
                    inside = false;
                    break;
                }
            }
            if (inside)
            {
                return x;
            }
        }
        for (int attempt = kSpheroidTries; attempt < kMaxTries; ++attempt)
        {
            for (auto &coord : x)
            {
                coord = rng.uniform01();
            }
            if (euclidean(set.start, x) + euclidean(x, set.goal) <= set.cBest)
            {
                return x;
            }
        }
        throw std::runtime_error("sampleInformed: rejection budget exceeded (degenerate informed set)");
    }

    double unitBallVolume(int n)
    {
        if (n < 1)
        {
            throw std::invalid_argument("unitBallVolume: n must be >= 1");
        }
        const double half = static_cast<double>(n) / 2.0;
        return std::pow(M_PI, half) / std::tgamma(half + 1.0);
    }

    double lebesgueInformed(const InformedSet &set)
    {
        if (!std::isfinite(set.cBest))
        {
            return 1.0;  // whole-cube fallback
        }
        const auto n = static_cast<int>(set.start.size());
        const double a = set.cBest / 2.0;
        const double bsq = set.cBest * set.cBest - set.cMin * set.cMin;
        const double b = bsq > 0.0 ? std::sqrt(bsq) / 2.0 : 0.0;
        const double measure = a * std::pow(b, n - 1) * unitBallVolume(n);
        return std::min(measure, 1.0);
    }

    double connectionRadius(std::size_t q, const RggParams &params, double lambdaInformed)
    {
        if (q < 2u)
        {
            throw std::domain_error("connectionRadius: q must be >= 2");
        }
        if (lambdaInformed <= 0.0)
        {
            throw std::domain_error("connectionRadius: lambda must be positive");
        }
        const double n = static_cast<double>(params.dim);
        const double qd = static_cast<double>(q);
        const double term =
            2.0 * (1.0 + 1.0 / n) * (lambdaInformed / unitBallVolume(params.dim)) * (std::log(qd) / qd);
        return params.rewireFactor * params.eta * std::pow(term, 1.0 / n);
    }
}  // namespace ditstar
