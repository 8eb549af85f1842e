#include "ditstar/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace ditstar
{
    bool HyperRect::containsInterior(const StateVec &x) const
    {
        for (std::size_t i = 0u; i < lower.size(); ++i)
        {
            if (x[i] <= lower[i] || x[i] >= upper[i])
            {
                return false;
            }
        }
        return true;
    }

    double HyperRect::squaredDistance(const StateVec &x) const
    {
        double sq = 0.0;
        for (std::size_t i = 0u; i < lower.size(); ++i)
        {
            const double d = std::max({lower[i] - x[i], x[i] - upper[i], 0.0});
            sq += d * d;
        }
        return sq;
    }

    namespace
    {
        StateVec axisState(int dim, double x0, double x1)
        {
            StateVec x(static_cast<std::size_t>(dim), 0.5);
            x[0] = x0;
            x[1] = x1;
            return x;
        }
    }  // namespace

    Environment makeNarrowPassage(int dim)
    {
        if (dim < 2)
        {
            throw std::domain_error("makeNarrowPassage: dimension must be >= 2");
        }
        Environment env;
        env.dim = dim;
        env.start = axisState(dim, 0.3, 0.5);
        env.goal = axisState(dim, 0.7, 0.5);

        // Wall slab x0 in [0.4, 0.6] with a gap x1 in [0.60, 0.62]; the slab
        // spans every remaining dimension fully.
        const std::size_t n = static_cast<std::size_t>(dim);
        HyperRect below{StateVec(n, 0.0), StateVec(n, 1.0)};
        below.lower[0] = 0.4;
        below.upper[0] = 0.6;
        below.upper[1] = 0.60;
        HyperRect above{StateVec(n, 0.0), StateVec(n, 1.0)};
        above.lower[0] = 0.4;
        above.upper[0] = 0.6;
        above.lower[1] = 0.62;
        env.obstacles = {below, above};
        return env;
    }

    Environment makeRandomRectangles(int dim, int count, std::uint64_t seed, double widthLo,
                                     double widthHi)
    {
        if (dim < 2)
        {
            throw std::domain_error("makeRandomRectangles: dimension must be >= 2");
        }
        if (count < 0 || widthLo <= 0.0 || widthLo > widthHi || widthHi > 0.5)
        {
            throw std::domain_error("makeRandomRectangles: invalid obstacle parameters");
        }
        Environment env;
        env.dim = dim;
        env.start = axisState(dim, 0.1, 0.5);
        env.goal = axisState(dim, 0.9, 0.5);

        constexpr double kClearance = 0.05;
        RandomStream rng(seed);
        const std::size_t n = static_cast<std::size_t>(dim);
        for (int i = 0; i < count; ++i)
        {
            for (int attempt = 0; attempt < 100; ++attempt)
            {
                HyperRect rect{StateVec(n), StateVec(n)};
                for (std::size_t d = 0u; d < n; ++d)
                {
                    const double centre = rng.uniform01();
                    const double width = rng.uniform(widthLo, widthHi);
                    rect.lower[d] = std::max(centre - width / 2.0, 0.0);
                    rect.upper[d] = std::min(centre + width / 2.0, 1.0);
                }
                const double clearanceSq = kClearance * kClearance;
                if (rect.squaredDistance(env.start) <= clearanceSq ||
                    rect.squaredDistance(env.goal) <= clearanceSq)
                {
                    continue;  // resample, too close to an endpoint
                }
                env.obstacles.push_back(std::move(rect));
                break;
            }
        }
        return env;
    }

    bool isStateValid(const Environment &env, const StateVec &x)
    {
        if (x.size() != static_cast<std::size_t>(env.dim))
        {
            throw std::invalid_argument("isStateValid: dimension mismatch");
        }
        for (const auto &rect : env.obstacles)
        {
            if (rect.containsInterior(x))
            {
                return false;
            }
        }
        return true;
    }

    namespace
    {
        StateVec interpolate(const StateVec &a, const StateVec &b, double t)
        {
            StateVec x(a.size());
            for (std::size_t i = 0u; i < a.size(); ++i)
            {
                x[i] = a[i] + t * (b[i] - a[i]);
            }
            return x;
        }
    }  // namespace

    bool isMotionValid(const Environment &env, const StateVec &a, const StateVec &b,
                       const MotionCheckConfig &cfg)
    {
        if (!isStateValid(env, a) || !isStateValid(env, b))
        {
            return false;
        }
        const auto segments = effortEstimate(a, b, cfg);
        if (segments < 2u)
        {
            return true;
        }
        // Midpoint-first bisection over interior interpolation indices; the
        // visited point set is mirror symmetric, so the result is
        // direction-independent.
        std::vector<std::pair<std::uint64_t, std::uint64_t>> stack{{0u, segments}};
        while (!stack.empty())
        {
            const auto [lo, hi] = stack.back();
            stack.pop_back();
            if (hi - lo < 2u)
            {
                continue;
            }
            const std::uint64_t mid = lo + (hi - lo) / 2u;
            const double t = static_cast<double>(mid) / static_cast<double>(segments);
            if (!isStateValid(env, interpolate(a, b, t)))
            {
                return false;
            }
            stack.emplace_back(lo, mid);
            stack.emplace_back(mid, hi);
        }
        return true;
    }

    std::uint64_t effortEstimate(const StateVec &a, const StateVec &b, const MotionCheckConfig &cfg)
    {
        const double dist = euclidean(a, b);
        if (dist == 0.0)
        {
            return 0u;
        }
        const double step = cfg.resolution * std::sqrt(static_cast<double>(a.size()));
        return static_cast<std::uint64_t>(std::ceil(dist / step));
    }

    std::string environmentToJson(const Environment &env)
    {
        nlohmann::json doc;
        doc["dim"] = env.dim;
        doc["start"] = env.start;
        doc["goal"] = env.goal;
        doc["goal_radius"] = env.goalRadius;
        doc["obstacles"] = nlohmann::json::array();
        for (const auto &rect : env.obstacles)
        {
            doc["obstacles"].push_back({{"lower", rect.lower}, {"upper", rect.upper}});
        }
        return doc.dump();
    }

    Environment environmentFromJson(const std::string &text)
    {
        const auto doc = nlohmann::json::parse(text);
        Environment env;
        env.dim = doc.at("dim").get<int>();
        env.start = doc.at("start").get<StateVec>();
        env.goal = doc.at("goal").get<StateVec>();
        env.goalRadius = doc.value("goal_radius", 0.0);
        for (const auto &entry : doc.at("obstacles"))
        {
            env.obstacles.push_back(
                {entry.at("lower").get<StateVec>(), entry.at("upper").get<StateVec>()});
        }
        return env;
    }
}  // namespace ditstar
