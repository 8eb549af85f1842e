#ifndef DITSTAR_WORLD_HPP
#define DITSTAR_WORLD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ditstar/space.hpp"

namespace ditstar
{
    /// Axis-aligned obstacle contained in the unit cube.
    struct HyperRect
    {
        StateVec lower;
        StateVec upper;

        /// True iff x is strictly inside the rectangle; faces count as outside.
        bool containsInterior(const StateVec &x) const;

        /// Squared Euclidean distance from x to the rectangle (0 if inside).
        double squaredDistance(const StateVec &x) const;
    };

    struct Environment
    {
        int dim{2};
        std::vector<HyperRect> obstacles;
        StateVec start;
        StateVec goal;
        double goalRadius{0.0};
    };

    struct MotionCheckConfig
    {
        double resolution{0.01};  // interpolation step, fraction of space diagonal
        int fineFactor{10};       // multiplier for acceptance re-checks
    };

    /// Narrow-passage benchmark: a wall slab of thickness 0.2 across dimension 0
    /// with a 0.02 gap in dimension 1.
    Environment makeNarrowPassage(int dim);

    /// Random axis-aligned rectangles with uniform centres and widths; obstacles
    /// touching a 0.05 ball around start or goal are resampled and eventually
    /// dropped.
    Environment makeRandomRectangles(int dim, int count, std::uint64_t seed, double widthLo,
                                     double widthHi);

    bool isStateValid(const Environment &env, const StateVec &x);

    /// Checks interpolated states at spacing <= resolution * sqrt(n), midpoint
    /// first by recursive bisection.
    bool isMotionValid(const Environment &env, const StateVec &a, const StateVec &b,
                       const MotionCheckConfig &cfg);

    /// Number of collision checks the motion validator would perform.
    std::uint64_t effortEstimate(const StateVec &a, const StateVec &b, const MotionCheckConfig &cfg);

    std::string environmentToJson(const Environment &env);
    Environment environmentFromJson(const std::string &text);
}  // namespace ditstar

#endif
