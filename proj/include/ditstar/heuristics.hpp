#ifndef DITSTAR_HEURISTICS_HPP
#define DITSTAR_HEURISTICS_HPP

#include <cstdint>
#include <limits>

#include "ditstar/direction.hpp"
#include "ditstar/space.hpp"

namespace ditstar
{
    constexpr std::uint64_t kTicksUnreached = std::numeric_limits<std::uint64_t>::max();

    /// Per-vertex search estimates. Cost/effort-to-go values come from the
    /// reverse search; dgHat stays zero (the trivially admissible direction
    /// heuristic).
    struct VertexEstimates
    {
        double g{kInf};                       // forward cost-to-come
        double hHat{kInf};                    // admissible cost-to-go
        double hBar{kInf};                    // inadmissible cost-to-go
        std::uint64_t eBar{kTicksUnreached};  // effort-to-go
        std::uint64_t dsF{kTicksUnreached};   // direction-cost-to-come, ticks
        std::uint64_t dgHat{0u};              // admissible direction-to-go
        std::uint64_t dgBar{0u};              // inadmissible direction-to-go
    };

    /// Lexicographic reverse queue key.
    struct ReverseKey
    {
        double k1{0.0};
        double k2{0.0};
        double k3{0.0};

        bool operator<(const ReverseKey &other) const;
    };

    /// Forward queue key; k4 is consulted only inside the mu-comparable effort
    /// band during best-edge selection.
    struct ForwardKey
    {
        double k1{0.0};          // gHat + cHat + hHat lower bound
        double k2{0.0};          // g + cBar + hBar estimate
        std::uint64_t k3{0u};    // remaining effort
        std::uint64_t k4{0u};    // inadmissible solution direction cost
    };

    double admissibleCost(const StateVec &a, const StateVec &b);

    /// key_R(x_s, x_t): k1 = hHat[s] + cHat(s,t) + gHat(t);
    /// k2 = eBar[s] + edge effort + target remaining effort;
    /// k3 = dsHat[s] + edge direction ticks + dgHat(t).
    ReverseKey reverseKey(const VertexEstimates &source, double edgeCost, std::uint64_t edgeEffort,
                          double targetGHat, std::uint64_t targetRemainingEffort,
                          const DirectionCost &edgeDirCost);

    /// Admissible direction cost through an edge; degenerates to dsF of the
    /// source under the trivially admissible choice.
    std::uint64_t sHatDirection(const VertexEstimates &source);

    /// Inadmissible direction cost through an edge.
    std::uint64_t sBarDirection(const VertexEstimates &source, const DirectionCost &edgeDirCost,
                                const VertexEstimates &target);
}  // namespace ditstar

#endif
