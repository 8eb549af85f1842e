#include "ditstar/heuristics.hpp"

#include <stdexcept>
#include <tuple>

namespace ditstar
{
    bool ReverseKey::operator<(const ReverseKey &other) const
    {
        return std::tie(k1, k2, k3) < std::tie(other.k1, other.k2, other.k3);
    }

    double admissibleCost(const StateVec &a, const StateVec &b)
    {
        return euclidean(a, b);
    }

    ReverseKey reverseKey(const VertexEstimates &source, double edgeCost, std::uint64_t edgeEffort,
                          double targetGHat, std::uint64_t targetRemainingEffort,
                          const DirectionCost &edgeDirCost)
    {
        if (!(source.hHat < kInf))
        {
            throw std::logic_error("reverseKey: source has no reverse estimate");
        }
        ReverseKey key;
        key.k1 = source.hHat + edgeCost + targetGHat;
        key.k2 = static_cast<double>(source.eBar) + static_cast<double>(edgeEffort) +
                 static_cast<double>(targetRemainingEffort);
        // dsHat and dgHat are identically zero, leaving the edge's ticks.
        key.k3 = static_cast<double>(edgeDirCost.ticks);
        return key;
    }

    std::uint64_t sHatDirection(const VertexEstimates &source)
    {
        if (source.dsF == kTicksUnreached)
        {
            throw std::logic_error("sHatDirection: unreached source");
        }
        return source.dsF;  // + dcHat + dgHat, both identically zero
    }

    std::uint64_t sBarDirection(const VertexEstimates &source, const DirectionCost &edgeDirCost,
                                const VertexEstimates &target)
    {
        if (source.dsF == kTicksUnreached)
        {
            throw std::logic_error("sBarDirection: unreached source");
        }
        return source.dsF + edgeDirCost.ticks + target.dgBar;
    }
}  // namespace ditstar
