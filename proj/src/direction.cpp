#include "ditstar/direction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ditstar
{
    void generalVecInto(const StateVec &a, const StateVec &b, GenVec &out)
    {
        if (a.size() != b.size())
        {
            throw std::invalid_argument("generalVec: dimension mismatch");
        }
        out.components.resize(a.size());
        double sq = 0.0;
        for (std::size_t i = 0u; i < a.size(); ++i)
        {
            out.components[i] = b[i] - a[i];
            sq += out.components[i] * out.components[i];
        }
        out.norm = std::sqrt(sq);
    }

    GenVec generalVec(const StateVec &a, const StateVec &b)
    {
        GenVec v;
        generalVecInto(a, b, v);
        return v;
    }

    bool isDegenerate(const GenVec &v, const DirectionConfig &cfg)
    {
        return v.norm < cfg.epsilon;
    }

    SimilarityIndex wgtCosSim(const GenVec &v1, const GenVec &v2, const DirectionConfig &cfg)
    {
        if (isDegenerate(v1, cfg) || isDegenerate(v2, cfg))
        {
            throw std::invalid_argument("wgtCosSim: degenerate input vector");
        }
        double dot = 0.0;
        for (std::size_t i = 0u; i < v1.components.size(); ++i)
        {
            dot += v1.components[i] * v2.components[i];
        }
        // On unit-normalized inputs the weighted denominator collapses to
        // omega1 * omega2.
        const double cosine = dot / (v1.norm * v2.norm);
        SimilarityIndex sim;
        sim.raw = cosine / (cfg.omega1 * cfg.omega2);
        sim.phi = std::clamp(sim.raw, -1.0, 1.0);
        return sim;
    }

    DirectionCost calcDirCost(const SimilarityIndex &phiCheck, const SimilarityIndex &phiTarget,
                              double normCheck, double normTarget, const DirectionConfig &cfg)
    {
        if (std::abs(phiCheck.phi) >= 1.0 - cfg.phiOneTol || std::abs(phiTarget.phi) >= 1.0 - cfg.phiOneTol)
        {
            return {0u};  // best edge with maximal similarity
        }
        const double thetaTarget = normTarget / (1.0 + std::exp(-phiTarget.phi));
        const double thetaCheck = normCheck / (1.0 + std::exp(-phiCheck.phi));
        const double scaled = static_cast<double>(cfg.quantum) *
                              std::sqrt(cfg.xi1 * thetaTarget * thetaTarget +
                                        cfg.xi2 * thetaCheck * thetaCheck);
        return {static_cast<std::uint64_t>(std::floor(scaled))};
    }

    void filterNeighborsInto(const StateVec &last, const StateVec &source, const StateVec &goal,
                             const std::vector<const StateVec *> &neighbors,
                             const DirectionConfig &cfg, FilterResult &result)
    {
        result.keptIndices.clear();
        result.costs.clear();
        result.keptIndices.reserve(neighbors.size());
        result.costs.reserve(neighbors.size());

        thread_local GenVec vecTarget, vecGoal;
        generalVecInto(last, source, vecTarget);
        generalVecInto(last, goal, vecGoal);
        const bool frameDegenerate = isDegenerate(vecTarget, cfg) || isDegenerate(vecGoal, cfg);

        SimilarityIndex phiTarget;
        if (!frameDegenerate)
        {
            phiTarget = wgtCosSim(vecTarget, vecGoal, cfg);
        }

        if (frameDegenerate)
        {
            // Safe fallback: never discard a candidate for numerical reasons.
            for (std::size_t i = 0u; i < neighbors.size(); ++i)
            {
                result.keptIndices.push_back(i);
                result.costs.push_back({0u});
            }
            return;
        }

        for (std::size_t i = 0u; i < neighbors.size(); ++i)
        {
            // Difference, squared norm, and dot against the goal vector in a
            // single pass; the check vector itself is never materialized.
            const StateVec &nb = *neighbors[i];
            double sq = 0.0;
            double dot = 0.0;
            for (std::size_t d = 0u; d < source.size(); ++d)
            {
                const double c = nb[d] - source[d];
                sq += c * c;
                dot += c * vecGoal.components[d];
            }
            const double normCheck = std::sqrt(sq);
            if (normCheck < cfg.epsilon)
            {
                result.keptIndices.push_back(i);
                result.costs.push_back({0u});
                continue;
            }
            SimilarityIndex phiCheck;
            phiCheck.raw = dot / (normCheck * vecGoal.norm) / (cfg.omega1 * cfg.omega2);
            phiCheck.phi = std::clamp(phiCheck.raw, -1.0, 1.0);
            const bool goalAligned = phiCheck.raw >= phiTarget.raw;
            const bool keep = cfg.filterMode == FilterMode::ConeKeep ? goalAligned : !goalAligned;
            if (keep)
            {
                result.keptIndices.push_back(i);
                result.costs.push_back(
                    calcDirCost(phiCheck, phiTarget, normCheck, vecTarget.norm, cfg));
            }
        }
    }

    FilterResult filterNeighbors(const StateVec &last, const StateVec &source, const StateVec &goal,
                                 const std::vector<const StateVec *> &neighbors,
                                 const DirectionConfig &cfg)
    {
        FilterResult result;
        filterNeighborsInto(last, source, goal, neighbors, cfg, result);
        return result;
    }
}  // namespace ditstar
