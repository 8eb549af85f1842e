#ifndef DITSTAR_DIRECTION_HPP
#define DITSTAR_DIRECTION_HPP

#include <cstdint>
#include <vector>

#include "ditstar/space.hpp"

namespace ditstar
{
    /// Directed edge vector with its cached Euclidean length.
    struct GenVec
    {
        std::vector<double> components;
        double norm{0.0};
    };

    enum class FilterMode
    {
        PaperLiteral,  // remove neighbors with PhiCheck >= PhiTarget
        ConeKeep       // keep neighbors at least as goal-aligned as the momentum
    };

    struct DirectionConfig
    {
        double omega1{0.6};
        double omega2{0.4};
        double xi1{0.6};
        double xi2{0.8};
        double epsilon{1e-9};     // degenerate-vector threshold
        double phiOneTol{1e-3};   // |Phi| ~ 1 shortcut tolerance
        std::uint64_t quantum{1000};  // floor-quantization scale for direction ticks
        FilterMode filterMode{FilterMode::ConeKeep};
    };

    /// Weighted cosine similarity. The raw value is kept for ordering-faithful
    /// comparisons; phi is the clamp to [-1, 1] fed to the sigmoid.
    struct SimilarityIndex
    {
        double phi{0.0};
        double raw{0.0};
    };

    /// Quantized direction cost in integer ticks.
    struct DirectionCost
    {
        std::uint64_t ticks{0u};
    };

    /// Vector pointing from a toward b.
    GenVec generalVec(const StateVec &a, const StateVec &b);

    // Allocation-free variant for hot loops; reuses out's storage.
    void generalVecInto(const StateVec &a, const StateVec &b, GenVec &out);

    bool isDegenerate(const GenVec &v, const DirectionConfig &cfg);

    SimilarityIndex wgtCosSim(const GenVec &v1, const GenVec &v2, const DirectionConfig &cfg);

    /// Sigmoid-scaled, quantized edge direction cost. Zero for near-maximal
    /// similarity or zero-length inputs.
    DirectionCost calcDirCost(const SimilarityIndex &phiCheck, const SimilarityIndex &phiTarget,
                              double normCheck, double normTarget, const DirectionConfig &cfg);

    struct FilterResult
    {
        std::vector<std::size_t> keptIndices;       // into the neighbor input
        std::vector<DirectionCost> costs;           // parallel to keptIndices
    };

    /// Direction filter over a candidate neighbor set. Degenerate momentum or
    /// goal vectors keep every neighbor at zero cost.
    FilterResult filterNeighbors(const StateVec &last, const StateVec &source, const StateVec &goal,
                                 const std::vector<const StateVec *> &neighbors,
                                 const DirectionConfig &cfg);

    /// Allocation-free variant for hot loops; reuses result's storage.
    void filterNeighborsInto(const StateVec &last, const StateVec &source, const StateVec &goal,
                             const std::vector<const StateVec *> &neighbors,
                             const DirectionConfig &cfg, FilterResult &result);
}  // namespace ditstar

#endif
