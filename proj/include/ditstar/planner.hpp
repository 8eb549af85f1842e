#ifndef DITSTAR_PLANNER_HPP
#define DITSTAR_PLANNER_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ditstar/direction.hpp"
#include "ditstar/heuristics.hpp"
#include "ditstar/kdtree.hpp"
#include "ditstar/space.hpp"
#include "ditstar/world.hpp"

namespace ditstar
{
    enum class PlannerMode
    {
        Dit,
        Eit  // direction filter off, direction key ignored
    };

    struct PlannerConfig
    {
        int batchSize{100};
        RggParams rgg{};
        DirectionConfig direction{};
        std::uint64_t mu{5000u};  // effort-comparability threshold
        PlannerMode mode{PlannerMode::Dit};
        std::uint64_t seed{0u};
        MotionCheckConfig motion{};
        /// When nonzero the run is budgeted by forward-iteration count instead
        /// of wall-clock time and solution timestamps use a deterministic
        /// pseudo-clock, making whole runs byte-reproducible.
        std::uint64_t iterationBudget{0u};
    };

    struct SolutionRecord
    {
        double t{0.0};     // seconds since plan() entry
        double cost{0.0};  // path length
        std::vector<StateVec> path;
    };

    std::string plannerConfigToJson(const PlannerConfig &cfg);
    PlannerConfig plannerConfigFromJson(const std::string &text);
    std::string solutionRecordToJsonLine(const SolutionRecord &record);

    /// Anytime batch planner. One instance per run; single control thread.
    class Planner
    {
    public:
        Planner(const Environment &env, const PlannerConfig &cfg);

        /// Anytime contract: all improving solutions found within the budget,
        /// ordered and strictly decreasing in cost.
        std::vector<SolutionRecord> plan(double budgetSeconds);

        // Stepwise interface, used by plan() and directly by tests.

        /// Installs an explicit sample set for the current approximation in
        /// place of random sampling, then prepares both searches.
        void seedExplicitSamples(const std::vector<StateVec> &states);

        /// Adds a batch of samples, prunes against the current solution,
        /// recomputes the radius, and restarts the reverse search.
        void improveApproximation();

        /// Runs reverse and forward search on the current approximation until
        /// both queues are exhausted and rewiring reaches a fixed point.
        void searchToExhaustion();

        // Introspection.
        std::size_t sampleCount() const { return vertices_.size(); }
        std::size_t goalIndex() const { return 1u; }
        const StateVec &sampleState(std::size_t i) const { return vertices_[i].state; }
        double currentRadius() const { return radius_; }
        double costToCome(std::size_t i) const { return vertices_[i].g; }
        double reverseCostToGo(std::size_t i) const { return vertices_[i].hHat; }
        std::uint64_t directionCostToCome(std::size_t i) const { return vertices_[i].ds; }
        int treeParent(std::size_t i) const { return vertices_[i].parent; }
        double goalCost() const { return vertices_[1].g; }
        const std::vector<std::size_t> &neighborsOf(std::size_t i);
        const std::vector<SolutionRecord> &solutions() const { return records_; }
        std::size_t batchCount() const { return batches_; }
        std::size_t prunedCount() const { return pruned_; }

    private:
        struct Vertex
        {
            StateVec state;
            double g{kInf};
            std::uint64_t ds{kTicksUnreached};
            int parent{-1};
            std::vector<int> children;
            std::uint64_t edgeTicks{0u};
            double hHat{kInf};
            std::uint64_t eBar{kTicksUnreached};
            int reverseParent{-1};
            std::uint64_t dgBar{0u};
            bool dgBarCached{false};
        };

        struct QueueEdge
        {
            ForwardKey key;
            int source{-1};
            int target{-1};
            std::uint64_t ticks{0u};
            std::uint64_t seq{0u};
        };

        static std::uint64_t pairKey(int a, int b);
        bool isBlacklisted(int a, int b) const;
        bool checkMotionCached(int a, int b);

        double heuristicCostToGo(std::size_t i) const;
        std::uint64_t heuristicEffortToGo(std::size_t i) const;
        std::uint64_t dgBarOf(std::size_t i);
        std::uint64_t edgeDirectionTicks(int source, int target) const;

        void pushEdge(int source, int target, std::uint64_t ticks);
        void expandVertex(int v);
        void rebuildForwardQueue();
        std::optional<QueueEdge> selectBestForwardEdge();
        bool edgeIsStale(const QueueEdge &edge) const;
        void forwardIterate(const QueueEdge &edge);
        void reparent(int vertex, int newParent);
        void disconnectSubtree(int vertex);
        void runReverseSearch();
        bool rewireSweep();
        void maybeRecordSolution();
        void resetApproximationCaches();
        void pruneSamples();
        void addBatchSamples();

        double elapsed() const;
        bool budgetExhausted() const;

        Environment env_;
        PlannerConfig cfg_;
        RandomStream rng_;
        std::vector<Vertex> vertices_;
        KdTree kd_;
        std::vector<std::vector<std::size_t>> neighborCache_;
        std::vector<bool> neighborCached_;
        double radius_{kInf};
        double cBest_{kInf};

        std::vector<QueueEdge> forwardHeap_;
        std::uint64_t nextSeq_{0u};
        std::unordered_set<std::uint64_t> blacklist_;
        std::unordered_map<std::uint64_t, bool> motionCache_;
        bool reverseDirty_{true};
        std::uint64_t staleReverseEdges_{0u};

        std::vector<SolutionRecord> records_;
        std::size_t batches_{0u};
        std::size_t pruned_{0u};

        std::chrono::steady_clock::time_point startTime_;
        double budget_{kInf};
        std::uint64_t iterations_{0u};
        bool started_{false};
    };

    /// Bidirectional RRT-Connect baseline; stops at the first solution.
    std::vector<SolutionRecord> rrtConnect(const Environment &env, const PlannerConfig &cfg,
                                           double budgetSeconds);
}  // namespace ditstar

#endif
