#include "ditstar/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace ditstar
{
    namespace
    {
        struct TreeNode
        {
            StateVec state;
            int parent{-1};
        };

        double maxEdgeLengthFor(int dim)
        {
            // Maximum extension step by dimension band.
            if (dim <= 4)
            {
                return 0.5;
            }
            if (dim <= 8)
            {
                return 1.25;
            }
            return 3.0;
        }

        std::size_t nearestNode(const std::vector<TreeNode> &tree, const StateVec &x)
        {
            std::size_t best = 0u;
            double bestDist = kInf;
            for (std::size_t i = 0u; i < tree.size(); ++i)
            {
                const double d = euclidean(tree[i].state, x);
                if (d < bestDist)
                {
                    bestDist = d;
                    best = i;
                }
            }
            return best;
        }

        enum class ExtendResult
        {
            Trapped,
            Advanced,
            Reached
        };

        struct ExtendOutcome
        {
            ExtendResult result{ExtendResult::Trapped};
            std::size_t leaf{0u};
        };

        ExtendOutcome extend(std::vector<TreeNode> &tree, const StateVec &target, double maxStep,
                             const Environment &env, const MotionCheckConfig &motion)
        {
            const std::size_t nearIdx = nearestNode(tree, target);
            const StateVec &near = tree[nearIdx].state;
            const double dist = euclidean(near, target);
            if (dist < 1e-12)
            {
                return {ExtendResult::Reached, nearIdx};
            }
            StateVec next = target;
            bool reached = true;
            if (dist > maxStep)
            {
                reached = false;
                const double scale = maxStep / dist;
                for (std::size_t i = 0u; i < next.size(); ++i)
                {
                    next[i] = near[i] + scale * (target[i] - near[i]);
                }
            }
            if (!isStateValid(env, next) || !isMotionValid(env, near, next, motion))
            {
                return {ExtendResult::Trapped, nearIdx};
            }
            tree.push_back({std::move(next), static_cast<int>(nearIdx)});
            return {reached ? ExtendResult::Reached : ExtendResult::Advanced, tree.size() - 1u};
        }

        std::vector<StateVec> chainToRoot(const std::vector<TreeNode> &tree, std::size_t leaf)
        {
            std::vector<StateVec> chain;
            for (int idx = static_cast<int>(leaf); idx >= 0; idx = tree[idx].parent)
            {
                chain.push_back(tree[idx].state);
            }
            return chain;
        }
    }  // namespace

    std::vector<SolutionRecord> rrtConnect(const Environment &env, const PlannerConfig &cfg,
                                           double budgetSeconds)
    {
        if (budgetSeconds <= 0.0)
        {
            throw std::invalid_argument("rrtConnect: budget must be positive");
        }
        if (!isStateValid(env, env.start) || !isStateValid(env, env.goal))
        {
            throw std::invalid_argument("rrtConnect: invalid start or goal state");
        }

        RandomStream rng(cfg.seed);
        const double maxStep = maxEdgeLengthFor(env.dim);
        constexpr double kGoalBias = 0.05;

        std::vector<TreeNode> startTree{{env.start, -1}};
        std::vector<TreeNode> goalTree{{env.goal, -1}};
        bool growingStartTree = true;

        const auto begin = std::chrono::steady_clock::now();
        const auto elapsed = [&]
        { return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count(); };

        std::uint64_t iterations = 0u;
        while (cfg.iterationBudget > 0u ? iterations < cfg.iterationBudget
                                        : elapsed() < budgetSeconds)
        {
            ++iterations;
            auto &tree = growingStartTree ? startTree : goalTree;
            auto &other = growingStartTree ? goalTree : startTree;

            StateVec sample;
            if (rng.uniform01() < kGoalBias)
            {
                sample = other.front().state;  // bias toward the opposite root
            }
            else
            {
                sample = sampleUniform(env.dim, rng);
            }

            const auto grow = extend(tree, sample, maxStep, env, cfg.motion);
            if (grow.result != ExtendResult::Trapped)
            {
                // Greedy connect of the other tree toward the new node.
                const StateVec target = tree[grow.leaf].state;
                ExtendOutcome connect{ExtendResult::Advanced, 0u};
                while (connect.result == ExtendResult::Advanced)
                {
                    connect = extend(other, target, maxStep, env, cfg.motion);
                }
                if (connect.result == ExtendResult::Reached)
                {
                    const std::size_t startLeaf = growingStartTree ? grow.leaf : connect.leaf;
                    const std::size_t goalLeaf = growingStartTree ? connect.leaf : grow.leaf;
                    auto startChain = chainToRoot(startTree, startLeaf);
                    std::reverse(startChain.begin(), startChain.end());
                    const auto goalChain = chainToRoot(goalTree, goalLeaf);
                    if (euclidean(startChain.back(), goalChain.front()) > 1e-12)
                    {
                        startChain.insert(startChain.end(), goalChain.begin(), goalChain.end());
                    }
                    else
                    {
                        // The meeting state appears in both chains; keep one copy.
                        startChain.insert(startChain.end(), goalChain.begin() + 1, goalChain.end());
                    }
                    double cost = 0.0;
                    for (std::size_t i = 0u; i + 1u < startChain.size(); ++i)
                    {
                        cost += euclidean(startChain[i], startChain[i + 1u]);
                    }
                    SolutionRecord record;
                    record.t = cfg.iterationBudget > 0u ? static_cast<double>(iterations) * 1e-6
                                                        : elapsed();
                    record.cost = cost;
                    record.path = std::move(startChain);
                    return {std::move(record)};
                }
            }
            growingStartTree = !growingStartTree;
        }
        return {};
    }
}  // namespace ditstar
