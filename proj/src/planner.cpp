#include "ditstar/planner.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace ditstar
{
    namespace
    {
        constexpr double kEps = 1e-12;
        constexpr double kKeyTol = 1e-9;

        struct ReverseQueueEdge
        {
            ReverseKey key;
            std::uint64_t seq{0u};
            int source{-1};
            int target{-1};

            bool operator>(const ReverseQueueEdge &other) const
            {
                if (key < other.key)
                {
                    return false;
                }
                if (other.key < key)
                {
                    return true;
                }
                return seq > other.seq;
            }
        };

        bool forwardKeyGreater(const ForwardKey &a, std::uint64_t seqA, const ForwardKey &b,
                               std::uint64_t seqB)
        {
            return std::tie(a.k1, a.k2, a.k3, a.k4, seqA) > std::tie(b.k1, b.k2, b.k3, b.k4, seqB);
        }
    }  // namespace

    std::string plannerConfigToJson(const PlannerConfig &cfg)
    {
        nlohmann::json doc;
        doc["mode"] = cfg.mode == PlannerMode::Dit ? "dit" : "eit";
        doc["seed"] = cfg.seed;
        doc["batch_size"] = cfg.batchSize;
        doc["mu"] = cfg.mu;
        doc["omega1"] = cfg.direction.omega1;
        doc["omega2"] = cfg.direction.omega2;
        doc["xi1"] = cfg.direction.xi1;
        doc["xi2"] = cfg.direction.xi2;
        doc["quantum"] = cfg.direction.quantum;
        doc["filter_mode"] = cfg.direction.filterMode == FilterMode::ConeKeep ? "cone" : "literal";
        doc["resolution"] = cfg.motion.resolution;
        doc["eta"] = cfg.rgg.eta;
        doc["rewire_factor"] = cfg.rgg.rewireFactor;
        return doc.dump();
    }

    PlannerConfig plannerConfigFromJson(const std::string &text)
    {
        const auto doc = nlohmann::json::parse(text);
        PlannerConfig cfg;
        if (doc.contains("mode"))
        {
            const auto mode = doc["mode"].get<std::string>();
            if (mode != "dit" && mode != "eit")
            {
                throw std::invalid_argument("plannerConfigFromJson: unknown mode " + mode);
            }
            cfg.mode = mode == "dit" ? PlannerMode::Dit : PlannerMode::Eit;
        }
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.batchSize = doc.value("batch_size", cfg.batchSize);
        cfg.mu = doc.value("mu", cfg.mu);
        cfg.direction.omega1 = doc.value("omega1", cfg.direction.omega1);
        cfg.direction.omega2 = doc.value("omega2", cfg.direction.omega2);
        cfg.direction.xi1 = doc.value("xi1", cfg.direction.xi1);
        cfg.direction.xi2 = doc.value("xi2", cfg.direction.xi2);
        cfg.direction.quantum = doc.value("quantum", cfg.direction.quantum);
        if (doc.contains("filter_mode"))
        {
            const auto mode = doc["filter_mode"].get<std::string>();
            if (mode != "cone" && mode != "literal")
            {
                throw std::invalid_argument("plannerConfigFromJson: unknown filter_mode " + mode);
            }
            cfg.direction.filterMode = mode == "cone" ? FilterMode::ConeKeep : FilterMode::PaperLiteral;
        }
        cfg.motion.resolution = doc.value("resolution", cfg.motion.resolution);
        cfg.rgg.eta = doc.value("eta", cfg.rgg.eta);
        cfg.rgg.rewireFactor = doc.value("rewire_factor", cfg.rgg.rewireFactor);
        return cfg;
    }

    std::string solutionRecordToJsonLine(const SolutionRecord &record)
    {
        nlohmann::json doc;
        doc["t"] = record.t;
        doc["cost"] = record.cost;
        doc["path"] = record.path;
        return doc.dump();
    }

    Planner::Planner(const Environment &env, const PlannerConfig &cfg)
      : env_(env), cfg_(cfg), rng_(cfg.seed)
    {
        cfg_.rgg.dim = env_.dim;
        if (!isStateValid(env_, env_.start) || !isStateValid(env_, env_.goal))
        {
            throw std::invalid_argument("Planner: invalid start or goal state");
        }
        Vertex start;
        start.state = env_.start;
        start.g = 0.0;
        start.ds = 0u;
        Vertex goal;
        goal.state = env_.goal;
        vertices_ = {std::move(start), std::move(goal)};
        startTime_ = std::chrono::steady_clock::now();
    }

    std::uint64_t Planner::pairKey(int a, int b)
    {
        const auto lo = static_cast<std::uint64_t>(std::min(a, b));
        const auto hi = static_cast<std::uint64_t>(std::max(a, b));
        return (lo << 32) | hi;
    }

    bool Planner::isBlacklisted(int a, int b) const
    {
        return blacklist_.count(pairKey(a, b)) > 0u;
    }

    bool Planner::checkMotionCached(int a, int b)
    {
        const auto key = pairKey(a, b);
        const auto it = motionCache_.find(key);
        if (it != motionCache_.end())
        {
            return it->second;
        }
        const bool valid = isMotionValid(env_, vertices_[a].state, vertices_[b].state, cfg_.motion);
        motionCache_.emplace(key, valid);
        return valid;
    }

    double Planner::heuristicCostToGo(std::size_t i) const
    {
        const auto &v = vertices_[i];
        return v.hHat < kInf ? v.hHat : euclidean(v.state, env_.goal);
    }

    std::uint64_t Planner::heuristicEffortToGo(std::size_t i) const
    {
        const auto &v = vertices_[i];
        return v.eBar != kTicksUnreached ? v.eBar : effortEstimate(v.state, env_.goal, cfg_.motion);
    }

    std::uint64_t Planner::edgeDirectionTicks(int source, int target) const
    {
        const auto &cfg = cfg_.direction;
        const auto &src = vertices_[source];
        if (src.parent < 0)
        {
            return 0u;  // root expansion, degenerate momentum
        }
        const StateVec &last = vertices_[src.parent].state;
        thread_local GenVec vecTarget, vecGoal, vecCheck;
        generalVecInto(last, src.state, vecTarget);
        generalVecInto(last, env_.goal, vecGoal);
        generalVecInto(src.state, vertices_[target].state, vecCheck);
        if (isDegenerate(vecTarget, cfg) || isDegenerate(vecGoal, cfg) || isDegenerate(vecCheck, cfg))
        {
            return 0u;
        }
        const SimilarityIndex phiCheck = wgtCosSim(vecCheck, vecGoal, cfg);
        const SimilarityIndex phiTarget = wgtCosSim(vecTarget, vecGoal, cfg);
        return calcDirCost(phiCheck, phiTarget, vecCheck.norm, vecTarget.norm, cfg).ticks;
    }

    std::uint64_t Planner::dgBarOf(std::size_t i)
    {
        auto &v = vertices_[i];
        if (v.dgBarCached)
        {
            return v.dgBar;
        }
        v.dgBarCached = true;
        v.dgBar = 0u;
        if (v.parent >= 0 && static_cast<std::size_t>(v.parent) != i)
        {
            // Synthetic edge straight to goal with the tree parent as momentum.
            v.dgBar = edgeDirectionTicks(static_cast<int>(i), static_cast<int>(goalIndex()));
        }
        return v.dgBar;
    }

    const std::vector<std::size_t> &Planner::neighborsOf(std::size_t i)
    {
        if (neighborCache_.size() != vertices_.size())
        {
            throw std::logic_error("Planner: approximation caches not initialized");
        }
        if (!neighborCached_[i])
        {
            neighborCache_[i] = kd_.radiusQuery(vertices_[i].state, radius_, i);
            neighborCached_[i] = true;
        }
        return neighborCache_[i];
    }

    void Planner::pushEdge(int source, int target, std::uint64_t ticks)
    {
        const auto &src = vertices_[source];
        const auto &tgt = vertices_[target];
        const double c = euclidean(src.state, tgt.state);
        if (src.g + c >= tgt.g - kEps)
        {
            return;  // cannot improve the target
        }
        QueueEdge edge;
        edge.key.k1 = src.g + c + heuristicCostToGo(static_cast<std::size_t>(target));
        edge.key.k2 = edge.key.k1;  // hBar == hHat for this artifact
        if (std::isfinite(cBest_) && edge.key.k1 >= cBest_ - kEps)
        {
            return;  // cannot improve the current solution
        }
        edge.key.k3 = effortEstimate(src.state, tgt.state, cfg_.motion) +
                      heuristicEffortToGo(static_cast<std::size_t>(target));
        // The direction tie-break is computed lazily at selection time; most
        // queued edges are never consulted for it.
        edge.source = source;
        edge.target = target;
        edge.ticks = ticks;
        edge.seq = nextSeq_++;
        forwardHeap_.push_back(edge);
        std::push_heap(forwardHeap_.begin(), forwardHeap_.end(),
                       [](const QueueEdge &a, const QueueEdge &b)
                       { return forwardKeyGreater(a.key, a.seq, b.key, b.seq); });
    }

    void Planner::expandVertex(int v)
    {
        const auto &neighbors = neighborsOf(static_cast<std::size_t>(v));
        if (cfg_.mode == PlannerMode::Dit)
        {
            const auto &vert = vertices_[static_cast<std::size_t>(v)];
            const StateVec &last = vert.parent >= 0 ? vertices_[vert.parent].state : vert.state;
            thread_local std::vector<const StateVec *> candidateStates;
            thread_local std::vector<std::size_t> candidates;
            thread_local FilterResult filtered;
            candidateStates.clear();
            candidates.clear();
            candidateStates.reserve(neighbors.size());
            for (const auto n : neighbors)
            {
                if (isBlacklisted(v, static_cast<int>(n)))
                {
                    continue;
                }
                candidates.push_back(n);
                candidateStates.push_back(&vertices_[n].state);
            }
            filterNeighborsInto(last, vert.state, env_.goal, candidateStates, cfg_.direction,
                                filtered);
            for (std::size_t k = 0u; k < filtered.keptIndices.size(); ++k)
            {
                const auto n = candidates[filtered.keptIndices[k]];
                pushEdge(v, static_cast<int>(n), filtered.costs[k].ticks);
            }
        }
        else
        {
            for (const auto n : neighbors)
            {
                if (!isBlacklisted(v, static_cast<int>(n)))
                {
                    pushEdge(v, static_cast<int>(n), 0u);
                }
            }
        }
    }

    void Planner::rebuildForwardQueue()
    {
        forwardHeap_.clear();
        std::vector<int> frontier{0};
        while (!frontier.empty())
        {
            const int v = frontier.back();
            frontier.pop_back();
            expandVertex(v);
            for (const int child : vertices_[static_cast<std::size_t>(v)].children)
            {
                frontier.push_back(child);
            }
        }
    }

    bool Planner::edgeIsStale(const QueueEdge &edge) const
    {
        const auto &src = vertices_[static_cast<std::size_t>(edge.source)];
        const auto &tgt = vertices_[static_cast<std::size_t>(edge.target)];
        if (!(src.g < kInf) || isBlacklisted(edge.source, edge.target))
        {
            return true;
        }
        const double c = euclidean(src.state, tgt.state);
        if (src.g + c >= tgt.g - kEps)
        {
            return true;
        }
        if (std::isfinite(cBest_) &&
            src.g + c + heuristicCostToGo(static_cast<std::size_t>(edge.target)) >= cBest_ - kEps)
        {
            return true;
        }
        return false;
    }

    std::optional<Planner::QueueEdge> Planner::selectBestForwardEdge()
    {
        const auto greater = [](const QueueEdge &a, const QueueEdge &b)
        { return forwardKeyGreater(a.key, a.seq, b.key, b.seq); };
        while (!forwardHeap_.empty())
        {
            std::pop_heap(forwardHeap_.begin(), forwardHeap_.end(), greater);
            QueueEdge best = forwardHeap_.back();
            forwardHeap_.pop_back();
            if (edgeIsStale(best))
            {
                continue;
            }
            // Collect the (k1, k2) tie band.
            thread_local std::vector<QueueEdge> band;
            band.clear();
            band.push_back(best);
            while (!forwardHeap_.empty())
            {
                const QueueEdge &top = forwardHeap_.front();
                if (std::abs(top.key.k1 - best.key.k1) > kKeyTol ||
                    std::abs(top.key.k2 - best.key.k2) > kKeyTol)
                {
                    break;
                }
                std::pop_heap(forwardHeap_.begin(), forwardHeap_.end(), greater);
                QueueEdge tied = forwardHeap_.back();
                forwardHeap_.pop_back();
                if (!edgeIsStale(tied))
                {
                    band.push_back(tied);
                }
            }
            if (band.size() == 1u)
            {
                return band.front();
            }

            std::size_t chosen = 0u;
            if (cfg_.mode == PlannerMode::Eit)
            {
                for (std::size_t i = 1u; i < band.size(); ++i)
                {
                    if (std::tie(band[i].key.k3, band[i].seq) <
                        std::tie(band[chosen].key.k3, band[chosen].seq))
                    {
                        chosen = i;
                    }
                }
            }
            else
            {
                // Edges within mu of the band's minimal effort are comparable;
                // tie-break those by the inadmissible direction cost.
                std::uint64_t minEffort = band.front().key.k3;
                for (const auto &edge : band)
                {
                    minEffort = std::min(minEffort, edge.key.k3);
                }
                bool haveChoice = false;
                std::uint64_t bestSd = 0u;
                for (std::size_t i = 0u; i < band.size(); ++i)
                {
                    if (band[i].key.k3 > minEffort + cfg_.mu)
                    {
                        continue;
                    }
                    const auto &src = vertices_[static_cast<std::size_t>(band[i].source)];
                    VertexEstimates srcEst;
                    srcEst.dsF = src.ds == kTicksUnreached ? 0u : src.ds;
                    VertexEstimates tgtEst;
                    tgtEst.dgBar = dgBarOf(static_cast<std::size_t>(band[i].target));
                    const std::uint64_t sd = sBarDirection(srcEst, {band[i].ticks}, tgtEst);
                    if (!haveChoice || sd < bestSd ||
                        (sd == bestSd && band[i].seq < band[chosen].seq))
                    {
                        chosen = i;
                        bestSd = sd;
                        haveChoice = true;
                    }
                }
            }
            for (std::size_t i = 0u; i < band.size(); ++i)
            {
                if (i != chosen)
                {
                    forwardHeap_.push_back(band[i]);
                    std::push_heap(forwardHeap_.begin(), forwardHeap_.end(), greater);
                }
            }
            return band[chosen];
        }
        return std::nullopt;
    }

    void Planner::reparent(int vertex, int newParent)
    {
        auto &v = vertices_[static_cast<std::size_t>(vertex)];
        if (v.parent >= 0)
        {
            auto &siblings = vertices_[static_cast<std::size_t>(v.parent)].children;
            siblings.erase(std::remove(siblings.begin(), siblings.end(), vertex), siblings.end());
        }
        v.parent = newParent;
        vertices_[static_cast<std::size_t>(newParent)].children.push_back(vertex);

        // Update g/ds top-down through the whole subtree so the telescoping
        // invariants hold after every iteration.
        std::vector<int> stack{vertex};
        while (!stack.empty())
        {
            const int idx = stack.back();
            stack.pop_back();
            auto &node = vertices_[static_cast<std::size_t>(idx)];
            const auto &parent = vertices_[static_cast<std::size_t>(node.parent)];
            node.edgeTicks = edgeDirectionTicks(node.parent, idx);
            node.g = parent.g + euclidean(parent.state, node.state);
            node.ds = parent.ds + node.edgeTicks;
            for (const int child : node.children)
            {
                stack.push_back(child);
            }
        }
    }

    void Planner::disconnectSubtree(int vertex)
    {
        auto &v = vertices_[static_cast<std::size_t>(vertex)];
        if (v.parent >= 0)
        {
            auto &siblings = vertices_[static_cast<std::size_t>(v.parent)].children;
            siblings.erase(std::remove(siblings.begin(), siblings.end(), vertex), siblings.end());
            v.parent = -1;
        }
        std::vector<int> stack{vertex};
        while (!stack.empty())
        {
            const int idx = stack.back();
            stack.pop_back();
            auto &node = vertices_[static_cast<std::size_t>(idx)];
            node.g = kInf;
            node.ds = kTicksUnreached;
            node.edgeTicks = 0u;
            for (const int child : node.children)
            {
                vertices_[static_cast<std::size_t>(child)].parent = -1;
                stack.push_back(child);
            }
            node.children.clear();
        }
    }

    void Planner::forwardIterate(const QueueEdge &edge)
    {
        if (!checkMotionCached(edge.source, edge.target))
        {
            blacklist_.insert(pairKey(edge.source, edge.target));
            const auto &src = vertices_[static_cast<std::size_t>(edge.source)];
            const auto &tgt = vertices_[static_cast<std::size_t>(edge.target)];
            if (src.reverseParent == edge.target || tgt.reverseParent == edge.source)
            {
                // The reverse tree used the invalid edge. Its estimates stay
                // admissible (losing an edge only raises the true cost-to-go),
                // so the repair is deferred to the next batch instead of
                // restarting the reverse search per invalidation.
                ++staleReverseEdges_;
            }
            return;
        }
        reparent(edge.target, edge.source);
        expandVertex(edge.target);
        maybeRecordSolution();
    }

    void Planner::maybeRecordSolution()
    {
        const auto &goal = vertices_[goalIndex()];
        if (!(goal.g < cBest_ - kEps))
        {
            return;
        }
        std::vector<int> chain;
        for (int idx = static_cast<int>(goalIndex()); idx >= 0; idx = vertices_[idx].parent)
        {
            chain.push_back(idx);
            if (idx == 0)
            {
                break;
            }
        }
        if (chain.back() != 0)
        {
            return;  // goal not rooted at the start
        }
        std::reverse(chain.begin(), chain.end());

        // Re-validate at fine resolution before accepting the path.
        MotionCheckConfig fine = cfg_.motion;
        fine.resolution /= static_cast<double>(std::max(cfg_.motion.fineFactor, 2));
        for (std::size_t i = 0u; i + 1u < chain.size(); ++i)
        {
            if (!isMotionValid(env_, vertices_[chain[i]].state, vertices_[chain[i + 1u]].state, fine))
            {
                blacklist_.insert(pairKey(chain[i], chain[i + 1u]));
                motionCache_[pairKey(chain[i], chain[i + 1u])] = false;
                disconnectSubtree(chain[i + 1u]);
                reverseDirty_ = true;
                return;
            }
        }
        SolutionRecord record;
        record.t = elapsed();
        record.cost = goal.g;
        record.path.reserve(chain.size());
        for (const int idx : chain)
        {
            record.path.push_back(vertices_[idx].state);
        }
        records_.push_back(std::move(record));
        cBest_ = goal.g;
    }

    void Planner::runReverseSearch()
    {
        reverseDirty_ = false;
        staleReverseEdges_ = 0u;  // the rerun sees the whole blacklist
        for (auto &v : vertices_)
        {
            v.hHat = kInf;
            v.eBar = kTicksUnreached;
            v.reverseParent = -1;
        }
        auto &goal = vertices_[goalIndex()];
        goal.hHat = 0.0;
        goal.eBar = 0u;

        std::priority_queue<ReverseQueueEdge, std::vector<ReverseQueueEdge>,
                            std::greater<ReverseQueueEdge>>
            queue;
        std::uint64_t seq = 0u;

        const auto reverseDirTicks = [this](int source, int target) -> std::uint64_t
        {
            // Reverse momentum comes from the reverse parent; alignment is
            // measured toward the start, the reverse search's goal.
            const auto &src = vertices_[static_cast<std::size_t>(source)];
            if (src.reverseParent < 0)
            {
                return 0u;
            }
            const auto &cfg = cfg_.direction;
            const StateVec &last = vertices_[src.reverseParent].state;
            thread_local GenVec vecTarget, vecGoal, vecCheck;
            generalVecInto(last, src.state, vecTarget);
            generalVecInto(last, env_.start, vecGoal);
            generalVecInto(src.state, vertices_[target].state, vecCheck);
            if (isDegenerate(vecTarget, cfg) || isDegenerate(vecGoal, cfg) ||
                isDegenerate(vecCheck, cfg))
            {
                return 0u;
            }
            return calcDirCost(wgtCosSim(vecCheck, vecGoal, cfg), wgtCosSim(vecTarget, vecGoal, cfg),
                               vecCheck.norm, vecTarget.norm, cfg)
                .ticks;
        };

        const auto expandReverse = [&](int v)
        {
            const auto &src = vertices_[static_cast<std::size_t>(v)];
            for (const auto n : neighborsOf(static_cast<std::size_t>(v)))
            {
                if (isBlacklisted(v, static_cast<int>(n)))
                {
                    continue;  // edges the forward search found invalid
                }
                const auto &tgt = vertices_[n];
                const double c = admissibleCost(src.state, tgt.state);
                if (src.hHat + c >= tgt.hHat)
                {
                    continue;
                }
                VertexEstimates srcEst;
                srcEst.hHat = src.hHat;
                srcEst.eBar = src.eBar;
                ReverseQueueEdge entry;
                entry.key = reverseKey(srcEst, c, effortEstimate(src.state, tgt.state, cfg_.motion),
                                       euclidean(env_.start, tgt.state),
                                       effortEstimate(tgt.state, env_.start, cfg_.motion),
                                       {reverseDirTicks(v, static_cast<int>(n))});
                entry.seq = seq++;
                entry.source = v;
                entry.target = static_cast<int>(n);
                queue.push(entry);
            }
        };

        expandReverse(static_cast<int>(goalIndex()));
        std::uint64_t pops = 0u;
        while (!queue.empty())
        {
            if ((++pops & 1023u) == 0u && budgetExhausted())
            {
                break;
            }
            const ReverseQueueEdge entry = queue.top();
            queue.pop();
            const auto &src = vertices_[static_cast<std::size_t>(entry.source)];
            auto &tgt = vertices_[static_cast<std::size_t>(entry.target)];
            const double c = admissibleCost(src.state, tgt.state);
            if (src.hHat + c < tgt.hHat)
            {
                tgt.hHat = src.hHat + c;
                tgt.eBar = src.eBar + effortEstimate(src.state, tgt.state, cfg_.motion);
                tgt.reverseParent = entry.source;
                expandReverse(entry.target);
            }
        }
    }

    bool Planner::rewireSweep()
    {
        // Choose-parent/rewire at queue exhaustion: relax RGG edges out of the
        // tree until a fixed point, so g-values on the current approximation
        // are exact shortest-path costs at batch boundaries. A worklist in
        // ascending g-order keeps the cost proportional to what actually
        // changes instead of re-scanning every vertex per pass.
        bool any = false;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
        for (std::size_t i = 0u; i < vertices_.size(); ++i)
        {
            if (vertices_[i].g < kInf)
            {
                open.emplace(vertices_[i].g, static_cast<int>(i));
            }
        }
        std::uint64_t pops = 0u;
        while (!open.empty())
        {
            if ((++pops & 255u) == 0u && budgetExhausted())
            {
                break;
            }
            const auto [g, v] = open.top();
            open.pop();
            if (g > vertices_[static_cast<std::size_t>(v)].g + kEps)
            {
                continue;  // stale entry, the vertex improved since
            }
            for (const auto n : neighborsOf(static_cast<std::size_t>(v)))
            {
                const auto &src = vertices_[static_cast<std::size_t>(v)];
                auto &tgt = vertices_[n];
                if (!(src.g < kInf) || isBlacklisted(v, static_cast<int>(n)))
                {
                    continue;
                }
                const double c = euclidean(src.state, tgt.state);
                if (src.g + c >= tgt.g - kEps)
                {
                    continue;
                }
                if (std::isfinite(cBest_) &&
                    src.g + c + heuristicCostToGo(n) >= cBest_ - kEps)
                {
                    continue;
                }
                if (checkMotionCached(v, static_cast<int>(n)))
                {
                    reparent(static_cast<int>(n), v);
                    any = true;
                    // The whole rewired subtree improved; re-queue it so the
                    // improvements propagate to the surrounding graph.
                    std::vector<int> stack{static_cast<int>(n)};
                    while (!stack.empty())
                    {
                        const int idx = stack.back();
                        stack.pop_back();
                        open.emplace(vertices_[static_cast<std::size_t>(idx)].g, idx);
                        for (const int child : vertices_[static_cast<std::size_t>(idx)].children)
                        {
                            stack.push_back(child);
                        }
                    }
                }
                else
                {
                    blacklist_.insert(pairKey(v, static_cast<int>(n)));
                }
            }
        }
        maybeRecordSolution();
        return any;
    }

    void Planner::resetApproximationCaches()
    {
        std::vector<const StateVec *> points;
        points.reserve(vertices_.size());
        for (const auto &v : vertices_)
        {
            points.push_back(&v.state);
        }
        kd_.build(points);
        neighborCache_.assign(vertices_.size(), {});
        neighborCached_.assign(vertices_.size(), false);
        for (auto &v : vertices_)
        {
            v.dgBarCached = false;
        }
    }

    void Planner::pruneSamples()
    {
        if (!std::isfinite(cBest_))
        {
            return;
        }
        std::vector<int> remap(vertices_.size(), -1);
        std::vector<Vertex> kept;
        kept.reserve(vertices_.size());
        for (std::size_t i = 0u; i < vertices_.size(); ++i)
        {
            const double fHat =
                euclidean(env_.start, vertices_[i].state) + euclidean(vertices_[i].state, env_.goal);
            if (i < 2u || fHat <= cBest_ + kEps)
            {
                remap[i] = static_cast<int>(kept.size());
                kept.push_back(std::move(vertices_[i]));
            }
            else
            {
                ++pruned_;
            }
        }
        for (auto &v : kept)
        {
            v.parent = v.parent >= 0 ? remap[static_cast<std::size_t>(v.parent)] : -1;
            v.reverseParent = v.reverseParent >= 0 ? remap[static_cast<std::size_t>(v.reverseParent)] : -1;
            v.children.clear();
        }
        vertices_ = std::move(kept);
        for (std::size_t i = 0u; i < vertices_.size(); ++i)
        {
            if (vertices_[i].parent >= 0)
            {
                vertices_[static_cast<std::size_t>(vertices_[i].parent)].children.push_back(
                    static_cast<int>(i));
            }
        }
        // Reset any subtree whose parent chain was severed by pruning.
        std::vector<bool> reachable(vertices_.size(), false);
        std::vector<int> frontier{0};
        reachable[0] = true;
        while (!frontier.empty())
        {
            const int v = frontier.back();
            frontier.pop_back();
            for (const int child : vertices_[static_cast<std::size_t>(v)].children)
            {
                reachable[static_cast<std::size_t>(child)] = true;
                frontier.push_back(child);
            }
        }
        for (std::size_t i = 1u; i < vertices_.size(); ++i)
        {
            if (!reachable[i])
            {
                vertices_[i].g = kInf;
                vertices_[i].ds = kTicksUnreached;
                vertices_[i].edgeTicks = 0u;
                vertices_[i].parent = -1;
                vertices_[i].children.clear();
            }
        }

        // Pair-indexed caches must survive the renumbering.
        std::unordered_set<std::uint64_t> newBlacklist;
        for (const auto key : blacklist_)
        {
            const int a = remap[key >> 32];
            const int b = remap[key & 0xffffffffu];
            if (a >= 0 && b >= 0)
            {
                newBlacklist.insert(pairKey(a, b));
            }
        }
        blacklist_ = std::move(newBlacklist);
        std::unordered_map<std::uint64_t, bool> newCache;
        for (const auto &[key, value] : motionCache_)
        {
            const int a = remap[key >> 32];
            const int b = remap[key & 0xffffffffu];
            if (a >= 0 && b >= 0)
            {
                newCache.emplace(pairKey(a, b), value);
            }
        }
        motionCache_ = std::move(newCache);
        forwardHeap_.clear();
    }

    void Planner::addBatchSamples()
    {
        const bool informed = std::isfinite(cBest_) && cBest_ - euclidean(env_.start, env_.goal) > kEps;
        InformedSet set(env_.start, env_.goal, cBest_);
        constexpr int kMaxTriesPerSample = 100000;
        for (int i = 0; i < cfg_.batchSize; ++i)
        {
            bool added = false;
            for (int attempt = 0; attempt < kMaxTriesPerSample; ++attempt)
            {
                StateVec x = informed ? sampleInformed(set, rng_) : sampleUniform(env_.dim, rng_);
                if (isStateValid(env_, x))
                {
                    Vertex v;
                    v.state = std::move(x);
                    vertices_.push_back(std::move(v));
                    added = true;
                    break;
                }
            }
            if (!added)
            {
                break;  // effectively blocked environment
            }
        }
    }

    void Planner::improveApproximation()
    {
        pruneSamples();
        addBatchSamples();
        ++batches_;
        const InformedSet set(env_.start, env_.goal, cBest_);
        radius_ = connectionRadius(vertices_.size(), cfg_.rgg, lebesgueInformed(set));
        resetApproximationCaches();
        reverseDirty_ = true;
    }

    void Planner::seedExplicitSamples(const std::vector<StateVec> &states)
    {
        vertices_.resize(2u);
        vertices_[0].children.clear();
        vertices_[1].g = kInf;
        vertices_[1].ds = kTicksUnreached;
        vertices_[1].parent = -1;
        vertices_[1].children.clear();
        for (const auto &x : states)
        {
            Vertex v;
            v.state = x;
            vertices_.push_back(std::move(v));
        }
        radius_ = connectionRadius(vertices_.size(), cfg_.rgg, 1.0);
        resetApproximationCaches();
        forwardHeap_.clear();
        blacklist_.clear();
        motionCache_.clear();
        reverseDirty_ = true;
    }

    void Planner::searchToExhaustion()
    {
        for (int round = 0; round < 64; ++round)
        {
            if (reverseDirty_)
            {
                runReverseSearch();
                rebuildForwardQueue();
            }
            while (auto edge = selectBestForwardEdge())
            {
                forwardIterate(*edge);
                if (reverseDirty_)
                {
                    runReverseSearch();
                    rebuildForwardQueue();
                }
            }
            if (staleReverseEdges_ > 0u)
            {
                staleReverseEdges_ = 0u;
                reverseDirty_ = true;  // repair deferred invalidations
            }
            const bool changed = rewireSweep();
            if (!changed && !reverseDirty_ && forwardHeap_.empty())
            {
                return;
            }
        }
    }

    double Planner::elapsed() const
    {
        if (cfg_.iterationBudget > 0u)
        {
            return static_cast<double>(iterations_) * 1e-6;
        }
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - startTime_).count();
    }

    bool Planner::budgetExhausted() const
    {
        if (!started_)
        {
            return false;
        }
        if (cfg_.iterationBudget > 0u)
        {
            return iterations_ >= cfg_.iterationBudget;
        }
        return elapsed() >= budget_;
    }

    std::vector<SolutionRecord> Planner::plan(double budgetSeconds)
    {
        if (budgetSeconds <= 0.0)
        {
            throw std::invalid_argument("plan: budget must be positive");
        }
        startTime_ = std::chrono::steady_clock::now();
        budget_ = budgetSeconds;
        started_ = true;

        if (batches_ == 0u && vertices_.size() <= 2u)
        {
            improveApproximation();
        }
        while (!budgetExhausted())
        {
            ++iterations_;
            if (reverseDirty_)
            {
                // One pseudo-time tick per vertex keeps the deterministic
                // clock proportional to the work a heuristic refresh costs.
                iterations_ += vertices_.size();
                runReverseSearch();
                rebuildForwardQueue();
                continue;
            }
            const auto edge = selectBestForwardEdge();
            if (!edge)
            {
                if (staleReverseEdges_ > 0u)
                {
                    reverseDirty_ = true;  // repair before giving up on the batch
                    continue;
                }
                iterations_ += vertices_.size();
                rewireSweep();
                if (budgetExhausted())
                {
                    break;
                }
                improveApproximation();
                // Before a first solution the cost-to-go estimates barely move
                // between batches, so refresh them only every few batches and
                // let new samples fall back to the straight-line estimates.
                if (!std::isfinite(cBest_) && batches_ % 4u != 1u)
                {
                    reverseDirty_ = false;
                    rebuildForwardQueue();
                }
                continue;
            }
            forwardIterate(*edge);
        }
        return records_;
    }
}  // namespace ditstar
