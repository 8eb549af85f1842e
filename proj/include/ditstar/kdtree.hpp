#ifndef DITSTAR_KDTREE_HPP
#define DITSTAR_KDTREE_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "ditstar/space.hpp"

namespace ditstar
{
    /// Static kd-tree over state indices for radius and nearest queries.
    /// Rebuilt per batch; query results are returned sorted by index so search
    /// behavior is independent of build order.
    class KdTree
    {
    public:
        KdTree() = default;

        void build(const std::vector<const StateVec *> &points)
        {
            points_ = points;
            index_.resize(points.size());
            std::iota(index_.begin(), index_.end(), std::size_t{0});
            dim_ = points.empty() ? 0u : points.front()->size();
            if (!points_.empty())
            {
                buildRange(0, points_.size(), 0);
            }
            // Pack coordinates in tree order so queries walk contiguous memory
            // instead of chasing one heap pointer per visited point.
            coords_.resize(points_.size() * dim_);
            for (std::size_t pos = 0u; pos < index_.size(); ++pos)
            {
                const StateVec &p = *points_[index_[pos]];
                std::copy(p.begin(), p.end(), coords_.begin() + pos * dim_);
            }
        }

        /// Indices of all points with distance <= radius to x, excluding
        /// `exclude` (pass npos to keep everything), ascending index order.
        std::vector<std::size_t> radiusQuery(const StateVec &x, double radius,
                                             std::size_t exclude = npos) const
        {
            std::vector<std::size_t> hits;
            if (!points_.empty())
            {
                radiusSearch(0, points_.size(), 0, x, radius * radius, exclude, hits);
            }
            std::sort(hits.begin(), hits.end());
            return hits;
        }

        /// Index of the point closest to x, npos when empty.
        std::size_t nearest(const StateVec &x) const
        {
            std::size_t best = npos;
            double bestSq = kInf;
            if (!points_.empty())
            {
                nearestSearch(0, points_.size(), 0, x, best, bestSq);
            }
            return best;
        }

        static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    private:
        // Ranges at most this long are scanned linearly; the packed coordinate
        // layout makes that cheaper than recursing to single points.
        static constexpr std::size_t kBucket = 16u;

        void buildRange(std::size_t lo, std::size_t hi, std::size_t depth)
        {
            if (hi - lo <= kBucket)
            {
                return;
            }
            const std::size_t axis = depth % points_[0]->size();
            const std::size_t mid = lo + (hi - lo) / 2u;
            std::nth_element(index_.begin() + lo, index_.begin() + mid, index_.begin() + hi,
                             [&](std::size_t a, std::size_t b)
                             {
                                 if ((*points_[a])[axis] != (*points_[b])[axis])
                                 {
                                     return (*points_[a])[axis] < (*points_[b])[axis];
                                 }
                                 return a < b;
                             });
            buildRange(lo, mid, depth + 1u);
            buildRange(mid + 1u, hi, depth + 1u);
        }

        double sqDistAt(std::size_t pos, const StateVec &x) const
        {
            const double *p = coords_.data() + pos * dim_;
            double sq = 0.0;
            for (std::size_t d = 0u; d < dim_; ++d)
            {
                const double diff = p[d] - x[d];
                sq += diff * diff;
            }
            return sq;
        }

        void radiusSearch(std::size_t lo, std::size_t hi, std::size_t depth, const StateVec &x,
                          double radiusSq, std::size_t exclude, std::vector<std::size_t> &hits) const
        {
            if (hi - lo <= kBucket)
            {
                for (std::size_t pos = lo; pos < hi; ++pos)
                {
                    const std::size_t node = index_[pos];
                    if (node != exclude && sqDistAt(pos, x) <= radiusSq)
                    {
                        hits.push_back(node);
                    }
                }
                return;
            }
            const std::size_t mid = lo + (hi - lo) / 2u;
            const std::size_t node = index_[mid];
            if (node != exclude && sqDistAt(mid, x) <= radiusSq)
            {
                hits.push_back(node);
            }
            const std::size_t axis = depth % dim_;
            const double delta = x[axis] - coords_[mid * dim_ + axis];
            const double deltaSq = delta * delta;
            if (delta <= 0.0 || deltaSq <= radiusSq)
            {
                radiusSearch(lo, mid, depth + 1u, x, radiusSq, exclude, hits);
            }
            if (delta >= 0.0 || deltaSq <= radiusSq)
            {
                radiusSearch(mid + 1u, hi, depth + 1u, x, radiusSq, exclude, hits);
            }
        }

        void nearestSearch(std::size_t lo, std::size_t hi, std::size_t depth, const StateVec &x,
                           std::size_t &best, double &bestSq) const
        {
            if (hi - lo <= kBucket)
            {
                for (std::size_t pos = lo; pos < hi; ++pos)
                {
                    const std::size_t node = index_[pos];
                    const double sq = sqDistAt(pos, x);
                    if (sq < bestSq || (sq == bestSq && node < best))
                    {
                        best = node;
                        bestSq = sq;
                    }
                }
                return;
            }
            const std::size_t mid = lo + (hi - lo) / 2u;
            const std::size_t node = index_[mid];
            const double sq = sqDistAt(mid, x);
            if (sq < bestSq || (sq == bestSq && node < best))
            {
                best = node;
                bestSq = sq;
            }
            const std::size_t axis = depth % dim_;
            const double delta = x[axis] - coords_[mid * dim_ + axis];
            const bool leftFirst = delta <= 0.0;
            if (leftFirst)
            {
                nearestSearch(lo, mid, depth + 1u, x, best, bestSq);
                if (delta * delta <= bestSq)
                {
                    nearestSearch(mid + 1u, hi, depth + 1u, x, best, bestSq);
                }
            }
            else
            {
                nearestSearch(mid + 1u, hi, depth + 1u, x, best, bestSq);
                if (delta * delta <= bestSq)
                {
                    nearestSearch(lo, mid, depth + 1u, x, best, bestSq);
                }
            }
        }

        std::vector<const StateVec *> points_;
        std::vector<std::size_t> index_;
        std::vector<double> coords_;
        std::size_t dim_{0u};
    };
}  // namespace ditstar

#endif
