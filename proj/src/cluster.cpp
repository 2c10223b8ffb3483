#include "tirc/cluster.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tirc {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

// k-means++ seeding: first centroid uniform, then proportional to the
// squared distance to the nearest chosen centroid.
std::vector<std::vector<double>> seed_centroids(
    const std::vector<std::vector<double>>& points, int k, std::mt19937& rng) {
    const size_t n = points.size();
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);

    std::uniform_int_distribution<size_t> first(0, n - 1);
    centroids.push_back(points[first(rng)]);

    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& ctr : centroids)
                best = std::min(best, sq_dist(points[i], ctr));
            d2[i] = best;
            total += best;
        }
        size_t pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double r = u(rng);
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (r <= acc) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = first(rng);  // all points coincide with a centroid
        }
        centroids.push_back(points[pick]);
    }
    return centroids;
}

}  // namespace

ClusterResult kmeans(const std::vector<std::vector<double>>& points, int k,
                     uint64_t seed, int max_iters, double tol) {
    const size_t n = points.size();
    if (k < 1 || static_cast<size_t>(k) > n)
        throw std::invalid_argument("kmeans: require 1 <= k <= N");
    const size_t dim = points[0].size();
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("kmeans: ragged points");

    std::mt19937 rng(static_cast<uint32_t>(seed ^ (seed >> 32)));
    ClusterResult res;
    res.centroids = seed_centroids(points, k, rng);
    res.assignments.assign(n, 0);

    auto assign = [&]() {
        double inertia = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                double d = sq_dist(points[i], res.centroids[c]);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            res.assignments[i] = arg;
            inertia += best;
        }
        return inertia;
    };

    double prev_inertia = std::numeric_limits<double>::max();
    for (int iter = 0; iter < max_iters; ++iter) {
        double inertia = assign();
        assert(inertia <= prev_inertia + 1e-9);
        res.inertia_history.push_back(inertia);
        res.inertia = inertia;

        // Recompute means; repair empty clusters from the farthest point.
        std::vector<std::vector<double>> next(k, std::vector<double>(dim, 0.0));
        std::vector<size_t> counts(k, 0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t d = 0; d < dim; ++d) next[res.assignments[i]][d] += points[i][d];
            ++counts[res.assignments[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                size_t far = 0;
                double best = -1.0;
                for (size_t i = 0; i < n; ++i) {
                    double d = sq_dist(points[i], res.centroids[res.assignments[i]]);
                    if (d > best) {
                        best = d;
                        far = i;
                    }
                }
                next[c] = points[far];
            } else {
                for (size_t d = 0; d < dim; ++d) next[c][d] /= static_cast<double>(counts[c]);
            }
        }

        double shift = 0.0;
        for (int c = 0; c < k; ++c)
            shift = std::max(shift, std::sqrt(sq_dist(next[c], res.centroids[c])));
        res.centroids = std::move(next);
        prev_inertia = inertia;
        if (shift < tol) break;
    }
    res.inertia = assign();
    res.inertia_history.push_back(res.inertia);
    return res;
}

}  // namespace tirc
