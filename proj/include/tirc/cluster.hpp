#ifndef TIRC_CLUSTER_HPP
#define TIRC_CLUSTER_HPP

#include <cstdint>
#include <vector>

namespace tirc {

struct ClusterResult {
    std::vector<std::vector<double>> centroids;  // k rows of dim C
    std::vector<int> assignments;                // one index per point
    double inertia = 0.0;
    std::vector<double> inertia_history;  // one entry per Lloyd iteration
};

// Lloyd iterations from seeded k-means++ initialization. Deterministic
// for a given seed; empty clusters are re-seeded to the point farthest
// from its assigned centroid.
ClusterResult kmeans(const std::vector<std::vector<double>>& points, int k,
                     uint64_t seed, int max_iters = 100, double tol = 1e-4);

}  // namespace tirc

#endif
