#ifndef TIRC_SYNTH_HPP
#define TIRC_SYNTH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "tirc/tensor.hpp"

namespace tirc {

// Category ids used by the synthetic scenes.
namespace cat {
inline constexpr int32_t Road = 0;
inline constexpr int32_t Sky = 1;
inline constexpr int32_t Tree = 2;
inline constexpr int32_t Pole = 3;
inline constexpr int32_t Pedestrian = 4;
inline constexpr int32_t Car = 5;
inline constexpr int32_t TrafficSign = 6;
inline constexpr int32_t Count = 7;
}  // namespace cat

struct SceneSpec {
    int width = 64;
    int height = 64;
    uint64_t seed = 0;
    int n_trees = 2;
    int n_poles = 2;
    int n_pedestrians = 2;
    int n_cars = 1;
    int n_signs = 1;
    float noise_sigma = 0.0f;

    void validate() const;
};

struct Scene {
    GrayMap ntir;
    Tensor dc;  // 3-channel color image
    LabelMask gt;
};

// Deterministic blob scene: sky over road, with tree/pole/pedestrian/
// car/sign blobs. The ground truth partitions the image (no UNLABELED)
// and the thermal image keeps min(pedestrian) > mean(road).
Scene generate_scene(const SceneSpec& spec);

// Per-class mean NTIR intensity of the generated scenes, indexed by
// category id. Exposed so oracles know the class statistics.
const std::vector<float>& ntir_class_means();

// Flips round(rate * |class|) seeded pixels of each pair's first class
// to the second; class membership is taken from the input mask before
// any flips.
LabelMask corrupt_labels(const LabelMask& gt,
                         const std::vector<std::pair<int32_t, int32_t>>& swap_pairs,
                         double rate, uint64_t seed);

// One-hot-like probability tensor from a mask: the labeled class gets
// `confidence`, the rest share the remainder. UNLABELED pixels become
// uniform. Used to feed mined labels from synthetic masks.
ProbTensor mask_to_probs(const LabelMask& mask, int n_classes, float confidence);

}  // namespace tirc

#endif
