#ifndef TIRC_DISTILL_HPP
#define TIRC_DISTILL_HPP

#include <set>
#include <utility>
#include <vector>

#include "tirc/tensor.hpp"

namespace tirc {

using CategorySet = std::set<int32_t>;

// Ordered denoising steps: (target category, confusion set).
struct ConfusionSchedule {
    std::vector<std::pair<int32_t, CategorySet>> steps;

    void validate() const;
};

// Thresholds for the label mining process.
struct MiningParams {
    float theta_fg = 0.95f;
    float theta_bg = 0.99f;
    CategorySet fg_set;  // buildings and all object categories

    void validate() const;
};

// Fuses two daytime-color segmenter predictions: classes in
// intersect_set require agreement (disagreement becomes UNLABELED),
// everything else follows pred_city.
LabelMask fuse_dc_labels(const LabelMask& pred_coco, const LabelMask& pred_city,
                         const CategorySet& intersect_set);

// High-confidence intersection of two probability tensors: a pixel is
// labeled c' iff both probabilities reach the class-dependent threshold
// (theta_fg for fg_set classes, theta_bg otherwise); else UNLABELED.
LabelMask mine_labels(const ProbTensor& v_rb, const ProbTensor& v_fa,
                      const MiningParams& p);

// Semantic denoising: a target pixel is demoted to UNLABELED iff its
// squared distance to the target's mean pixel feature strictly exceeds
// its distance to any confusion category's mean feature. Confusion
// categories with no pixels are skipped; an absent target (or all
// confusion categories absent) makes this the identity.
LabelMask sdp(const LabelMask& mask, const Tensor& image, int32_t target,
              const CategorySet& confusion);

// Applies sdp sequentially in schedule order; each step sees the mask
// produced by the previous one, so mean features are always current.
LabelMask run_schedule(const LabelMask& mask, const Tensor& image,
                       const ConfusionSchedule& sched);

// Online semantic distillation for the NTIR domain:
// run_schedule(mine_labels(v_rb, v_fa, p), ntir, sched).
LabelMask distill_ntir(const ProbTensor& v_rb, const ProbTensor& v_fa,
                       const Tensor& ntir, const MiningParams& p,
                       const ConfusionSchedule& sched);

// Confusion schedules from the visible / NTIR fusion rules. Category ids
// are caller-supplied (sky, tree, pole, pedestrian).
ConfusionSchedule domain_a_schedule(int32_t sky, int32_t tree, int32_t pole);
ConfusionSchedule domain_b_schedule(int32_t sky, int32_t tree, int32_t pole,
                                    int32_t pedestrian);

}  // namespace tirc

#endif
