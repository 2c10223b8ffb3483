// Independent brute-force oracles for the distillation operations.
// Deliberately written as literal per-pixel translations, separate from
// the library code paths they check.
#ifndef TIRC_TESTS_ORACLES_HPP
#define TIRC_TESTS_ORACLES_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "tirc/distill.hpp"
#include "tirc/tensor.hpp"

namespace tirc::oracle {

inline std::optional<std::vector<double>> class_mean(const LabelMask& mask,
                                                     const Tensor& img, int32_t cls) {
    std::vector<double> f(img.channels, 0.0);
    int n = 0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(y, x) == cls) {
                for (int c = 0; c < img.channels; ++c) f[c] += img.at(c, y, x);
                ++n;
            }
    if (!n) return std::nullopt;
    for (double& v : f) v /= n;
    return f;
}

// Literal per-pixel semantic denoising: a target pixel is dropped when
// the indicator sum over confusion categories is positive.
inline LabelMask sdp_bruteforce(const LabelMask& mask, const Tensor& img,
                                int32_t target, const CategorySet& confusion) {
    auto f_t = class_mean(mask, img, target);
    LabelMask out = mask;
    if (!f_t) return out;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            if (mask.at(y, x) != target) continue;
            double q_own = 0.0;
            for (int c = 0; c < img.channels; ++c) {
                double d = img.at(c, y, x) - (*f_t)[c];
                q_own += d * d;
            }
            int indicator_sum = 0;
            for (int32_t z : confusion) {
                if (z == target) continue;
                auto f_z = class_mean(mask, img, z);
                if (!f_z) continue;
                double q_z = 0.0;
                for (int c = 0; c < img.channels; ++c) {
                    double d = img.at(c, y, x) - (*f_z)[c];
                    q_z += d * d;
                }
                if (q_own - q_z > 0.0) ++indicator_sum;
            }
            if (indicator_sum > 0) out.at(y, x) = UNLABELED;
        }
    return out;
}

inline LabelMask schedule_bruteforce(const LabelMask& mask, const Tensor& img,
                                     const ConfusionSchedule& sched) {
    LabelMask cur = mask;
    for (const auto& [target, conf] : sched.steps)
        cur = sdp_bruteforce(cur, img, target, conf);
    return cur;
}

// Literal per-pixel label mining with the piecewise threshold.
inline LabelMask mine_bruteforce(const ProbTensor& v_rb, const ProbTensor& v_fa,
                                 const MiningParams& p) {
    LabelMask out(v_rb.height, v_rb.width);
    for (int y = 0; y < v_rb.height; ++y)
        for (int x = 0; x < v_rb.width; ++x) {
            out.at(y, x) = UNLABELED;
            for (int c = 0; c < v_rb.n_classes; ++c) {
                double eta = p.fg_set.count(c) ? p.theta_fg : p.theta_bg;
                if (v_rb.at(c, y, x) >= eta && v_fa.at(c, y, x) >= eta) {
                    out.at(y, x) = c;
                    break;
                }
            }
        }
    return out;
}

}  // namespace tirc::oracle

#endif
