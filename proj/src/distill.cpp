#include "tirc/distill.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace tirc {

void ConfusionSchedule::validate() const {
    CategorySet seen;
    for (const auto& [target, conf] : steps) {
        if (conf.empty())
            throw std::invalid_argument("ConfusionSchedule: empty confusion set");
        if (!seen.insert(target).second)
            throw std::invalid_argument("ConfusionSchedule: repeated target category");
    }
}

void MiningParams::validate() const {
    if (!(0.5f < theta_fg && theta_fg <= theta_bg && theta_bg < 1.f))
        throw std::invalid_argument("MiningParams: require 0.5 < theta_fg <= theta_bg < 1");
}

LabelMask fuse_dc_labels(const LabelMask& pred_coco, const LabelMask& pred_city,
                         const CategorySet& intersect_set) {
    if (!pred_coco.same_shape(pred_city))
        throw std::invalid_argument("fuse_dc_labels: shape mismatch");
    LabelMask out(pred_city.height, pred_city.width);
    for (size_t i = 0; i < out.size(); ++i) {
        int32_t city = pred_city.data[i];
        int32_t coco = pred_coco.data[i];
        if (intersect_set.count(city))
            out.data[i] = (city == coco) ? city : UNLABELED;
        else
            out.data[i] = city;
    }
    return out;
}

LabelMask mine_labels(const ProbTensor& v_rb, const ProbTensor& v_fa,
                      const MiningParams& p) {
    if (!v_rb.same_shape(v_fa))
        throw std::invalid_argument("mine_labels: shape mismatch");
    p.validate();
    require_simplex(v_rb);
    require_simplex(v_fa);

    LabelMask out(v_rb.height, v_rb.width);
    for (int y = 0; y < v_rb.height; ++y) {
        for (int x = 0; x < v_rb.width; ++x) {
            int32_t label = UNLABELED;
            for (int c = 0; c < v_rb.n_classes; ++c) {
                float th = p.fg_set.count(c) ? p.theta_fg : p.theta_bg;
                if (v_rb.at(c, y, x) >= th && v_fa.at(c, y, x) >= th) {
                    label = c;
                    break;  // thresholds > 0.5, at most one class can pass
                }
            }
            out.at(y, x) = label;
        }
    }
    return out;
}

namespace {

// Mean pixel feature of a category; false if the category has no pixels.
bool mean_feature(const LabelMask& mask, const Tensor& image, int32_t cat,
                  std::vector<double>& out) {
    out.assign(image.channels, 0.0);
    size_t n = 0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(y, x) == cat) {
                for (int c = 0; c < image.channels; ++c)
                    out[c] += image.at(c, y, x);
                ++n;
            }
    if (n == 0) return false;
    for (double& v : out) v /= static_cast<double>(n);
    return true;
}

double sq_dist(const Tensor& image, int y, int x, const std::vector<double>& f) {
    double d = 0.0;
    for (int c = 0; c < image.channels; ++c) {
        double diff = image.at(c, y, x) - f[c];
        d += diff * diff;
    }
    return d;
}

}  // namespace

LabelMask sdp(const LabelMask& mask, const Tensor& image, int32_t target,
              const CategorySet& confusion) {
    if (mask.height != image.height || mask.width != image.width)
        throw std::invalid_argument("sdp: mask/image shape mismatch");

    std::vector<double> f_target;
    if (!mean_feature(mask, image, target, f_target)) return mask;

    std::vector<std::vector<double>> f_conf;
    for (int32_t c : confusion) {
        std::vector<double> f;
        if (c != target && mean_feature(mask, image, c, f))
            f_conf.push_back(std::move(f));
    }
    if (f_conf.empty()) return mask;

    LabelMask out = mask;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            if (mask.at(y, x) != target) continue;
            double own = sq_dist(image, y, x, f_target);
            for (const auto& f : f_conf)
                if (own > sq_dist(image, y, x, f)) {
                    out.at(y, x) = UNLABELED;
                    break;
                }
        }
    return out;
}

LabelMask run_schedule(const LabelMask& mask, const Tensor& image,
                       const ConfusionSchedule& sched) {
    sched.validate();
    LabelMask cur = mask;
    for (const auto& [target, conf] : sched.steps)
        cur = sdp(cur, image, target, conf);
    return cur;
}

LabelMask distill_ntir(const ProbTensor& v_rb, const ProbTensor& v_fa,
                       const Tensor& ntir, const MiningParams& p,
                       const ConfusionSchedule& sched) {
    return run_schedule(mine_labels(v_rb, v_fa, p), ntir, sched);
}

ConfusionSchedule domain_a_schedule(int32_t sky, int32_t tree, int32_t pole) {
    ConfusionSchedule s;
    s.steps = {{tree, {sky}}, {pole, {sky}}, {sky, {tree, pole}}};
    return s;
}

ConfusionSchedule domain_b_schedule(int32_t sky, int32_t tree, int32_t pole,
                                    int32_t pedestrian) {
    ConfusionSchedule s;
    s.steps = {{sky, {tree, pole}},
               {pole, {sky}},
               {pedestrian, {tree}},
               {tree, {sky, pedestrian}}};
    return s;
}

}  // namespace tirc
