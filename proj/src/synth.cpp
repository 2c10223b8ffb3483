#include "tirc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tirc {

void SceneSpec::validate() const {
    if (width < 32 || height < 32)
        throw std::invalid_argument("SceneSpec: dims must be >= 32");
    if (n_trees < 0 || n_poles < 0 || n_pedestrians < 0 || n_cars < 0 || n_signs < 0)
        throw std::invalid_argument("SceneSpec: negative blob count");
    if (noise_sigma < 0.f)
        throw std::invalid_argument("SceneSpec: negative noise sigma");
}

namespace {

// Thermal intensity means per category. Pedestrians are clamped to stay
// above the road band so the temperature prior holds by construction.
const std::vector<float> kNtirMean = {
    0.30f,  // road
    0.05f,  // sky
    0.45f,  // tree
    0.60f,  // pole
    0.85f,  // pedestrian
    0.72f,  // car
    0.55f,  // traffic sign
};

// DC colors (r, g, b) per category.
const float kDcColor[cat::Count][3] = {
    {0.35f, 0.35f, 0.38f},  // road: gray
    {0.55f, 0.70f, 0.95f},  // sky: blue
    {0.15f, 0.55f, 0.20f},  // tree: green
    {0.45f, 0.42f, 0.40f},  // pole
    {0.80f, 0.45f, 0.35f},  // pedestrian
    {0.75f, 0.10f, 0.10f},  // car: red
    {0.95f, 0.85f, 0.20f},  // traffic sign: yellow
};

struct Ellipse {
    int cx, cy, rx, ry;
};

void fill_ellipse(LabelMask& gt, const Ellipse& e, int32_t cls) {
    for (int y = std::max(0, e.cy - e.ry); y <= std::min(gt.height - 1, e.cy + e.ry); ++y)
        for (int x = std::max(0, e.cx - e.rx); x <= std::min(gt.width - 1, e.cx + e.rx); ++x) {
            double u = static_cast<double>(x - e.cx) / e.rx;
            double v = static_cast<double>(y - e.cy) / e.ry;
            if (u * u + v * v <= 1.0) gt.at(y, x) = cls;
        }
}

void fill_rect(LabelMask& gt, int x0, int y0, int w, int h, int32_t cls) {
    for (int y = std::max(0, y0); y < std::min(gt.height, y0 + h); ++y)
        for (int x = std::max(0, x0); x < std::min(gt.width, x0 + w); ++x)
            gt.at(y, x) = cls;
}

}  // namespace

const std::vector<float>& ntir_class_means() { return kNtirMean; }

Scene generate_scene(const SceneSpec& spec) {
    spec.validate();
    std::mt19937 rng(static_cast<uint32_t>(spec.seed ^ (spec.seed >> 32)));
    const int w = spec.width, h = spec.height;

    LabelMask gt(h, w, cat::Road);
    std::uniform_int_distribution<int> horizon_d(h * 3 / 10, h / 2);
    int horizon = horizon_d(rng);
    for (int y = 0; y < horizon; ++y)
        for (int x = 0; x < w; ++x) gt.at(y, x) = cat::Sky;

    auto irange = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng);
    };

    for (int i = 0; i < spec.n_trees; ++i) {
        Ellipse e{irange(0, w - 1), irange(horizon / 2, horizon),
                  irange(w / 12, w / 7), irange(h / 12, h / 7)};
        fill_ellipse(gt, e, cat::Tree);
    }
    for (int i = 0; i < spec.n_poles; ++i) {
        int px = irange(0, w - 2);
        int ph = irange(h / 4, h / 2);
        fill_rect(gt, px, horizon - ph / 2, std::max(1, w / 40), ph, cat::Pole);
    }
    for (int i = 0; i < spec.n_signs; ++i) {
        int s = std::max(2, w / 20);
        fill_rect(gt, irange(0, w - s - 1), irange(horizon / 2, horizon), s, s,
                  cat::TrafficSign);
    }
    for (int i = 0; i < spec.n_cars; ++i) {
        int cw = std::max(4, w / 7), ch = std::max(3, h / 10);
        fill_rect(gt, irange(0, w - cw - 1), irange(horizon, h - ch - 1), cw, ch,
                  cat::Car);
    }
    for (int i = 0; i < spec.n_pedestrians; ++i) {
        int pw = std::max(2, w / 20), ph = std::max(4, h / 8);
        fill_rect(gt, irange(0, w - pw - 1), irange(horizon - ph / 2, h - ph - 1), pw,
                  ph, cat::Pedestrian);
    }

    std::normal_distribution<float> noise(0.f, 1.f);
    GrayMap ntir(h, w);
    Tensor dc(3, h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int32_t c = gt.at(y, x);
            float mean = kNtirMean[c];
            float v = mean;
            if (spec.noise_sigma > 0.f) v += spec.noise_sigma * noise(rng);
            // Keep every class inside a +-0.1 band around its mean so
            // min(pedestrian) > mean(road) is guaranteed.
            v = std::clamp(v, mean - 0.1f, mean + 0.1f);
            ntir.at(y, x) = std::clamp(v, 0.f, 1.f);
            for (int ch = 0; ch < 3; ++ch) {
                float col = kDcColor[c][ch];
                if (spec.noise_sigma > 0.f) col += spec.noise_sigma * noise(rng);
                dc.at(ch, y, x) = std::clamp(col, 0.f, 1.f);
            }
        }
    return Scene{std::move(ntir), std::move(dc), std::move(gt)};
}

LabelMask corrupt_labels(const LabelMask& gt,
                         const std::vector<std::pair<int32_t, int32_t>>& swap_pairs,
                         double rate, uint64_t seed) {
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("corrupt_labels: rate outside [0,1]");
    std::mt19937 rng(static_cast<uint32_t>(seed ^ (seed >> 32)));

    // Class membership is frozen before any flip so chained pairs
    // (a->b, b->c) never cascade.
    LabelMask out = gt;
    for (const auto& [from, to] : swap_pairs) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < gt.size(); ++i)
            if (gt.data[i] == from) idx.push_back(i);
        size_t n_flip = static_cast<size_t>(std::lround(rate * static_cast<double>(idx.size())));
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t i = 0; i < n_flip; ++i) out.data[idx[i]] = to;
    }
    return out;
}

ProbTensor mask_to_probs(const LabelMask& mask, int n_classes, float confidence) {
    if (confidence <= 0.f || confidence >= 1.f)
        throw std::invalid_argument("mask_to_probs: confidence outside (0,1)");
    ProbTensor p(n_classes, mask.height, mask.width);
    float rest = (1.f - confidence) / static_cast<float>(n_classes - 1);
    float uniform = 1.f / static_cast<float>(n_classes);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            int32_t c = mask.at(y, x);
            for (int k = 0; k < n_classes; ++k) {
                if (c == UNLABELED)
                    p.at(k, y, x) = uniform;
                else
                    p.at(k, y, x) = (k == c) ? confidence : rest;
            }
        }
    return p;
}

}  // namespace tirc
