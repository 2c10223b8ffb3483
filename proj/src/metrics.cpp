#include "tirc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tirc/arrayops.hpp"

namespace tirc {

void ConfusionMatrix::accumulate(const LabelMask& gt, const LabelMask& pred) {
    if (!gt.same_shape(pred))
        throw std::invalid_argument("ConfusionMatrix: shape mismatch");
    for (size_t i = 0; i < gt.size(); ++i) {
        int32_t g = gt.data[i];
        if (g == UNLABELED) continue;
        int32_t p = pred.data[i];
        if (p == UNLABELED) continue;  // abstentions are not scorable in an n x n matrix
        if (g < 0 || g >= n_ || p < 0 || p >= n_)
            throw std::invalid_argument("ConfusionMatrix: id out of range");
        ++counts_[static_cast<size_t>(g) * n_ + p];
    }
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
    if (other.n_ != n_) throw std::invalid_argument("ConfusionMatrix: size mismatch");
    for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

uint64_t ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), uint64_t{0});
}

IouResult iou(const ConfusionMatrix& cm) {
    const int n = cm.n_classes();
    IouResult r;
    r.per_class.assign(n, std::numeric_limits<double>::quiet_NaN());
    r.valid.assign(n, false);
    double sum = 0.0;
    int valid_n = 0;
    for (int c = 0; c < n; ++c) {
        uint64_t tp = cm.at(c, c);
        uint64_t row = 0, col = 0;
        for (int j = 0; j < n; ++j) {
            row += cm.at(c, j);
            col += cm.at(j, c);
        }
        uint64_t uni = row + col - tp;
        if (uni == 0) continue;  // absent in both, excluded from the mean
        r.per_class[c] = static_cast<double>(tp) / static_cast<double>(uni);
        r.valid[c] = true;
        sum += r.per_class[c];
        ++valid_n;
    }
    r.miou = valid_n ? sum / valid_n : 0.0;
    return r;
}

size_t EdgeMask::count() const {
    return static_cast<size_t>(std::count(data.begin(), data.end(), uint8_t{1}));
}

namespace {

GrayMap gaussian5x5(const GrayMap& img) {
    // 5x5 kernel, sigma 1.4, separable, replicate padding.
    GrayMap out(img.height, img.width);
    double k[5];
    double s = 0;
    for (int i = -2; i <= 2; ++i) {
        k[i + 2] = std::exp(-(i * i) / (2.0 * 1.4 * 1.4));
        s += k[i + 2];
    }
    for (double& v : k) v /= s;

    GrayMap tmp(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0;
            for (int d = -2; d <= 2; ++d)
                acc += k[d + 2] * img.at(y, std::clamp(x + d, 0, img.width - 1));
            tmp.at(y, x) = static_cast<float>(acc);
        }
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0;
            for (int d = -2; d <= 2; ++d)
                acc += k[d + 2] * tmp.at(std::clamp(y + d, 0, img.height - 1), x);
            out.at(y, x) = static_cast<float>(acc);
        }
    return out;
}

}  // namespace

EdgeMask canny(const GrayMap& img, double low, double high) {
    if (!(0.0 <= low && low <= high))
        throw std::invalid_argument("canny: require 0 <= low <= high");
    const int h = img.height, w = img.width;
    GrayMap sm = gaussian5x5(img);

    // Sobel gradients.
    std::vector<double> mag(static_cast<size_t>(h) * w, 0.0);
    std::vector<double> gx_v(mag.size()), gy_v(mag.size());
    double max_mag = 0.0;
    auto at = [&](const GrayMap& g, int y, int x) {
        return static_cast<double>(g.at(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)));
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double gx = -at(sm, y - 1, x - 1) - 2 * at(sm, y, x - 1) - at(sm, y + 1, x - 1) +
                        at(sm, y - 1, x + 1) + 2 * at(sm, y, x + 1) + at(sm, y + 1, x + 1);
            double gy = -at(sm, y - 1, x - 1) - 2 * at(sm, y - 1, x) - at(sm, y - 1, x + 1) +
                        at(sm, y + 1, x - 1) + 2 * at(sm, y + 1, x) + at(sm, y + 1, x + 1);
            size_t i = static_cast<size_t>(y) * w + x;
            gx_v[i] = gx;
            gy_v[i] = gy;
            mag[i] = std::hypot(gx, gy);
            max_mag = std::max(max_mag, mag[i]);
        }
    EdgeMask out(h, w);
    if (max_mag == 0.0) return out;

    // Non-maximum suppression along the quantized gradient direction.
    std::vector<uint8_t> state(mag.size(), 0);  // 0 none, 1 weak, 2 strong
    const double lo = low * max_mag, hi = high * max_mag;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            size_t i = static_cast<size_t>(y) * w + x;
            if (mag[i] < lo || mag[i] == 0.0) continue;
            double angle = std::atan2(gy_v[i], gx_v[i]);
            double deg = angle * 180.0 / M_PI;
            if (deg < 0) deg += 180.0;
            int dx = 1, dy = 0;
            if (deg >= 22.5 && deg < 67.5) {
                dx = 1;
                dy = 1;
            } else if (deg >= 67.5 && deg < 112.5) {
                dx = 0;
                dy = 1;
            } else if (deg >= 112.5 && deg < 157.5) {
                dx = -1;
                dy = 1;
            }
            auto m_at = [&](int yy, int xx) {
                if (yy < 0 || yy >= h || xx < 0 || xx >= w) return 0.0;
                return mag[static_cast<size_t>(yy) * w + xx];
            };
            // strict on the forward neighbor so plateau ties keep one pixel
            if (mag[i] > m_at(y + dy, x + dx) && mag[i] >= m_at(y - dy, x - dx))
                state[i] = (mag[i] >= hi) ? 2 : 1;
        }

    // Hysteresis: weak pixels survive only when 8-connected to a strong one.
    std::deque<std::pair<int, int>> q;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (state[static_cast<size_t>(y) * w + x] == 2) {
                out.at(y, x) = 1;
                q.emplace_back(y, x);
            }
    while (!q.empty()) {
        auto [y, x] = q.front();
        q.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int yy = y + dy, xx = x + dx;
                if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
                size_t j = static_cast<size_t>(yy) * w + xx;
                if (state[j] == 1 && !out.at(yy, xx)) {
                    out.at(yy, xx) = 1;
                    q.emplace_back(yy, xx);
                }
            }
    }
    return out;
}

namespace {

EdgeMask dilate(const EdgeMask& m, int radius) {
    if (radius <= 0) return m;
    EdgeMask out(m.height, m.width);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            uint8_t v = 0;
            for (int dy = -radius; dy <= radius && !v; ++dy)
                for (int dx = -radius; dx <= radius && !v; ++dx) {
                    int yy = y + dy, xx = x + dx;
                    if (yy >= 0 && yy < m.height && xx >= 0 && xx < m.width &&
                        m.at(yy, xx))
                        v = 1;
                }
            out.at(y, x) = v;
        }
    return out;
}

}  // namespace

std::vector<double> default_apce_thresholds() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

ApceResult apce(const GrayMap& input_ntir, const Tensor& translated,
                const std::vector<double>& thresholds, int match_tol) {
    if (thresholds.empty()) throw std::invalid_argument("apce: empty threshold list");
    GrayMap tr_gray = channel_mean(translated);

    ApceResult r;
    for (double high : thresholds) {
        double low = 0.4 * high;
        EdgeMask ref = dilate(canny(input_ntir, low, high), match_tol);
        EdgeMask tr = canny(tr_gray, low, high);
        size_t tr_n = tr.count();
        double precision;
        if (tr_n == 0) {
            precision = 1.0;  // no edges to score; reported as degenerate
            r.degenerate = true;
        } else {
            size_t matched = 0;
            for (size_t i = 0; i < tr.data.size(); ++i)
                if (tr.data[i] && ref.data[i]) ++matched;
            precision = static_cast<double>(matched) / static_cast<double>(tr_n);
        }
        r.per_threshold.push_back(precision);
    }
    double s = 0.0;
    for (double v : r.per_threshold) s += v;
    r.apce = s / static_cast<double>(r.per_threshold.size());
    return r;
}

}  // namespace tirc
