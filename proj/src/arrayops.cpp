#include "tirc/arrayops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tirc {

bool ProbTensor::is_valid_simplex(float tol) const {
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double s = 0.0;
            for (int c = 0; c < n_classes; ++c) {
                float v = at(c, y, x);
                if (!(v >= 0.f && v <= 1.f + tol)) return false;
                s += v;
            }
            if (std::abs(s - 1.0) > tol) return false;
        }
    }
    return true;
}

void require_simplex(const ProbTensor& p, float tol) {
    if (!p.is_valid_simplex(tol))
        throw std::invalid_argument("ProbTensor: pixel columns are not a probability simplex");
}

GrayMap channel_extreme(const Tensor& t, ExtremeMode mode) {
    if (t.channels < 1 || t.data.empty())
        throw std::invalid_argument("channel_extreme: empty tensor");
    GrayMap out(t.height, t.width);
    for (int y = 0; y < t.height; ++y) {
        for (int x = 0; x < t.width; ++x) {
            float v = t.at(0, y, x);
            for (int c = 1; c < t.channels; ++c) {
                float u = t.at(c, y, x);
                v = (mode == ExtremeMode::Max) ? std::max(v, u) : std::min(v, u);
            }
            out.at(y, x) = v;
        }
    }
    return out;
}

GrayMap spatial_gradient(const GrayMap& img) {
    GrayMap out(img.height, img.width);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double s = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                int yy = std::clamp(y + dy, 0, img.height - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    int xx = std::clamp(x + dx, 0, img.width - 1);
                    s += img.at(yy, xx);
                }
            }
            out.at(y, x) = static_cast<float>(std::abs(img.at(y, x) - s / 9.0));
        }
    }
    return out;
}

namespace {

std::vector<double> gaussian_kernel_1d(int radius, double sigma) {
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

}  // namespace

double ssim(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("ssim: shape mismatch");
    constexpr double c1 = 0.01 * 0.01;  // (K1*L)^2, L=1
    constexpr double c2 = 0.03 * 0.03;
    constexpr int radius = 5;  // 11x11 window
    static const std::vector<double> k = gaussian_kernel_1d(radius, 1.5);

    const int h = a.height, w = a.width;
    double total = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
                for (int dy = -radius; dy <= radius; ++dy) {
                    int yy = std::clamp(y + dy, 0, h - 1);
                    for (int dx = -radius; dx <= radius; ++dx) {
                        int xx = std::clamp(x + dx, 0, w - 1);
                        double wgt = k[dy + radius] * k[dx + radius];
                        double va = a.at(c, yy, xx);
                        double vb = b.at(c, yy, xx);
                        mx += wgt * va;
                        my += wgt * vb;
                        mxx += wgt * va * va;
                        myy += wgt * vb * vb;
                        mxy += wgt * va * vb;
                    }
                }
                double vx = mxx - mx * mx;
                double vy = myy - my * my;
                double cov = mxy - mx * my;
                double num = (2 * mx * my + c1) * (2 * cov + c2);
                double den = (mx * mx + my * my + c1) * (vx + vy + c2);
                total += num / den;
            }
        }
    }
    return total / (static_cast<double>(a.channels) * h * w);
}

double smooth_l1(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("smooth_l1: shape mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double d = std::abs(static_cast<double>(a.data[i]) - b.data[i]);
        s += (d < 1.0) ? 0.5 * d * d : d - 0.5;
    }
    return s / static_cast<double>(a.data.size());
}

double mean_l1(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("mean_l1: shape mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i)
        s += std::abs(static_cast<double>(a.data[i]) - b.data[i]);
    return s / static_cast<double>(a.data.size());
}

Tensor resize_bilinear(const Tensor& t, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("resize_bilinear: factor must be > 0");
    int oh = static_cast<int>(std::lround(t.height * factor));
    int ow = static_cast<int>(std::lround(t.width * factor));
    if (oh < 1 || ow < 1)
        throw std::invalid_argument("resize_bilinear: degenerate output size");
    if (oh == t.height && ow == t.width) return t;

    Tensor out(t.channels, oh, ow);
    double sy = static_cast<double>(t.height) / oh;
    double sx = static_cast<double>(t.width) / ow;
    for (int y = 0; y < oh; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double wy = fy - y0;
        int ya = std::clamp(y0, 0, t.height - 1);
        int yb = std::clamp(y0 + 1, 0, t.height - 1);
        for (int x = 0; x < ow; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double wx = fx - x0;
            int xa = std::clamp(x0, 0, t.width - 1);
            int xb = std::clamp(x0 + 1, 0, t.width - 1);
            for (int c = 0; c < t.channels; ++c) {
                double top = (1 - wx) * t.at(c, ya, xa) + wx * t.at(c, ya, xb);
                double bot = (1 - wx) * t.at(c, yb, xa) + wx * t.at(c, yb, xb);
                out.at(c, y, x) = static_cast<float>((1 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

double total_variation(const Tensor& t) {
    double hs = 0.0, vs = 0.0;
    size_t hn = 0, vn = 0;
    for (int c = 0; c < t.channels; ++c) {
        for (int y = 0; y < t.height; ++y)
            for (int x = 0; x + 1 < t.width; ++x) {
                hs += std::abs(t.at(c, y, x + 1) - t.at(c, y, x));
                ++hn;
            }
        for (int y = 0; y + 1 < t.height; ++y)
            for (int x = 0; x < t.width; ++x) {
                vs += std::abs(t.at(c, y + 1, x) - t.at(c, y, x));
                ++vn;
            }
    }
    double h = hn ? hs / hn : 0.0;
    double v = vn ? vs / vn : 0.0;
    return h + v;
}

GrayMap channel_mean(const Tensor& t) {
    GrayMap out(t.height, t.width);
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            double s = 0.0;
            for (int c = 0; c < t.channels; ++c) s += t.at(c, y, x);
            out.at(y, x) = static_cast<float>(s / t.channels);
        }
    return out;
}

Tensor to_tensor(const GrayMap& g) {
    Tensor t(1, g.height, g.width);
    std::copy(g.data.begin(), g.data.end(), t.data.begin());
    return t;
}

Tensor replicate(const GrayMap& g, int n) {
    Tensor t(n, g.height, g.width);
    for (int c = 0; c < n; ++c)
        std::copy(g.data.begin(), g.data.end(), t.data.begin() + c * g.size());
    return t;
}

}  // namespace tirc
