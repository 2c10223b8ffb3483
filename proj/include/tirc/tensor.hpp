#ifndef TIRC_TENSOR_HPP
#define TIRC_TENSOR_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tirc {

// Reserved id for pixels without a category.
inline constexpr int32_t UNLABELED = 255;

// Dense C x H x W array, image data normalized to [0,1].
struct Tensor {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<float> data;  // channel-major: data[(c*H + y)*W + x]

    Tensor() = default;
    Tensor(int c, int h, int w, float fill = 0.f)
        : channels(c), height(h), width(w),
          data(static_cast<size_t>(c) * h * w, fill) {
        if (c < 1 || h < 1 || w < 1)
            throw std::invalid_argument("Tensor: dims must be >= 1");
    }

    size_t size() const { return data.size(); }
    size_t plane() const { return static_cast<size_t>(height) * width; }

    float& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }

    bool same_shape(const Tensor& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
};

// H x W non-negative response / intensity map.
struct GrayMap {
    int height = 0;
    int width = 0;
    std::vector<float> data;

    GrayMap() = default;
    GrayMap(int h, int w, float fill = 0.f)
        : height(h), width(w), data(static_cast<size_t>(h) * w, fill) {
        if (h < 1 || w < 1)
            throw std::invalid_argument("GrayMap: dims must be >= 1");
    }

    size_t size() const { return data.size(); }
    float& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
    float at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }

    bool same_shape(const GrayMap& o) const {
        return height == o.height && width == o.width;
    }
};

// H x W category-id map; id 255 is the UNLABELED sentinel.
struct LabelMask {
    int height = 0;
    int width = 0;
    std::vector<int32_t> data;

    LabelMask() = default;
    LabelMask(int h, int w, int32_t fill = UNLABELED)
        : height(h), width(w), data(static_cast<size_t>(h) * w, fill) {
        if (h < 1 || w < 1)
            throw std::invalid_argument("LabelMask: dims must be >= 1");
    }

    size_t size() const { return data.size(); }
    int32_t& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
    int32_t at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }

    bool same_shape(const LabelMask& o) const {
        return height == o.height && width == o.width;
    }
};

// N_c x H x W per-pixel probability simplex.
struct ProbTensor {
    int n_classes = 0;
    int height = 0;
    int width = 0;
    std::vector<float> data;  // data[(c*H + y)*W + x]

    ProbTensor() = default;
    ProbTensor(int nc, int h, int w, float fill = 0.f)
        : n_classes(nc), height(h), width(w),
          data(static_cast<size_t>(nc) * h * w, fill) {
        if (nc < 1 || h < 1 || w < 1)
            throw std::invalid_argument("ProbTensor: dims must be >= 1");
    }

    size_t size() const { return data.size(); }
    float& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }

    bool same_shape(const ProbTensor& o) const {
        return n_classes == o.n_classes && height == o.height && width == o.width;
    }

    // Checks each pixel column sums to 1 within tol.
    bool is_valid_simplex(float tol = 1e-5f) const;
};

// Throws std::invalid_argument unless p is a valid simplex.
void require_simplex(const ProbTensor& p, float tol = 1e-5f);

}  // namespace tirc

#endif
