#ifndef TIRC_METRICS_HPP
#define TIRC_METRICS_HPP

#include <cstdint>
#include <vector>

#include "tirc/tensor.hpp"

namespace tirc {

// Rows = ground truth, columns = prediction. Pixels where either side
// is UNLABELED are skipped (abstentions have no column).
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int n_classes)
        : n_(n_classes), counts_(static_cast<size_t>(n_classes) * n_classes, 0) {}

    void accumulate(const LabelMask& gt, const LabelMask& pred);
    void merge(const ConfusionMatrix& other);

    int n_classes() const { return n_; }
    uint64_t at(int gt, int pred) const { return counts_[static_cast<size_t>(gt) * n_ + pred]; }
    uint64_t total() const;

private:
    int n_;
    std::vector<uint64_t> counts_;
};

struct IouResult {
    std::vector<double> per_class;   // NaN for classes with zero union
    std::vector<bool> valid;         // false = excluded from the mean
    double miou = 0.0;
};

IouResult iou(const ConfusionMatrix& cm);

struct EdgeMask {
    int height = 0;
    int width = 0;
    std::vector<uint8_t> data;  // 0 or 1

    EdgeMask() = default;
    EdgeMask(int h, int w) : height(h), width(w), data(static_cast<size_t>(h) * w, 0) {}
    uint8_t& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t count() const;
};

// Classical Canny: 5x5 Gaussian (sigma 1.4), Sobel magnitude/direction,
// non-maximum suppression, double-threshold hysteresis. Thresholds are
// relative to the maximum gradient magnitude of the image.
EdgeMask canny(const GrayMap& img, double low, double high);

struct ApceResult {
    std::vector<double> per_threshold;
    double apce = 0.0;
    bool degenerate = false;  // at least one threshold had no translated edges
};

// Average precision of Canny edges of the translation against the input,
// swept over high thresholds (low = 0.4 * high), matched within
// match_tol pixels via dilation. Empty translated edge sets score 1 and
// set the degenerate flag.
ApceResult apce(const GrayMap& input_ntir, const Tensor& translated,
                const std::vector<double>& thresholds, int match_tol);

// The default threshold sweep: 0.1 .. 0.9 step 0.1.
std::vector<double> default_apce_thresholds();

}  // namespace tirc

#endif
