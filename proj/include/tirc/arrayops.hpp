#ifndef TIRC_ARRAYOPS_HPP
#define TIRC_ARRAYOPS_HPP

#include "tirc/tensor.hpp"

namespace tirc {

enum class ExtremeMode { Max, Min };

// Per-pixel channel max or min (cmax / cmin).
GrayMap channel_extreme(const Tensor& t, ExtremeMode mode);

// |img - 3x3 average pool of img| with replicate padding. The single
// gradient operator used everywhere in this library.
GrayMap spatial_gradient(const GrayMap& img);

// Mean SSIM over 11x11 Gaussian windows (sigma 1.5, K1=0.01, K2=0.03,
// dynamic range 1). Windows are centered at every pixel with replicate
// padding; multi-channel inputs average the per-channel scores.
double ssim(const Tensor& a, const Tensor& b);

// Mean elementwise Huber: 0.5*d^2 if |d|<1 else |d|-0.5.
double smooth_l1(const Tensor& a, const Tensor& b);

// Mean absolute elementwise difference.
double mean_l1(const Tensor& a, const Tensor& b);

// Bilinear resize with half-pixel-center alignment; output dims are
// round(dim*factor). Factor 1 is the bit-exact identity.
Tensor resize_bilinear(const Tensor& t, double factor);

// Anisotropic total variation: mean |horizontal diffs| + mean |vertical
// diffs| over all channels; a direction with no diffs contributes 0.
double total_variation(const Tensor& t);

// Channel mean, used to reduce RGB outputs to a single intensity map.
GrayMap channel_mean(const Tensor& t);

// 1-channel view of a gray map (shares no storage; copies).
Tensor to_tensor(const GrayMap& g);

// Replicate a gray map across n channels.
Tensor replicate(const GrayMap& g, int n);

}  // namespace tirc

#endif
