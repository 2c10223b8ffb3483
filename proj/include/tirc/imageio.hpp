#ifndef TIRC_IMAGEIO_HPP
#define TIRC_IMAGEIO_HPP

#include <filesystem>
#include <string>

#include "tirc/tensor.hpp"

namespace tirc {

// 8-bit PNG, values scaled [0,1] <-> [0,255]. 1-channel tensors write
// grayscale, 3-channel write RGB.
void write_png(const std::filesystem::path& path, const Tensor& t);
void write_png(const std::filesystem::path& path, const GrayMap& g);
Tensor read_png(const std::filesystem::path& path);
GrayMap read_png_gray(const std::filesystem::path& path);

// Single-channel PNG mask, id 255 = UNLABELED.
void write_mask_png(const std::filesystem::path& path, const LabelMask& m);
LabelMask read_mask_png(const std::filesystem::path& path);

// Raw float32 file with a JSON sidecar header {"n_classes",h,w}. The
// header path is <path>.json.
void write_prob_raw(const std::filesystem::path& path, const ProbTensor& p);
ProbTensor read_prob_raw(const std::filesystem::path& path);

// Same raw layout for feature maps, header {"channels",h,w}.
void write_tensor_raw(const std::filesystem::path& path, const Tensor& t);
Tensor read_tensor_raw(const std::filesystem::path& path);

}  // namespace tirc

#endif
