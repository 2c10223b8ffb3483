#ifndef TIRC_LOSSES_HPP
#define TIRC_LOSSES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tirc/tensor.hpp"

namespace tirc {

struct LossWeights {
    double lambda_tv = 5.0;
    double lambda_sga = 0.5;
    double lambda_sl1 = 10.0;
    double boundary_weight = 0.5;
    double phi_local = 0.9;
    double phi_global = 0.9;
    double alpha = 0.5;
    double beta = 1.5;
    int n_clusters = 4;
    double epsilon = 1e-6;
    double theta_sga = 0.5;
};

enum class Phase { LearnSA, LearnSB, Constrain };

// Binary weights (lambda_ra, lambda_fb, lambda_rb, lambda_fa) switching
// the segmentation-loss branches between training phases.
struct PhaseSchedule {
    Phase phase = Phase::LearnSA;

    double w_ra() const { return phase == Phase::LearnSA ? 1.0 : 0.0; }
    double w_fb() const { return phase == Phase::LearnSB ? 1.0 : 0.0; }
    double w_rb() const { return phase == Phase::Constrain ? 1.0 : 0.0; }
    double w_fa() const { return phase == Phase::Constrain ? 1.0 : 0.0; }
};

struct LossReport {
    double adv = 0, cyc = 0, tv = 0, sga = 0;
    double seg_all = 0, aca = 0, cgr = 0, sr = 0;
    double total = 0;

    std::map<std::string, double> as_map() const;
};

// Max over pixels of (channel max - channel min); 0 iff every pixel has
// identical channels.
double monochrome_reg(const Tensor& fake_ntir);

// max((mean_road - min_ped) / (mean_road + eps), 0); 0 if either region
// is empty. Masks are binary (1 = in region).
double temperature_reg(const GrayMap& fake_ntir, const LabelMask& road_mask,
                       const LabelMask& ped_mask, double eps);

// Edge term + monochrome + temperature regularizers. The edge term
// penalizes translated-image gradient ratios below theta_sga at the
// input's edge pixels (pixels whose gradient exceeds the mean gradient).
double sga_loss(const GrayMap& input, const Tensor& translated,
                const LabelMask& road_mask, const LabelMask& ped_mask,
                double theta_sga, double eps);

// Weight-normalized cross-entropy over labeled pixels, plus
// boundary_weight * mean |grad(prob) - grad(one-hot label)| when
// boundary_weight > 0. Returns 0 (with a warning) if every pixel is
// UNLABELED.
double seg_loss(const ProbTensor& prob, const LabelMask& label,
                const std::vector<double>& class_weights, double boundary_weight);

// Inverse-log-frequency class weights: w_c = 1 / ln(1.02 + freq_c).
std::vector<double> inverse_log_freq_weights(const std::vector<double>& freqs);

double seg_loss_total(double l_ra, double l_fb, double l_rb, double l_fa,
                      const PhaseSchedule& sched);

// Adaptive collaborative attention loss over small-sample categories
// shared by both masks (Kmeans centroids of real features, cosine
// response maps, double hinge per category, mean over categories).
double aca_loss(const Tensor& f_ra, const Tensor& f_fa, const LabelMask& m_a,
                const LabelMask& m_b, const std::vector<int32_t>& c_ss,
                const LossWeights& w, uint64_t seed);

// Conditional gradient repair on precomputed gradient maps.
double cgr_loss_from_gradients(const GrayMap& gm_rb, const GrayMap& gm_fa,
                               const LabelMask& bg_mask);

// CGR loss from images: gradients via spatial_gradient, the fake DC
// image reduced to gray by channel mean first.
double cgr_loss(const GrayMap& ntir, const Tensor& fake_dc, const LabelMask& bg_mask);

// Scale-robustness loss for one domain; psi selects the alpha branch
// (psi < 0.5) or the beta branch.
double sr_loss(const Tensor& o, const Tensor& o_small, const Tensor& o_large,
               const LossWeights& w, double psi);

// 10 * L1 + (1 - SSIM) cycle-consistency loss.
double cycle_loss(const Tensor& x, const Tensor& x_rec);

enum class GanSide { Discriminator, Generator };

// Relativistic least-squares adversarial loss on discriminator score maps.
double rls_adversarial(const GrayMap& d_real, const GrayMap& d_fake, GanSide side);

// total = adv + cyc + lambda_tv*tv + lambda_sga*sga + seg_all + aca + cgr + sr
LossReport total_loss(double adv, double cyc, double tv, double sga,
                      double seg_all, double aca, double cgr, double sr,
                      const LossWeights& w);

}  // namespace tirc

#endif
