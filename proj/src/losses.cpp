#include "tirc/losses.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "tirc/arrayops.hpp"
#include "tirc/cluster.hpp"

namespace tirc {

std::map<std::string, double> LossReport::as_map() const {
    return {{"adv", adv}, {"cyc", cyc}, {"tv", tv},       {"sga", sga},
            {"seg_all", seg_all}, {"aca", aca}, {"cgr", cgr}, {"sr", sr},
            {"total", total}};
}

double monochrome_reg(const Tensor& fake_ntir) {
    GrayMap hi = channel_extreme(fake_ntir, ExtremeMode::Max);
    GrayMap lo = channel_extreme(fake_ntir, ExtremeMode::Min);
    double best = 0.0;
    for (size_t i = 0; i < hi.size(); ++i)
        best = std::max(best, static_cast<double>(hi.data[i]) - lo.data[i]);
    return best;
}

double temperature_reg(const GrayMap& fake_ntir, const LabelMask& road_mask,
                       const LabelMask& ped_mask, double eps) {
    if (!road_mask.same_shape(ped_mask) || road_mask.height != fake_ntir.height ||
        road_mask.width != fake_ntir.width)
        throw std::invalid_argument("temperature_reg: shape mismatch");

    double road_sum = 0.0;
    size_t road_n = 0;
    double ped_min = std::numeric_limits<double>::max();
    size_t ped_n = 0;
    for (size_t i = 0; i < fake_ntir.size(); ++i) {
        if (road_mask.data[i] == 1) {
            road_sum += fake_ntir.data[i];
            ++road_n;
        }
        if (ped_mask.data[i] == 1) {
            ped_min = std::min(ped_min, static_cast<double>(fake_ntir.data[i]));
            ++ped_n;
        }
    }
    if (road_n == 0 || ped_n == 0) return 0.0;
    double road_mean = road_sum / static_cast<double>(road_n);
    return std::max((road_mean - ped_min) / (road_mean + eps), 0.0);
}

double sga_loss(const GrayMap& input, const Tensor& translated,
                const LabelMask& road_mask, const LabelMask& ped_mask,
                double theta_sga, double eps) {
    GrayMap g_in = spatial_gradient(input);
    double mean_g = 0.0;
    for (float v : g_in.data) mean_g += v;
    mean_g /= static_cast<double>(g_in.size());

    GrayMap g_tr = spatial_gradient(channel_mean(translated));
    double max_g = 0.0;
    for (float v : g_tr.data) max_g = std::max(max_g, static_cast<double>(v));

    double edge = 0.0;
    size_t edge_n = 0;
    for (size_t i = 0; i < g_in.size(); ++i) {
        if (g_in.data[i] > mean_g) {
            double ratio = g_tr.data[i] / (max_g + eps);
            edge += std::max(theta_sga - ratio, 0.0);
            ++edge_n;
        }
    }
    if (edge_n) edge /= static_cast<double>(edge_n);

    GrayMap fake_gray = channel_mean(translated);
    return edge + monochrome_reg(translated) +
           temperature_reg(fake_gray, road_mask, ped_mask, eps);
}

double seg_loss(const ProbTensor& prob, const LabelMask& label,
                const std::vector<double>& class_weights, double boundary_weight) {
    if (prob.height != label.height || prob.width != label.width)
        throw std::invalid_argument("seg_loss: shape mismatch");
    if (class_weights.size() != static_cast<size_t>(prob.n_classes))
        throw std::invalid_argument("seg_loss: class_weights size mismatch");

    constexpr double p_floor = 1e-12;
    double ce_num = 0.0, ce_den = 0.0;
    size_t labeled = 0;
    for (int y = 0; y < label.height; ++y)
        for (int x = 0; x < label.width; ++x) {
            int32_t c = label.at(y, x);
            if (c == UNLABELED) continue;
            if (c < 0 || c >= prob.n_classes)
                throw std::invalid_argument("seg_loss: label id out of range");
            double w = class_weights[c];
            ce_num += w * -std::log(std::max<double>(prob.at(c, y, x), p_floor));
            ce_den += w;
            ++labeled;
        }
    if (labeled == 0) {
        std::cerr << "warning: seg_loss on fully UNLABELED mask, returning 0\n";
        return 0.0;
    }
    double loss = ce_num / ce_den;

    if (boundary_weight > 0.0) {
        double bsum = 0.0;
        for (int c = 0; c < prob.n_classes; ++c) {
            GrayMap pc(prob.height, prob.width);
            GrayMap lc(prob.height, prob.width);
            for (int y = 0; y < prob.height; ++y)
                for (int x = 0; x < prob.width; ++x) {
                    pc.at(y, x) = prob.at(c, y, x);
                    lc.at(y, x) = (label.at(y, x) == c) ? 1.f : 0.f;
                }
            GrayMap gp = spatial_gradient(pc);
            GrayMap gl = spatial_gradient(lc);
            for (size_t i = 0; i < gp.size(); ++i)
                bsum += std::abs(static_cast<double>(gp.data[i]) - gl.data[i]);
        }
        loss += boundary_weight * bsum /
                (static_cast<double>(prob.n_classes) * prob.height * prob.width);
    }
    return loss;
}

std::vector<double> inverse_log_freq_weights(const std::vector<double>& freqs) {
    std::vector<double> w(freqs.size());
    for (size_t i = 0; i < freqs.size(); ++i) w[i] = 1.0 / std::log(1.02 + freqs[i]);
    return w;
}

double seg_loss_total(double l_ra, double l_fb, double l_rb, double l_fa,
                      const PhaseSchedule& sched) {
    return sched.w_ra() * l_ra + sched.w_fb() * l_fb + sched.w_rb() * l_rb +
           sched.w_fa() * l_fa;
}

namespace {

// Columns of the C x (h*w) feature matrix where the mask hits category c.
std::vector<std::vector<double>> masked_columns(const Tensor& f, const LabelMask& m,
                                                int32_t cat) {
    std::vector<std::vector<double>> cols;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            if (m.at(y, x) == cat) {
                std::vector<double> col(f.channels);
                for (int c = 0; c < f.channels; ++c) col[c] = f.at(c, y, x);
                cols.push_back(std::move(col));
            }
    return cols;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// mu: mean over columns of the per-column max response;
// tau: mean over centroids of the per-centroid max response.
void response_stats(const std::vector<std::vector<double>>& centroids,
                    const std::vector<std::vector<double>>& cols, double& mu,
                    double& tau) {
    const size_t nu = centroids.size(), nc = cols.size();
    std::vector<double> col_max(nc, -std::numeric_limits<double>::max());
    std::vector<double> ctr_max(nu, -std::numeric_limits<double>::max());
    for (size_t i = 0; i < nu; ++i)
        for (size_t j = 0; j < nc; ++j) {
            double r = cosine(centroids[i], cols[j]);
            col_max[j] = std::max(col_max[j], r);
            ctr_max[i] = std::max(ctr_max[i], r);
        }
    mu = 0.0;
    for (double v : col_max) mu += v;
    mu /= static_cast<double>(nc);
    tau = 0.0;
    for (double v : ctr_max) tau += v;
    tau /= static_cast<double>(nu);
}

}  // namespace

double aca_loss(const Tensor& f_ra, const Tensor& f_fa, const LabelMask& m_a,
                const LabelMask& m_b, const std::vector<int32_t>& c_ss,
                const LossWeights& w, uint64_t seed) {
    if (f_ra.channels != f_fa.channels)
        throw std::invalid_argument("aca_loss: feature channel mismatch");

    double sum = 0.0;
    size_t participating = 0;
    for (size_t k = 0; k < c_ss.size(); ++k) {
        int32_t cat = c_ss[k];
        auto real_cols = masked_columns(f_ra, m_a, cat);
        auto fake_cols = masked_columns(f_fa, m_b, cat);
        if (fake_cols.empty() || real_cols.size() < static_cast<size_t>(w.n_clusters))
            continue;

        auto clusters = kmeans(real_cols, w.n_clusters, seed + k);
        double mu_ra, tau_ra, mu_fa, tau_fa;
        response_stats(clusters.centroids, real_cols, mu_ra, tau_ra);
        response_stats(clusters.centroids, fake_cols, mu_fa, tau_fa);

        sum += std::max(w.phi_local * mu_ra - mu_fa, 0.0) +
               std::max(w.phi_global * tau_ra - tau_fa, 0.0);
        ++participating;
    }
    return participating ? sum / static_cast<double>(participating) : 0.0;
}

double cgr_loss_from_gradients(const GrayMap& gm_rb, const GrayMap& gm_fa,
                               const LabelMask& bg_mask) {
    if (!gm_rb.same_shape(gm_fa) || gm_rb.height != bg_mask.height ||
        gm_rb.width != bg_mask.width)
        throw std::invalid_argument("cgr_loss: shape mismatch");

    double rho = 0.0;
    size_t bg_n = 0;
    for (size_t i = 0; i < gm_rb.size(); ++i)
        if (bg_mask.data[i] == 1) {
            rho += gm_rb.data[i];
            ++bg_n;
        }
    if (bg_n == 0) return 0.0;
    rho /= static_cast<double>(bg_n);

    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < gm_rb.size(); ++i) {
        if (bg_mask.data[i] != 1 || !(gm_rb.data[i] > rho)) continue;
        num += std::max(static_cast<double>(gm_rb.data[i]) - gm_fa.data[i], 0.0);
        den += gm_rb.data[i];
    }
    if (den == 0.0) return 0.0;
    return num / den;
}

double cgr_loss(const GrayMap& ntir, const Tensor& fake_dc, const LabelMask& bg_mask) {
    return cgr_loss_from_gradients(spatial_gradient(ntir),
                                   spatial_gradient(channel_mean(fake_dc)), bg_mask);
}

double sr_loss(const Tensor& o, const Tensor& o_small, const Tensor& o_large,
               const LossWeights& w, double psi) {
    if (psi < 0.0 || psi > 1.0) throw std::invalid_argument("sr_loss: psi outside [0,1]");
    if (psi < 0.5) {
        Tensor o_down = resize_bilinear(o, w.alpha);
        if (!o_down.same_shape(o_small))
            throw std::invalid_argument("sr_loss: o_small shape incompatible with o scaled by alpha");
        return w.lambda_sl1 * smooth_l1(o_small, o_down) + (1.0 - ssim(o_small, o_down));
    }
    Tensor large_down = resize_bilinear(o_large, 1.0 / w.beta);
    if (!large_down.same_shape(o))
        throw std::invalid_argument("sr_loss: o_large scaled by 1/beta incompatible with o");
    return w.lambda_sl1 * smooth_l1(large_down, o) + (1.0 - ssim(large_down, o));
}

double cycle_loss(const Tensor& x, const Tensor& x_rec) {
    return 10.0 * mean_l1(x, x_rec) + (1.0 - ssim(x, x_rec));
}

double rls_adversarial(const GrayMap& d_real, const GrayMap& d_fake, GanSide side) {
    auto mean_of = [](const GrayMap& g) {
        double s = 0.0;
        for (float v : g.data) s += v;
        return s / static_cast<double>(g.size());
    };
    double mr = mean_of(d_real);
    double mf = mean_of(d_fake);

    auto msq = [](const GrayMap& g, double offset) {
        double s = 0.0;
        for (float v : g.data) {
            double d = v - offset;
            s += d * d;
        }
        return s / static_cast<double>(g.size());
    };

    if (side == GanSide::Discriminator)
        return 0.5 * (msq(d_real, mf + 1.0) + msq(d_fake, mr - 1.0));
    return 0.5 * (msq(d_fake, mr + 1.0) + msq(d_real, mf - 1.0));
}

LossReport total_loss(double adv, double cyc, double tv, double sga, double seg_all,
                      double aca, double cgr, double sr, const LossWeights& w) {
    LossReport r;
    r.adv = adv;
    r.cyc = cyc;
    r.tv = tv;
    r.sga = sga;
    r.seg_all = seg_all;
    r.aca = aca;
    r.cgr = cgr;
    r.sr = sr;
    r.total = adv + cyc + w.lambda_tv * tv + w.lambda_sga * sga + seg_all + aca +
              cgr + sr;
    return r;
}

}  // namespace tirc
