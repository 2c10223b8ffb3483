// numpy-facing bindings for the core operations. Arrays are float32
// (C,H,W) for tensors, float32 (H,W) for gray maps, int32 (H,W) for
// label masks (255 = unlabeled).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tirc/arrayops.hpp"
#include "tirc/cluster.hpp"
#include "tirc/distill.hpp"
#include "tirc/losses.hpp"
#include "tirc/memory.hpp"
#include "tirc/metrics.hpp"
#include "tirc/synth.hpp"

namespace py = pybind11;
using namespace tirc;

namespace {

using ArrF = py::array_t<float, py::array::c_style | py::array::forcecast>;
using ArrI = py::array_t<int32_t, py::array::c_style | py::array::forcecast>;

Tensor to_tensor3(const ArrF& a) {
    if (a.ndim() != 3) throw std::invalid_argument("expected a (C,H,W) array");
    Tensor t(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)),
             static_cast<int>(a.shape(2)));
    std::copy(a.data(), a.data() + a.size(), t.data.begin());
    return t;
}

GrayMap to_gray(const ArrF& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected an (H,W) array");
    GrayMap g(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), g.data.begin());
    return g;
}

LabelMask to_mask(const ArrI& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected an (H,W) int array");
    LabelMask m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data.begin());
    return m;
}

ProbTensor to_probs(const ArrF& a) {
    if (a.ndim() != 3) throw std::invalid_argument("expected a (C,H,W) array");
    ProbTensor p(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)),
                 static_cast<int>(a.shape(2)));
    std::copy(a.data(), a.data() + a.size(), p.data.begin());
    require_simplex(p);
    return p;
}

py::array from_tensor(const Tensor& t) {
    py::array_t<float> a({t.channels, t.height, t.width});
    std::copy(t.data.begin(), t.data.end(), a.mutable_data());
    return a;
}

py::array from_gray(const GrayMap& g) {
    py::array_t<float> a({g.height, g.width});
    std::copy(g.data.begin(), g.data.end(), a.mutable_data());
    return a;
}

py::array from_mask(const LabelMask& m) {
    py::array_t<int32_t> a({m.height, m.width});
    std::copy(m.data.begin(), m.data.end(), a.mutable_data());
    return a;
}

MiningParams mining_params(double theta_fg, double theta_bg,
                           const std::vector<int32_t>& fg_set) {
    MiningParams p;
    p.theta_fg = static_cast<float>(theta_fg);
    p.theta_bg = static_cast<float>(theta_bg);
    p.fg_set = CategorySet(fg_set.begin(), fg_set.end());
    p.validate();
    return p;
}

ConfusionSchedule schedule_from_pairs(
    const std::vector<std::pair<int32_t, std::vector<int32_t>>>& steps) {
    ConfusionSchedule s;
    for (const auto& [target, conf] : steps)
        s.steps.emplace_back(target, CategorySet(conf.begin(), conf.end()));
    s.validate();
    return s;
}

}  // namespace

PYBIND11_MODULE(_tirc, m) {
    m.doc() = "Deterministic numerical core for thermal-to-color translation";
    m.attr("UNLABELED") = UNLABELED;

    // array primitives
    m.def("channel_max",
          [](const ArrF& t) { return from_gray(channel_extreme(to_tensor3(t), ExtremeMode::Max)); });
    m.def("channel_min",
          [](const ArrF& t) { return from_gray(channel_extreme(to_tensor3(t), ExtremeMode::Min)); });
    m.def("spatial_gradient",
          [](const ArrF& g) { return from_gray(spatial_gradient(to_gray(g))); });
    m.def("ssim", [](const ArrF& a, const ArrF& b) { return ssim(to_tensor3(a), to_tensor3(b)); });
    m.def("smooth_l1",
          [](const ArrF& a, const ArrF& b) { return smooth_l1(to_tensor3(a), to_tensor3(b)); });
    m.def("resize_bilinear", [](const ArrF& t, double factor) {
        return from_tensor(resize_bilinear(to_tensor3(t), factor));
    });
    m.def("total_variation", [](const ArrF& t) { return total_variation(to_tensor3(t)); });

    // distillation
    m.def(
        "mine_labels",
        [](const ArrF& v_rb, const ArrF& v_fa, double theta_fg, double theta_bg,
           const std::vector<int32_t>& fg_set) {
            return from_mask(mine_labels(to_probs(v_rb), to_probs(v_fa),
                                         mining_params(theta_fg, theta_bg, fg_set)));
        },
        py::arg("v_rb"), py::arg("v_fa"), py::arg("theta_fg") = 0.95,
        py::arg("theta_bg") = 0.99, py::arg("fg_set") = std::vector<int32_t>{});
    m.def("sdp", [](const ArrI& mask, const ArrF& image, int32_t target,
                    const std::vector<int32_t>& confusion) {
        return from_mask(sdp(to_mask(mask), to_tensor3(image), target,
                             CategorySet(confusion.begin(), confusion.end())));
    });
    m.def("run_schedule",
          [](const ArrI& mask, const ArrF& image,
             const std::vector<std::pair<int32_t, std::vector<int32_t>>>& steps) {
              return from_mask(
                  run_schedule(to_mask(mask), to_tensor3(image), schedule_from_pairs(steps)));
          });
    m.def(
        "distill",
        [](const ArrF& v_rb, const ArrF& v_fa, const ArrF& ntir, double theta_fg,
           double theta_bg, const std::vector<int32_t>& fg_set,
           const std::vector<std::pair<int32_t, std::vector<int32_t>>>& steps) {
            return from_mask(distill_ntir(to_probs(v_rb), to_probs(v_fa), to_tensor3(ntir),
                                          mining_params(theta_fg, theta_bg, fg_set),
                                          schedule_from_pairs(steps)));
        },
        py::arg("v_rb"), py::arg("v_fa"), py::arg("ntir"), py::arg("theta_fg") = 0.95,
        py::arg("theta_bg") = 0.99, py::arg("fg_set") = std::vector<int32_t>{},
        py::arg("schedule") = std::vector<std::pair<int32_t, std::vector<int32_t>>>{});

    // clustering & memory features
    m.def(
        "kmeans",
        [](const std::vector<std::vector<double>>& points, int k, uint64_t seed) {
            ClusterResult r = kmeans(points, k, seed);
            py::dict d;
            d["centroids"] = r.centroids;
            d["assignments"] = r.assignments;
            d["inertia"] = r.inertia;
            d["inertia_history"] = r.inertia_history;
            return d;
        },
        py::arg("points"), py::arg("k"), py::arg("seed") = 0);
    m.def("distribution_feature",
          [](const ArrI& mask, const std::vector<int32_t>& c_ss) {
              return distribution_feature(to_mask(mask), c_ss).values;
          });
    m.def("cosine_similarity", [](const std::vector<double>& a, const std::vector<double>& b) {
        return cosine_similarity(DistributionFeature{a}, DistributionFeature{b});
    });

    // losses
    m.def(
        "sga_loss",
        [](const ArrF& input, const ArrF& translated, const ArrI& road, const ArrI& ped,
           double theta, double eps) {
            return sga_loss(to_gray(input), to_tensor3(translated), to_mask(road),
                            to_mask(ped), theta, eps);
        },
        py::arg("input"), py::arg("translated"), py::arg("road_mask"),
        py::arg("ped_mask"), py::arg("theta") = 0.5, py::arg("eps") = 1e-6);
    m.def(
        "seg_loss",
        [](const ArrF& prob, const ArrI& label, const std::vector<double>& weights,
           double boundary_weight) {
            return seg_loss(to_probs(prob), to_mask(label), weights, boundary_weight);
        },
        py::arg("prob"), py::arg("label"), py::arg("class_weights"),
        py::arg("boundary_weight") = 0.0);
    m.def(
        "aca_loss",
        [](const ArrF& f_ra, const ArrF& f_fa, const ArrI& m_a, const ArrI& m_b,
           const std::vector<int32_t>& c_ss, int n_clusters, uint64_t seed) {
            LossWeights w;
            w.n_clusters = n_clusters;
            return aca_loss(to_tensor3(f_ra), to_tensor3(f_fa), to_mask(m_a), to_mask(m_b),
                            c_ss, w, seed);
        },
        py::arg("f_ra"), py::arg("f_fa"), py::arg("mask_a"), py::arg("mask_b"),
        py::arg("c_ss"), py::arg("n_clusters") = 4, py::arg("seed") = 0);
    m.def("cgr_loss", [](const ArrF& ntir, const ArrF& fake_dc, const ArrI& bg) {
        return cgr_loss(to_gray(ntir), to_tensor3(fake_dc), to_mask(bg));
    });
    m.def(
        "sr_loss",
        [](const ArrF& o, const ArrF& o_small, const ArrF& o_large, double psi) {
            LossWeights w;
            return sr_loss(to_tensor3(o), to_tensor3(o_small), to_tensor3(o_large), w, psi);
        },
        py::arg("o"), py::arg("o_small"), py::arg("o_large"), py::arg("psi"));
    m.def("cycle_loss",
          [](const ArrF& x, const ArrF& rec) { return cycle_loss(to_tensor3(x), to_tensor3(rec)); });
    m.def(
        "rls_adversarial",
        [](const ArrF& d_real, const ArrF& d_fake, const std::string& side) {
            GanSide s = side == "generator" ? GanSide::Generator : GanSide::Discriminator;
            return rls_adversarial(to_gray(d_real), to_gray(d_fake), s);
        },
        py::arg("d_real"), py::arg("d_fake"), py::arg("side") = "discriminator");
    m.def(
        "total_loss",
        [](double adv, double cyc, double tv, double sga, double seg_all, double aca,
           double cgr, double sr) {
            LossWeights w;
            return total_loss(adv, cyc, tv, sga, seg_all, aca, cgr, sr, w).as_map();
        },
        py::arg("adv") = 0.0, py::arg("cyc") = 0.0, py::arg("tv") = 0.0,
        py::arg("sga") = 0.0, py::arg("seg_all") = 0.0, py::arg("aca") = 0.0,
        py::arg("cgr") = 0.0, py::arg("sr") = 0.0);

    // metrics
    m.def(
        "iou",
        [](const ArrI& gt, const ArrI& pred, int n_classes) {
            ConfusionMatrix cm(n_classes);
            cm.accumulate(to_mask(gt), to_mask(pred));
            IouResult r = iou(cm);
            py::dict d;
            d["per_class"] = r.per_class;
            d["valid"] = r.valid;
            d["miou"] = r.miou;
            return d;
        },
        py::arg("gt"), py::arg("pred"), py::arg("n_classes"));
    m.def("canny", [](const ArrF& img, double low, double high) {
        EdgeMask e = canny(to_gray(img), low, high);
        py::array_t<uint8_t> a({e.height, e.width});
        std::copy(e.data.begin(), e.data.end(), a.mutable_data());
        return a;
    });
    m.def(
        "apce",
        [](const ArrF& input, const ArrF& translated, std::vector<double> thresholds,
           int match_tol) {
            if (thresholds.empty()) thresholds = default_apce_thresholds();
            ApceResult r = apce(to_gray(input), to_tensor3(translated), thresholds, match_tol);
            py::dict d;
            d["apce"] = r.apce;
            d["per_threshold"] = r.per_threshold;
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("input"), py::arg("translated"),
        py::arg("thresholds") = std::vector<double>{}, py::arg("match_tol") = 1);

    // synthetic scenes
    m.def(
        "generate_scene",
        [](int width, int height, uint64_t seed, double noise_sigma) {
            SceneSpec spec;
            spec.width = width;
            spec.height = height;
            spec.seed = seed;
            spec.noise_sigma = static_cast<float>(noise_sigma);
            Scene s = generate_scene(spec);
            py::dict d;
            d["ntir"] = from_gray(s.ntir);
            d["dc"] = from_tensor(s.dc);
            d["gt"] = from_mask(s.gt);
            return d;
        },
        py::arg("width") = 64, py::arg("height") = 64, py::arg("seed") = 0,
        py::arg("noise_sigma") = 0.0);
    m.def(
        "corrupt_labels",
        [](const ArrI& gt, const std::vector<std::pair<int32_t, int32_t>>& pairs,
           double rate, uint64_t seed) {
            return from_mask(corrupt_labels(to_mask(gt), pairs, rate, seed));
        },
        py::arg("gt"), py::arg("swap_pairs"), py::arg("rate"), py::arg("seed") = 0);
    m.def(
        "mask_to_probs",
        [](const ArrI& mask, int n_classes, double confidence) {
            ProbTensor p = mask_to_probs(to_mask(mask), n_classes,
                                         static_cast<float>(confidence));
            py::array_t<float> a({p.n_classes, p.height, p.width});
            std::copy(p.data.begin(), p.data.end(), a.mutable_data());
            return a;
        },
        py::arg("mask"), py::arg("n_classes"), py::arg("confidence") = 0.995);
}
