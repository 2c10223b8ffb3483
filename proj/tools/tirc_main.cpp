// Command-line surface: synth | distill | select | losses | eval.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tirc/arrayops.hpp"
#include "tirc/config.hpp"
#include "tirc/distill.hpp"
#include "tirc/imageio.hpp"
#include "tirc/losses.hpp"
#include "tirc/memory.hpp"
#include "tirc/memory_io.hpp"
#include "tirc/metrics.hpp"
#include "tirc/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_json(const std::string& out, const json& j) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open output " + out);
        f << j.dump(2) << "\n";
    }
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& ext) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

int cmd_synth(const tirc::RunConfig& cfg, const std::string& out_dir, int count,
              uint64_t seed) {
    fs::create_directories(out_dir);
    json manifest = json::array();
    for (int i = 0; i < count; ++i) {
        tirc::SceneSpec spec = cfg.scene;
        spec.seed = seed + static_cast<uint64_t>(i);
        tirc::Scene scene = tirc::generate_scene(spec);
        char name[32];
        std::snprintf(name, sizeof(name), "scene_%04d", i);
        fs::path base = fs::path(out_dir) / name;
        tirc::write_png(base.string() + "_ntir.png", scene.ntir);
        tirc::write_png(base.string() + "_dc.png", scene.dc);
        tirc::write_mask_png(base.string() + "_gt.png", scene.gt);
        manifest.push_back({{"id", name},
                            {"seed", spec.seed},
                            {"ntir", std::string(name) + "_ntir.png"},
                            {"dc", std::string(name) + "_dc.png"},
                            {"gt", std::string(name) + "_gt.png"}});
    }
    write_json((fs::path(out_dir) / "manifest.json").string(), manifest);
    return 0;
}

int cmd_distill(const tirc::RunConfig& cfg, const std::string& probs_rb,
                const std::string& probs_fa, const std::string& images,
                const std::string& out_dir) {
    fs::create_directories(out_dir);
    json summary = json::object();
    json errors = json::array();
    for (const auto& rb_path : sorted_files(probs_rb, ".raw")) {
        std::string stem = rb_path.stem().string();
        try {
            fs::path fa_path = fs::path(probs_fa) / (stem + ".raw");
            fs::path img_path = fs::path(images) / (stem + ".png");
            if (!fs::exists(fa_path))
                throw std::runtime_error("missing pair " + fa_path.string());
            if (!fs::exists(img_path))
                throw std::runtime_error("missing image " + img_path.string());

            tirc::ProbTensor v_rb = tirc::read_prob_raw(rb_path);
            tirc::ProbTensor v_fa = tirc::read_prob_raw(fa_path);
            tirc::Tensor ntir = tirc::to_tensor(tirc::read_png_gray(img_path));

            tirc::LabelMask mask =
                tirc::distill_ntir(v_rb, v_fa, ntir, cfg.mining, cfg.schedule_b);
            tirc::write_mask_png(fs::path(out_dir) / (stem + ".png"), mask);

            size_t labeled = mask.size() -
                             std::count(mask.data.begin(), mask.data.end(), tirc::UNLABELED);
            summary[stem] = {{"labeled_fraction",
                              static_cast<double>(labeled) / static_cast<double>(mask.size())}};
        } catch (const std::exception& e) {
            std::cerr << "error: " << stem << ": " << e.what() << "\n";
            errors.push_back({{"id", stem}, {"error", e.what()}});
        }
    }
    json report = {{"images", summary}, {"errors", errors}};
    write_json((fs::path(out_dir) / "summary.json").string(), report);
    return errors.empty() ? 0 : 1;
}

int cmd_select(const tirc::RunConfig& cfg, const std::string& mask_path,
               const std::string& memory_dir, size_t k, uint64_t seed,
               const std::string& out) {
    tirc::MemoryUnit mem = tirc::load_memory(memory_dir);
    if (cfg.memory_min_fill > 0 && mem.count() >= cfg.memory_min_fill) {
        // --min-fill override: treat a partially filled memory as usable.
    } else if (!mem.ready()) {
        throw std::runtime_error("memory unit not ready (" + std::to_string(mem.count()) +
                                 "/" + std::to_string(mem.capacity_target()) + " entries)");
    }
    tirc::LabelMask mask = tirc::read_mask_png(mask_path);
    tirc::DistributionFeature fa =
        tirc::distribution_feature(mask, mem.small_sample_set());

    auto candidates = mem.topk(fa, k);
    std::string selected = candidates.size() == 1
                               ? candidates.front().id
                               : mem.recall_topk(fa, k, seed);
    json table = json::array();
    for (const auto& c : candidates)
        table.push_back({{"id", c.id}, {"similarity", c.similarity}});
    write_json(out, {{"selected", selected}, {"k", k}, {"candidates", table}});
    return 0;
}

struct LossArgs {
    std::string d_real, d_fake;
    std::string cycle_x, cycle_rec;
    std::string tv_image;
    std::string sga_input, sga_translated, sga_road, sga_ped;
    std::string seg_prob_ra, seg_label_ra, seg_prob_fb, seg_label_fb;
    std::string seg_prob_rb, seg_label_rb, seg_prob_fa, seg_label_fa;
    std::string phase = "learn_sa";
    std::string aca_real, aca_fake, aca_mask_a, aca_mask_b;
    std::string cgr_ntir, cgr_fake, cgr_bg;
    std::string sr_o, sr_small, sr_large;
    double psi = 0.0;
    std::string out;
};

// All-or-nothing option groups: a partially supplied group is an error
// naming the missing argument.
void require_group(std::initializer_list<std::pair<const char*, const std::string*>> opts) {
    bool any = false, all = true;
    for (const auto& [_, v] : opts) {
        any = any || !v->empty();
        all = all && !v->empty();
    }
    if (any && !all)
        for (const auto& [name, v] : opts)
            if (v->empty())
                throw CLI::ValidationError(std::string("missing required argument ") + name);
}

double seg_branch(const tirc::RunConfig& cfg, const std::string& prob_path,
                  const std::string& label_path, double boundary_weight) {
    tirc::ProbTensor prob = tirc::read_prob_raw(prob_path);
    tirc::LabelMask label = tirc::read_mask_png(label_path);
    // Class weights from the label's own frequencies.
    std::vector<double> freqs(prob.n_classes, 0.0);
    size_t labeled = 0;
    for (int32_t v : label.data)
        if (v != tirc::UNLABELED && v < prob.n_classes) {
            freqs[v] += 1.0;
            ++labeled;
        }
    if (labeled)
        for (double& f : freqs) f /= static_cast<double>(labeled);
    return tirc::seg_loss(prob, label, tirc::inverse_log_freq_weights(freqs),
                          boundary_weight);
}

int cmd_losses(const tirc::RunConfig& cfg, const LossArgs& a) {
    require_group({{"--d-fake", &a.d_fake}, {"--d-real", &a.d_real}});
    require_group({{"--cycle-rec", &a.cycle_rec}, {"--cycle-x", &a.cycle_x}});
    require_group({{"--sga-input", &a.sga_input},
                   {"--sga-translated", &a.sga_translated},
                   {"--sga-road-mask", &a.sga_road},
                   {"--sga-ped-mask", &a.sga_ped}});
    require_group({{"--aca-real-feat", &a.aca_real},
                   {"--aca-fake-feat", &a.aca_fake},
                   {"--aca-mask-a", &a.aca_mask_a},
                   {"--aca-mask-b", &a.aca_mask_b}});
    require_group({{"--cgr-ntir", &a.cgr_ntir},
                   {"--cgr-fake", &a.cgr_fake},
                   {"--cgr-bg-mask", &a.cgr_bg}});
    require_group({{"--sr-o", &a.sr_o},
                   {"--sr-small", &a.sr_small},
                   {"--sr-large", &a.sr_large}});
    for (const auto& [p, l] : {std::pair{&a.seg_prob_ra, &a.seg_label_ra},
                               {&a.seg_prob_fb, &a.seg_label_fb},
                               {&a.seg_prob_rb, &a.seg_label_rb},
                               {&a.seg_prob_fa, &a.seg_label_fa}})
        require_group({{"--seg-prob-*", p}, {"--seg-label-*", l}});

    const tirc::LossWeights& w = cfg.weights;
    double adv = 0, cyc = 0, tv = 0, sga = 0, seg_all = 0, aca = 0, cgr = 0, sr = 0;

    if (!a.d_real.empty())
        adv = tirc::rls_adversarial(tirc::read_png_gray(a.d_real),
                                    tirc::read_png_gray(a.d_fake),
                                    tirc::GanSide::Discriminator);
    if (!a.cycle_x.empty())
        cyc = tirc::cycle_loss(tirc::read_png(a.cycle_x), tirc::read_png(a.cycle_rec));
    if (!a.tv_image.empty()) tv = tirc::total_variation(tirc::read_png(a.tv_image));
    if (!a.sga_input.empty())
        sga = tirc::sga_loss(tirc::read_png_gray(a.sga_input),
                             tirc::read_png(a.sga_translated),
                             tirc::read_mask_png(a.sga_road),
                             tirc::read_mask_png(a.sga_ped), w.theta_sga, w.epsilon);

    tirc::PhaseSchedule sched;
    if (a.phase == "learn_sa") sched.phase = tirc::Phase::LearnSA;
    else if (a.phase == "learn_sb") sched.phase = tirc::Phase::LearnSB;
    else if (a.phase == "constrain") sched.phase = tirc::Phase::Constrain;
    else throw CLI::ValidationError("unknown phase " + a.phase);

    double l_ra = 0, l_fb = 0, l_rb = 0, l_fa = 0;
    if (!a.seg_prob_ra.empty())
        l_ra = seg_branch(cfg, a.seg_prob_ra, a.seg_label_ra, w.boundary_weight);
    if (!a.seg_prob_fb.empty()) l_fb = seg_branch(cfg, a.seg_prob_fb, a.seg_label_fb, 0.0);
    if (!a.seg_prob_rb.empty()) l_rb = seg_branch(cfg, a.seg_prob_rb, a.seg_label_rb, 0.0);
    if (!a.seg_prob_fa.empty()) l_fa = seg_branch(cfg, a.seg_prob_fa, a.seg_label_fa, 0.0);
    seg_all = tirc::seg_loss_total(l_ra, l_fb, l_rb, l_fa, sched);

    if (!a.aca_real.empty())
        aca = tirc::aca_loss(tirc::read_tensor_raw(a.aca_real),
                             tirc::read_tensor_raw(a.aca_fake),
                             tirc::read_mask_png(a.aca_mask_a),
                             tirc::read_mask_png(a.aca_mask_b), cfg.c_ss, w, cfg.seed);
    if (!a.cgr_ntir.empty())
        cgr = tirc::cgr_loss(tirc::read_png_gray(a.cgr_ntir), tirc::read_png(a.cgr_fake),
                             tirc::read_mask_png(a.cgr_bg));
    if (!a.sr_o.empty())
        sr = tirc::sr_loss(tirc::read_png(a.sr_o), tirc::read_png(a.sr_small),
                           tirc::read_png(a.sr_large), w, a.psi);

    tirc::LossReport report =
        tirc::total_loss(adv, cyc, tv, sga, seg_all, aca, cgr, sr, w);
    write_json(a.out, json(report.as_map()));
    return 0;
}

int cmd_eval(const tirc::RunConfig& cfg, const std::string& pred_dir,
             const std::string& gt_dir, const std::string& input_dir,
             const std::string& translated_dir, const std::string& out) {
    int n = cfg.n_classes();
    tirc::ConfusionMatrix cm(n);
    json errors = json::array();
    for (const auto& gt_path : sorted_files(gt_dir, ".png")) {
        std::string stem = gt_path.stem().string();
        fs::path pred_path = fs::path(pred_dir) / gt_path.filename();
        try {
            if (!fs::exists(pred_path))
                throw std::runtime_error("missing prediction " + pred_path.string());
            cm.accumulate(tirc::read_mask_png(gt_path), tirc::read_mask_png(pred_path));
        } catch (const std::exception& e) {
            std::cerr << "error: " << stem << ": " << e.what() << "\n";
            errors.push_back({{"id", stem}, {"error", e.what()}});
        }
    }
    tirc::IouResult r = tirc::iou(cm);
    json per_class = json::object();
    for (int c = 0; c < n; ++c)
        if (r.valid[c]) {
            auto it = cfg.category_names.find(c);
            std::string name = it != cfg.category_names.end() ? it->second
                                                              : std::to_string(c);
            per_class[name] = r.per_class[c];
        }

    json report = {{"per_class_iou", per_class}, {"miou", r.miou}};

    if (!input_dir.empty() && !translated_dir.empty()) {
        double apce_sum = 0.0;
        std::vector<double> per_thr(cfg.apce_thresholds.size(), 0.0);
        size_t pairs = 0;
        bool degenerate = false;
        for (const auto& in_path : sorted_files(input_dir, ".png")) {
            fs::path tr_path = fs::path(translated_dir) / in_path.filename();
            try {
                if (!fs::exists(tr_path))
                    throw std::runtime_error("missing translation " + tr_path.string());
                auto res = tirc::apce(tirc::read_png_gray(in_path),
                                      tirc::read_png(tr_path), cfg.apce_thresholds,
                                      cfg.apce_match_tol);
                apce_sum += res.apce;
                for (size_t i = 0; i < per_thr.size(); ++i)
                    per_thr[i] += res.per_threshold[i];
                degenerate = degenerate || res.degenerate;
                ++pairs;
            } catch (const std::exception& e) {
                std::cerr << "error: " << in_path.stem().string() << ": " << e.what()
                          << "\n";
                errors.push_back({{"id", in_path.stem().string()}, {"error", e.what()}});
            }
        }
        if (pairs) {
            for (double& v : per_thr) v /= static_cast<double>(pairs);
            report["apce"] = apce_sum / static_cast<double>(pairs);
            report["apce_per_threshold"] = per_thr;
            report["apce_degenerate"] = degenerate;
        }
    }
    report["errors"] = errors;
    write_json(out, report);
    return errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for nighttime-thermal-to-color translation objectives"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config (default: $TIRC_CONFIG or built-in defaults)");

    auto* synth = app.add_subcommand("synth", "Generate synthetic scene triples");
    std::string synth_out = "scenes";
    int synth_count = 1;
    uint64_t synth_seed = 0;
    synth->add_option("--out", synth_out, "Output directory");
    synth->add_option("--count", synth_count, "Number of scenes");
    synth->add_option("--seed", synth_seed, "Base seed (scene i uses seed+i)");

    auto* distill = app.add_subcommand("distill", "NTIR pseudo-label distillation");
    std::string d_rb, d_fa, d_img, d_out = "masks";
    distill->add_option("--probs-rb", d_rb, "Directory of .raw probability tensors (S_B on real NTIR)")
        ->required();
    distill->add_option("--probs-fa", d_fa, "Directory of .raw probability tensors (S_A on fake DC)")
        ->required();
    distill->add_option("--images", d_img, "Directory of NTIR PNGs")->required();
    distill->add_option("--out", d_out, "Output mask directory");

    auto* select = app.add_subcommand("select", "Memory-guided sample selection");
    std::string s_mask, s_mem, s_out;
    std::optional<size_t> s_k;
    std::optional<uint64_t> s_seed;
    select->add_option("--mask", s_mask, "DC pseudo-label mask PNG")->required();
    select->add_option("--memory", s_mem, "Memory directory")->required();
    select->add_option("--k", s_k, "Top-k size (default from config)");
    select->add_option("--seed", s_seed, "Sampling seed (default from config)");
    select->add_option("--out", s_out, "Output JSON ('-' = stdout)");

    auto* losses = app.add_subcommand("losses", "Compute loss terms from files");
    LossArgs la;
    losses->add_option("--d-real", la.d_real, "Discriminator scores on real (gray PNG)");
    losses->add_option("--d-fake", la.d_fake, "Discriminator scores on fake (gray PNG)");
    losses->add_option("--cycle-x", la.cycle_x, "Original image");
    losses->add_option("--cycle-rec", la.cycle_rec, "Reconstructed image");
    losses->add_option("--tv-image", la.tv_image, "Image for total variation");
    losses->add_option("--sga-input", la.sga_input, "Input gray image");
    losses->add_option("--sga-translated", la.sga_translated, "Translated image");
    losses->add_option("--sga-road-mask", la.sga_road, "Binary road mask PNG");
    losses->add_option("--sga-ped-mask", la.sga_ped, "Binary pedestrian mask PNG");
    losses->add_option("--seg-prob-ra", la.seg_prob_ra, "Probabilities, real A branch");
    losses->add_option("--seg-label-ra", la.seg_label_ra, "Labels, real A branch");
    losses->add_option("--seg-prob-fb", la.seg_prob_fb, "Probabilities, fake B branch");
    losses->add_option("--seg-label-fb", la.seg_label_fb, "Labels, fake B branch");
    losses->add_option("--seg-prob-rb", la.seg_prob_rb, "Probabilities, real B branch");
    losses->add_option("--seg-label-rb", la.seg_label_rb, "Labels, real B branch");
    losses->add_option("--seg-prob-fa", la.seg_prob_fa, "Probabilities, fake A branch");
    losses->add_option("--seg-label-fa", la.seg_label_fa, "Labels, fake A branch");
    losses->add_option("--phase", la.phase, "learn_sa | learn_sb | constrain");
    losses->add_option("--aca-real-feat", la.aca_real, "Real feature map (.raw)");
    losses->add_option("--aca-fake-feat", la.aca_fake, "Fake feature map (.raw)");
    losses->add_option("--aca-mask-a", la.aca_mask_a, "Domain-A mask PNG");
    losses->add_option("--aca-mask-b", la.aca_mask_b, "Domain-B mask PNG");
    losses->add_option("--cgr-ntir", la.cgr_ntir, "NTIR gray PNG");
    losses->add_option("--cgr-fake", la.cgr_fake, "Fake DC PNG");
    losses->add_option("--cgr-bg-mask", la.cgr_bg, "Binary background mask PNG");
    losses->add_option("--sr-o", la.sr_o, "Generator output at native scale");
    losses->add_option("--sr-small", la.sr_small, "Output on alpha-scaled input");
    losses->add_option("--sr-large", la.sr_large, "Output on beta-scaled input");
    losses->add_option("--psi", la.psi, "Branch selector in [0,1]");
    losses->add_option("--out", la.out, "Output JSON ('-' = stdout)");

    auto* eval = app.add_subcommand("eval", "Segmentation and edge consistency metrics");
    std::string e_pred, e_gt, e_in, e_tr, e_out;
    eval->add_option("--pred", e_pred, "Predicted mask directory")->required();
    eval->add_option("--gt", e_gt, "Ground-truth mask directory")->required();
    eval->add_option("--inputs", e_in, "Input NTIR directory (for APCE)");
    eval->add_option("--translated", e_tr, "Translated image directory (for APCE)");
    eval->add_option("--out", e_out, "Output JSON ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        tirc::RunConfig cfg = tirc::load_config_or_default(config_path);
        if (synth->parsed()) return cmd_synth(cfg, synth_out, synth_count, synth_seed);
        if (distill->parsed()) return cmd_distill(cfg, d_rb, d_fa, d_img, d_out);
        if (select->parsed())
            return cmd_select(cfg, s_mask, s_mem, s_k.value_or(cfg.top_k),
                              s_seed.value_or(cfg.seed), s_out);
        if (losses->parsed()) return cmd_losses(cfg, la);
        if (eval->parsed()) return cmd_eval(cfg, e_pred, e_gt, e_in, e_tr, e_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
