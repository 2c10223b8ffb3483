#include "tirc/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tirc/metrics.hpp"

namespace tirc {

int RunConfig::n_classes() const {
    int n = 0;
    for (const auto& [id, _] : category_names) n = std::max(n, id + 1);
    return n;
}

void RunConfig::validate() const {
    for (int32_t c : c_fg)
        if (c_bg.count(c))
            throw std::invalid_argument("RunConfig: c_fg and c_bg must be disjoint");
    mining.validate();
    schedule_a.validate();
    schedule_b.validate();
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.category_names = {{cat::Road, "road"},
                          {cat::Sky, "sky"},
                          {cat::Tree, "tree"},
                          {cat::Pole, "pole"},
                          {cat::Pedestrian, "pedestrian"},
                          {cat::Car, "car"},
                          {cat::TrafficSign, "traffic_sign"}};
    cfg.c_fg = {cat::Pedestrian, cat::Car, cat::TrafficSign};
    cfg.c_bg = {cat::Road, cat::Sky, cat::Tree, cat::Pole};
    cfg.c_ss = {cat::Pedestrian, cat::TrafficSign};
    cfg.intersect_set = {cat::Pedestrian, cat::Car};
    cfg.mining.fg_set = cfg.c_fg;
    cfg.schedule_a = domain_a_schedule(cat::Sky, cat::Tree, cat::Pole);
    cfg.schedule_b = domain_b_schedule(cat::Sky, cat::Tree, cat::Pole, cat::Pedestrian);
    cfg.apce_thresholds = default_apce_thresholds();
    return cfg;
}

namespace {

ConfusionSchedule parse_schedule(const nlohmann::json& j) {
    ConfusionSchedule s;
    for (const auto& step : j) {
        int32_t target = step.at(0).get<int32_t>();
        CategorySet conf;
        for (const auto& c : step.at(1)) conf.insert(c.get<int32_t>());
        s.steps.emplace_back(target, std::move(conf));
    }
    return s;
}

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config " + path.string());
    nlohmann::json j;
    f >> j;

    RunConfig cfg = default_config();
    if (j.contains("categories")) {
        cfg.category_names.clear();
        for (const auto& [id, name] : j.at("categories").items())
            cfg.category_names[std::stoi(id)] = name.get<std::string>();
    }
    if (j.contains("c_fg")) cfg.c_fg = j.at("c_fg").get<CategorySet>();
    if (j.contains("c_bg")) cfg.c_bg = j.at("c_bg").get<CategorySet>();
    if (j.contains("c_ss")) cfg.c_ss = j.at("c_ss").get<std::vector<int32_t>>();
    if (j.contains("intersect_set"))
        cfg.intersect_set = j.at("intersect_set").get<CategorySet>();

    if (j.contains("mining")) {
        const auto& m = j.at("mining");
        maybe(m, "theta_fg", cfg.mining.theta_fg);
        maybe(m, "theta_bg", cfg.mining.theta_bg);
        if (m.contains("fg_set")) cfg.mining.fg_set = m.at("fg_set").get<CategorySet>();
        else cfg.mining.fg_set = cfg.c_fg;
    } else {
        cfg.mining.fg_set = cfg.c_fg;
    }

    if (j.contains("schedule_a")) cfg.schedule_a = parse_schedule(j.at("schedule_a"));
    if (j.contains("schedule_b")) cfg.schedule_b = parse_schedule(j.at("schedule_b"));

    if (j.contains("loss_weights")) {
        const auto& w = j.at("loss_weights");
        maybe(w, "lambda_tv", cfg.weights.lambda_tv);
        maybe(w, "lambda_sga", cfg.weights.lambda_sga);
        maybe(w, "lambda_sl1", cfg.weights.lambda_sl1);
        maybe(w, "boundary_weight", cfg.weights.boundary_weight);
        maybe(w, "phi_local", cfg.weights.phi_local);
        maybe(w, "phi_global", cfg.weights.phi_global);
        maybe(w, "alpha", cfg.weights.alpha);
        maybe(w, "beta", cfg.weights.beta);
        maybe(w, "n_clusters", cfg.weights.n_clusters);
        maybe(w, "epsilon", cfg.weights.epsilon);
        maybe(w, "theta_sga", cfg.weights.theta_sga);
    }

    if (j.contains("memory")) {
        const auto& m = j.at("memory");
        maybe(m, "capacity_target", cfg.memory_capacity);
        maybe(m, "min_fill", cfg.memory_min_fill);
        maybe(m, "k", cfg.top_k);
        maybe(m, "seed", cfg.seed);
    }

    if (j.contains("metrics")) {
        const auto& m = j.at("metrics");
        maybe(m, "thresholds", cfg.apce_thresholds);
        maybe(m, "match_tol", cfg.apce_match_tol);
    }

    if (j.contains("synth")) {
        const auto& s = j.at("synth");
        maybe(s, "width", cfg.scene.width);
        maybe(s, "height", cfg.scene.height);
        maybe(s, "seed", cfg.scene.seed);
        maybe(s, "n_trees", cfg.scene.n_trees);
        maybe(s, "n_poles", cfg.scene.n_poles);
        maybe(s, "n_pedestrians", cfg.scene.n_pedestrians);
        maybe(s, "n_cars", cfg.scene.n_cars);
        maybe(s, "n_signs", cfg.scene.n_signs);
        maybe(s, "noise_sigma", cfg.scene.noise_sigma);
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config_or_default(const std::string& explicit_path) {
    if (!explicit_path.empty()) return load_config(explicit_path);
    if (const char* env = std::getenv("TIRC_CONFIG"); env && *env)
        return load_config(env);
    return default_config();
}

}  // namespace tirc
