#ifndef TIRC_CONFIG_HPP
#define TIRC_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tirc/distill.hpp"
#include "tirc/losses.hpp"
#include "tirc/synth.hpp"

namespace tirc {

// Aggregated run configuration for the CLI. Loaded from JSON; scalar
// fields can be overridden by flags.
struct RunConfig {
    std::map<int32_t, std::string> category_names;
    CategorySet c_fg;
    CategorySet c_bg;
    std::vector<int32_t> c_ss;
    CategorySet intersect_set;

    MiningParams mining;
    ConfusionSchedule schedule_a;
    ConfusionSchedule schedule_b;
    LossWeights weights;

    size_t memory_capacity = 20;
    size_t memory_min_fill = 0;  // 0 = require full capacity
    size_t top_k = 5;
    uint64_t seed = 0;

    std::vector<double> apce_thresholds;
    int apce_match_tol = 1;

    SceneSpec scene;

    int n_classes() const;
    void validate() const;
};

// Defaults matching the synthetic category vocabulary.
RunConfig default_config();

RunConfig load_config(const std::filesystem::path& path);

// Reads the path from the TIRC_CONFIG env var when set, otherwise
// returns defaults.
RunConfig load_config_or_default(const std::string& explicit_path);

}  // namespace tirc

#endif
