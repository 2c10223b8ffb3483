#include <doctest.h>

#include <cmath>

#include "tirc/arrayops.hpp"
#include "tirc/distill.hpp"
#include "tirc/losses.hpp"
#include "tirc/synth.hpp"

using namespace tirc;

TEST_CASE("scene generation is deterministic") {
    SceneSpec spec;
    spec.seed = 123;
    spec.noise_sigma = 0.05f;
    Scene a = generate_scene(spec);
    Scene b = generate_scene(spec);
    CHECK(a.ntir.data == b.ntir.data);
    CHECK(a.dc.data == b.dc.data);
    CHECK(a.gt.data == b.gt.data);

    SceneSpec other = spec;
    other.seed = 124;
    CHECK(generate_scene(other).gt.data != a.gt.data);
}

TEST_CASE("ground truth partitions the image") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        SceneSpec spec;
        spec.seed = seed;
        Scene s = generate_scene(spec);
        for (int32_t v : s.gt.data) {
            CHECK(v != UNLABELED);
            CHECK(v >= 0);
            CHECK(v < cat::Count);
        }
    }
}

TEST_CASE("thermal prior holds by construction") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        SceneSpec spec;
        spec.seed = seed;
        spec.noise_sigma = 0.05f;
        Scene s = generate_scene(spec);
        LabelMask road(s.gt.height, s.gt.width, 0), ped(s.gt.height, s.gt.width, 0);
        for (size_t i = 0; i < s.gt.size(); ++i) {
            if (s.gt.data[i] == cat::Road) road.data[i] = 1;
            if (s.gt.data[i] == cat::Pedestrian) ped.data[i] = 1;
        }
        CHECK(temperature_reg(s.ntir, road, ped, 1e-6) == doctest::Approx(0.0));
    }
}

TEST_CASE("noise-free scenes survive denoising untouched") {
    SceneSpec spec;
    spec.seed = 9;
    spec.noise_sigma = 0.f;
    Scene s = generate_scene(spec);
    // every pixel of a class equals the class mean, so no pixel is ever
    // strictly closer to a confusion mean
    ConfusionSchedule sched =
        domain_b_schedule(cat::Sky, cat::Tree, cat::Pole, cat::Pedestrian);
    LabelMask out = run_schedule(s.gt, to_tensor(s.ntir), sched);
    CHECK(out.data == s.gt.data);
}

TEST_CASE("corrupt_labels") {
    SceneSpec spec;
    spec.seed = 5;
    Scene s = generate_scene(spec);

    SUBCASE("rate 0 is the identity") {
        CHECK(corrupt_labels(s.gt, {{cat::Sky, cat::Tree}}, 0.0, 1).data == s.gt.data);
    }

    SUBCASE("rate 1 removes the source class") {
        LabelMask out = corrupt_labels(s.gt, {{cat::Sky, cat::Tree}}, 1.0, 1);
        for (int32_t v : out.data) CHECK(v != cat::Sky);
    }

    SUBCASE("flip count is exactly round(rate * |class|)") {
        size_t sky_n = 0;
        for (int32_t v : s.gt.data) sky_n += (v == cat::Sky);
        LabelMask out = corrupt_labels(s.gt, {{cat::Sky, cat::Tree}}, 0.2, 7);
        size_t flipped = 0;
        for (size_t i = 0; i < out.size(); ++i)
            flipped += (s.gt.data[i] == cat::Sky && out.data[i] == cat::Tree);
        CHECK(flipped == static_cast<size_t>(std::lround(0.2 * sky_n)));
    }

    SUBCASE("deterministic under seed") {
        auto a = corrupt_labels(s.gt, {{cat::Sky, cat::Tree}}, 0.3, 11);
        auto b = corrupt_labels(s.gt, {{cat::Sky, cat::Tree}}, 0.3, 11);
        CHECK(a.data == b.data);
    }
}

TEST_CASE("mask_to_probs round trip") {
    SceneSpec spec;
    spec.seed = 2;
    Scene s = generate_scene(spec);
    ProbTensor p = mask_to_probs(s.gt, cat::Count, 0.995f);
    CHECK(p.is_valid_simplex());
    for (int y = 0; y < s.gt.height; ++y)
        for (int x = 0; x < s.gt.width; ++x)
            CHECK(p.at(s.gt.at(y, x), y, x) == doctest::Approx(0.995));
}

TEST_CASE("invalid specs are rejected") {
    SceneSpec tiny;
    tiny.width = 16;
    CHECK_THROWS_AS(generate_scene(tiny), std::invalid_argument);
    SceneSpec s;
    CHECK_THROWS_AS(corrupt_labels(generate_scene(s).gt, {}, 1.5, 0),
                    std::invalid_argument);
}
