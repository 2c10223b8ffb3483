#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tirc/distill.hpp"

using namespace tirc;

namespace {

ProbTensor one_hot(const LabelMask& mask, int n_classes) {
    ProbTensor p(n_classes, mask.height, mask.width);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            p.at(mask.at(y, x), y, x) = 1.f;
    return p;
}

// Random simplex tensor; sharpness > 1 pushes mass onto one class.
ProbTensor random_probs(int n_classes, int h, int w, std::mt19937& rng,
                        double sharpness) {
    ProbTensor p(n_classes, h, w);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            std::vector<double> v(n_classes);
            for (int c = 0; c < n_classes; ++c) {
                v[c] = std::pow(u(rng), 1.0 / sharpness);
                sum += v[c];
            }
            for (int c = 0; c < n_classes; ++c)
                p.at(c, y, x) = static_cast<float>(v[c] / sum);
        }
    return p;
}

}  // namespace

TEST_CASE("fuse_dc_labels rules") {
    const int32_t road = 0, ped = 1, car = 2, sky = 3;
    CategorySet intersect = {ped, car};
    LabelMask coco(1, 3), city(1, 3);
    coco.data = {ped, ped, sky};
    city.data = {ped, road, car};
    LabelMask fused = fuse_dc_labels(coco, city, intersect);
    CHECK(fused.data[0] == ped);        // agreement on an intersect class
    CHECK(fused.data[1] == road);       // road is not gated, city wins
    CHECK(fused.data[2] == UNLABELED);  // car requires agreement

    CHECK_THROWS_AS(fuse_dc_labels(coco, LabelMask(2, 2), intersect),
                    std::invalid_argument);
}

TEST_CASE("mine_labels thresholds") {
    MiningParams p;
    p.fg_set = {1};

    LabelMask want(3, 3, 1);
    ProbTensor hot = one_hot(want, 4);
    LabelMask mined = mine_labels(hot, hot, p);
    CHECK(mined.data == want.data);

    // fg class at (0.96, 0.97) passes theta_fg = 0.95.
    ProbTensor rb(2, 1, 1), fa(2, 1, 1);
    rb.at(0, 0, 0) = 0.04f;
    rb.at(1, 0, 0) = 0.96f;
    fa.at(0, 0, 0) = 0.03f;
    fa.at(1, 0, 0) = 0.97f;
    CHECK(mine_labels(rb, fa, p).at(0, 0) == 1);

    // The same probabilities on a bg class fail theta_bg = 0.99.
    MiningParams bg_only = p;
    bg_only.fg_set = {};
    CHECK(mine_labels(rb, fa, bg_only).at(0, 0) == UNLABELED);

    MiningParams bad;
    bad.theta_fg = 0.4f;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("mine_labels never assigns a sub-0.5 class") {
    MiningParams p;
    p.fg_set = {0, 1};
    std::mt19937 rng(21);
    for (int it = 0; it < 50; ++it) {
        ProbTensor rb = random_probs(4, 6, 6, rng, 8.0);
        ProbTensor fa = random_probs(4, 6, 6, rng, 8.0);
        LabelMask m = mine_labels(rb, fa, p);
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x) {
                int32_t c = m.at(y, x);
                if (c == UNLABELED) continue;
                CHECK(rb.at(c, y, x) >= 0.5f);
                CHECK(fa.at(c, y, x) >= 0.5f);
            }
    }
}

TEST_CASE("sdp hand cases") {
    const int32_t t = 0, z = 1;

    SUBCASE("empty confusion set is the identity") {
        LabelMask mask(1, 3, t);
        Tensor img(1, 1, 3);
        img.data = {0.f, 0.5f, 1.f};
        CHECK(sdp(mask, img, t, {}).data == mask.data);
    }

    SUBCASE("pixel closer to confusion mean is removed") {
        // target pixels {0.0, 1.0} (mean 0.5), confusion mean 1.0
        LabelMask mask(1, 3);
        mask.data = {t, t, z};
        Tensor img(1, 1, 3);
        img.data = {0.f, 1.f, 1.f};
        LabelMask out = sdp(mask, img, t, {z});
        CHECK(out.data[0] == t);          // 0.25 < 1.0
        CHECK(out.data[1] == UNLABELED);  // 0.25 > 0.0
        CHECK(out.data[2] == z);
    }

    SUBCASE("equidistant pixel keeps its label") {
        // exactly representable: target {0.5, 0.75} mean 0.625, confusion
        // {0.875}; pixel 0.75 sits exactly 0.125 from both means
        LabelMask mask(1, 3);
        mask.data = {t, t, z};
        Tensor img(1, 1, 3);
        img.data = {0.5f, 0.75f, 0.875f};
        CHECK(sdp(mask, img, t, {z}).data == mask.data);
    }

    SUBCASE("absent target or absent confusion is the identity") {
        LabelMask mask(1, 2, z);
        Tensor img(1, 1, 2);
        CHECK(sdp(mask, img, t, {z}).data == mask.data);
        LabelMask only_t(1, 2, t);
        CHECK(sdp(only_t, img, t, {z}).data == only_t.data);
    }
}

TEST_CASE("sdp never adds labels or touches non-target pixels") {
    std::mt19937 rng(33);
    std::uniform_int_distribution<int> cls(0, 3);
    std::uniform_real_distribution<float> u(0.f, 1.f);
    for (int it = 0; it < 100; ++it) {
        LabelMask mask(6, 6);
        Tensor img(2, 6, 6);
        for (auto& v : mask.data) v = cls(rng);
        for (auto& v : img.data) v = u(rng);
        LabelMask out = sdp(mask, img, 0, {1, 2});
        for (size_t i = 0; i < mask.size(); ++i) {
            if (mask.data[i] != 0) CHECK(out.data[i] == mask.data[i]);
            else CHECK((out.data[i] == 0 || out.data[i] == UNLABELED));
        }
    }
}

TEST_CASE("sdp matches the brute-force oracle on small instances") {
    std::mt19937 rng(55);
    std::uniform_int_distribution<int> cls(0, 4);
    std::uniform_int_distribution<int> dims(1, 8);
    std::uniform_int_distribution<int> chans(1, 4);
    std::uniform_real_distribution<float> u(0.f, 1.f);
    for (int it = 0; it < 200; ++it) {
        int h = dims(rng), w = dims(rng), c = chans(rng);
        LabelMask mask(h, w);
        Tensor img(c, h, w);
        for (auto& v : mask.data) v = cls(rng);
        for (auto& v : img.data) v = u(rng);
        CategorySet confusion = {1, 2, 3};
        CHECK(sdp(mask, img, 0, confusion).data ==
              oracle::sdp_bruteforce(mask, img, 0, confusion).data);
    }
}

TEST_CASE("run_schedule recomputes means between steps") {
    SUBCASE("empty schedule is the identity") {
        LabelMask mask(2, 2, 1);
        Tensor img(1, 2, 2);
        CHECK(run_schedule(mask, img, ConfusionSchedule{}).data == mask.data);
    }

    SUBCASE("sequential result matches the sequential oracle") {
        std::mt19937 rng(77);
        std::uniform_int_distribution<int> cls(0, 3);
        std::uniform_real_distribution<float> u(0.f, 1.f);
        ConfusionSchedule sched;
        sched.steps = {{0, {1}}, {1, {0, 2}}, {2, {1}}};
        for (int it = 0; it < 100; ++it) {
            LabelMask mask(7, 7);
            Tensor img(1, 7, 7);
            for (auto& v : mask.data) v = cls(rng);
            for (auto& v : img.data) v = u(rng);
            CHECK(run_schedule(mask, img, sched).data ==
                  oracle::schedule_bruteforce(mask, img, sched).data);
        }
    }

    SUBCASE("repeated target is rejected") {
        ConfusionSchedule bad;
        bad.steps = {{0, {1}}, {0, {2}}};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}

TEST_CASE("distill_ntir composition") {
    MiningParams p;
    p.fg_set = {2, 3};
    ConfusionSchedule sched;
    sched.steps = {{1, {2}}, {2, {1}}};

    SUBCASE("disagreeing inputs give a fully UNLABELED mask") {
        LabelMask a(4, 4, 0), b(4, 4, 1);
        ProbTensor pa = one_hot(a, 4), pb = one_hot(b, 4);
        Tensor img(1, 4, 4, 0.5f);
        LabelMask out = distill_ntir(pa, pb, img, p, sched);
        for (int32_t v : out.data) CHECK(v == UNLABELED);
    }

    SUBCASE("output labels are a subset of the mined labels") {
        std::mt19937 rng(91);
        std::uniform_real_distribution<float> u(0.f, 1.f);
        std::uniform_int_distribution<int> cls(0, 3);
        for (int it = 0; it < 30; ++it) {
            LabelMask m(6, 6);
            for (auto& v : m.data) v = cls(rng);
            ProbTensor probs = one_hot(m, 4);
            Tensor img(1, 6, 6);
            for (auto& v : img.data) v = u(rng);
            LabelMask mined = mine_labels(probs, probs, p);
            LabelMask distilled = distill_ntir(probs, probs, img, p, sched);
            for (size_t i = 0; i < mined.size(); ++i)
                CHECK((distilled.data[i] == mined.data[i] ||
                       distilled.data[i] == UNLABELED));
        }
    }
}
