#include <doctest.h>

#include <random>

#include "tirc/arrayops.hpp"
#include "tirc/metrics.hpp"

using namespace tirc;

TEST_CASE("iou basics") {
    SUBCASE("perfect prediction") {
        LabelMask m(4, 4);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) m.at(y, x) = (y < 2) ? 0 : 1;
        ConfusionMatrix cm(3);
        cm.accumulate(m, m);
        IouResult r = iou(cm);
        CHECK(r.per_class[0] == doctest::Approx(1.0));
        CHECK(r.per_class[1] == doctest::Approx(1.0));
        CHECK_FALSE(r.valid[2]);  // absent class excluded from the mean
        CHECK(r.miou == doctest::Approx(1.0));
    }

    SUBCASE("half overlap gives 1/3") {
        // gt covers 2 px, pred covers 2 px, overlap 1
        LabelMask gt(1, 4, 0), pred(1, 4, 0);
        gt.data = {1, 1, 0, 0};
        pred.data = {0, 1, 1, 0};
        ConfusionMatrix cm(2);
        cm.accumulate(gt, pred);
        CHECK(iou(cm).per_class[1] == doctest::Approx(1.0 / 3));
    }

    SUBCASE("UNLABELED ground truth is skipped") {
        LabelMask gt(1, 2, UNLABELED), pred(1, 2, 0);
        gt.data[0] = 0;
        ConfusionMatrix cm(1);
        cm.accumulate(gt, pred);
        CHECK(cm.total() == 1);
    }
}

TEST_CASE("iou is permutation consistent") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> cls(0, 2);
    LabelMask gt(6, 6), pred(6, 6);
    for (auto& v : gt.data) v = cls(rng);
    for (auto& v : pred.data) v = cls(rng);

    ConfusionMatrix cm(3);
    cm.accumulate(gt, pred);
    IouResult base = iou(cm);

    // relabel 0<->2
    auto perm = [](int32_t v) { return v == 0 ? 2 : (v == 2 ? 0 : v); };
    LabelMask gt2 = gt, pred2 = pred;
    for (auto& v : gt2.data) v = perm(v);
    for (auto& v : pred2.data) v = perm(v);
    ConfusionMatrix cm2(3);
    cm2.accumulate(gt2, pred2);
    IouResult permuted = iou(cm2);
    CHECK(permuted.per_class[2] == doctest::Approx(base.per_class[0]));
    CHECK(permuted.per_class[0] == doctest::Approx(base.per_class[2]));
    CHECK(permuted.miou == doctest::Approx(base.miou));
}

TEST_CASE("confusion matrices merge associatively") {
    std::mt19937 rng(73);
    std::uniform_int_distribution<int> cls(0, 3);
    std::vector<LabelMask> gts, preds;
    for (int i = 0; i < 6; ++i) {
        LabelMask g(4, 4), p(4, 4);
        for (auto& v : g.data) v = cls(rng);
        for (auto& v : p.data) v = cls(rng);
        gts.push_back(g);
        preds.push_back(p);
    }
    ConfusionMatrix whole(4);
    for (int i = 0; i < 6; ++i) whole.accumulate(gts[i], preds[i]);

    ConfusionMatrix left(4), right(4);
    for (int i = 0; i < 3; ++i) left.accumulate(gts[i], preds[i]);
    for (int i = 3; i < 6; ++i) right.accumulate(gts[i], preds[i]);
    left.merge(right);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(left.at(a, b) == whole.at(a, b));
}

TEST_CASE("canny") {
    SUBCASE("constant image has no edges") {
        GrayMap flat(16, 16, 0.5f);
        CHECK(canny(flat, 0.1, 0.3).count() == 0);
    }

    SUBCASE("vertical step yields a one-pixel-wide line") {
        GrayMap img(16, 16);
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x) img.at(y, x) = (x < 8) ? 0.f : 1.f;
        EdgeMask e = canny(img, 0.2, 0.5);
        CHECK(e.count() > 0);
        for (int y = 2; y < 14; ++y) {
            int row_edges = 0;
            for (int x = 0; x < 16; ++x) row_edges += e.at(y, x);
            CHECK(row_edges == 1);
        }
    }

    SUBCASE("higher threshold yields a subset") {
        std::mt19937 rng(79);
        std::uniform_real_distribution<float> u(0.f, 1.f);
        GrayMap img(20, 20);
        for (float& v : img.data) v = u(rng);
        EdgeMask loose = canny(img, 0.1, 0.3);
        EdgeMask tight = canny(img, 0.1, 0.6);
        for (size_t i = 0; i < loose.data.size(); ++i)
            if (tight.data[i]) CHECK(loose.data[i] == 1);
    }

    CHECK_THROWS_AS(canny(GrayMap(4, 4), 0.5, 0.2), std::invalid_argument);
}

TEST_CASE("apce") {
    auto thresholds = default_apce_thresholds();

    SUBCASE("identity translation scores one") {
        GrayMap img(24, 24);
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 24; ++x) img.at(y, x) = (x < 12) ? 0.1f : 0.9f;
        ApceResult r = apce(img, replicate(img, 3), thresholds, 1);
        CHECK(r.apce == doctest::Approx(1.0));
        CHECK_FALSE(r.degenerate);
    }

    SUBCASE("edge-free translation is degenerate but scores one") {
        GrayMap img(24, 24);
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 24; ++x) img.at(y, x) = (x < 12) ? 0.1f : 0.9f;
        Tensor flat(3, 24, 24, 0.5f);
        ApceResult r = apce(img, flat, thresholds, 1);
        CHECK(r.apce == doctest::Approx(1.0));
        CHECK(r.degenerate);
    }

    SUBCASE("disjoint edges score zero") {
        GrayMap input(32, 32, 0.f);
        GrayMap other(32, 32, 0.f);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) {
                input.at(y, x) = (x < 8) ? 0.f : 1.f;
                other.at(y, x) = (x < 24) ? 0.f : 1.f;
            }
        ApceResult r = apce(input, replicate(other, 3), thresholds, 1);
        CHECK(r.apce == doctest::Approx(0.0));
    }

    SUBCASE("invariant to a shared constant offset") {
        GrayMap in(24, 24);
        Tensor tr(1, 24, 24);
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 24; ++x) {
                in.at(y, x) = (x < 10) ? 0.f : 0.5f;
                tr.at(0, y, x) = (x < 11) ? 0.f : 0.5f;
            }
        ApceResult base = apce(in, tr, thresholds, 1);
        GrayMap in2 = in;
        Tensor tr2 = tr;
        for (float& v : in2.data) v += 0.25f;
        for (float& v : tr2.data) v += 0.25f;
        ApceResult shifted = apce(in2, tr2, thresholds, 1);
        CHECK(shifted.apce == doctest::Approx(base.apce).epsilon(1e-9));
    }

    CHECK_THROWS_AS(apce(GrayMap(4, 4), Tensor(1, 4, 4), {}, 1),
                    std::invalid_argument);
}
