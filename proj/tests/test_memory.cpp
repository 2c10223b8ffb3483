#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "tirc/memory.hpp"
#include "tirc/memory_io.hpp"

using namespace tirc;

TEST_CASE("distribution_feature hand values") {
    std::vector<int32_t> c_ss = {4, 6};

    LabelMask empty(2, 2, 0);
    for (double v : distribution_feature(empty, c_ss).values)
        CHECK(v == doctest::Approx(0.0));

    LabelMask one_ped(2, 2, 0);
    one_ped.at(0, 0) = 4;
    auto f = distribution_feature(one_ped, c_ss);
    CHECK(f.values[0] == doctest::Approx(0.125));
    CHECK(f.values[1] == doctest::Approx(-0.125));

    LabelMask all_ped(2, 2, 4);
    auto g = distribution_feature(all_ped, c_ss);
    CHECK(g.values[0] == doctest::Approx(0.5));
    CHECK(g.values[1] == doctest::Approx(-0.5));
}

TEST_CASE("distribution_feature sums to zero") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> cls(0, 6);
    std::vector<int32_t> c_ss = {3, 4, 5, 6};
    for (int it = 0; it < 50; ++it) {
        LabelMask m(5, 5);
        for (auto& v : m.data) v = cls(rng);
        double s = 0.0;
        for (double v : distribution_feature(m, c_ss).values) s += v;
        CHECK(s == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("cosine_similarity conventions") {
    DistributionFeature a{{0.5, -0.5}};
    DistributionFeature b{{-0.5, 0.5}};
    DistributionFeature zero{{0.0, 0.0}};
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));
    CHECK(cosine_similarity(a, b) == doctest::Approx(-1.0));
    CHECK(cosine_similarity(zero, a) == doctest::Approx(0.0));
    CHECK(cosine_similarity(a, b) == doctest::Approx(cosine_similarity(b, a)));
    CHECK_THROWS_AS(cosine_similarity(a, DistributionFeature{{1.0}}),
                    std::invalid_argument);
}

TEST_CASE("cosine top-k ranking is scale invariant") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DistributionFeature query{{u(rng), u(rng), u(rng)}};
    DistributionFeature scaled = query;
    for (double& v : scaled.values) v *= 3.7;

    MemoryUnit mem(5, {4, 5, 6});
    std::uniform_int_distribution<int> cls(0, 6);
    for (int i = 0; i < 5; ++i) {
        LabelMask m(4, 4);
        for (auto& v : m.data) v = cls(rng);
        mem.store("img" + std::to_string(i), m);
    }
    auto t1 = mem.topk(query, 5);
    auto t2 = mem.topk(scaled, 5);
    for (size_t i = 0; i < t1.size(); ++i) CHECK(t1[i].id == t2[i].id);
}

TEST_CASE("store and readiness") {
    MemoryUnit mem(2, {4});
    LabelMask m(2, 2, 4);
    mem.store("a", m);
    CHECK(mem.count() == 1);
    CHECK_FALSE(mem.ready());
    mem.store("b", m);
    CHECK(mem.ready());
    mem.store("a", m);  // overwrite keeps the count
    CHECK(mem.count() == 2);

    MemoryUnit tiny(1, {4});
    tiny.store("only", m);
    CHECK(tiny.ready());
}

TEST_CASE("recall_topk selection") {
    std::vector<int32_t> c_ss = {4, 6};
    MemoryUnit mem(3, c_ss);
    // similarity +1 / ~0 / -1 against a pedestrian-heavy query
    LabelMask ped(4, 4, 0);
    for (int x = 0; x < 4; ++x) ped.at(0, x) = 4;
    LabelMask sign(4, 4, 0);
    for (int x = 0; x < 4; ++x) sign.at(0, x) = 6;
    LabelMask none(4, 4, 0);
    mem.store("ped", ped);
    mem.store("sign", sign);
    mem.store("none", none);

    DistributionFeature q = distribution_feature(ped, c_ss);
    for (uint64_t seed = 0; seed < 20; ++seed)
        CHECK(mem.recall_topk(q, 1, seed) == "ped");

    CHECK_THROWS_AS(mem.recall_topk(q, 4, 0), std::invalid_argument);

    MemoryUnit not_ready(5, c_ss);
    not_ready.store("x", ped);
    CHECK_THROWS_AS(not_ready.recall_topk(q, 1, 0), std::runtime_error);

    MemoryUnit single(1, c_ss);
    single.store("only", ped);
    CHECK(single.recall_topk(q, 1, 0) == "only");
}

TEST_CASE("recall_topk k=1 equals brute-force argmax") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> cls(0, 6);
    std::vector<int32_t> c_ss = {4, 5, 6};
    for (int it = 0; it < 30; ++it) {
        MemoryUnit mem(6, c_ss);
        std::vector<std::string> ids;
        for (int i = 0; i < 6; ++i) {
            LabelMask m(5, 5);
            for (auto& v : m.data) v = cls(rng);
            std::string id = "m" + std::to_string(i);
            mem.store(id, m);
            ids.push_back(id);
        }
        LabelMask qm(5, 5);
        for (auto& v : qm.data) v = cls(rng);
        DistributionFeature q = distribution_feature(qm, c_ss);

        std::string best;
        double best_sim = -2.0;
        for (const auto& id : ids) {
            double s = cosine_similarity(q, mem.feature(id));
            if (s > best_sim || (s == best_sim && id < best)) {
                best_sim = s;
                best = id;
            }
        }
        CHECK(mem.recall_topk(q, 1, it) == best);
    }
}

TEST_CASE("memory persists through save/load") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "tirc_mem_test";
    fs::remove_all(dir);

    std::mt19937 rng(31);
    std::uniform_int_distribution<int> cls(0, 6);
    MemoryUnit mem(3, {4, 6});
    for (int i = 0; i < 3; ++i) {
        LabelMask m(4, 4);
        for (auto& v : m.data) v = cls(rng);
        mem.store("img" + std::to_string(i), m);
    }
    save_memory(dir, mem);
    MemoryUnit loaded = load_memory(dir);
    CHECK(loaded.count() == mem.count());
    CHECK(loaded.ready() == mem.ready());
    for (const auto& id : mem.ids()) {
        CHECK(loaded.mask(id).data == mem.mask(id).data);
        for (size_t i = 0; i < mem.feature(id).values.size(); ++i)
            CHECK(loaded.feature(id).values[i] ==
                  doctest::Approx(mem.feature(id).values[i]).epsilon(1e-12));
    }
    fs::remove_all(dir);
}
