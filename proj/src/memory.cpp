#include "tirc/memory.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>

namespace tirc {

DistributionFeature distribution_feature(const LabelMask& mask,
                                         const std::vector<int32_t>& c_ss) {
    DistributionFeature f;
    f.values.resize(c_ss.size(), 0.0);
    const double total = static_cast<double>(mask.size());
    for (size_t k = 0; k < c_ss.size(); ++k) {
        size_t n = std::count(mask.data.begin(), mask.data.end(), c_ss[k]);
        f.values[k] = static_cast<double>(n) / total;
    }
    double mean = 0.0;
    for (double v : f.values) mean += v;
    mean /= static_cast<double>(f.values.size());
    for (double& v : f.values) v -= mean;
    return f;
}

double cosine_similarity(const DistributionFeature& fa, const DistributionFeature& fb) {
    if (fa.values.size() != fb.values.size())
        throw std::invalid_argument("cosine_similarity: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < fa.values.size(); ++i) {
        dot += fa.values[i] * fb.values[i];
        na += fa.values[i] * fa.values[i];
        nb += fb.values[i] * fb.values[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

void MemoryUnit::store(const std::string& id, const LabelMask& mask) {
    if (entries_.count(id))
        std::cerr << "warning: memory entry '" << id << "' overwritten\n";
    entries_[id] = Entry{mask, distribution_feature(mask, c_ss_)};
}

std::vector<MemoryUnit::Candidate> MemoryUnit::topk(const DistributionFeature& fa,
                                                    size_t k) const {
    if (k > entries_.size())
        throw std::invalid_argument("topk: k exceeds entry count");
    std::vector<Candidate> all;
    all.reserve(entries_.size());
    for (const auto& [id, e] : entries_)
        all.push_back({id, cosine_similarity(fa, e.feature)});
    // Higher similarity first; ties by ascending id (std::map order is
    // already ascending, stable_sort preserves it).
    std::stable_sort(all.begin(), all.end(),
                     [](const Candidate& a, const Candidate& b) {
                         return a.similarity > b.similarity;
                     });
    all.resize(k);
    return all;
}

std::string MemoryUnit::recall_topk(const DistributionFeature& fa, size_t k,
                                    uint64_t seed) const {
    if (!ready())
        throw std::runtime_error("recall_topk: memory unit not ready");
    auto candidates = topk(fa, k);
    std::mt19937 rng(static_cast<uint32_t>(seed ^ (seed >> 32)));
    std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng)].id;
}

const LabelMask& MemoryUnit::mask(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::out_of_range("unknown memory id: " + id);
    return it->second.mask;
}

const DistributionFeature& MemoryUnit::feature(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::out_of_range("unknown memory id: " + id);
    return it->second.feature;
}

std::vector<std::string> MemoryUnit::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [id, _] : entries_) out.push_back(id);
    return out;
}

}  // namespace tirc
