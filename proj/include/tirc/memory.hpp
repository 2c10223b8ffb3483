#ifndef TIRC_MEMORY_HPP
#define TIRC_MEMORY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tirc/tensor.hpp"

namespace tirc {

// Mean-centered per-category area fractions over the small-sample set.
struct DistributionFeature {
    std::vector<double> values;
};

// Fractions of each small-sample category in the mask, minus their mean.
DistributionFeature distribution_feature(const LabelMask& mask,
                                         const std::vector<int32_t>& c_ss);

// Cosine similarity; returns 0 if either vector has zero norm.
double cosine_similarity(const DistributionFeature& fa, const DistributionFeature& fb);

// Keyed store of NTIR pseudo-label masks and their distribution features.
class MemoryUnit {
public:
    MemoryUnit(size_t capacity_target, std::vector<int32_t> c_ss)
        : capacity_target_(capacity_target), c_ss_(std::move(c_ss)) {}

    // Computes and caches the feature; re-storing an id overwrites it
    // (a warning is emitted on stderr).
    void store(const std::string& id, const LabelMask& mask);

    bool ready() const { return entries_.size() >= capacity_target_; }
    size_t count() const { return entries_.size(); }
    size_t capacity_target() const { return capacity_target_; }
    const std::vector<int32_t>& small_sample_set() const { return c_ss_; }

    struct Candidate {
        std::string id;
        double similarity;
    };

    // The k entries most similar to fa, ties broken by ascending id.
    std::vector<Candidate> topk(const DistributionFeature& fa, size_t k) const;

    // Uniform seeded draw from topk(fa, k). Throws if not ready or k
    // exceeds the entry count.
    std::string recall_topk(const DistributionFeature& fa, size_t k,
                            uint64_t seed) const;

    const LabelMask& mask(const std::string& id) const;
    const DistributionFeature& feature(const std::string& id) const;
    std::vector<std::string> ids() const;

private:
    struct Entry {
        LabelMask mask;
        DistributionFeature feature;
    };
    size_t capacity_target_;
    std::vector<int32_t> c_ss_;
    std::map<std::string, Entry> entries_;
};

}  // namespace tirc

#endif
