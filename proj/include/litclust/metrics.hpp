#pragma once

#include "litclust/cluster.hpp"
#include "litclust/corpus.hpp"
#include "litclust/embed.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace litclust {

/// Gold thematic groups over an ordered id list.
class GoldPartition {
public:
    GoldPartition() = default;
    /// ids[i] belongs to group labels[i].
    GoldPartition(std::vector<std::string> ids, const std::vector<std::string>& labels);
    static GoldPartition from_corpus(const Corpus& corpus);

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    std::size_t size() const noexcept { return ids_.size(); }
    /// Group names, sorted; label_indices() indexes into this.
    const std::vector<std::string>& group_names() const noexcept { return names_; }
    const std::vector<std::size_t>& label_indices() const noexcept { return labels_; }
    /// Members (item indices) of each group, ascending.
    const std::vector<std::vector<std::size_t>>& members() const noexcept { return members_; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    const std::string& group_of(std::size_t item) const { return names_[labels_[item]]; }

    /// Throws unless all groups share one size.
    BalancedShape balanced_shape() const;

private:
    std::vector<std::string> ids_;
    std::vector<std::string> names_;
    std::vector<std::size_t> labels_;
    std::vector<std::vector<std::size_t>> members_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// sum over predicted clusters of the largest overlap with a gold group.
/// Labels need not be balanced. Both spans index the same items.
std::size_t purity_count(std::span<const std::size_t> predicted, std::span<const std::size_t> gold);

/// purity_count / N.
double purity(std::span<const std::size_t> predicted, std::span<const std::size_t> gold);
double purity(const Partition& predicted, std::span<const std::size_t> gold);

/// Matches predicted items to gold by id; both must cover the same ids.
double purity(const std::vector<std::string>& predicted_ids, const Partition& predicted,
              const GoldPartition& gold);

struct Triplet {
    std::string same_a;
    std::string same_b;
    std::string intruder;
};

enum class TripletSampling {
    uniform_group, // group uniformly, then a pair inside it
    uniform_pair,  // pair uniformly among all same-group pairs
};

/// Largest number of distinct (as unordered sets) valid triplets.
std::uint64_t max_distinct_triplets(const GoldPartition& gold);

/// Draws `count` distinct triplets. The intruder is a uniform member of a
/// uniform other group (uniform_group) or a uniform document outside the
/// pair's group (uniform_pair).
std::vector<Triplet> sample_triplets(const GoldPartition& gold, std::size_t count,
                                     std::uint64_t seed,
                                     TripletSampling mode = TripletSampling::uniform_group);

/// Throws if the triplet violates its invariants under `gold`.
void validate_triplet(const GoldPartition& gold, const Triplet& t);

/// Index of the point with the largest summed distance to the other two;
/// ties go to the lowest index.
std::size_t odd_one_out(std::span<const double> a, std::span<const double> b,
                        std::span<const double> c);

struct OooResult {
    double accuracy = 0.0;
    std::size_t correct = 0;
    std::size_t total = 0;
    /// Keyed by the group shared by same_a and same_b.
    std::map<std::string, double> per_group;
    std::map<std::string, std::size_t> per_group_total;
};

/// `gold` attributes each triplet to a group; pass nullptr to skip per-group stats.
OooResult ooo_accuracy(const EmbeddingSet& set, const std::vector<Triplet>& triplets,
                       const GoldPartition* gold = nullptr);

struct BaselineEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
    double stddev = 0.0;
    double q99 = 0.0; // empirical 99th percentile of the trial values
    std::size_t trials = 0;
};

BaselineEstimate summarize_trials(std::span<const double> values);

/// Mean purity of uniform random balanced partitions (shape of `gold`)
/// against `gold`. Trial t uses random_partition with derive_seed(seed, t);
/// trials run in parallel.
BaselineEstimate random_purity_baseline(const GoldPartition& gold, std::size_t trials,
                                        std::uint64_t seed);

/// Accuracy of guessing the intruder uniformly at random on `triplets`
/// triplets, estimated over `trials` repetitions.
BaselineEstimate random_ooo_baseline(std::size_t triplets, std::size_t trials, std::uint64_t seed);

/// Per-item vote counts over a fixed category list.
class AnnotationMatrix {
public:
    /// Rows must all sum to the same rater count n >= 2; at least one item
    /// and two categories.
    AnnotationMatrix(std::vector<std::string> items, std::vector<std::string> categories,
                     std::vector<std::vector<std::size_t>> counts);

    const std::vector<std::string>& items() const noexcept { return items_; }
    const std::vector<std::string>& categories() const noexcept { return categories_; }
    const std::vector<std::vector<std::size_t>>& counts() const noexcept { return counts_; }
    std::size_t raters() const noexcept { return raters_; }

private:
    std::vector<std::string> items_;
    std::vector<std::string> categories_;
    std::vector<std::vector<std::size_t>> counts_;
    std::size_t raters_ = 0;
};

/// [{"item": s, "votes": {category: count}}...]; categories are the sorted
/// union over rows.
AnnotationMatrix parse_annotations(std::string_view json_text);
AnnotationMatrix load_annotations(const std::filesystem::path& path);

double fleiss_kappa(const AnnotationMatrix& m);

/// Fraction of items where some category got at least two votes.
double majority_agreement_rate(const AnnotationMatrix& m);

/// [{"a", "b", "intruder"}...]
std::string triplets_to_json(const std::vector<Triplet>& triplets);
std::vector<Triplet> parse_triplets(std::string_view json_text);
std::vector<Triplet> load_triplets(const std::filesystem::path& path);

namespace serial {

BaselineEstimate random_purity_baseline(const GoldPartition& gold, std::size_t trials,
                                        std::uint64_t seed);

} // namespace serial

} // namespace litclust
