#pragma once

#include "litclust/embed.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace litclust {

/// Balanced assignment of N = K * S items to clusters 0..K-1.
class Partition {
public:
    Partition() = default;
    /// Throws unless every label in 0..k-1 appears exactly s times.
    Partition(std::vector<std::size_t> assignment, std::size_t k, std::size_t s);

    const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t s() const noexcept { return s_; }
    std::size_t size() const noexcept { return assignment_.size(); }
    std::size_t operator[](std::size_t i) const { return assignment_[i]; }

    /// Members of each cluster in item order.
    std::vector<std::vector<std::size_t>> clusters() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::size_t> assignment_;
    std::size_t k_ = 0;
    std::size_t s_ = 0;
};

/// Pooled-over-pairs mean distances and strength = (inter - intra) / inter.
/// With a single member per cluster there are no intra pairs; intra is then
/// 0 and empty_intra is set.
struct StrengthReport {
    double intra = 0.0;
    double inter = 0.0;
    double strength = 0.0;
    bool empty_intra = false;
};

/// Pairwise Euclidean distances, dense N x N.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

DistanceMatrix pairwise_distances(const EmbeddingSet& set);

/// Full recomputation from the embedding, one pass over all unordered pairs.
StrengthReport cluster_strength(const EmbeddingSet& set, const Partition& p);
StrengthReport cluster_strength(const DistanceMatrix& dist, const Partition& p);

/// Strength from pooled distance sums.
StrengthReport strength_from_sums(double intra_sum, std::size_t intra_pairs, double total_sum,
                                  std::size_t total_pairs);

/// Shuffle of the label multiset {0^s, 1^s, ..., (k-1)^s}.
Partition random_partition(std::size_t n, std::size_t k, std::size_t s, std::uint64_t seed);

struct SearchConfig {
    std::uint64_t seed = 0;
    std::size_t restarts = 20;
    std::size_t patience = 2000;       // consecutive rejections that end a restart
    std::size_t max_proposals = 200000; // hard cap per restart

    void validate() const;
};

struct SearchTrace {
    std::vector<double> accepted_strengths; // strictly increasing
    std::size_t proposals_evaluated = 0;
    std::size_t restart_index = 0;
    bool converged = false; // ended by patience rather than by the cap
};

/// Reported after every proposal of every restart. May be invoked from
/// several threads at once (one restart per thread).
struct ProposalEvent {
    std::size_t restart = 0;
    std::size_t proposal = 0; // 1-based within the restart
    bool accepted = false;
    double strength = 0.0; // current strength after the decision
    std::span<const std::size_t> assignment;
    std::size_t k = 0;
};
using ProposalObserver = std::function<void(const ProposalEvent&)>;

struct SearchResult {
    Partition partition;
    StrengthReport report;
    SearchTrace trace;                 // of the winning restart
    std::vector<SearchTrace> restarts; // all of them, by restart index
};

/// Random-exchange local search: each restart starts from random_partition
/// with sub-seed derive_seed(cfg.seed, r); a proposal swaps one uniformly
/// chosen member between two uniformly chosen distinct clusters and is kept
/// only when strength strictly increases. Proposals are scored in O(1) from
/// cached per-item cluster distance sums. The best restart wins, ties to the
/// lowest index. Restarts run in parallel (OpenMP); the result does not
/// depend on the thread count.
SearchResult swap_search(const EmbeddingSet& set, std::size_t k, std::size_t s,
                         const SearchConfig& cfg, const ProposalObserver& observer = {});

/// One restart of swap_search, exposed for benchmarking and tests.
SearchTrace run_restart(const DistanceMatrix& dist, std::size_t k, std::size_t s,
                        const SearchConfig& cfg, std::size_t restart,
                        std::vector<std::size_t>& assignment,
                        const ProposalObserver& observer = {});

struct BruteForceResult {
    Partition partition;
    StrengthReport report;
    std::size_t evaluated = 0; // canonical partitions scored
};

/// Exhaustive search over canonical balanced partitions (labels in order of
/// first appearance), in lexicographic order; the first maximum wins.
/// Refuses (guard error) when the ordered count exceeds brute_force_limit.
BruteForceResult brute_force_partition(const EmbeddingSet& set, std::size_t k, std::size_t s);
inline constexpr std::uint64_t brute_force_limit = 10'000'000;

using BigInt = boost::multiprecision::cpp_int;

struct PartitionCount {
    BigInt ordered;   // n! / (s!)^k
    BigInt unordered; // ordered / k!
};

PartitionCount count_partitions(std::size_t n, std::size_t k, std::size_t s);

struct Neighbor {
    std::string id;
    double distance = 0.0;
};

/// The m closest other rows, ascending by distance, ties by row order.
std::vector<Neighbor> nearest_neighbors(const EmbeddingSet& set, std::string_view id,
                                        std::size_t m);

/// {"k", "s", "ids", "assignment", "strength", "intra", "inter", "empty_intra",
///  "trace": {...}} followed by members of `extra_json`.
std::string partition_to_json(const EmbeddingSet& set, const SearchResult& result,
                              std::string_view extra_json = "{}");

struct LoadedPartition {
    std::vector<std::string> ids;
    Partition partition;
};
LoadedPartition parse_partition(std::string_view json_text);
LoadedPartition load_partition(const std::filesystem::path& path);

namespace serial {

/// Reference implementations kept for tests and benchmarks.
DistanceMatrix pairwise_distances(const EmbeddingSet& set);
SearchResult swap_search(const EmbeddingSet& set, std::size_t k, std::size_t s,
                         const SearchConfig& cfg, const ProposalObserver& observer = {});

} // namespace serial

} // namespace litclust
