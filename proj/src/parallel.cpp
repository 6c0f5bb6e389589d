// OpenMP kernels and their serial references. Every parallel loop writes
// into a per-task slot and reduces in task order, so outputs match the
// serial versions bit for bit at any thread count.

#include "litclust/parallel.hpp"

#include "litclust/cluster.hpp"
#include "litclust/error.hpp"
#include "litclust/metrics.hpp"
#include "litclust/rng.hpp"

#include <omp.h>

#include <exception>
#include <mutex>

namespace litclust {

namespace {

int g_default_threads = 0;

void check_search_args(const EmbeddingSet& set, std::size_t k, std::size_t s,
                       const SearchConfig& cfg)
{
    cfg.validate();
    if (k < 2)
        fail("swap search needs k >= 2, got " + std::to_string(k));
    if (s < 1 || set.size() != k * s)
        fail("swap search: N = " + std::to_string(set.size()) + " is not k*s = " +
             std::to_string(k) + "*" + std::to_string(s));
    if (set.size() < 4)
        fail("swap search needs N >= 4");
}

SearchResult pick_best(const EmbeddingSet& set, const DistanceMatrix& dist, std::size_t k,
                       std::size_t s, std::vector<std::vector<std::size_t>>& finals,
                       std::vector<SearchTrace>& traces)
{
    SearchResult out;
    std::size_t best = 0;
    StrengthReport best_report;
    for (std::size_t r = 0; r < finals.size(); ++r) {
        auto report = cluster_strength(dist, Partition(finals[r], k, s));
        if (r == 0 || report.strength > best_report.strength) {
            best = r;
            best_report = report;
        }
    }
    out.partition = Partition(std::move(finals[best]), k, s);
    out.report = cluster_strength(set, out.partition);
    out.trace = traces[best];
    out.restarts = std::move(traces);
    return out;
}

} // namespace

void set_threads(int n)
{
    if (n <= 0) {
        if (g_default_threads > 0)
            omp_set_num_threads(g_default_threads);
        return;
    }
    if (g_default_threads == 0)
        g_default_threads = omp_get_max_threads();
    omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

DistanceMatrix pairwise_distances(const EmbeddingSet& set)
{
    const std::size_t n = set.size();
    DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean(set.row(i), set.row(j));
            m.values[i * n + j] = d;
            m.values[j * n + i] = d;
        }
    }
    return m;
}

SearchResult swap_search(const EmbeddingSet& set, std::size_t k, std::size_t s,
                         const SearchConfig& cfg, const ProposalObserver& observer)
{
    check_search_args(set, k, s, cfg);
    const auto dist = pairwise_distances(set);
    std::vector<std::vector<std::size_t>> finals(cfg.restarts);
    std::vector<SearchTrace> traces(cfg.restarts);
    std::exception_ptr error;
    std::mutex error_mutex;

    const auto restarts = static_cast<long>(cfg.restarts);
#pragma omp parallel for schedule(dynamic, 1)
    for (long r = 0; r < restarts; ++r) {
        try {
            const auto ri = static_cast<std::size_t>(r);
            traces[ri] = run_restart(dist, k, s, cfg, ri, finals[ri], observer);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return pick_best(set, dist, k, s, finals, traces);
}

BaselineEstimate random_purity_baseline(const GoldPartition& gold, std::size_t trials,
                                        std::uint64_t seed)
{
    const auto shape = gold.balanced_shape();
    if (trials == 0)
        fail("baseline needs at least one trial");
    const auto labels = gold.label_indices();
    std::vector<double> values(trials);
    const auto t = static_cast<long>(trials);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < t; ++i) {
        const auto p = random_partition(labels.size(), shape.k, shape.s,
                                        derive_seed(seed, static_cast<std::uint64_t>(i)));
        values[static_cast<std::size_t>(i)] = purity(p, labels);
    }
    return summarize_trials(values);
}

namespace serial {

DistanceMatrix pairwise_distances(const EmbeddingSet& set)
{
    const std::size_t n = set.size();
    DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                m.values[i * n + j] = euclidean(set.row(i), set.row(j));
    return m;
}

SearchResult swap_search(const EmbeddingSet& set, std::size_t k, std::size_t s,
                         const SearchConfig& cfg, const ProposalObserver& observer)
{
    check_search_args(set, k, s, cfg);
    const auto dist = serial::pairwise_distances(set);
    std::vector<std::vector<std::size_t>> finals(cfg.restarts);
    std::vector<SearchTrace> traces(cfg.restarts);
    for (std::size_t r = 0; r < cfg.restarts; ++r)
        traces[r] = run_restart(dist, k, s, cfg, r, finals[r], observer);
    return pick_best(set, dist, k, s, finals, traces);
}

BaselineEstimate random_purity_baseline(const GoldPartition& gold, std::size_t trials,
                                        std::uint64_t seed)
{
    const auto shape = gold.balanced_shape();
    if (trials == 0)
        fail("baseline needs at least one trial");
    const auto labels = gold.label_indices();
    std::vector<double> values(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto p = random_partition(labels.size(), shape.k, shape.s, derive_seed(seed, i));
        values[i] = purity(p, labels);
    }
    return summarize_trials(values);
}

} // namespace serial

} // namespace litclust
