#include "litclust/cluster.hpp"

#include "litclust/artifacts.hpp"
#include "litclust/error.hpp"
#include "litclust/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace litclust {

Partition::Partition(std::vector<std::size_t> assignment, std::size_t k, std::size_t s)
    : assignment_(std::move(assignment)), k_(k), s_(s)
{
    if (k == 0 || s == 0)
        fail("partition needs k >= 1 and s >= 1");
    if (assignment_.size() != k * s)
        fail("partition has " + std::to_string(assignment_.size()) + " items, expected k*s = " +
             std::to_string(k * s));
    std::vector<std::size_t> counts(k, 0);
    for (auto c : assignment_) {
        if (c >= k)
            fail("partition label " + std::to_string(c) + " out of range 0.." +
                 std::to_string(k - 1));
        ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c)
        if (counts[c] != s)
            fail("cluster " + std::to_string(c) + " has " + std::to_string(counts[c]) +
                 " members, expected " + std::to_string(s));
}

std::vector<std::vector<std::size_t>> Partition::clusters() const
{
    std::vector<std::vector<std::size_t>> out(k_);
    for (std::size_t i = 0; i < assignment_.size(); ++i)
        out[assignment_[i]].push_back(i);
    return out;
}

StrengthReport strength_from_sums(double intra_sum, std::size_t intra_pairs, double total_sum,
                                  std::size_t total_pairs)
{
    StrengthReport r;
    const std::size_t inter_pairs = total_pairs - intra_pairs;
    r.empty_intra = intra_pairs == 0;
    r.intra = intra_pairs == 0 ? 0.0 : intra_sum / static_cast<double>(intra_pairs);
    r.inter = inter_pairs == 0 ? 0.0 : (total_sum - intra_sum) / static_cast<double>(inter_pairs);
    r.strength = r.inter > 0.0 ? (r.inter - r.intra) / r.inter : 0.0;
    return r;
}

namespace {

void check_strength_args(std::size_t n, const Partition& p)
{
    if (p.size() != n)
        fail("partition covers " + std::to_string(p.size()) + " items, set has " +
             std::to_string(n));
    if (n < 2 || p.k() < 2)
        fail("cluster strength needs N >= 2 and K >= 2");
}

template <typename DistanceFn>
StrengthReport strength_pair_loop(std::size_t n, const Partition& p, DistanceFn&& d)
{
    double intra = 0.0;
    double inter = 0.0;
    std::size_t intra_pairs = 0;
    std::size_t inter_pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = d(i, j);
            if (p[i] == p[j]) {
                intra += x;
                ++intra_pairs;
            } else {
                inter += x;
                ++inter_pairs;
            }
        }
    }
    StrengthReport r;
    r.empty_intra = intra_pairs == 0;
    r.intra = intra_pairs == 0 ? 0.0 : intra / static_cast<double>(intra_pairs);
    r.inter = inter / static_cast<double>(inter_pairs);
    r.strength = r.inter > 0.0 ? (r.inter - r.intra) / r.inter : 0.0;
    return r;
}

} // namespace

StrengthReport cluster_strength(const EmbeddingSet& set, const Partition& p)
{
    check_strength_args(set.size(), p);
    return strength_pair_loop(set.size(), p, [&](std::size_t i, std::size_t j) {
        return euclidean(set.row(i), set.row(j));
    });
}

StrengthReport cluster_strength(const DistanceMatrix& dist, const Partition& p)
{
    check_strength_args(dist.n, p);
    return strength_pair_loop(dist.n, p, [&](std::size_t i, std::size_t j) { return dist(i, j); });
}

Partition random_partition(std::size_t n, std::size_t k, std::size_t s, std::uint64_t seed)
{
    if (k == 0 || s == 0 || n != k * s)
        fail("random partition: n = " + std::to_string(n) + " is not k*s = " +
             std::to_string(k) + "*" + std::to_string(s));
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = i / s;
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(labels));
    return Partition(std::move(labels), k, s);
}

void SearchConfig::validate() const
{
    if (restarts < 1)
        fail("search config: restarts must be >= 1");
    if (patience < 1)
        fail("search config: patience must be >= 1");
    if (max_proposals < patience)
        fail("search config: max_proposals (" + std::to_string(max_proposals) +
             ") must be >= patience (" + std::to_string(patience) + ")");
}

SearchTrace run_restart(const DistanceMatrix& dist, std::size_t k, std::size_t s,
                        const SearchConfig& cfg, std::size_t restart,
                        std::vector<std::size_t>& assignment, const ProposalObserver& observer)
{
    const std::size_t n = dist.n;
    // Same draw as random_partition(n, k, s, sub-seed); the generator then
    // continues into the proposals.
    Rng rng(derive_seed(cfg.seed, restart));
    assignment.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        assignment[i] = i / s;
    rng.shuffle(std::span<std::size_t>(assignment));

    // members[c] lists cluster c; slot[i] is i's position in its list.
    std::vector<std::vector<std::size_t>> members(k);
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < n; ++i) {
        slot[i] = members[assignment[i]].size();
        members[assignment[i]].push_back(i);
    }

    // to_cluster[i*k + c] = sum of d(i, x) over members x of cluster c.
    std::vector<double> to_cluster(n * k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            to_cluster[i * k + assignment[j]] += dist(i, j);
        for (std::size_t j = i + 1; j < n; ++j)
            total += dist(i, j);
    }
    double intra = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        intra += to_cluster[i * k + assignment[i]];
    intra *= 0.5;

    const std::size_t total_pairs = n * (n - 1) / 2;
    const std::size_t intra_pairs = k * (s * (s - 1) / 2);
    double current = strength_from_sums(intra, intra_pairs, total, total_pairs).strength;

    SearchTrace trace;
    trace.restart_index = restart;
    std::size_t streak = 0;
    while (trace.proposals_evaluated < cfg.max_proposals) {
        ++trace.proposals_evaluated;
        const std::size_t ca = rng.below(k);
        std::size_t cb = rng.below(k - 1);
        if (cb >= ca)
            ++cb;
        const std::size_t a = members[ca][rng.below(s)];
        const std::size_t b = members[cb][rng.below(s)];

        const double dab = dist(a, b);
        const double delta = (to_cluster[a * k + cb] - dab) + (to_cluster[b * k + ca] - dab) -
                             to_cluster[a * k + ca] - to_cluster[b * k + cb];
        const double candidate_intra = intra + delta;
        const double candidate =
            strength_from_sums(candidate_intra, intra_pairs, total, total_pairs).strength;

        const bool accept = candidate > current;
        if (accept) {
            for (std::size_t i = 0; i < n; ++i) {
                const double da = dist(i, a);
                const double db = dist(i, b);
                to_cluster[i * k + ca] += db - da;
                to_cluster[i * k + cb] += da - db;
            }
            std::swap(members[ca][slot[a]], members[cb][slot[b]]);
            std::swap(slot[a], slot[b]);
            assignment[a] = cb;
            assignment[b] = ca;
            intra = candidate_intra;
            current = candidate;
            trace.accepted_strengths.push_back(current);
            streak = 0;
        } else {
            ++streak;
        }
        if (observer)
            observer(ProposalEvent{restart, trace.proposals_evaluated, accept, current,
                                   std::span<const std::size_t>(assignment), k});
        if (streak >= cfg.patience) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

namespace {

void enumerate_canonical(std::vector<std::size_t>& labels, std::vector<std::size_t>& counts,
                         std::size_t pos, std::size_t used, std::size_t k, std::size_t s,
                         const std::function<void(const std::vector<std::size_t>&)>& visit)
{
    if (pos == labels.size()) {
        visit(labels);
        return;
    }
    const std::size_t limit = std::min(used + 1, k);
    for (std::size_t c = 0; c < limit; ++c) {
        if (counts[c] == s)
            continue;
        labels[pos] = c;
        ++counts[c];
        enumerate_canonical(labels, counts, pos + 1, std::max(used, c + 1), k, s, visit);
        --counts[c];
    }
}

} // namespace

BruteForceResult brute_force_partition(const EmbeddingSet& set, std::size_t k, std::size_t s)
{
    const std::size_t n = set.size();
    if (k < 2 || s < 1 || n != k * s)
        fail("brute force: need n = k*s with k >= 2 (n=" + std::to_string(n) +
             ", k=" + std::to_string(k) + ", s=" + std::to_string(s) + ")");
    const auto count = count_partitions(n, k, s);
    if (count.ordered > brute_force_limit)
        fail_guard("brute force refused: " + count.ordered.str() +
                   " ordered assignments exceed the limit of " +
                   std::to_string(brute_force_limit));

    const auto dist = pairwise_distances(set);
    std::vector<std::size_t> labels(n);
    std::vector<std::size_t> counts(k, 0);
    std::vector<std::size_t> best;
    double best_strength = 0.0;
    std::size_t evaluated = 0;
    enumerate_canonical(labels, counts, 0, 0, k, s, [&](const std::vector<std::size_t>& l) {
        ++evaluated;
        const double st = cluster_strength(dist, Partition(l, k, s)).strength;
        if (best.empty() || st > best_strength) {
            best = l;
            best_strength = st;
        }
    });
    Partition p(std::move(best), k, s);
    auto report = cluster_strength(set, p);
    return {std::move(p), report, evaluated};
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingSet& set, std::string_view id,
                                        std::size_t m)
{
    const auto q = set.index_of(id);
    if (!q)
        fail("unknown document id '" + std::string(id) + "'");
    if (m < 1 || m >= set.size())
        fail("neighbour count must be in 1.." + std::to_string(set.size() - 1) + ", got " +
             std::to_string(m));
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(set.size() - 1);
    for (std::size_t i = 0; i < set.size(); ++i)
        if (i != *q)
            cand.emplace_back(euclidean(set.row(*q), set.row(i)), i);
    std::stable_sort(cand.begin(), cand.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Neighbor> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.push_back({set.ids()[cand[i].second], cand[i].first});
    return out;
}

std::string partition_to_json(const EmbeddingSet& set, const SearchResult& result,
                              std::string_view extra_json)
{
    nlohmann::ordered_json root;
    root["k"] = result.partition.k();
    root["s"] = result.partition.s();
    root["ids"] = set.ids();
    root["assignment"] = result.partition.assignment();
    root["strength"] = result.report.strength;
    root["intra"] = result.report.intra;
    root["inter"] = result.report.inter;
    root["empty_intra"] = result.report.empty_intra;
    nlohmann::ordered_json trace;
    trace["restart_index"] = result.trace.restart_index;
    trace["proposals_evaluated"] = result.trace.proposals_evaluated;
    trace["converged"] = result.trace.converged;
    trace["accepted_strengths"] = result.trace.accepted_strengths;
    auto restarts = nlohmann::ordered_json::array();
    for (const auto& t : result.restarts) {
        nlohmann::ordered_json r;
        r["restart_index"] = t.restart_index;
        r["proposals_evaluated"] = t.proposals_evaluated;
        r["accepted"] = t.accepted_strengths.size();
        r["final_strength"] = t.accepted_strengths.empty()
                                  ? nlohmann::ordered_json(nullptr)
                                  : nlohmann::ordered_json(t.accepted_strengths.back());
        r["converged"] = t.converged;
        restarts.push_back(std::move(r));
    }
    trace["restarts"] = std::move(restarts);
    root["trace"] = std::move(trace);
    auto extra = nlohmann::ordered_json::parse(extra_json);
    for (auto& [key, v] : extra.items())
        root[key] = v;
    return root.dump(2) + "\n";
}

LoadedPartition parse_partition(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("partition file: ") + e.what());
    }
    try {
        LoadedPartition out;
        out.ids = j.at("ids").get<std::vector<std::string>>();
        auto assignment = j.at("assignment").get<std::vector<std::size_t>>();
        if (assignment.size() != out.ids.size())
            fail("partition file: assignment length differs from id count");
        out.partition =
            Partition(std::move(assignment), j.at("k").get<std::size_t>(), j.at("s").get<std::size_t>());
        return out;
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("partition file: ") + e.what());
    }
}

LoadedPartition load_partition(const std::filesystem::path& path)
{
    return parse_partition(read_file(path));
}

} // namespace litclust
