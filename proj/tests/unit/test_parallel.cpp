#include "litclust/cluster.hpp"
#include "litclust/metrics.hpp"
#include "litclust/parallel.hpp"
#include "litclust/synthetic.hpp"

#include "unit/helpers.hpp"

#include <doctest.h>

using namespace litclust;

namespace {

struct ThreadScope {
    explicit ThreadScope(int n) { set_threads(n); }
    ~ThreadScope() { set_threads(0); }
};

bool same_result(const SearchResult& a, const SearchResult& b)
{
    if (!(a.partition == b.partition) || a.report.strength != b.report.strength ||
        a.restarts.size() != b.restarts.size())
        return false;
    for (std::size_t i = 0; i < a.restarts.size(); ++i)
        if (a.restarts[i].accepted_strengths != b.restarts[i].accepted_strengths ||
            a.restarts[i].proposals_evaluated != b.restarts[i].proposals_evaluated)
            return false;
    return true;
}

} // namespace

TEST_CASE("parallel kernels agree with the serial references")
{
    auto blobs = make_blobs(6, 5, 8, 1.5, 3);
    SearchConfig cfg;
    cfg.seed = 17;
    cfg.restarts = 7;
    cfg.patience = 400;
    GoldPartition gold(blobs.set.ids(), blobs.labels);

    const auto ref_dist = serial::pairwise_distances(blobs.set);
    const auto ref_search = serial::swap_search(blobs.set, 6, 5, cfg);
    const auto ref_base = serial::random_purity_baseline(gold, 3000, 9);

    for (int threads : {1, 2, 4}) {
        CAPTURE(threads);
        ThreadScope scope(threads);
        CHECK(pairwise_distances(blobs.set).values == ref_dist.values);
        CHECK(same_result(swap_search(blobs.set, 6, 5, cfg), ref_search));
        const auto base = random_purity_baseline(gold, 3000, 9);
        CHECK(base.mean == ref_base.mean);
        CHECK(base.q99 == ref_base.q99);
    }
}

TEST_CASE("observer exceptions propagate out of the parallel region")
{
    ThreadScope scope(4);
    SearchConfig cfg;
    cfg.restarts = 8;
    auto set = testutil::make_set(testutil::random_points(8, 2, 1));
    CHECK_THROWS_AS(swap_search(set, 2, 4, cfg,
                                [](const ProposalEvent& e) {
                                    if (e.restart == 5)
                                        throw std::runtime_error("stop");
                                }),
                    std::runtime_error);
}

TEST_CASE("distance matrix is symmetric with a zero diagonal")
{
    auto set = testutil::make_set(testutil::random_points(15, 4, 2));
    auto d = pairwise_distances(set);
    for (std::size_t i = 0; i < 15; ++i) {
        CHECK(d(i, i) == 0.0);
        for (std::size_t j = 0; j < 15; ++j)
            CHECK(d(i, j) == d(j, i));
    }
}
