#pragma once

#include "litclust/embed.hpp"
#include "litclust/rng.hpp"
#include "oracles/oracles.hpp"

#include <string>
#include <vector>

namespace testutil {

inline litclust::EmbeddingSet make_set(const oracle::Points& pts)
{
    std::vector<std::string> ids;
    std::vector<double> data;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ids.push_back("d" + std::to_string(i));
        data.insert(data.end(), pts[i].begin(), pts[i].end());
    }
    return litclust::EmbeddingSet(std::move(ids), pts.empty() ? 0 : pts[0].size(), std::move(data));
}

inline oracle::Points random_points(std::size_t n, std::size_t dim, std::uint64_t seed)
{
    litclust::Rng rng(seed);
    oracle::Points pts(n, std::vector<double>(dim));
    for (auto& p : pts)
        for (auto& x : p)
            x = rng.normal();
    return pts;
}

} // namespace testutil
