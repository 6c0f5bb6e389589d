#pragma once

#include "litclust/corpus.hpp"
#include "litclust/embed.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace litclust {

/// Planted-theme text corpus plus a matching static vectors file.
///
/// Each of the k themes owns a small vocabulary whose vectors scatter with
/// unit per-coordinate noise around a theme centre; centres are Gaussian
/// with per-coordinate scale sep / sqrt(2), so two centres sit about
/// sep x (word spread) apart. Documents mix their own theme's words with
/// shared filler words, words from other themes and out-of-vocabulary words
/// (which the vectors file omits). Document i belongs to theme i % k.
struct SyntheticCorpusParams {
    std::size_t n = 55;
    std::size_t k = 11;
    std::size_t s = 5;
    double sep = 4.0;
    std::uint64_t seed = 0;
    std::size_t dim = 50;
};

struct SyntheticCorpus {
    Corpus corpus;
    std::string vectors_text; // "token v1 ... vD" lines
};

SyntheticCorpus make_synthetic_corpus(const SyntheticCorpusParams& params);

/// k Gaussian blobs of s points in `dim` dimensions, unit per-coordinate
/// noise (spread sqrt(dim)), centres on scaled coordinate axes so every pair
/// of centres is exactly sep x spread apart. Requires dim >= k.
struct Blobs {
    EmbeddingSet set;
    std::vector<std::string> labels;
};

Blobs make_blobs(std::size_t k, std::size_t s, std::size_t dim, double sep, std::uint64_t seed);

} // namespace litclust
