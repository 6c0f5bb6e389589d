#include "litclust/synthetic.hpp"

#include "litclust/error.hpp"
#include "litclust/rng.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <set>
#include <sstream>

namespace litclust {

namespace {

constexpr std::size_t kThemeWords = 24;
constexpr std::size_t kFillerWords = 80;
constexpr std::size_t kOovWords = 40;

std::string pseudo_word(Rng& rng, std::set<std::string>& used)
{
    static constexpr const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p",
                                             "r", "s", "t", "v", "z", "br", "st", "tr", "ch"};
    static constexpr const char* vowels[] = {"a", "e", "i", "o", "u", "ai", "ou", "ea"};
    while (true) {
        std::string w;
        const auto syllables = 2 + rng.below(2);
        for (std::uint64_t i = 0; i < syllables; ++i) {
            w += onsets[rng.below(std::size(onsets))];
            w += vowels[rng.below(std::size(vowels))];
        }
        if (rng.below(2) == 0)
            w += onsets[rng.below(10)];
        if (used.insert(w).second)
            return w;
    }
}

std::vector<std::string> word_list(Rng& rng, std::set<std::string>& used, std::size_t count)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(pseudo_word(rng, used));
    return out;
}

void write_vector(std::ostringstream& out, const std::string& word, const std::vector<double>& v)
{
    out << word;
    char buf[32];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, " %.6f", x);
        out << buf;
    }
    out << '\n';
}

std::string two_digits(std::size_t i)
{
    std::ostringstream s;
    s << std::setw(2) << std::setfill('0') << i;
    return s.str();
}

} // namespace

SyntheticCorpus make_synthetic_corpus(const SyntheticCorpusParams& p)
{
    if (p.k == 0 || p.s == 0 || p.n != p.k * p.s)
        fail("synthetic corpus: n = " + std::to_string(p.n) + " is not k*s = " +
             std::to_string(p.k) + "*" + std::to_string(p.s));
    if (p.dim == 0)
        fail("synthetic corpus: dim must be positive");
    if (!(p.sep >= 0.0) || !std::isfinite(p.sep))
        fail("synthetic corpus: sep must be a non-negative number");

    Rng rng(p.seed);
    std::set<std::string> used;
    std::vector<std::vector<std::string>> themes;
    for (std::size_t g = 0; g < p.k; ++g)
        themes.push_back(word_list(rng, used, kThemeWords));
    const auto filler = word_list(rng, used, kFillerWords);
    const auto oov = word_list(rng, used, kOovWords);

    std::ostringstream vectors;
    const double centre_scale = p.sep / std::sqrt(2.0);
    for (std::size_t g = 0; g < p.k; ++g) {
        std::vector<double> centre(p.dim);
        for (auto& x : centre)
            x = centre_scale * rng.normal();
        for (const auto& w : themes[g]) {
            std::vector<double> v(p.dim);
            for (std::size_t d = 0; d < p.dim; ++d)
                v[d] = centre[d] + rng.normal();
            write_vector(vectors, w, v);
        }
    }
    for (const auto& w : filler) {
        std::vector<double> v(p.dim);
        for (auto& x : v)
            x = rng.normal();
        write_vector(vectors, w, v);
    }

    std::vector<Document> docs;
    for (std::size_t i = 0; i < p.n; ++i) {
        const std::size_t g = i % p.k;
        const std::size_t length = 60 + rng.below(41);
        std::string text;
        std::size_t in_sentence = 0;
        std::size_t sentence_len = 8 + rng.below(7);
        for (std::size_t t = 0; t < length; ++t) {
            const auto roll = rng.below(100);
            std::string w;
            if (roll < 35)
                w = themes[g][rng.below(kThemeWords)];
            else if (roll < 80)
                w = filler[rng.below(kFillerWords)];
            else if (roll < 90 && p.k > 1) {
                std::size_t h = rng.below(p.k - 1);
                if (h >= g)
                    ++h;
                w = themes[h][rng.below(kThemeWords)];
            } else
                w = oov[rng.below(kOovWords)];

            if (in_sentence == 0) {
                w[0] = static_cast<char>(w[0] - 'a' + 'A');
                if (!text.empty())
                    text += ' ';
            } else {
                text += rng.below(12) == 0 ? ", " : " ";
            }
            text += w;
            if (++in_sentence == sentence_len || t + 1 == length) {
                text += '.';
                in_sentence = 0;
                sentence_len = 8 + rng.below(7);
            }
        }
        docs.push_back(Document{"doc-" + two_digits(i + 1), "Synthetic city " + std::to_string(i + 1),
                                "theme-" + two_digits(g + 1), std::move(text)});
    }
    return {Corpus(std::move(docs)), vectors.str()};
}

Blobs make_blobs(std::size_t k, std::size_t s, std::size_t dim, double sep, std::uint64_t seed)
{
    if (k == 0 || s == 0)
        fail("blobs: k and s must be positive");
    if (dim < k)
        fail("blobs: dim must be >= k");
    Rng rng(seed);
    const double spread = std::sqrt(static_cast<double>(dim));
    const double offset = sep * spread / std::sqrt(2.0);
    Blobs b;
    std::vector<std::string> ids;
    std::vector<double> data;
    data.reserve(k * s * dim);
    for (std::size_t i = 0; i < k * s; ++i) {
        const std::size_t g = i % k;
        for (std::size_t d = 0; d < dim; ++d)
            data.push_back((d == g ? offset : 0.0) + rng.normal());
        ids.push_back("p" + std::to_string(i));
        b.labels.push_back("blob-" + two_digits(g));
    }
    b.set = EmbeddingSet(std::move(ids), dim, std::move(data));
    return b;
}

} // namespace litclust
