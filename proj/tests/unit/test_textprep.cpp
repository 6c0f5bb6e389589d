#include "litclust/error.hpp"
#include "litclust/rng.hpp"
#include "litclust/textprep.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace litclust;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize rules")
{
    CHECK(tokenize("Cities & the Dead.") == Tokens{"cities", "the", "dead"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("upside-down") == Tokens{"upside-down"});
    CHECK(tokenize("  \"Zobeide,\"  she said...\n(twice) ") ==
          Tokens{"zobeide", "she", "said", "twice"});
    CHECK(tokenize("don't -- stop") == Tokens{"don't", "stop"});
    CHECK(tokenize("\xE2\x80\x9CValdrada\xE2\x80\x9D \xE2\x80\x94 lake\xE2\x80\xA6") ==
          Tokens{"valdrada", "lake"});
    // non-ASCII letters pass through untouched
    CHECK(tokenize("Caf\xC3\xA9!") == Tokens{"caf\xC3\xA9"});
}

TEST_CASE("tokenize is idempotent on its own output")
{
    Rng rng(11);
    const std::string alphabet = "abcXYZ-.,;!?'\" \t\n&";
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const auto len = rng.below(60);
        for (std::uint64_t i = 0; i < len; ++i)
            text += alphabet[rng.below(alphabet.size())];
        const auto once = tokenize(text);
        std::string joined;
        for (const auto& t : once)
            joined += t + " ";
        CHECK(tokenize(joined) == once);
        for (const auto& t : once)
            CHECK(tokenize(t) == Tokens{t});
    }
}

TEST_CASE("tf-idf formula")
{
    SUBCASE("token in every document weighs zero")
    {
        std::vector<TokenizedDoc> docs;
        for (int i = 0; i < 4; ++i)
            docs.push_back({"d" + std::to_string(i), {"the", "x" + std::to_string(i)}});
        auto t = compute_tfidf(docs);
        CHECK(t.idf("the") == 0.0);
        CHECK(t.weight("d2", "the") == 0.0);
        CHECK(t.weight("d2", "x2") == doctest::Approx(std::log(4.0)));
    }
    SUBCASE("three occurrences in one of two documents")
    {
        auto t = compute_tfidf({{"A", {"w", "w", "w", "z"}}, {"B", {"z"}}});
        // hand evaluation: 3 * ln(2/1)
        CHECK(t.weight("A", "w") == doctest::Approx(2.0794415416798357).epsilon(1e-12));
        CHECK(t.weight("B", "w") == 0.0);
        CHECK_FALSE(t.find_weight("B", "w").has_value());
    }
    SUBCASE("single document")
    {
        auto t = compute_tfidf({{"only", {"a", "b", "a"}}});
        CHECK(t.weight("only", "a") == 0.0);
        CHECK(t.weight("only", "b") == 0.0);
    }
    CHECK_THROWS_AS(compute_tfidf({}), Error);
}

TEST_CASE("document frequency matches a brute-force scan; weight zero iff absent or df = N")
{
    Rng rng(5);
    const Tokens vocab{"a", "b", "c", "d", "e", "f", "g"};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<TokenizedDoc> docs;
        const auto n = 1 + rng.below(6);
        for (std::uint64_t i = 0; i < n; ++i) {
            TokenizedDoc d{"doc" + std::to_string(i), {}};
            const auto len = 1 + rng.below(10);
            for (std::uint64_t j = 0; j < len; ++j)
                d.tokens.push_back(vocab[rng.below(vocab.size())]);
            docs.push_back(d);
        }
        auto t = compute_tfidf(docs);
        for (const auto& tok : vocab) {
            std::size_t df = 0;
            for (const auto& d : docs)
                df += std::find(d.tokens.begin(), d.tokens.end(), tok) != d.tokens.end();
            auto it = t.doc_freq().find(tok);
            CHECK((it == t.doc_freq().end() ? 0 : it->second) == df);
            for (const auto& d : docs) {
                const auto tf = std::count(d.tokens.begin(), d.tokens.end(), tok);
                const double w = t.weight(d.doc_id, tok);
                CHECK(w >= 0.0);
                CHECK((w == 0.0) == (tf == 0 || df == docs.size()));
                if (tf > 0)
                    CHECK(w == doctest::Approx(tf * std::log(double(docs.size()) / df)));
            }
        }
    }
}

TEST_CASE("mean token weight counts occurrences")
{
    auto t = compute_tfidf({{"A", {"x", "x", "y"}}, {"B", {"y"}}});
    // x: tf 2, weight 2 ln 2, two occurrences; y weight 0
    CHECK(t.mean_token_weight("A") == doctest::Approx((2 * 2 * std::log(2.0)) / 3));
}

TEST_CASE("tf-idf json dump")
{
    auto t = compute_tfidf({{"A", {"x"}}, {"B", {"y"}}});
    const auto json = tfidf_to_json(t);
    CHECK(json.find("\"doc_count\": 2") != std::string::npos);
    CHECK(json.find("\"x\": 1") != std::string::npos);
}
