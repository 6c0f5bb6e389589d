#include "litclust/embed.hpp"
#include "litclust/error.hpp"
#include "litclust/synthetic.hpp"

#include "unit/helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace litclust;
using Vec = std::vector<double>;

TEST_CASE("static vectors loader")
{
    const std::unordered_set<std::string> vocab{"a", "b"};
    SUBCASE("two lines")
    {
        auto lex = parse_static_vectors("a 1 2 3\nb 4 5 6\n", vocab);
        CHECK(lex.dim == 3);
        CHECK(lex.vectors.size() == 2);
        CHECK(*lex.find("b") == Vec{4, 5, 6});
    }
    SUBCASE("vocabulary restriction")
    {
        auto lex = parse_static_vectors("a 1 2\nzz 3 4\nb -1 0.5e1\n", vocab);
        CHECK(lex.vectors.size() == 2);
        CHECK(lex.find("zz") == nullptr);
        CHECK(*lex.find("b") == Vec{-1, 5});
    }
    SUBCASE("dimension change on line 2")
    {
        CHECK_THROWS_WITH_AS(parse_static_vectors("a 1 2 3\nb 1 2 3 4\n", vocab),
                             doctest::Contains("line 2"), Error);
    }
    SUBCASE("dimension change outside the vocabulary still fails")
    {
        CHECK_THROWS_AS(parse_static_vectors("a 1 2\nq 1\n", vocab), Error);
    }
    SUBCASE("no usable line")
    {
        CHECK_THROWS_WITH_AS(parse_static_vectors("x 1 2\ny 3 4\n", vocab),
                             doctest::Contains("no usable"), Error);
    }
    SUBCASE("malformed number")
    {
        CHECK_THROWS_WITH_AS(parse_static_vectors("a 1 x2\n", vocab), doctest::Contains("line 1"),
                             Error);
    }
}

TEST_CASE("embed_static drops out-of-lexicon tokens")
{
    StaticLexicon lex{2, {{"a", {1, 2}}}};
    auto te = embed_static({"doc", {"a", "b"}}, lex);
    CHECK(te.tokens == std::vector<std::string>{"a"});
    CHECK(te.vectors == std::vector<Vec>{{1, 2}});
    CHECK_THROWS_WITH_AS(embed_static({"lonely", {"b", "c"}}, lex), doctest::Contains("lonely"),
                         Error);
}

TEST_CASE("synthetic document coverage equals a brute-force lexicon scan")
{
    auto synth = make_synthetic_corpus({10, 2, 5, 2.0, 17, 6});
    const auto docs = tokenize_corpus(synth.corpus);
    std::unordered_set<std::string> vocab;
    for (const auto& d : docs)
        vocab.insert(d.tokens.begin(), d.tokens.end());
    auto lex = parse_static_vectors(synth.vectors_text, vocab);

    // independent scan of the vectors text for the set of covered words
    std::set<std::string> in_file;
    std::istringstream lines(synth.vectors_text);
    for (std::string line; std::getline(lines, line);)
        in_file.insert(line.substr(0, line.find(' ')));

    bool some_oov = false;
    for (const auto& d : docs) {
        std::size_t expected = 0;
        for (const auto& t : d.tokens)
            expected += in_file.contains(t);
        some_oov = some_oov || expected < d.tokens.size();
        CHECK(embed_static(d, lex).tokens.size() == expected);
    }
    CHECK(some_oov);
}

TEST_CASE("pooling")
{
    const auto single = pool_weighted({{3, -1}}, Vec{0.7});
    CHECK(single[0] == doctest::Approx(3.0));
    CHECK(single[1] == doctest::Approx(-1.0));
    CHECK(pool_weighted({{0, 4}, {4, 0}}, Vec{1, 3}) == Vec{3, 1});
    // all-zero weights fall back to the plain mean
    CHECK(pool_weighted({{0, 2}, {4, 0}}, Vec{0, 0}) == Vec{2, 1});
    CHECK_THROWS_AS(pool_weighted({}, Vec{}), Error);
    CHECK_THROWS_AS(pool_weighted({{1}}, Vec{1, 2}), Error);
}

TEST_CASE("pooling keeps the dimension and ignores uniform weight scaling")
{
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 1 + rng.below(6);
        const auto d = 1 + rng.below(5);
        std::vector<Vec> vs(n, Vec(d));
        Vec w(n);
        for (auto& v : vs)
            for (auto& x : v)
                x = rng.normal();
        for (auto& x : w)
            x = rng.uniform() + 0.01;
        const double c = 0.1 + 10 * rng.uniform();
        Vec scaled(w);
        for (auto& x : scaled)
            x *= c;
        const auto a = pool_weighted(vs, w);
        const auto b = pool_weighted(vs, scaled);
        REQUIRE(a.size() == d);
        for (std::size_t i = 0; i < d; ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}

TEST_CASE("contextual tokens: lowercase lookup, unknown tokens get the mean weight")
{
    auto tfidf = compute_tfidf({{"A", {"sky", "sky", "lake"}}, {"B", {"lake"}}});
    TokenEmbeddings te{"A", {"Sky", "##ey", "lake"}, {{1, 0}, {0, 1}, {5, 5}}};
    const auto w = token_weights(te, tfidf);
    const double sky = 2 * std::log(2.0);
    CHECK(w[0] == doctest::Approx(sky));
    CHECK(w[1] == doctest::Approx(tfidf.mean_token_weight("A")));
    CHECK(w[2] == 0.0);
    const auto pooled = pool_document(te, tfidf);
    const double total = w[0] + w[1];
    CHECK(pooled[0] == doctest::Approx(w[0] / total));
    CHECK(pooled[1] == doctest::Approx(w[1] / total));
}

TEST_CASE("interchange files")
{
    const std::string meta = R"({"meta": {"dim": 2, "model": "toy"}})";
    const std::string r1 = R"({"id": "a", "tokens": ["x", "y"], "vectors": [[1, 2], [3, 4]]})";
    const std::string r2 = R"({"id": "b", "tokens": ["z"], "vectors": [[5, 6]]})";

    SUBCASE("valid with meta line")
    {
        auto recs = parse_token_embeddings(meta + "\n" + r1 + "\n" + r2 + "\n");
        REQUIRE(recs.size() == 2);
        CHECK(recs[0].dim() == 2);
        CHECK(recs[1].tokens == std::vector<std::string>{"z"});
    }
    SUBCASE("dimension 8")
    {
        std::string line1 = R"({"id": "p", "tokens": ["t"], "vectors": [[0,1,2,3,4,5,6,7]]})";
        std::string line2 = R"({"id": "q", "tokens": ["u"], "vectors": [[7,6,5,4,3,2,1,0]]})";
        auto recs = parse_token_embeddings(line1 + "\n" + line2);
        CHECK(recs.size() == 2);
        CHECK(recs[1].dim() == 8);
    }
    SUBCASE("token/vector mismatch names the record")
    {
        const std::string bad =
            R"({"id": "c", "tokens": ["a","b","c","d","e"], "vectors": [[1,1],[1,1],[1,1],[1,1]]})";
        CHECK_THROWS_WITH_AS(parse_token_embeddings(r1 + "\n" + bad), doctest::Contains("record 1"),
                             Error);
    }
    SUBCASE("inconsistent dimension")
    {
        const std::string bad = R"({"id": "c", "tokens": ["a"], "vectors": [[1,2,3]]})";
        CHECK_THROWS_AS(parse_token_embeddings(r1 + "\n" + bad), Error);
    }
    SUBCASE("duplicate id")
    {
        CHECK_THROWS_WITH_AS(parse_token_embeddings(r1 + "\n" + r1), doctest::Contains("duplicate"),
                             Error);
    }
    SUBCASE("meta dim must match")
    {
        CHECK_THROWS_AS(parse_token_embeddings(R"({"meta": {"dim": 3}})" "\n" + r1), Error);
    }
    SUBCASE("manifest comparison")
    {
        auto recs = parse_token_embeddings(r1 + "\n" + r2);
        check_against_manifest(recs, R"({"dim": 2, "model_name": "toy", "docs": [{"id": "a", "tokens": 2}, {"id": "b", "tokens": 1}]})");
        CHECK_THROWS_AS(check_against_manifest(recs, R"({"dim": 2, "docs": [{"id": "a", "tokens": 3}, {"id": "b", "tokens": 1}]})"),
                        Error);
        CHECK_THROWS_AS(check_against_manifest(recs, R"({"dim": 4, "docs": [{"id": "a", "tokens": 2}, {"id": "b", "tokens": 1}]})"),
                        Error);
    }
}

TEST_CASE("contextual corpus embedding follows corpus order")
{
    Corpus corpus({{"b", "", std::nullopt, "lake sky"}, {"a", "", std::nullopt, "sky"}});
    auto tfidf = compute_tfidf(tokenize_corpus(corpus));
    auto recs = parse_token_embeddings(
        R"({"id": "a", "tokens": ["sky"], "vectors": [[1, 1]]})" "\n"
        R"({"id": "b", "tokens": ["lake", "sky"], "vectors": [[2, 0], [0, 2]]})");
    auto set = embed_corpus_contextual(corpus, tfidf, recs);
    CHECK(set.ids() == std::vector<std::string>{"b", "a"});
    // "lake" carries all the weight in b; "sky" is in every document
    CHECK(set.row(0)[0] == doctest::Approx(2.0));
    CHECK(set.row(0)[1] == doctest::Approx(0.0));

    recs.pop_back();
    CHECK_THROWS_WITH_AS(embed_corpus_contextual(corpus, tfidf, recs), doctest::Contains("'b'"),
                         Error);
}

TEST_CASE("embedding set invariants and cache round trip")
{
    CHECK_THROWS_AS(EmbeddingSet({"a", "a"}, 1, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(EmbeddingSet({"a"}, 2, {1.0}), Error);
    CHECK_THROWS_AS(EmbeddingSet({"a"}, 1, {std::nan("")}), Error);

    // round trip is exact for arbitrary doubles
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto set = testutil::make_set(testutil::random_points(7, 5, seed));
        auto back = parse_embeddings(embeddings_to_json(set, R"({"note": "x"})"));
        CHECK(back.ids() == set.ids());
        CHECK(back.data() == set.data());
    }
    CHECK_THROWS_AS(parse_embeddings(R"({"ids": ["a"], "dim": 2, "rows": [[1]]})"), Error);
}

TEST_CASE("static corpus embedding is bit-identical across runs")
{
    auto synth = make_synthetic_corpus({12, 3, 4, 3.0, 9, 8});
    auto tfidf = compute_tfidf(tokenize_corpus(synth.corpus));
    std::unordered_set<std::string> vocab;
    for (const auto& [t, _] : tfidf.doc_freq())
        vocab.insert(t);
    auto lex = parse_static_vectors(synth.vectors_text, vocab);
    std::vector<Coverage> cov;
    auto a = embed_corpus_static(synth.corpus, tfidf, lex, &cov);
    auto b = embed_corpus_static(synth.corpus, tfidf, lex);
    CHECK(a.data() == b.data());
    CHECK(a.dim() == 8);
    REQUIRE(cov.size() == 12);
    CHECK(cov[0].covered <= cov[0].tokens);
}
