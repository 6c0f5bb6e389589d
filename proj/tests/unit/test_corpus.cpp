#include "litclust/corpus.hpp"
#include "litclust/error.hpp"
#include "litclust/synthetic.hpp"

#include <doctest.h>

#include <string>

using namespace litclust;

namespace {

std::string record(const std::string& id, const std::string& group, const std::string& text = "some text")
{
    std::string r = R"({"id": ")" + id + R"(", "text": ")" + text + "\"";
    if (!group.empty())
        r += R"(, "group": ")" + group + "\"";
    return r + "}";
}

std::string balanced_json(std::size_t k, std::size_t s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < k * s; ++i) {
        if (i)
            out += ",\n";
        out += record("city" + std::to_string(i), "g" + std::to_string(i % k));
    }
    return out + "]";
}

} // namespace

TEST_CASE("load 11 groups of 5")
{
    auto c = parse_corpus(balanced_json(11, 5));
    CHECK(c.size() == 55);
    CHECK(c.groups().size() == 11);
    auto shape = balanced_shape(c);
    CHECK(shape.k == 11);
    CHECK(shape.s == 5);
    // file order is kept
    CHECK(c[0].id == "city0");
    CHECK(c[54].id == "city54");
}

TEST_CASE("single unlabeled record")
{
    auto c = parse_corpus("[" + record("isaura", "") + "]");
    CHECK(c.size() == 1);
    CHECK(c.groups().empty());
    CHECK_FALSE(c.labeled());
    CHECK_THROWS_AS(balanced_shape(c), Error);
}

TEST_CASE("duplicate id is rejected by name")
{
    const auto json = "[" + record("isaura", "") + "," + record("isaura", "") + "]";
    CHECK_THROWS_WITH_AS(parse_corpus(json), doctest::Contains("isaura"), Error);
}

TEST_CASE("partial labels are rejected")
{
    const auto json = "[" + record("a", "x") + "," + record("b", "") + "]";
    CHECK_THROWS_WITH_AS(parse_corpus(json), doctest::Contains("partially"), Error);
}

TEST_CASE("malformed and invalid records")
{
    CHECK_THROWS_WITH_AS(parse_corpus("[{\"id\": \"a\", \"text\": "), doctest::Contains("line"),
                         Error);
    CHECK_THROWS_AS(parse_corpus(R"({"id": "a"})"), Error);
    CHECK_THROWS_WITH_AS(parse_corpus(R"([{"id": "a", "text": "x", "author": "y"}])"),
                         doctest::Contains("unknown key"), Error);
    CHECK_THROWS_WITH_AS(parse_corpus(R"([{"id": "a", "text": "   \n "}])"),
                         doctest::Contains("empty"), Error);
    CHECK_THROWS_AS(parse_corpus(R"([{"id": "", "text": "x"}])"), Error);
    CHECK_THROWS_WITH_AS(parse_corpus(R"([{"text": "x"}])"), doctest::Contains("record 0"), Error);
    CHECK_THROWS_AS(parse_corpus(R"([{"id": 3, "text": "x"}])"), Error);
}

TEST_CASE("balanced shape")
{
    auto c = parse_corpus(balanced_json(2, 3));
    auto shape = balanced_shape(c);
    CHECK(shape.k == 2);
    CHECK(shape.s == 3);

    const auto uneven = "[" + record("a", "x") + "," + record("b", "x") + "," + record("c", "x") +
                        "," + record("d", "y") + "," + record("e", "y") + "," + record("f", "y") +
                        "," + record("g", "y") + "]";
    CHECK_THROWS_WITH_AS(balanced_shape(parse_corpus(uneven)), doctest::Contains("'y' has 4"),
                         Error);
}

TEST_CASE("group sizes sum to the document count")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto synth = make_synthetic_corpus({12, 4, 3, 2.0, seed, 8});
        std::size_t total = 0;
        for (const auto& [_, ids] : synth.corpus.groups())
            total += ids.size();
        CHECK(total == synth.corpus.size());
    }
}

TEST_CASE("loading is deterministic and round-trips through the writer")
{
    auto synth = make_synthetic_corpus({6, 2, 3, 1.0, 3, 4});
    const auto json = corpus_to_json(synth.corpus);
    auto a = parse_corpus(json);
    auto b = parse_corpus(json);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].text == b[i].text);
        CHECK(a[i].group == synth.corpus[i].group);
    }
    CHECK(corpus_to_json(a) == json);
}

TEST_CASE("missing file is an io error")
{
    try {
        load_corpus("/nonexistent/corpus.json");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
    }
}
