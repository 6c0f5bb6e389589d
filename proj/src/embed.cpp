#include "litclust/embed.hpp"

#include "litclust/artifacts.hpp"
#include "litclust/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <map>

namespace litclust {

namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

std::vector<double> number_row(const nlohmann::json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where + ": vector must be an array of numbers");
    std::vector<double> row;
    row.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number())
            fail(where + ": vector entries must be numbers");
        row.push_back(x.get<double>());
    }
    return row;
}

} // namespace

EmbeddingSet::EmbeddingSet(std::vector<std::string> ids, std::size_t dim, std::vector<double> data)
    : ids_(std::move(ids)), dim_(dim), data_(std::move(data))
{
    if (data_.size() != ids_.size() * dim_)
        fail("embedding set: " + std::to_string(data_.size()) + " values do not form " +
             std::to_string(ids_.size()) + " rows of dimension " + std::to_string(dim_));
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_)
        if (!seen.insert(id).second)
            fail("embedding set: duplicate id '" + id + "'");
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!std::isfinite(data_[i]))
            fail("embedding set: non-finite value in row " + std::to_string(i / dim_) + " ('" +
                 ids_[i / dim_] + "')");
}

std::optional<std::size_t> EmbeddingSet::index_of(std::string_view id) const
{
    for (std::size_t i = 0; i < ids_.size(); ++i)
        if (ids_[i] == id)
            return i;
    return std::nullopt;
}

double euclidean(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

const std::vector<double>* StaticLexicon::find(std::string_view token) const
{
    auto it = vectors.find(std::string(token));
    return it == vectors.end() ? nullptr : &it->second;
}

StaticLexicon parse_static_vectors(std::string_view text,
                                   const std::unordered_set<std::string>& vocabulary)
{
    StaticLexicon lex;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_dim = false;
    std::vector<double> values;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        std::size_t i = 0;
        while (i < line.size() && is_space(line[i]))
            ++i;
        if (i == line.size())
            continue;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j]))
            ++j;
        std::string_view token = line.substr(i, j - i);

        values.clear();
        i = j;
        while (true) {
            while (i < line.size() && is_space(line[i]))
                ++i;
            if (i == line.size())
                break;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
            if (ec != std::errc() || (ptr != line.data() + line.size() && !is_space(*ptr)))
                fail("vectors line " + std::to_string(line_no) + ": malformed number");
            values.push_back(v);
            i = static_cast<std::size_t>(ptr - line.data());
        }
        if (values.empty())
            fail("vectors line " + std::to_string(line_no) + ": token without values");
        if (!have_dim) {
            lex.dim = values.size();
            have_dim = true;
        } else if (values.size() != lex.dim) {
            fail("vectors line " + std::to_string(line_no) + ": dimension " +
                 std::to_string(values.size()) + " differs from " + std::to_string(lex.dim) +
                 " on line 1");
        }
        std::string key(token);
        if (vocabulary.contains(key))
            lex.vectors.try_emplace(std::move(key), values);
    }
    if (lex.vectors.empty())
        fail("vectors file has no usable lines for the requested vocabulary");
    return lex;
}

StaticLexicon load_static_vectors(const std::filesystem::path& path,
                                  const std::unordered_set<std::string>& vocabulary)
{
    return parse_static_vectors(read_file(path), vocabulary);
}

TokenEmbeddings embed_static(const TokenizedDoc& doc, const StaticLexicon& lexicon)
{
    TokenEmbeddings te;
    te.doc_id = doc.doc_id;
    for (const auto& tok : doc.tokens) {
        if (const auto* v = lexicon.find(tok)) {
            te.tokens.push_back(tok);
            te.vectors.push_back(*v);
        }
    }
    if (te.tokens.empty())
        fail("document '" + doc.doc_id + "' has no token covered by the vectors file");
    return te;
}

std::vector<double> token_weights(const TokenEmbeddings& te, const TfidfTable& tfidf)
{
    std::vector<double> w;
    w.reserve(te.tokens.size());
    std::optional<double> fallback;
    for (const auto& tok : te.tokens) {
        if (auto x = tfidf.find_weight(te.doc_id, ascii_lower(tok))) {
            w.push_back(*x);
        } else {
            if (!fallback)
                fallback = tfidf.mean_token_weight(te.doc_id);
            w.push_back(*fallback);
        }
    }
    return w;
}

std::vector<double> pool_weighted(const std::vector<std::vector<double>>& vectors,
                                  std::span<const double> weights)
{
    if (vectors.empty())
        fail("pooling needs at least one token vector");
    if (weights.size() != vectors.size())
        fail("pooling: " + std::to_string(weights.size()) + " weights for " +
             std::to_string(vectors.size()) + " vectors");
    const std::size_t dim = vectors.front().size();
    double total = 0.0;
    for (double w : weights)
        total += w;
    const bool plain = total == 0.0;

    std::vector<double> out(dim, 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim)
            fail("pooling: token vectors differ in dimension");
        const double w = plain ? 1.0 : weights[i];
        for (std::size_t d = 0; d < dim; ++d)
            out[d] += w * vectors[i][d];
    }
    const double denom = plain ? static_cast<double>(vectors.size()) : total;
    for (auto& x : out)
        x /= denom;
    return out;
}

std::vector<double> pool_document(const TokenEmbeddings& te, const TfidfTable& tfidf)
{
    return pool_weighted(te.vectors, token_weights(te, tfidf));
}

std::vector<TokenEmbeddings> parse_token_embeddings(std::string_view jsonl)
{
    std::vector<TokenEmbeddings> out;
    std::optional<std::size_t> meta_dim;
    std::unordered_set<std::string> seen;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::size_t record = 0;
    std::size_t pos = 0;
    while (pos < jsonl.size()) {
        auto eol = jsonl.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = jsonl.size();
        auto line = jsonl.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos)
            continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail("interchange line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object())
            fail("interchange line " + std::to_string(line_no) + ": expected an object");
        if (j.contains("meta")) {
            if (!out.empty() || meta_dim)
                fail("interchange line " + std::to_string(line_no) +
                     ": meta object must be the first line");
            const auto& m = j["meta"];
            if (!m.is_object() || !m.contains("dim") || !m["dim"].is_number_unsigned())
                fail("interchange meta: 'dim' must be a non-negative integer");
            meta_dim = m["dim"].get<std::size_t>();
            continue;
        }

        const auto where = "interchange record " + std::to_string(record) + " (line " +
                           std::to_string(line_no) + ")";
        if (!j.contains("id") || !j["id"].is_string())
            fail(where + ": missing string 'id'");
        if (!j.contains("tokens") || !j["tokens"].is_array())
            fail(where + ": missing array 'tokens'");
        if (!j.contains("vectors") || !j["vectors"].is_array())
            fail(where + ": missing array 'vectors'");

        TokenEmbeddings te;
        te.doc_id = j["id"].get<std::string>();
        if (!seen.insert(te.doc_id).second)
            fail(where + ": duplicate doc id '" + te.doc_id + "'");
        for (const auto& t : j["tokens"]) {
            if (!t.is_string())
                fail(where + ": tokens must be strings");
            te.tokens.push_back(t.get<std::string>());
        }
        for (const auto& v : j["vectors"])
            te.vectors.push_back(number_row(v, where));
        if (te.tokens.size() != te.vectors.size())
            fail(where + ": " + std::to_string(te.tokens.size()) + " tokens but " +
                 std::to_string(te.vectors.size()) + " vectors");
        if (te.tokens.empty())
            fail(where + ": no tokens");
        for (const auto& v : te.vectors) {
            if (dim == 0)
                dim = v.size();
            if (v.size() != dim || dim == 0)
                fail(where + ": vector of dimension " + std::to_string(v.size()) +
                     ", expected " + std::to_string(dim));
        }
        out.push_back(std::move(te));
        ++record;
    }
    if (meta_dim && !out.empty() && *meta_dim != dim)
        fail("interchange meta dim " + std::to_string(*meta_dim) + " does not match data dim " +
             std::to_string(dim));
    return out;
}

std::vector<TokenEmbeddings> load_token_embeddings(const std::filesystem::path& path)
{
    return parse_token_embeddings(read_file(path));
}

void check_against_manifest(const std::vector<TokenEmbeddings>& records,
                            std::string_view manifest_json)
{
    nlohmann::json m;
    try {
        m = nlohmann::json::parse(manifest_json);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("manifest: ") + e.what());
    }
    if (!m.is_object() || !m.contains("dim") || !m.contains("docs") || !m["docs"].is_array())
        fail("manifest: expected an object with 'dim' and 'docs'");
    const auto dim = m["dim"].get<std::size_t>();
    const auto& docs = m["docs"];
    if (docs.size() != records.size())
        fail("manifest lists " + std::to_string(docs.size()) + " documents, file has " +
             std::to_string(records.size()));
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (docs[i].value("id", std::string()) != r.doc_id)
            fail("manifest record " + std::to_string(i) + ": id mismatch ('" + r.doc_id + "')");
        if (docs[i].value("tokens", std::size_t{0}) != r.tokens.size())
            fail("manifest record " + std::to_string(i) + ": token count mismatch for '" +
                 r.doc_id + "'");
        if (r.dim() != dim)
            fail("manifest dim " + std::to_string(dim) + " differs from record dim " +
                 std::to_string(r.dim()));
    }
}

EmbeddingSet embed_corpus_static(const Corpus& corpus, const TfidfTable& tfidf,
                                 const StaticLexicon& lexicon, std::vector<Coverage>* coverage)
{
    const auto docs = tokenize_corpus(corpus);
    const std::size_t n = docs.size();
    const std::size_t dim = lexicon.dim;
    std::vector<double> data(n * dim);
    std::vector<Coverage> cov(n);
    std::vector<std::string> errors(n);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) {
        cov[i] = {docs[i].doc_id, docs[i].tokens.size(), 0};
        try {
            auto te = embed_static(docs[i], lexicon);
            cov[i].covered = te.tokens.size();
            auto row = pool_document(te, tfidf);
            std::copy(row.begin(), row.end(), data.begin() + static_cast<std::ptrdiff_t>(i * dim));
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            fail(e);
    if (coverage)
        *coverage = std::move(cov);

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& d : docs)
        ids.push_back(d.doc_id);
    return EmbeddingSet(std::move(ids), dim, std::move(data));
}

EmbeddingSet embed_corpus_contextual(const Corpus& corpus, const TfidfTable& tfidf,
                                     const std::vector<TokenEmbeddings>& records)
{
    std::map<std::string, const TokenEmbeddings*, std::less<>> by_id;
    for (const auto& r : records)
        by_id.emplace(r.doc_id, &r);
    if (records.empty())
        fail("interchange file has no records");
    const std::size_t dim = records.front().dim();

    std::vector<std::string> ids;
    std::vector<double> data;
    data.reserve(corpus.size() * dim);
    for (const auto& d : corpus.documents()) {
        auto it = by_id.find(d.id);
        if (it == by_id.end())
            fail("interchange file has no record for document '" + d.id + "'");
        auto row = pool_document(*it->second, tfidf);
        data.insert(data.end(), row.begin(), row.end());
        ids.push_back(d.id);
        by_id.erase(it);
    }
    if (!by_id.empty())
        fail("interchange record '" + by_id.begin()->first + "' is not in the corpus");
    return EmbeddingSet(std::move(ids), dim, std::move(data));
}

std::string embeddings_to_json(const EmbeddingSet& set, std::string_view extra_json)
{
    nlohmann::ordered_json root;
    root["ids"] = set.ids();
    root["dim"] = set.dim();
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto r = set.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    root["rows"] = std::move(rows);
    auto extra = nlohmann::ordered_json::parse(extra_json);
    for (auto& [k, v] : extra.items())
        root[k] = v;
    return root.dump() + "\n";
}

EmbeddingSet parse_embeddings(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("embedding cache: ") + e.what());
    }
    if (!j.is_object() || !j.contains("ids") || !j.contains("dim") || !j.contains("rows"))
        fail("embedding cache: expected an object with 'ids', 'dim' and 'rows'");
    auto ids = j["ids"].get<std::vector<std::string>>();
    const auto dim = j["dim"].get<std::size_t>();
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != ids.size())
        fail("embedding cache: row count differs from id count");
    std::vector<double> data;
    data.reserve(ids.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto r = number_row(rows[i], "embedding cache row " + std::to_string(i));
        if (r.size() != dim)
            fail("embedding cache row " + std::to_string(i) + ": dimension " +
                 std::to_string(r.size()) + ", expected " + std::to_string(dim));
        data.insert(data.end(), r.begin(), r.end());
    }
    return EmbeddingSet(std::move(ids), dim, std::move(data));
}

EmbeddingSet load_embeddings(const std::filesystem::path& path)
{
    return parse_embeddings(read_file(path));
}

} // namespace litclust
