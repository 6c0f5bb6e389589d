#include "litclust/textprep.hpp"

#include "litclust/error.hpp"

#include <json.hpp>

#include <array>
#include <cmath>

namespace litclust {

namespace {

bool is_space(unsigned char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(unsigned char c)
{
    return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) || (c >= 0x5b && c <= 0x60) ||
           (c >= 0x7b && c <= 0x7e);
}

// UTF-8 encodings of typographic punctuation stripped like ASCII punctuation.
constexpr std::array<std::string_view, 12> kWidePunct = {
    "‘", "’", "“", "”", // curly quotes
    "–", "—", "…",           // en dash, em dash, ellipsis
    "«", "»", "¡", "¿", // guillemets, inverted marks
    "·",
};

std::size_t punct_prefix(std::string_view s)
{
    if (s.empty())
        return 0;
    if (is_ascii_punct(static_cast<unsigned char>(s.front())))
        return 1;
    for (auto p : kWidePunct)
        if (s.starts_with(p))
            return p.size();
    return 0;
}

std::size_t punct_suffix(std::string_view s)
{
    if (s.empty())
        return 0;
    if (is_ascii_punct(static_cast<unsigned char>(s.back())))
        return 1;
    for (auto p : kWidePunct)
        if (s.ends_with(p))
            return p.size();
    return 0;
}

std::string_view strip_punct(std::string_view s)
{
    while (auto n = punct_prefix(s))
        s.remove_prefix(n);
    while (auto n = punct_suffix(s))
        s.remove_suffix(n);
    return s;
}

} // namespace

std::string ascii_lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z')
            c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::vector<std::string> tokenize(std::string_view text)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t j = i;
        while (j < text.size() && !is_space(static_cast<unsigned char>(text[j])))
            ++j;
        if (j > i) {
            auto core = strip_punct(text.substr(i, j - i));
            if (!core.empty())
                tokens.push_back(ascii_lower(core));
        }
        i = j;
    }
    return tokens;
}

std::vector<TokenizedDoc> tokenize_corpus(const Corpus& corpus)
{
    std::vector<TokenizedDoc> out(corpus.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < corpus.size(); ++i)
        out[i] = TokenizedDoc{corpus[i].id, tokenize(corpus[i].text)};
    return out;
}

TfidfTable compute_tfidf(const std::vector<TokenizedDoc>& docs)
{
    if (docs.empty())
        fail("tf-idf needs at least one document");
    TfidfTable t;
    t.entries_.resize(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (!t.doc_index_.emplace(docs[d].doc_id, d).second)
            fail("tf-idf: duplicate document id '" + docs[d].doc_id + "'");
        t.doc_ids_.push_back(docs[d].doc_id);
        for (const auto& tok : docs[d].tokens)
            ++t.entries_[d][tok].tf;
        for (const auto& [tok, _] : t.entries_[d])
            ++t.doc_freq_[tok];
    }
    const double n = static_cast<double>(docs.size());
    for (auto& doc : t.entries_) {
        for (auto& [tok, e] : doc) {
            const std::size_t df = t.doc_freq_.at(tok);
            // df == N gives exactly 0 rather than a rounding residue of ln(1).
            const double idf = df == docs.size() ? 0.0 : std::log(n / static_cast<double>(df));
            e.weight = static_cast<double>(e.tf) * idf;
        }
    }
    return t;
}

double TfidfTable::idf(std::string_view token) const
{
    auto it = doc_freq_.find(std::string(token));
    if (it == doc_freq_.end() || it->second == doc_count())
        return 0.0;
    return std::log(static_cast<double>(doc_count()) / static_cast<double>(it->second));
}

const std::map<std::string, TfidfTable::Entry, std::less<>>&
TfidfTable::entries(std::string_view doc_id) const
{
    auto it = doc_index_.find(doc_id);
    if (it == doc_index_.end())
        fail("tf-idf: unknown document '" + std::string(doc_id) + "'");
    return entries_[it->second];
}

std::optional<double> TfidfTable::find_weight(std::string_view doc_id, std::string_view token) const
{
    auto d = doc_index_.find(doc_id);
    if (d == doc_index_.end())
        return std::nullopt;
    const auto& doc = entries_[d->second];
    auto it = doc.find(token);
    if (it == doc.end())
        return std::nullopt;
    return it->second.weight;
}

double TfidfTable::weight(std::string_view doc_id, std::string_view token) const
{
    return find_weight(doc_id, token).value_or(0.0);
}

double TfidfTable::mean_token_weight(std::string_view doc_id) const
{
    const auto& doc = entries(doc_id);
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& [_, e] : doc) {
        total += static_cast<double>(e.tf) * e.weight;
        count += e.tf;
    }
    return count == 0 ? 0.0 : total / static_cast<double>(count);
}

std::string tfidf_to_json(const TfidfTable& table)
{
    nlohmann::ordered_json root;
    root["doc_count"] = table.doc_count();
    nlohmann::ordered_json df = nlohmann::ordered_json::object();
    for (const auto& [tok, n] : table.doc_freq())
        df[tok] = n;
    root["doc_freq"] = std::move(df);
    nlohmann::ordered_json weights = nlohmann::ordered_json::object();
    for (const auto& id : table.doc_ids()) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::object();
        for (const auto& [tok, e] : table.entries(id))
            doc[tok] = e.weight;
        weights[id] = std::move(doc);
    }
    root["weights"] = std::move(weights);
    return root.dump(2) + "\n";
}

} // namespace litclust
