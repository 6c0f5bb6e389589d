#pragma once

#include "litclust/corpus.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace litclust {

struct TokenizedDoc {
    std::string doc_id;
    std::vector<std::string> tokens;
};

/// Whitespace split, ASCII lowercase, leading/trailing punctuation stripped
/// from each token (ASCII punctuation plus common typographic marks such as
/// curly quotes and dashes). Tokens that are pure punctuation vanish.
/// Internal punctuation ("upside-down", "don't") is kept.
std::vector<std::string> tokenize(std::string_view text);

/// ASCII lowercase, other bytes untouched.
std::string ascii_lower(std::string_view s);

std::vector<TokenizedDoc> tokenize_corpus(const Corpus& corpus);

/// Raw-count TF with unsmoothed idf = ln(N / df).
class TfidfTable {
public:
    std::size_t doc_count() const noexcept { return doc_ids_.size(); }
    const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
    const std::map<std::string, std::size_t>& doc_freq() const noexcept { return doc_freq_; }

    double idf(std::string_view token) const;

    /// tf x idf of `token` in document `doc`; nullopt when the token does not
    /// occur in that document (or the document is unknown).
    std::optional<double> find_weight(std::string_view doc_id, std::string_view token) const;

    /// Like find_weight, but absent tokens weigh 0.
    double weight(std::string_view doc_id, std::string_view token) const;

    /// Mean weight over the token occurrences of a document.
    double mean_token_weight(std::string_view doc_id) const;

    /// token -> (tf, weight) for one document.
    struct Entry {
        std::size_t tf = 0;
        double weight = 0.0;
    };
    const std::map<std::string, Entry, std::less<>>& entries(std::string_view doc_id) const;

    friend TfidfTable compute_tfidf(const std::vector<TokenizedDoc>& docs);

private:
    std::vector<std::string> doc_ids_;
    std::map<std::string, std::size_t, std::less<>> doc_index_;
    std::map<std::string, std::size_t> doc_freq_;
    std::vector<std::map<std::string, Entry, std::less<>>> entries_;
};

/// Requires at least one document; throws otherwise.
TfidfTable compute_tfidf(const std::vector<TokenizedDoc>& docs);

/// {"doc_count", "doc_freq": {token: df}, "weights": {doc_id: {token: w}}}
std::string tfidf_to_json(const TfidfTable& table);

} // namespace litclust
