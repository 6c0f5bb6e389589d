#pragma once

#include "litclust/textprep.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace litclust {

/// N x D row-major matrix of document vectors; row i belongs to ids[i].
class EmbeddingSet {
public:
    EmbeddingSet() = default;
    /// Checks shape, id uniqueness and finiteness.
    EmbeddingSet(std::vector<std::string> ids, std::size_t dim, std::vector<double> data);

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<double>& data() const noexcept { return data_; }

    std::span<const double> row(std::size_t i) const
    {
        return {data_.data() + i * dim_, dim_};
    }

    std::optional<std::size_t> index_of(std::string_view id) const;

private:
    std::vector<std::string> ids_;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

double euclidean(std::span<const double> a, std::span<const double> b);

struct StaticLexicon {
    std::size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    const std::vector<double>* find(std::string_view token) const;
};

/// Reads "token v1 ... vD" lines, keeping only tokens in `vocabulary`.
/// D comes from the first line and every line must agree with it.
StaticLexicon load_static_vectors(const std::filesystem::path& path,
                                  const std::unordered_set<std::string>& vocabulary);
StaticLexicon parse_static_vectors(std::string_view text,
                                   const std::unordered_set<std::string>& vocabulary);

struct TokenEmbeddings {
    std::string doc_id;
    std::vector<std::string> tokens;
    std::vector<std::vector<double>> vectors;

    std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
};

/// Looks tokens up in the lexicon, dropping the ones it lacks.
TokenEmbeddings embed_static(const TokenizedDoc& doc, const StaticLexicon& lexicon);

/// Per-token pooling weights. A token is looked up in the document's tf-idf
/// entries after ASCII lowercasing; tokens the table has never seen for this
/// document (subword pieces, for instance) get the document's mean token weight.
std::vector<double> token_weights(const TokenEmbeddings& te, const TfidfTable& tfidf);

/// sum(w_i v_i) / sum(w_i), or the plain mean when every weight is 0.
std::vector<double> pool_weighted(const std::vector<std::vector<double>>& vectors,
                                  std::span<const double> weights);

std::vector<double> pool_document(const TokenEmbeddings& te, const TfidfTable& tfidf);

/// JSON Lines interchange file: optional {"meta": {"dim", "model"}} line, then
/// one {"id", "tokens", "vectors"} object per document.
std::vector<TokenEmbeddings> parse_token_embeddings(std::string_view jsonl);
std::vector<TokenEmbeddings> load_token_embeddings(const std::filesystem::path& path);

/// Checks an interchange file against the exporter's manifest
/// ({"dim", "docs": [{"id", "tokens"}...]} plus free-form fields):
/// same ids in the same order, same token counts, same dim.
void check_against_manifest(const std::vector<TokenEmbeddings>& records,
                            std::string_view manifest_json);

struct Coverage {
    std::string doc_id;
    std::size_t tokens = 0;
    std::size_t covered = 0;
};

/// Pools every corpus document with static vectors. Documents with no
/// in-lexicon token raise a coverage error naming the document.
EmbeddingSet embed_corpus_static(const Corpus& corpus, const TfidfTable& tfidf,
                                 const StaticLexicon& lexicon,
                                 std::vector<Coverage>* coverage = nullptr);

/// Pools interchange records, reordered to corpus order. Every corpus
/// document needs exactly one record.
EmbeddingSet embed_corpus_contextual(const Corpus& corpus, const TfidfTable& tfidf,
                                     const std::vector<TokenEmbeddings>& records);

/// Embedding cache: {"ids": [...], "dim": D, "rows": [[...]...]}; `extra`
/// holds additional top-level members (config, input hashes) as a JSON object.
std::string embeddings_to_json(const EmbeddingSet& set, std::string_view extra_json = "{}");
EmbeddingSet parse_embeddings(std::string_view json_text);
EmbeddingSet load_embeddings(const std::filesystem::path& path);

} // namespace litclust
