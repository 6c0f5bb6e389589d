#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace litclust {

struct Document {
    std::string id;
    std::string title;
    std::optional<std::string> group; // gold thematic label
    std::string text;
};

/// Ordered, validated document collection. Document order is file order and
/// is kept by every later stage. Immutable once built.
class Corpus {
public:
    Corpus() = default;

    /// Validates ids (non-empty, unique), text (non-blank) and all-or-none
    /// labelling. Throws Error on violation.
    explicit Corpus(std::vector<Document> documents);

    const std::vector<Document>& documents() const noexcept { return docs_; }
    std::size_t size() const noexcept { return docs_.size(); }
    const Document& operator[](std::size_t i) const { return docs_[i]; }

    bool labeled() const noexcept { return !groups_.empty(); }

    /// group label -> ids in corpus order. Empty when unlabeled.
    const std::map<std::string, std::vector<std::string>>& groups() const noexcept
    {
        return groups_;
    }

    std::optional<std::size_t> index_of(std::string_view id) const;

    /// Gold label of every document, in corpus order. Throws when unlabeled.
    std::vector<std::string> labels() const;

private:
    std::vector<Document> docs_;
    std::map<std::string, std::vector<std::string>> groups_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

struct BalancedShape {
    std::size_t k = 0; // groups
    std::size_t s = 0; // members per group
};

Corpus parse_corpus(std::string_view json_text);
Corpus load_corpus(const std::filesystem::path& path);

/// (K, S) of a fully labelled corpus whose groups all have the same size.
BalancedShape balanced_shape(const Corpus& corpus);

/// Serialises in the corpus file format (array of {id, title, group, text}).
std::string corpus_to_json(const Corpus& corpus);

} // namespace litclust
