#include "litclust/corpus.hpp"

#include "litclust/artifacts.hpp"
#include "litclust/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace litclust {

namespace {

bool is_blank(std::string_view s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    });
}

} // namespace

Corpus::Corpus(std::vector<Document> documents) : docs_(std::move(documents))
{
    std::size_t labelled = 0;
    for (std::size_t i = 0; i < docs_.size(); ++i) {
        const auto& d = docs_[i];
        if (d.id.empty())
            fail("corpus record " + std::to_string(i) + ": empty id");
        if (is_blank(d.text))
            fail("corpus record " + std::to_string(i) + " ('" + d.id + "'): text is empty");
        if (!index_.emplace(d.id, i).second)
            fail("corpus record " + std::to_string(i) + ": duplicate id '" + d.id + "'");
        if (d.group)
            ++labelled;
    }
    if (labelled != 0 && labelled != docs_.size())
        fail("corpus is partially labelled: " + std::to_string(labelled) + " of " +
             std::to_string(docs_.size()) + " documents carry a group");
    if (labelled != 0) {
        for (const auto& d : docs_)
            groups_[*d.group].push_back(d.id);
    }
}

std::optional<std::size_t> Corpus::index_of(std::string_view id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::string> Corpus::labels() const
{
    if (!labeled())
        fail("corpus has no group labels");
    std::vector<std::string> out;
    out.reserve(docs_.size());
    for (const auto& d : docs_)
        out.push_back(*d.group);
    return out;
}

Corpus parse_corpus(std::string_view json_text)
{
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("corpus: ") + e.what());
    }
    if (!root.is_array())
        fail("corpus: top level must be a JSON array");

    static const std::set<std::string> known = {"id", "title", "group", "text"};
    std::vector<Document> docs;
    docs.reserve(root.size());
    for (std::size_t i = 0; i < root.size(); ++i) {
        const auto& rec = root[i];
        const auto where = "corpus record " + std::to_string(i);
        if (!rec.is_object())
            fail(where + ": expected an object");
        for (const auto& [key, _] : rec.items()) {
            if (!known.contains(key))
                fail(where + ": unknown key '" + key + "'");
        }
        auto string_field = [&](const char* key, bool required) -> std::optional<std::string> {
            auto it = rec.find(key);
            if (it == rec.end()) {
                if (required)
                    fail(where + ": missing required key '" + key + "'");
                return std::nullopt;
            }
            if (!it->is_string())
                fail(where + ": key '" + key + "' must be a string");
            return it->get<std::string>();
        };
        Document d;
        d.id = *string_field("id", true);
        d.text = *string_field("text", true);
        d.title = string_field("title", false).value_or("");
        d.group = string_field("group", false);
        docs.push_back(std::move(d));
    }
    return Corpus(std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& path)
{
    return parse_corpus(read_file(path));
}

BalancedShape balanced_shape(const Corpus& corpus)
{
    if (!corpus.labeled())
        fail("balanced shape requires a fully labelled corpus");
    const auto& groups = corpus.groups();
    const std::size_t s = groups.begin()->second.size();
    std::string offending;
    for (const auto& [label, ids] : groups) {
        if (ids.size() != s) {
            if (offending.empty())
                offending = "'" + groups.begin()->first + "' has " + std::to_string(s);
            offending += ", '" + label + "' has " + std::to_string(ids.size());
        }
    }
    if (!offending.empty())
        fail("groups are not of equal size: " + offending);
    return {groups.size(), s};
}

std::string corpus_to_json(const Corpus& corpus)
{
    auto root = nlohmann::ordered_json::array();
    for (const auto& d : corpus.documents()) {
        nlohmann::ordered_json rec;
        rec["id"] = d.id;
        rec["title"] = d.title;
        if (d.group)
            rec["group"] = *d.group;
        rec["text"] = d.text;
        root.push_back(std::move(rec));
    }
    return root.dump(2) + "\n";
}

} // namespace litclust
