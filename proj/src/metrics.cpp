#include "litclust/metrics.hpp"

#include "litclust/artifacts.hpp"
#include "litclust/error.hpp"
#include "litclust/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace litclust {

GoldPartition::GoldPartition(std::vector<std::string> ids, const std::vector<std::string>& labels)
    : ids_(std::move(ids))
{
    if (ids_.size() != labels.size())
        fail("gold partition: " + std::to_string(ids_.size()) + " ids but " +
             std::to_string(labels.size()) + " labels");
    names_ = labels;
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    members_.resize(names_.size());
    labels_.resize(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i], i).second)
            fail("gold partition: duplicate id '" + ids_[i] + "'");
        const auto g = static_cast<std::size_t>(
            std::lower_bound(names_.begin(), names_.end(), labels[i]) - names_.begin());
        labels_[i] = g;
        members_[g].push_back(i);
    }
}

GoldPartition GoldPartition::from_corpus(const Corpus& corpus)
{
    std::vector<std::string> ids;
    for (const auto& d : corpus.documents())
        ids.push_back(d.id);
    return GoldPartition(std::move(ids), corpus.labels());
}

std::optional<std::size_t> GoldPartition::index_of(std::string_view id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

BalancedShape GoldPartition::balanced_shape() const
{
    if (members_.empty())
        fail("gold partition is empty");
    const std::size_t s = members_.front().size();
    for (std::size_t g = 0; g < members_.size(); ++g)
        if (members_[g].size() != s)
            fail("gold groups are not balanced: '" + names_[0] + "' has " + std::to_string(s) +
                 ", '" + names_[g] + "' has " + std::to_string(members_[g].size()));
    return {members_.size(), s};
}

std::size_t purity_count(std::span<const std::size_t> predicted, std::span<const std::size_t> gold)
{
    if (predicted.size() != gold.size())
        fail("purity: predicted covers " + std::to_string(predicted.size()) +
             " items, gold covers " + std::to_string(gold.size()));
    if (predicted.empty())
        return 0;
    const std::size_t kp = *std::max_element(predicted.begin(), predicted.end()) + 1;
    const std::size_t kg = *std::max_element(gold.begin(), gold.end()) + 1;
    std::vector<std::size_t> table(kp * kg, 0);
    for (std::size_t i = 0; i < predicted.size(); ++i)
        ++table[predicted[i] * kg + gold[i]];
    std::size_t total = 0;
    for (std::size_t m = 0; m < kp; ++m)
        total += *std::max_element(table.begin() + static_cast<std::ptrdiff_t>(m * kg),
                                   table.begin() + static_cast<std::ptrdiff_t>((m + 1) * kg));
    return total;
}

double purity(std::span<const std::size_t> predicted, std::span<const std::size_t> gold)
{
    if (predicted.empty())
        fail("purity of an empty clustering is undefined");
    return static_cast<double>(purity_count(predicted, gold)) /
           static_cast<double>(predicted.size());
}

double purity(const Partition& predicted, std::span<const std::size_t> gold)
{
    return purity(std::span<const std::size_t>(predicted.assignment()), gold);
}

double purity(const std::vector<std::string>& predicted_ids, const Partition& predicted,
              const GoldPartition& gold)
{
    if (predicted_ids.size() != predicted.size())
        fail("purity: partition has " + std::to_string(predicted.size()) + " items but " +
             std::to_string(predicted_ids.size()) + " ids");
    if (predicted_ids.size() != gold.size())
        fail("purity: prediction covers " + std::to_string(predicted_ids.size()) +
             " documents, gold covers " + std::to_string(gold.size()));
    std::vector<std::size_t> gold_labels(predicted_ids.size());
    for (std::size_t i = 0; i < predicted_ids.size(); ++i) {
        auto g = gold.index_of(predicted_ids[i]);
        if (!g)
            fail("purity: document '" + predicted_ids[i] + "' has no gold label");
        gold_labels[i] = gold.label_indices()[*g];
    }
    return purity(std::span<const std::size_t>(predicted.assignment()), gold_labels);
}

std::uint64_t max_distinct_triplets(const GoldPartition& gold)
{
    const std::uint64_t n = gold.size();
    std::uint64_t total = 0;
    for (const auto& m : gold.members()) {
        const std::uint64_t g = m.size();
        total += g * (g - (g > 0 ? 1 : 0)) / 2 * (n - g);
    }
    return total;
}

void validate_triplet(const GoldPartition& gold, const Triplet& t)
{
    auto a = gold.index_of(t.same_a);
    auto b = gold.index_of(t.same_b);
    auto c = gold.index_of(t.intruder);
    if (!a || !b || !c)
        fail("triplet references an unknown document");
    if (*a == *b || *a == *c || *b == *c)
        fail("triplet members must be distinct");
    const auto& lab = gold.label_indices();
    if (lab[*a] != lab[*b])
        fail("triplet pair '" + t.same_a + "', '" + t.same_b + "' is not in one group");
    if (lab[*c] == lab[*a])
        fail("triplet intruder '" + t.intruder + "' shares the pair's group");
}

std::vector<Triplet> sample_triplets(const GoldPartition& gold, std::size_t count,
                                     std::uint64_t seed, TripletSampling mode)
{
    const auto maximum = max_distinct_triplets(gold);
    if (maximum == 0)
        fail("no valid triplet exists: need a group with two members and another group");
    if (count > maximum)
        fail("cannot draw " + std::to_string(count) + " distinct triplets; at most " +
             std::to_string(maximum) + " exist");

    const auto& members = gold.members();
    const std::size_t n = gold.size();
    std::vector<std::size_t> eligible;
    std::vector<std::uint64_t> pair_cum; // cumulative same-group pair counts
    std::uint64_t pairs = 0;
    for (std::size_t g = 0; g < members.size(); ++g) {
        const std::uint64_t sz = members[g].size();
        if (sz >= 2 && sz < n) {
            eligible.push_back(g);
            pairs += sz * (sz - 1) / 2;
            pair_cum.push_back(pairs);
        }
    }

    Rng rng(seed);
    std::set<std::array<std::size_t, 3>> seen;
    std::vector<Triplet> out;
    out.reserve(count);
    while (out.size() < count) {
        std::size_t g;
        if (mode == TripletSampling::uniform_group) {
            g = eligible[rng.below(eligible.size())];
        } else {
            const auto r = rng.below(pairs);
            g = eligible[static_cast<std::size_t>(
                std::upper_bound(pair_cum.begin(), pair_cum.end(), r) - pair_cum.begin())];
        }
        const auto& mg = members[g];
        std::size_t i = rng.below(mg.size());
        std::size_t j = rng.below(mg.size() - 1);
        if (j >= i)
            ++j;
        std::size_t a = mg[std::min(i, j)];
        std::size_t b = mg[std::max(i, j)];

        std::size_t c;
        if (mode == TripletSampling::uniform_group) {
            std::size_t h = rng.below(members.size() - 1);
            if (h >= g)
                ++h;
            c = members[h][rng.below(members[h].size())];
        } else {
            std::size_t r = rng.below(n - mg.size());
            c = 0;
            // r-th document outside group g, in corpus order
            for (std::size_t x = 0; x < n; ++x) {
                if (gold.label_indices()[x] == g)
                    continue;
                if (r-- == 0) {
                    c = x;
                    break;
                }
            }
        }
        std::array<std::size_t, 3> key{a, b, c};
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second)
            continue;
        out.push_back({gold.ids()[a], gold.ids()[b], gold.ids()[c]});
    }
    return out;
}

std::size_t odd_one_out(std::span<const double> a, std::span<const double> b,
                        std::span<const double> c)
{
    if (a.size() != b.size() || a.size() != c.size())
        fail("odd-one-out: vectors differ in dimension");
    const double ab = euclidean(a, b);
    const double ac = euclidean(a, c);
    const double bc = euclidean(b, c);
    const std::array<double, 3> sums{ab + ac, ab + bc, ac + bc};
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (sums[i] > sums[best])
            best = i;
    return best;
}

OooResult ooo_accuracy(const EmbeddingSet& set, const std::vector<Triplet>& triplets,
                       const GoldPartition* gold)
{
    OooResult r;
    std::map<std::string, std::size_t> group_correct;
    auto row = [&](const std::string& id) {
        auto i = set.index_of(id);
        if (!i)
            fail("odd-one-out: document '" + id + "' has no embedding");
        return set.row(*i);
    };
    for (const auto& t : triplets) {
        const bool hit = odd_one_out(row(t.same_a), row(t.same_b), row(t.intruder)) == 2;
        ++r.total;
        if (hit)
            ++r.correct;
        if (gold) {
            auto a = gold->index_of(t.same_a);
            if (!a)
                fail("odd-one-out: document '" + t.same_a + "' has no gold label");
            const auto& g = gold->group_of(*a);
            ++r.per_group_total[g];
            group_correct[g] += hit ? 1 : 0;
        }
    }
    r.accuracy = r.total == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.total);
    for (const auto& [g, n] : r.per_group_total)
        r.per_group[g] = static_cast<double>(group_correct[g]) / static_cast<double>(n);
    return r;
}

BaselineEstimate summarize_trials(std::span<const double> values)
{
    BaselineEstimate e;
    e.trials = values.size();
    if (values.empty())
        return e;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    e.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values)
        ss += (v - e.mean) * (v - e.mean);
    e.stddev = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    e.stderr_mean = e.stddev / std::sqrt(static_cast<double>(values.size()));
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    // nearest-rank percentile
    const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(sorted.size())));
    e.q99 = sorted[std::max<std::size_t>(rank, 1) - 1];
    return e;
}

BaselineEstimate random_ooo_baseline(std::size_t triplets, std::size_t trials, std::uint64_t seed)
{
    if (triplets == 0 || trials == 0)
        fail("odd-one-out baseline needs triplets and trials");
    std::vector<double> values(trials);
    const auto t = static_cast<long>(trials);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < t; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        std::size_t hits = 0;
        for (std::size_t j = 0; j < triplets; ++j)
            hits += rng.below(3) == 2 ? 1 : 0;
        values[static_cast<std::size_t>(i)] =
            static_cast<double>(hits) / static_cast<double>(triplets);
    }
    return summarize_trials(values);
}

AnnotationMatrix::AnnotationMatrix(std::vector<std::string> items,
                                   std::vector<std::string> categories,
                                   std::vector<std::vector<std::size_t>> counts)
    : items_(std::move(items)), categories_(std::move(categories)), counts_(std::move(counts))
{
    if (counts_.empty())
        fail("annotation matrix needs at least one item");
    if (categories_.size() < 2)
        fail("annotation matrix needs at least two categories");
    if (items_.size() != counts_.size())
        fail("annotation matrix: item names and rows differ in number");
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i].size() != categories_.size())
            fail("annotation row " + std::to_string(i) + ": wrong number of categories");
        std::size_t n = 0;
        for (auto c : counts_[i])
            n += c;
        if (i == 0)
            raters_ = n;
        else if (n != raters_)
            fail("annotation row " + std::to_string(i) + " ('" + items_[i] + "') has " +
                 std::to_string(n) + " votes, expected " + std::to_string(raters_));
    }
    if (raters_ < 2)
        fail("annotation matrix needs at least two raters per item");
}

AnnotationMatrix parse_annotations(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("annotation file: ") + e.what());
    }
    if (!j.is_array())
        fail("annotation file: top level must be an array");
    std::set<std::string> cats;
    std::vector<std::string> items;
    std::vector<std::map<std::string, std::size_t>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& rec = j[i];
        const auto where = "annotation row " + std::to_string(i);
        if (!rec.is_object() || !rec.contains("item") || !rec["item"].is_string() ||
            !rec.contains("votes") || !rec["votes"].is_object())
            fail(where + ": expected {\"item\": string, \"votes\": {category: count}}");
        items.push_back(rec["item"].get<std::string>());
        std::map<std::string, std::size_t> row;
        for (const auto& [cat, v] : rec["votes"].items()) {
            if (!v.is_number_unsigned())
                fail(where + ": vote count for '" + cat + "' must be a non-negative integer");
            row[cat] = v.get<std::size_t>();
            cats.insert(cat);
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::string> categories(cats.begin(), cats.end());
    std::vector<std::vector<std::size_t>> counts;
    for (const auto& row : rows) {
        std::vector<std::size_t> c(categories.size(), 0);
        for (std::size_t k = 0; k < categories.size(); ++k) {
            auto it = row.find(categories[k]);
            if (it != row.end())
                c[k] = it->second;
        }
        counts.push_back(std::move(c));
    }
    return AnnotationMatrix(std::move(items), std::move(categories), std::move(counts));
}

AnnotationMatrix load_annotations(const std::filesystem::path& path)
{
    return parse_annotations(read_file(path));
}

double fleiss_kappa(const AnnotationMatrix& m)
{
    const auto& counts = m.counts();
    const double n = static_cast<double>(m.raters());
    const double items = static_cast<double>(counts.size());
    std::vector<double> column(m.categories().size(), 0.0);
    double p_bar = 0.0;
    for (const auto& row : counts) {
        double sq = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            const double x = static_cast<double>(row[k]);
            sq += x * x;
            column[k] += x;
        }
        p_bar += (sq - n) / (n * (n - 1.0));
    }
    p_bar /= items;
    double p_e = 0.0;
    for (double c : column) {
        const double p = c / (items * n);
        p_e += p * p;
    }
    if (p_e == 1.0)
        return 1.0; // every vote in one category: agreement is perfect
    return (p_bar - p_e) / (1.0 - p_e);
}

double majority_agreement_rate(const AnnotationMatrix& m)
{
    std::size_t agreed = 0;
    for (const auto& row : m.counts())
        if (*std::max_element(row.begin(), row.end()) >= 2)
            ++agreed;
    return static_cast<double>(agreed) / static_cast<double>(m.counts().size());
}

std::string triplets_to_json(const std::vector<Triplet>& triplets)
{
    auto root = nlohmann::ordered_json::array();
    for (const auto& t : triplets) {
        nlohmann::ordered_json rec;
        rec["a"] = t.same_a;
        rec["b"] = t.same_b;
        rec["intruder"] = t.intruder;
        root.push_back(std::move(rec));
    }
    return root.dump(2) + "\n";
}

std::vector<Triplet> parse_triplets(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("triplets file: ") + e.what());
    }
    if (!j.is_array())
        fail("triplets file: top level must be an array");
    std::vector<Triplet> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& r = j[i];
        auto str = [&](const char* key) {
            if (!r.is_object() || !r.contains(key) || !r[key].is_string())
                fail("triplet " + std::to_string(i) + ": missing string '" + key + "'");
            return r[key].get<std::string>();
        };
        out.push_back({str("a"), str("b"), str("intruder")});
    }
    return out;
}

std::vector<Triplet> load_triplets(const std::filesystem::path& path)
{
    return parse_triplets(read_file(path));
}

} // namespace litclust
