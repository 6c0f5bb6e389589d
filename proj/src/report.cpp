#include "litclust/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace litclust {

namespace {

nlohmann::ordered_json estimate_json(const BaselineEstimate& e)
{
    nlohmann::ordered_json j;
    j["mean"] = e.mean;
    j["stderr"] = e.stderr_mean;
    j["stddev"] = e.stddev;
    j["q99"] = e.q99;
    j["trials"] = e.trials;
    return j;
}

std::string fixed(double v, int decimals)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width)
        s.append(width - s.size(), ' ');
    return s;
}

} // namespace

std::string report_to_json(const EvalReport& r, std::string_view extra_json)
{
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["purity"] = r.purity;
    j["ooo_accuracy"] = r.ooo_accuracy ? nlohmann::ordered_json(*r.ooo_accuracy)
                                       : nlohmann::ordered_json(nullptr);
    j["triplets"] = r.triplets;
    j["per_group"] = r.per_group;
    j["baselines"] = r.baselines;
    if (r.purity_baseline)
        j["purity_baseline"] = estimate_json(*r.purity_baseline);
    if (r.ooo_baseline)
        j["ooo_baseline"] = estimate_json(*r.ooo_baseline);
    auto extra = nlohmann::ordered_json::parse(extra_json);
    for (auto& [k, v] : extra.items())
        j[k] = v;
    return j.dump(2) + "\n";
}

std::string report_to_table(const EvalReport& r)
{
    std::size_t width = 8;
    if (r.method.size() + 2 > width)
        width = r.method.size() + 2;
    std::ostringstream out;
    out << pad("Method", width) << pad("Purity", 8) << "Accuracy\n";
    out << std::string(width + 16, '-') << '\n';

    auto baseline = [&](const char* key, int decimals, double scale) {
        auto it = r.baselines.find(key);
        return it == r.baselines.end() ? std::string("-") : fixed(it->second * scale, decimals);
    };
    out << pad("Random", width) << pad(baseline("random_purity", 2, 1.0), 8)
        << baseline("random_ooo_accuracy", 1, 100.0) << '\n';
    out << pad(r.method, width) << pad(fixed(r.purity, 2), 8)
        << (r.ooo_accuracy ? fixed(*r.ooo_accuracy * 100.0, 1) : std::string("-")) << '\n';

    if (!r.per_group.empty()) {
        std::size_t gw = 6;
        for (const auto& [g, _] : r.per_group)
            gw = std::max(gw, g.size() + 2);
        out << '\n' << pad("Group", gw) << "Accuracy\n";
        out << std::string(gw + 8, '-') << '\n';
        for (const auto& [g, acc] : r.per_group)
            out << pad(g, gw) << fixed(acc * 100.0, 1) << '\n';
    }
    return out.str();
}

} // namespace litclust
