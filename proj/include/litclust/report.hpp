#pragma once

#include "litclust/metrics.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace litclust {

struct EvalReport {
    std::string method;
    double purity = 0.0;
    std::optional<double> ooo_accuracy;
    std::size_t triplets = 0;
    std::map<std::string, double> per_group;
    std::map<std::string, double> baselines; // "random_purity", "random_ooo_accuracy", ...
    std::optional<BaselineEstimate> purity_baseline;
    std::optional<BaselineEstimate> ooo_baseline;
};

/// `extra_json` members are appended at top level.
std::string report_to_json(const EvalReport& report, std::string_view extra_json = "{}");

/// Method / Purity / Accuracy table with a "Random" row first, then a
/// per-group odd-one-out breakdown when available. Purity has two decimals,
/// accuracy is a percentage with one.
std::string report_to_table(const EvalReport& report);

} // namespace litclust
