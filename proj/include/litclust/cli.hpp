#pragma once

#include "litclust/cluster.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace litclust {

/// Resolved settings shared by the pipeline commands. Every output file
/// records it (minus the thread count, which never changes results).
struct RunConfig {
    std::filesystem::path corpus_path;
    std::optional<std::filesystem::path> vectors_path;     // static "token v1..vD" file
    std::optional<std::filesystem::path> interchange_path; // JSON Lines token embeddings
    std::size_t pca_k = 40;
    std::optional<std::size_t> k;
    std::optional<std::size_t> s;
    SearchConfig search;
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;

    std::string to_json() const;
};

/// Entry point of the `litclust` tool. Returns the process exit status:
/// 0 success, 2 validation or usage error, 3 I/O error, 4 guard refusal.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace litclust
