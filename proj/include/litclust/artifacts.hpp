#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace litclust {

/// Whole-file read; missing or unreadable files raise an io Error.
std::string read_file(const std::filesystem::path& path);

/// Writes bytes, creating parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

std::string file_sha256(const std::filesystem::path& path);

} // namespace litclust
