#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "espim/error.hpp"

namespace espim::io {

/// Raised for unreadable or unwritable files, as distinct from bad content.
class IoError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over `path`, so readers see
/// either the old content or the complete new content.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Like write_file_atomic but never replaces an existing file. Returns false
/// (and leaves nothing behind) if `path` already exists. Safe against
/// concurrent writers of the same path: exactly one wins.
bool create_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

} // namespace espim::io
