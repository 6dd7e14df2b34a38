#ifndef MUSPEC_HASHING_HPP
#define MUSPEC_HASHING_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace muspec {

/// Lower-case hex SHA-256 digest.
std::string sha256_hex (std::string_view data);
std::string sha256_file (const std::filesystem::path& path);

/// Writes to a unique temporary sibling then renames over `path`, so readers
/// never observe a partially written file.
void write_file_atomic (const std::filesystem::path& path, std::string_view contents);
std::string read_file (const std::filesystem::path& path);

} // namespace muspec

#endif // MUSPEC_HASHING_HPP
