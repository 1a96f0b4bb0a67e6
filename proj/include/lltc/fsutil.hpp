#pragma once

#include <filesystem>
#include <string>

namespace lltc {

// Reads a whole file; throws Err::io_failure.
std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so concurrent
// writers never leave a torn file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Shortest round-trip decimal forms (std::to_chars).
std::string format_double(double v);
std::string format_int(std::int64_t v);

}  // namespace lltc
