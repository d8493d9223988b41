#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace sixbar {

/// Fixed six-decimal rendering with '.' as separator, independent of the global locale.
std::string fixed6(double value);

/// Writes through a sibling temp file and renames it over `path`.
/// Throws Error{Io} when the directory is not writable.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace sixbar
