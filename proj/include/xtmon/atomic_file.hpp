#pragma once

#include <string>
#include <string_view>

namespace xtmon {

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file. Throws IoError.
void write_file_atomic(const std::string& path, std::string_view contents);

// Throws IoError if the file cannot be opened or read.
std::string read_file(const std::string& path);

}  // namespace xtmon
