#pragma once

#include <string>

namespace ecut {

// Writes content to path via a temporary file in the same directory plus
// rename, so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

void ensure_directory(const std::string& path);

}  // namespace ecut
