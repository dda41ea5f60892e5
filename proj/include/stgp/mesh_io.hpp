#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "stgp/mesh.hpp"

namespace stgp {

/// Parses the `stgp-mesh 1` text format. Throws ParseError with the
/// offending line number.
Mesh read_mesh(std::string_view text);

/// Canonical `stgp-mesh 1` text: no comments, one record per line,
/// shortest round-trip decimals.
std::string write_mesh(const Mesh& mesh);

/// Whole-file helpers; throw IoError when the file cannot be accessed.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

inline Mesh read_mesh_file(const std::filesystem::path& path) {
  return read_mesh(read_text_file(path));
}

}  // namespace stgp
