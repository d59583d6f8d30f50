#pragma once

// Plain-text matrix files: one row per line, entries separated by whitespace
// or commas, blank lines and lines starting with '#' ignored.

#include "ila/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ila::io {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

IntMatrix parse_int_matrix(std::string_view text);
RealMatrix parse_real_matrix(std::string_view text);

IntMatrix read_int_matrix(const std::filesystem::path& path);
RealMatrix read_real_matrix(const std::filesystem::path& path);

/// A vector may be stored as a single row or a single column.
RealVector read_real_vector(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const IntMatrix& m);
std::string format_matrix(const IntMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const IntMatrix& m);

std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

} // namespace ila::io
