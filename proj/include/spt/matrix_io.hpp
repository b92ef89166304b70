#pragma once

#include <iosfwd>
#include <string>

#include "spt/matrix.hpp"

namespace spt {

// Shared text format: one row per line, whitespace-separated entries, each an
// integer or p/q with q > 0. '#' starts a comment line; blank lines ignored.
RMatrix parse_matrix(std::istream& in);
RMatrix parse_matrix(const std::string& text);
RMatrix load_matrix(const std::string& path);

std::string format_matrix(const RMatrix& a);

}  // namespace spt
