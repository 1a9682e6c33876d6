#pragma once

#include <string>

#include "franklforge/families.hpp"

namespace frankl::io {

/// {"n": 3, "sets": [[], [1], [1,2]]} with 1-based elements.
families::SetFamily parse_family_json(const std::string& text);

/// One set per line, comma-separated 1-based elements, "-" for the empty set.
/// Blank lines and lines starting with '#' are skipped; n is the largest
/// element mentioned.
families::SetFamily parse_family_text(const std::string& text);

/// Reads a file and dispatches on the leading character ('{' selects JSON).
/// The family is canonicalized on load.
families::SetFamily load_family_file(const std::string& path);

std::string family_to_json(const families::SetFamily& f);

}  // namespace frankl::io
