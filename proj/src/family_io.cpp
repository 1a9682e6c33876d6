#include "franklforge/family_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace frankl::io {

using families::Bitmask;
using families::SetFamily;
using nlohmann::json;

SetFamily parse_family_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("sets")) {
    throw ParseError("family JSON must be an object with \"n\" and \"sets\"");
  }
  if (!doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  const int n = doc["n"].get<int>();
  if (n < 1 || n > families::kMaxGroundSet) {
    throw ParseError("\"n\" out of range [1, " + std::to_string(families::kMaxGroundSet) + "]");
  }
  if (!doc["sets"].is_array()) throw ParseError("\"sets\" must be an array of arrays");
  std::vector<Bitmask> masks;
  for (const auto& entry : doc["sets"]) {
    if (!entry.is_array()) throw ParseError("each set must be an array of elements");
    Bitmask mask = 0;
    for (const auto& el : entry) {
      if (!el.is_number_integer()) throw ParseError("elements must be integers");
      const int e = el.get<int>();
      if (e < 1 || e > n) {
        throw ParseError("element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
      }
      mask |= Bitmask{1} << (e - 1);
    }
    masks.push_back(mask);
  }
  try {
    return SetFamily(n, std::move(masks));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

SetFamily parse_family_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> rows;
  int max_elem = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // trim
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    if (body.empty() || body[0] == '#') continue;
    std::vector<int> row;
    if (body != "-") {
      std::istringstream fields(body);
      std::string tok;
      while (std::getline(fields, tok, ',')) {
        try {
          std::size_t used = 0;
          int e = std::stoi(tok, &used);
          while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
          if (used != tok.size()) throw std::invalid_argument(tok);
          if (e < 1) throw std::invalid_argument(tok);
          row.push_back(e);
          max_elem = std::max(max_elem, e);
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(lineno) + ": bad element '" + tok + "'");
        }
      }
      if (row.empty()) {
        throw ParseError("line " + std::to_string(lineno) + ": empty set must be written '-'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no sets found");
  const int n = std::max(max_elem, 1);
  if (n > families::kMaxGroundSet) {
    throw ParseError("largest element " + std::to_string(n) + " exceeds supported ground set");
  }
  std::vector<Bitmask> masks;
  masks.reserve(rows.size());
  for (const auto& row : rows) {
    Bitmask mask = 0;
    for (int e : row) mask |= Bitmask{1} << (e - 1);
    masks.push_back(mask);
  }
  return SetFamily(n, std::move(masks));
}

SetFamily load_family_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open family file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("family file is empty: " + path);
  if (text[first] == '{') return parse_family_json(text);
  return parse_family_text(text);
}

std::string family_to_json(const SetFamily& f) {
  json sets = json::array();
  for (Bitmask a : f.sets()) {
    json one = json::array();
    for (int j = 0; j < f.n(); ++j) {
      if ((a >> j) & 1) one.push_back(j + 1);
    }
    sets.push_back(one);
  }
  json doc{{"n", f.n()}, {"sets", sets}};
  return doc.dump();
}

}  // namespace frankl::io
