#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hyperspectra/hypergraph.hpp"

namespace hyperspectra {

// {"s": int, "n": int, "edges": [[int, ...], ...]}. Each edge must be listed in
// ascending order and no edge may repeat. Violations raise ParseError naming the
// offending location (line/column for syntax errors, a JSON path otherwise).
Hypergraph hypergraph_from_json(const nlohmann::json& doc, const std::string& where = "");
nlohmann::json hypergraph_to_json(const Hypergraph& g);

Hypergraph parse_hypergraph(std::string_view text);
Hypergraph load_hypergraph(const std::filesystem::path& path);
void save_hypergraph(const Hypergraph& g, const std::filesystem::path& path);

// Whole file as a string; throws Error with the path on failure.
std::string read_text_file(const std::filesystem::path& path);

// Parses JSON text, converting syntax errors to ParseError with line/column.
nlohmann::json parse_json_text(std::string_view text);

}  // namespace hyperspectra
