#include "hyperspectra/io.hpp"

#include <fstream>
#include <sstream>

#include <algorithm>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

namespace {

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

long long require_int(const nlohmann::json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ParseError(path + ": expected an integer");
  return value.get<long long>();
}

}  // namespace

nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the byte just past the failure point.
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    auto cut = what.find("syntax error");
    throw ParseError(cut == std::string::npos ? what : what.substr(cut), line, column);
  }
}

Hypergraph hypergraph_from_json(const nlohmann::json& doc, const std::string& where) {
  const std::string root = where.empty() ? "$" : where;
  if (!doc.is_object()) throw ParseError(root + ": expected an object");
  for (const char* key : {"s", "n", "edges"}) {
    if (!doc.contains(key)) throw ParseError(root + ": missing key \"" + key + "\"");
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "s" && it.key() != "n" && it.key() != "edges") {
      throw ParseError(root + ": unknown key \"" + it.key() + "\"");
    }
  }
  long long s = require_int(doc["s"], root + ".s");
  long long n = require_int(doc["n"], root + ".n");
  if (s < 2) throw ParseError(root + ".s: uniformity must be at least 2");
  if (n < 1) throw ParseError(root + ".n: need at least one vertex");
  const auto& list = doc["edges"];
  if (!list.is_array()) throw ParseError(root + ".edges: expected an array");
  std::vector<Edge> edges;
  edges.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = root + ".edges[" + std::to_string(i) + "]";
    if (!list[i].is_array()) throw ParseError(path + ": expected an array");
    if (static_cast<long long>(list[i].size()) != s) {
      throw ParseError(path + ": edge has " + std::to_string(list[i].size()) +
                       " vertices, expected " + std::to_string(s));
    }
    Edge e;
    for (std::size_t j = 0; j < list[i].size(); ++j) {
      const std::string vpath = path + "[" + std::to_string(j) + "]";
      long long v = require_int(list[i][j], vpath);
      if (v < 0 || v >= n) throw ParseError(vpath + ": vertex " + std::to_string(v) + " out of range");
      if (!e.empty() && static_cast<Vertex>(v) <= e.back()) {
        throw ParseError(vpath + ": edge vertices must be strictly ascending");
      }
      e.push_back(static_cast<Vertex>(v));
    }
    edges.push_back(std::move(e));
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    std::size_t first = std::find(edges.begin(), edges.end(), *dup) - edges.begin();
    std::size_t second = std::find(edges.begin() + first + 1, edges.end(), *dup) - edges.begin();
    throw ParseError(root + ".edges[" + std::to_string(second) + "]: duplicate of edges[" +
                     std::to_string(first) + "]");
  }
  return Hypergraph(static_cast<int>(s), static_cast<std::size_t>(n), std::move(edges));
}

nlohmann::json hypergraph_to_json(const Hypergraph& g) {
  return {{"s", g.s()}, {"n", g.num_vertices()}, {"edges", g.edges()}};
}

Hypergraph parse_hypergraph(std::string_view text) {
  return hypergraph_from_json(parse_json_text(text));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Hypergraph load_hypergraph(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_hypergraph(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_hypergraph(const Hypergraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << hypergraph_to_json(g).dump() << "\n";
}

}  // namespace hyperspectra
