#include "lk/forest_io.hpp"

#include "lk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace lk {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_framing(std::string_view text, int line) {
  int value = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || first == text.data() + text.size())
    throw ParseError(line, "framing must be an integer or 'unframed', got '" + std::string(text) + "'");
  return value;
}

}  // namespace

Forest parse_forest(std::string_view document) {
  Forest forest;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> edges;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const std::size_t end = std::min(document.find('\n', pos), document.size());
    std::string_view line = document.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto t = tokens(line);
    if (t.empty()) {
      if (end == document.size()) break;
      continue;
    }
    if (t[0] == "vertex") {
      if (t.size() != 3) throw ParseError(line_no, "expected 'vertex <id> <framing|unframed>'");
      std::optional<int> framing;
      if (t[2] != "unframed") framing = parse_framing(t[2], line_no);
      if (forest.find(t[1])) throw ParseError(line_no, "duplicate vertex id '" + std::string(t[1]) + "'");
      forest.add_vertex(std::string(t[1]), framing);
    } else if (t[0] == "edge") {
      if (t.size() != 3) throw ParseError(line_no, "expected 'edge <id> <id>'");
      edges.push_back({line_no, {std::string(t[1]), std::string(t[2])}});
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(t[0]) + "'");
    }
    if (end == document.size()) break;
  }
  for (const auto& [line, ends] : edges) {
    for (const auto& id : {ends.first, ends.second})
      if (!forest.find(id)) throw ParseError(line, "edge refers to unknown vertex '" + id + "'");
    forest.add_edge(ends.first, ends.second);
  }
  forest.validate_structure();
  return forest;
}

std::string emit_forest(const Forest& forest) {
  std::vector<const Vertex*> vs;
  for (const auto& v : forest.vertices()) vs.push_back(&v);
  std::sort(vs.begin(), vs.end(), [](const Vertex* a, const Vertex* b) { return a->id < b->id; });
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& [a, b] : forest.edges()) {
    auto x = forest.vertex(a).id, y = forest.vertex(b).id;
    if (y < x) std::swap(x, y);
    es.emplace_back(x, y);
  }
  std::sort(es.begin(), es.end());
  std::ostringstream out;
  for (const auto* v : vs)
    out << "vertex " << v->id << ' ' << (v->framing ? std::to_string(*v->framing) : std::string("unframed")) << '\n';
  for (const auto& [a, b] : es) out << "edge " << a << ' ' << b << '\n';
  return out.str();
}

Forest read_forest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_forest(buffer.str());
}

}  // namespace lk
