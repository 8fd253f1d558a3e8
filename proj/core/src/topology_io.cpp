#include "meshsoc/topology_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "meshsoc/error.hpp"

namespace meshsoc {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    const auto start = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  const auto intern = [&](std::string_view label) {
    const auto [it, inserted] =
        ids.try_emplace(std::string(label), static_cast<std::uint32_t>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return NodeId{it->second};
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 2)
      throw ParseError(line_no, "expected two node labels, found " + std::to_string(fields.size()) +
                                    " fields");
    if (fields[0] == fields[1])
      throw ParseError(line_no, "self-loop on '" + std::string(fields[0]) + "'");
    const auto a = intern(fields[0]);
    const auto b = intern(fields[1]);
    edges.emplace_back(a, b);
  }

  auto g = Graph::with_nodes(labels.size(), edges);
  g.set_labels(std::move(labels));
  return g;
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open topology file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str());
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [a, b] : g.edges()) {
    out += g.label(g.index(a));
    out += ' ';
    out += g.label(g.index(b));
    out += '\n';
  }
  return out;
}

}  // namespace meshsoc
