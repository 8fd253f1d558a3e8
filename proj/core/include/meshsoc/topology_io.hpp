#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "meshsoc/graph.hpp"

namespace meshsoc {

/// Parses an edge-list document: one `<labelA> <labelB>` pair per line,
/// `#` starts a comment line, blank lines are skipped. Node ids are assigned
/// in order of first appearance and labels are retained. Duplicate edges in
/// either orientation collapse.
///
/// Throws ParseError (with the 1-based line number) on lines that do not
/// hold exactly two labels, and on self-loops.
Graph parse_edge_list(std::string_view text);

/// Reads and parses a file. Throws Error if it cannot be opened.
Graph load_edge_list(const std::filesystem::path& path);

/// Inverse of parse_edge_list up to id assignment: one line per edge,
/// sorted by id pair, using node labels.
std::string format_edge_list(const Graph& g);

}  // namespace meshsoc
