#pragma once

#include <string>

#include "pfc/graph.hpp"
#include "pfc/linalg.hpp"

namespace pfc {

// full-precision decimal rendering (round-trips doubles exactly)
std::string format_g17(double v);

// Edge-list text format: first line `n`, then one `i j` line per edge with
// i < j; geometric positions, when present, follow as `# pos i x y` lines.
std::string graph_to_string(const Graph& g);
Graph graph_from_string(const std::string& text);
void write_graph(const Graph& g, const std::string& path);
Graph read_graph(const std::string& path);

// Dense rows of whitespace-separated values, 17 significant digits.
std::string matrix_to_string(const Matrix& m);
Matrix matrix_from_string(const std::string& text);
void write_matrix(const Matrix& m, const std::string& path);
Matrix read_matrix(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pfc
