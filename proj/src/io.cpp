#include "pfc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pfc {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string graph_to_string(const Graph& g) {
  std::string out = std::to_string(g.n) + "\n";
  for (const auto& [i, j] : g.edges)
    out += std::to_string(i) + " " + std::to_string(j) + "\n";
  for (int i = 0; i < static_cast<int>(g.positions.size()); ++i)
    out += "# pos " + std::to_string(i) + " " + format_g17(g.positions[i][0]) + " " +
           format_g17(g.positions[i][1]) + "\n";
  return out;
}

Graph graph_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<double, 2>> positions;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tag;
      ls >> tag;
      if (tag == "pos") {
        int idx;
        double x, y;
        if (!(ls >> idx >> x >> y)) throw std::invalid_argument("graph parse: malformed pos line");
        if (idx < 0 || (n >= 0 && idx >= n))
          throw std::invalid_argument("graph parse: pos index out of range");
        if (static_cast<int>(positions.size()) <= idx) positions.resize(idx + 1);
        positions[idx] = {x, y};
      }
      continue;
    }
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n < 0) throw std::invalid_argument("graph parse: bad node count");
      continue;
    }
    int i, j;
    if (!(ls >> i >> j)) throw std::invalid_argument("graph parse: malformed edge line");
    edges.emplace_back(i, j);
  }
  if (n < 0) throw std::invalid_argument("graph parse: missing node count");
  Graph g = make_graph(n, std::move(edges));
  if (!positions.empty()) {
    if (static_cast<int>(positions.size()) != n)
      throw std::invalid_argument("graph parse: positions must cover every node");
    g.positions = std::move(positions);
  }
  return g;
}

std::string matrix_to_string(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_g17(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix parse: no rows");
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows)
    if (row.size() != cols) throw std::invalid_argument("matrix parse: ragged rows");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_graph(const Graph& g, const std::string& path) {
  write_text_file(path, graph_to_string(g));
}

Graph read_graph(const std::string& path) { return graph_from_string(read_text_file(path)); }

void write_matrix(const Matrix& m, const std::string& path) {
  write_text_file(path, matrix_to_string(m));
}

Matrix read_matrix(const std::string& path) { return matrix_from_string(read_text_file(path)); }

}  // namespace pfc
