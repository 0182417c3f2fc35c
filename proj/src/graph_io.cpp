#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "effres/error.hpp"
#include "effres/graph.hpp"

namespace effres {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) parse_error(line_no, "missing header 'n m'");
  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) parse_error(line_no, "bad header '" + line + "'");

  WeightedGraph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) parse_error(line_no, "expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    double w = 0.0;
    if (!(row >> u >> v >> w)) parse_error(line_no, "expected 'u v w', got '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) parse_error(line_no, "vertex out of range");
    try {
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
    } catch (const Error& e) {
      parse_error(line_no, e.what());
    }
  }
  return g;
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  const auto old = out.precision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  out.precision(old);
}

}  // namespace effres
