#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "balcut/errors.hpp"
#include "balcut/graph.hpp"

namespace balcut {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits on runs of whitespace. Returns false if there are more than `max` fields.
template <std::size_t N>
bool split(std::string_view s, std::array<std::string_view, N>& out, std::size_t& count) {
  count = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (count == N) return false;
    out[count++] = s.substr(i, j - i);
    i = j;
  }
  return true;
}

template <typename T>
bool parse_number(std::string_view tok, T& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

DiGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_n = false;
  DiGraph g;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::array<std::string_view, 3> tok;
    std::size_t count = 0;
    if (!split(s, tok, count)) throw ParseError(lineno, "too many fields");
    if (!have_n) {
      std::size_t n = 0;
      if (count != 1 || !parse_number(tok[0], n)) {
        throw ParseError(lineno, "expected vertex count");
      }
      g = DiGraph(n);
      have_n = true;
      continue;
    }
    if (count != 3) throw ParseError(lineno, "expected `tail head weight`");
    std::uint64_t tail = 0, head = 0;
    double w = 0.0;
    if (!parse_number(tok[0], tail) || !parse_number(tok[1], head)) {
      throw ParseError(lineno, "malformed vertex id");
    }
    if (!parse_number(tok[2], w) || !std::isfinite(w)) throw ParseError(lineno, "malformed weight");
    if (tail >= g.num_vertices() || head >= g.num_vertices()) {
      throw ParseError(lineno, "vertex id out of range");
    }
    if (w < 0.0) throw ParseError(lineno, "negative weight");
    if (tail == head) throw ParseError(lineno, "self-loop");
    g.add_edge(static_cast<Vertex>(tail), static_cast<Vertex>(head), w);
  }
  if (!have_n) throw ParseError(lineno + 1, "missing vertex count");
  return g;
}

DiGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  return read_edge_list(in);
}

std::string format_weight(double w) {
  // Shortest representation that reads back to the same double.
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), w);
  (void)ec;
  return std::string(buf.data(), ptr);
}

void write_edge_list(std::ostream& out, const DiGraph& g) {
  out << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.tail << ' ' << e.head << ' ' << format_weight(e.weight) << '\n';
  }
}

}  // namespace balcut
