#pragma once

// Reader and writer for the DIMACS shortest-path `.gr` format:
//
//   c <comment>
//   p sp <n> <m>
//   a <u> <v> <w>      (1-based endpoints, non-negative integer weight)

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bmssp/graph.hpp"

namespace bmssp {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

class TokenCursor {
 public:
  TokenCursor(std::string_view line, std::size_t line_no) : rest_(line), line_no_(line_no) {}

  std::string_view next() {
    skip_space();
    std::size_t end = 0;
    while (end < rest_.size() && !is_space(rest_[end])) ++end;
    auto tok = rest_.substr(0, end);
    rest_.remove_prefix(end);
    return tok;
  }

  std::uint64_t unsigned_field(std::string_view what) {
    auto tok = next();
    if (tok.empty()) throw DimacsError(line_no_, "missing " + std::string(what));
    if (tok.front() == '-') {
      throw DimacsError(line_no_, "negative " + std::string(what) + " '" + std::string(tok) + "'");
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw DimacsError(line_no_, "malformed " + std::string(what) + " '" + std::string(tok) + "'");
    }
    return value;
  }

  void expect_end() {
    skip_space();
    if (!rest_.empty()) throw DimacsError(line_no_, "unexpected trailing token '" + std::string(next()) + "'");
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
  void skip_space() {
    while (!rest_.empty() && is_space(rest_.front())) rest_.remove_prefix(1);
  }

  std::string_view rest_;
  std::size_t line_no_;
};

}  // namespace detail

/// Parses a complete `.gr` document. Arcs keep file order; parallel arcs and
/// self-loops are kept. Every violation is reported with its line number.
template <WeightType W = std::uint64_t>
Graph<W> parse_dimacs(std::string_view text) {
  bool have_problem = false;
  std::uint64_t n = 0;
  std::uint64_t declared_m = 0;
  std::vector<std::pair<VertexId, Arc<W>>> arcs;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    detail::TokenCursor cur(line, line_no);
    auto kind = cur.next();
    if (kind.empty()) continue;
    if (kind.front() == 'c') continue;

    if (kind == "p") {
      if (have_problem) throw DimacsError(line_no, "duplicate problem line");
      if (cur.next() != "sp") throw DimacsError(line_no, "problem line must be 'p sp <n> <m>'");
      n = cur.unsigned_field("vertex count");
      declared_m = cur.unsigned_field("arc count");
      cur.expect_end();
      if (n >= std::numeric_limits<VertexId>::max()) throw DimacsError(line_no, "vertex count too large");
      have_problem = true;
      arcs.reserve(std::min<std::uint64_t>(declared_m, text.size() / 6));
    } else if (kind == "a") {
      if (!have_problem) throw DimacsError(line_no, "arc line before problem line");
      auto u = cur.unsigned_field("tail vertex");
      auto v = cur.unsigned_field("head vertex");
      auto w = cur.unsigned_field("weight");
      cur.expect_end();
      if (u < 1 || u > n) throw DimacsError(line_no, "tail vertex " + std::to_string(u) + " outside 1.." + std::to_string(n));
      if (v < 1 || v > n) throw DimacsError(line_no, "head vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
      auto weight = static_cast<W>(w);
      if (!WeightTraits<W>::is_valid_edge_weight(weight)) throw DimacsError(line_no, "weight not representable");
      arcs.push_back({to_index(u), Arc<W>{to_index(v), weight}});
    } else {
      throw DimacsError(line_no, "unknown line type '" + std::string(kind) + "'");
    }
  }

  if (!have_problem) throw DimacsError(line_no, "missing problem line");
  if (arcs.size() != declared_m) {
    throw DimacsError(line_no, "problem line declares " + std::to_string(declared_m) + " arcs but " +
                                   std::to_string(arcs.size()) + " were given");
  }
  return Graph<W>::from_indexed(n, arcs);
}

template <WeightType W = std::uint64_t>
Graph<W> parse_dimacs(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_dimacs<W>(std::string_view(text));
}

template <WeightType W>
void write_dimacs(const Graph<W>& g, std::ostream& out, std::string_view comment = {}) {
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p sp " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const auto& a : g.out_edges(u)) out << "a " << to_number(u) << ' ' << to_number(a.target) << ' ' << a.weight << '\n';
  }
}

}  // namespace bmssp
