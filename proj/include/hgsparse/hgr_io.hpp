#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgsparse/hypergraph.hpp"

namespace hgsparse {

// Weighted hMETIS-style text format:
//
//   % comment
//   m n 1
//   w_1 v v v ...     (1-indexed vertex ids)
//   ...
//
// Blank lines and lines starting with '%' are skipped.

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    Io,
    MalformedHeader,
    MalformedLine,
    VertexOutOfRange,
    DuplicateVertex,
    EdgeTooSmall,
    EdgeCountMismatch,
  };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

namespace detail {

inline bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '%';
}

/// Parses a non-negative decimal integer token; rejects signs, fractions and junk.
inline bool parse_index(const std::string& tok, unsigned long long& out) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = std::stoull(tok);
  } catch (const std::out_of_range&) {
    return false;
  }
  return true;
}

inline bool parse_weight(const std::string& tok, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(tok, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == tok.size() && std::isfinite(out) && out >= 0.0;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

inline Hypergraph parse_hypergraph(std::istream& in) {
  using Kind = ParseError::Kind;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  unsigned long long m = 0, n = 0;
  std::vector<Hyperedge> edges;

  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    const auto tok = detail::tokens(line);
    if (!header) {
      unsigned long long flag = 0;
      if (tok.size() != 3 || !detail::parse_index(tok[0], m) ||
          !detail::parse_index(tok[1], n) || !detail::parse_index(tok[2], flag) || flag != 1 ||
          n == 0)
        throw ParseError(Kind::MalformedHeader, lineno,
                         "expected header \"m n 1\" with n >= 1");
      header = true;
      continue;
    }
    if (edges.size() == m)
      throw ParseError(Kind::EdgeCountMismatch, lineno,
                       "more hyperedge lines than the " + std::to_string(m) + " declared");
    Hyperedge e;
    if (tok.empty() || !detail::parse_weight(tok[0], e.weight))
      throw ParseError(Kind::MalformedLine, lineno, "expected a finite nonnegative weight");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 1; i < tok.size(); ++i) {
      unsigned long long v = 0;
      if (!detail::parse_index(tok[i], v))
        throw ParseError(Kind::MalformedLine, lineno, "bad vertex id '" + tok[i] + "'");
      if (v < 1 || v > n)
        throw ParseError(Kind::VertexOutOfRange, lineno,
                         "vertex id " + tok[i] + " outside [1, " + std::to_string(n) + "]");
      if (seen[v - 1])
        throw ParseError(Kind::DuplicateVertex, lineno, "vertex " + tok[i] + " repeated");
      seen[v - 1] = true;
      e.vertices.push_back(static_cast<Vertex>(v - 1));
    }
    if (e.vertices.size() < 2)
      throw ParseError(Kind::EdgeTooSmall, lineno, "hyperedge needs at least two vertices");
    edges.push_back(std::move(e));
  }
  if (in.bad()) throw ParseError(Kind::Io, lineno, "read error");
  if (!header) throw ParseError(Kind::MalformedHeader, lineno, "missing header line");
  if (edges.size() != m)
    throw ParseError(Kind::EdgeCountMismatch, lineno,
                     "expected " + std::to_string(m) + " hyperedges, found " +
                         std::to_string(edges.size()));
  return Hypergraph(static_cast<std::size_t>(n), std::move(edges));
}

inline Hypergraph parse_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseError::Kind::Io, 0, "cannot open '" + path + "'");
  return parse_hypergraph(in);
}

/// 17 significant digits, enough to round-trip any double.
inline std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

inline void serialize_hypergraph(const Hypergraph& h, std::ostream& out) {
  out << h.num_edges() << ' ' << h.num_vertices() << " 1\n";
  for (const auto& e : h.edges()) {
    out << format_weight(e.weight);
    for (Vertex v : e.vertices) out << ' ' << (v + 1);
    out << '\n';
  }
}

inline void serialize_hypergraph(const Hypergraph& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  serialize_hypergraph(h, out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace hgsparse
