#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace inducilab {

namespace detail {

inline void graph6_put_size(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else if (n <= 68719476735ULL) {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    throw CapacityError("graph too large for graph6");
  }
}

}  // namespace detail

/// Standard graph6: size header, then the upper triangle column by column, six bits per byte offset by 63.
inline std::string graph6_encode(const Graph& g) {
  std::string out;
  detail::graph6_put_size(out, g.order());
  unsigned chunk = 0;
  int filled = 0;
  for (std::size_t j = 1; j < g.order(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.has_edge(i, j) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = 0;
        filled = 0;
      }
    }
  if (filled) out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
  return out;
}

inline Graph graph6_decode(std::string_view text) {
  std::size_t base = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) base = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  std::size_t pos = base;
  auto byte = [&](std::size_t at) -> unsigned {
    if (at >= text.size()) throw ParseError("graph6 input truncated", at);
    auto c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw ParseError("byte outside the graph6 range 63..126", at);
    return c - 63U;
  };

  if (pos >= text.size()) throw ParseError("empty graph6 input", pos);
  for (std::size_t at = pos; at < text.size(); ++at) byte(at);

  std::size_t n = 0;
  if (text[pos] == '~') {
    if (pos + 1 < text.size() && text[pos + 1] == '~') {
      for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | byte(pos + 2 + i);
      pos += 8;
    } else {
      for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | byte(pos + 1 + i);
      pos += 4;
    }
  } else {
    n = byte(pos);
    ++pos;
  }

  const std::size_t bits = n * (n - (n ? 1 : 0)) / 2;
  const std::size_t needed = (bits + 5) / 6;
  if (text.size() - pos < needed) throw ParseError("graph6 input truncated", text.size());
  if (text.size() - pos > needed) throw ParseError("trailing bytes after graph6 body", pos + needed);

  Graph g(n);
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      unsigned chunk = byte(pos + bit / 6);
      if ((chunk >> (5 - bit % 6)) & 1U) g.add_edge(i, j);
    }
  if (bits % 6) {
    unsigned last = byte(pos + needed - 1);
    if (last & ((1U << (6 - bits % 6)) - 1)) throw ParseError("nonzero graph6 padding bits", pos + needed - 1);
  }
  return g;
}

/// One graph per non-empty line; offsets in errors are relative to the whole stream.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      try {
        out.push_back(graph6_decode(line));
      } catch (const ParseError& e) {
        throw ParseError("graph6 line " + std::to_string(out.size() + 1), offset + e.offset());
      }
    }
    offset += line.size() + 1;
  }
  return out;
}

}  // namespace inducilab
