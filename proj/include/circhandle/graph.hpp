#pragma once

#include "word.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace circhandle {

// Vertices are letter indices 0..2*rank-1. The last generator prints as z/Z when drilled.
struct GWGraph {
  struct Edge {
    int u = 0, v = 0;
    int curve = 0;
  };
  int rank = 0;
  std::vector<Edge> edges;

  int vertex_count() const { return 2 * rank; }
};

struct SimpleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, no repeats
};

struct GraphAnalysis {
  bool connected = false;
  std::vector<int> cut_vertices;
  int complexity = 0;
  SimpleGraph simple;
};

inline std::string vertex_name(int v, int rank, bool drilled = false) {
  Letter l = letter_from_index(v);
  if (drilled && l.gen == rank) return l.sign > 0 ? "z" : "Z";
  return letter_name(l);
}

// Cyclic pair v1 v2 gives an edge v1 -- v2^-1; a word of length one gives v -- v^-1.
inline GWGraph genuine_graph(const std::vector<CyclicWord>& words, int rank) {
  GWGraph g;
  g.rank = rank;
  for (std::size_t c = 0; c < words.size(); ++c) {
    const auto& s = words[c].letters;
    if (s.empty()) throw input_error("empty word has no Whitehead graph");
    if (!is_cyclically_reduced(s)) throw input_error("word is not cyclically reduced");
    check_rank(s, rank);
    for (std::size_t i = 0; i < s.size(); ++i) {
      Letter a = s[i], b = s[(i + 1) % s.size()];
      g.edges.push_back({letter_index(a), letter_index(inverse(b)), static_cast<int>(c)});
    }
  }
  return g;
}

inline GWGraph genuine_graph(const std::vector<CyclicWord>& words) {
  if (words.empty()) return GWGraph{};
  return genuine_graph(words, words.front().rank);
}

namespace detail {

inline int count_components(int n, const std::vector<std::pair<int, int>>& edges, int removed,
                            bool count_isolated = true) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touched(n, false);
  for (auto [u, v] : edges) {
    if (u == removed || v == removed) continue;
    touched[u] = touched[v] = true;
    parent[find(u)] = find(v);
  }
  int c = 0;
  for (int i = 0; i < n; ++i)
    if (i != removed && find(i) == i && (count_isolated || touched[i])) ++c;
  return c;
}

inline std::vector<int> cut_vertices_of(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> out;
  const int base = count_components(n, edges, -1);
  for (int v = 0; v < n; ++v) {
    bool isolated = true;
    for (auto [a, b] : edges)
      if (a == v || b == v) isolated = false;
    if (isolated) continue;
    if (count_components(n, edges, v) > base) out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline SimpleGraph simple_graph(const GWGraph& g) {
  std::set<std::pair<int, int>> s;
  for (const auto& e : g.edges)
    if (e.u != e.v) s.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return SimpleGraph{g.vertex_count(), {s.begin(), s.end()}};
}

inline std::vector<int> cut_vertices(const SimpleGraph& g) {
  return detail::cut_vertices_of(g.vertex_count, g.edges);
}

// Every vertex counts, isolated ones included.
inline GraphAnalysis analyze_graph(const GWGraph& g) {
  GraphAnalysis a;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : g.edges) pairs.push_back({e.u, e.v});
  a.connected = g.vertex_count() > 0 && detail::count_components(g.vertex_count(), pairs, -1) == 1;
  a.cut_vertices = detail::cut_vertices_of(g.vertex_count(), pairs);
  a.complexity = 2 * static_cast<int>(g.edges.size());
  a.simple = simple_graph(g);
  return a;
}

// Vertex sets of the components of G - v, ordered by least vertex.
inline std::vector<std::vector<int>> components_without(const GWGraph& g, int v) {
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges)
    if (e.u != v && e.v != v) parent[find(e.u)] = find(e.v);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i)
    if (i != v) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [r, vs] : groups) out.push_back(vs);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::map<std::pair<int, int>, int> edge_counts(const GWGraph& g) {
  std::map<std::pair<int, int>, int> m;
  for (const auto& e : g.edges) ++m[{std::min(e.u, e.v), std::max(e.u, e.v)}];
  return m;
}

inline std::vector<int> valences(const GWGraph& g) {
  std::vector<int> d(g.vertex_count(), 0);
  for (const auto& e : g.edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

// Node and edge lists, one record per line.
inline std::string export_graph(const GWGraph& g, const std::vector<std::string>& curve_names,
                                bool drilled = false) {
  std::string out = "nodes";
  for (int v = 0; v < g.vertex_count(); ++v) out += " " + vertex_name(v, g.rank, drilled);
  out += "\n";
  for (const auto& e : g.edges) {
    std::string label = e.curve < static_cast<int>(curve_names.size()) ? curve_names[e.curve]
                                                                         : "c" + std::to_string(e.curve);
    out += "edge " + vertex_name(e.u, g.rank, drilled) + " " + vertex_name(e.v, g.rank, drilled) +
           " " + label + "\n";
  }
  return out;
}

}  // namespace circhandle
