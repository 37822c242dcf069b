#pragma once

#include "automorphism.hpp"
#include "graph.hpp"
#include "word.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace circhandle {

struct search_cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MinimizeResult {
  std::vector<CyclicWord> words;
  std::vector<WhiteheadAutomorphism> trace;
};

// Greedy descent: first type II automorphism (in enumeration order) that strictly shortens.
inline MinimizeResult whitehead_minimize(std::vector<CyclicWord> s, int rank) {
  MinimizeResult r;
  for (auto& w : s) w = cyclic(as_word(w));
  const auto autos = type_two_automorphisms(rank);
  std::size_t len = total_length(s);
  for (;;) {
    bool improved = false;
    for (const auto& a : autos) {
      auto t = apply_automorphism(a, s);
      std::size_t l = total_length(t);
      if (l < len) {
        s = std::move(t);
        len = l;
        r.trace.push_back(a);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  r.words = std::move(s);
  return r;
}

inline MinimizeResult whitehead_minimize(const std::vector<CyclicWord>& s) {
  if (s.empty()) return {};
  return whitehead_minimize(s, s.front().rank);
}

// Stallings folding of the wedge of petals spelled by the generators; vertex 0 is the base.
struct FoldedGraph {
  int rank = 0;
  int vertices = 1;
  struct Edge {
    int from, to;
    int gen;  // from --x_gen--> to
  };
  std::vector<Edge> edges;

  int subgroup_rank() const { return static_cast<int>(edges.size()) - vertices + 1; }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(vertices);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      adj[edges[i].from].push_back(static_cast<int>(i));
      adj[edges[i].to].push_back(static_cast<int>(i));
    }
    return adj;
  }

  // Vertices and edges surviving repeated removal of valence-one vertices.
  std::pair<std::vector<bool>, std::vector<bool>> core() const {
    std::vector<bool> vin(vertices, true), ein(edges.size(), true);
    std::vector<int> deg(vertices, 0);
    for (const auto& e : edges) {
      ++deg[e.from];
      ++deg[e.to];
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (int v = 0; v < vertices; ++v) {
        if (!vin[v] || deg[v] > 1) continue;
        for (std::size_t i = 0; i < edges.size(); ++i)
          if (ein[i] && (edges[i].from == v || edges[i].to == v)) {
            ein[i] = false;
            --deg[edges[i].from];
            --deg[edges[i].to];
          }
        vin[v] = false;
        changed = true;
      }
    }
    return {vin, ein};
  }

  int core_edges() const {
    auto [vin, ein] = core();
    return static_cast<int>(std::count(ein.begin(), ein.end(), true));
  }
};

inline FoldedGraph fold(const std::vector<Word>& gens, int rank) {
  int nv = 1;
  std::vector<FoldedGraph::Edge> raw;
  for (const auto& w : gens) {
    if (w.empty()) continue;
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? 0 : nv++;
      Letter l = w.letters[i];
      if (l.sign > 0)
        raw.push_back({cur, next, l.gen});
      else
        raw.push_back({next, cur, l.gen});
      cur = next;
    }
  }
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, int>, int> out, in;
    for (auto& e : raw) {
      e.from = find(e.from);
      e.to = find(e.to);
      auto key_out = std::make_pair(e.from, e.gen);
      auto key_in = std::make_pair(e.to, e.gen);
      auto o = out.find(key_out);
      if (o != out.end() && find(o->second) != e.to) {
        int a = find(o->second), b = e.to;
        parent[std::max(a, b)] = std::min(a, b);
        changed = true;
        break;
      }
      auto i = in.find(key_in);
      if (i != in.end() && find(i->second) != e.from) {
        int a = find(i->second), b = e.from;
        parent[std::max(a, b)] = std::min(a, b);
        changed = true;
        break;
      }
      out[key_out] = e.to;
      in[key_in] = e.from;
    }
  }
  std::map<int, int> renum;
  renum[find(0)] = 0;
  for (int v = 0; v < nv; ++v)
    if (!renum.count(find(v))) {
      int id = static_cast<int>(renum.size());
      renum[find(v)] = id;
    }
  FoldedGraph g;
  g.rank = rank;
  g.vertices = static_cast<int>(renum.size());
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : raw) {
    int a = renum[find(e.from)], b = renum[find(e.to)];
    if (seen.insert({a, b, e.gen}).second) g.edges.push_back({a, b, e.gen});
  }
  return g;
}

// Label path from the base vertex to the nearest core vertex.
inline Word path_to_core(const FoldedGraph& g) {
  auto [vin, ein] = g.core();
  Word w{g.rank, {}};
  if (vin[0]) return w;
  auto adj = g.adjacency();
  std::vector<int> prev_edge(g.vertices, -1), prev(g.vertices, -1);
  std::vector<bool> seen(g.vertices, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    if (vin[v]) {
      Letters rev;
      for (int u = v; u != 0; u = prev[u]) {
        const auto& e = g.edges[prev_edge[u]];
        rev.push_back(e.to == u ? Letter{e.gen, 1} : Letter{e.gen, -1});
      }
      w.letters.assign(rev.rbegin(), rev.rend());
      return w;
    }
    for (int ei : adj[v]) {
      const auto& e = g.edges[ei];
      int u = e.from == v ? e.to : e.from;
      if (!seen[u]) {
        seen[u] = true;
        prev[u] = v;
        prev_edge[u] = ei;
        queue.push_back(u);
      }
    }
  }
  return w;
}

// Determinant of the exponent-sum matrix, by fraction-free elimination.
inline long long abelian_determinant(const std::vector<Word>& s, int rank) {
  const int n = rank;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n, 0));
  for (int i = 0; i < n; ++i)
    for (auto l : s[i].letters) a[i][l.gen - 1] += l.sign;
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * static_cast<long long>(a[n - 1][n - 1]);
}

struct PrimitiveResult {
  bool primitive = false;
  std::string reason;
  std::vector<WhiteheadAutomorphism> trace;
  Word conjugator;
  std::vector<Word> complement;  // S together with these is a basis
  std::size_t states = 0;
};

// True iff the whole set extends to a basis. Tests rank(<S>) = |S| and that <S> is a free
// factor, by greedy Whitehead descent on the size of the core graph of <S>.
inline PrimitiveResult is_primitive_set(const std::vector<Word>& s, int rank,
                                        std::size_t cap = 100000) {
  PrimitiveResult r;
  r.conjugator = Word{rank, {}};
  const int k = static_cast<int>(s.size());
  if (k > rank) {
    r.reason = "more elements than the rank";
    return r;
  }
  std::vector<Word> cur;
  for (const auto& w : s) {
    check_rank(w.letters, rank);
    cur.push_back(reduce(w.letters, rank));
  }
  if (k == 0) {
    r.primitive = true;
    r.reason = "empty set";
  }
  if (k == rank && k > 0) {
    const long long det = abelian_determinant(cur, rank);
    if (det != 1 && det != -1) {
      r.reason = "exponent-sum matrix has determinant " + std::to_string(det);
      return r;
    }
  }
  FoldedGraph g = fold(cur, rank);
  if (g.subgroup_rank() != k) {
    r.reason = "elements generate a subgroup of rank " + std::to_string(g.subgroup_rank());
    return r;
  }
  const auto autos = type_two_automorphisms(rank);
  int size = g.core_edges();
  while (size > k) {
    bool improved = false;
    for (const auto& a : autos) {
      if (++r.states > cap) throw search_cap_exceeded("primitivity search exceeded its state cap");
      auto t = apply_automorphism(a, cur);
      FoldedGraph h = fold(t, rank);
      int hs = h.core_edges();
      if (hs < size) {
        cur = std::move(t);
        g = std::move(h);
        size = hs;
        r.trace.push_back(a);
        improved = true;
        break;
      }
    }
    if (!improved) {
      r.reason = "core graph is Whitehead-minimal with " + std::to_string(size) + " edges";
      return r;
    }
  }
  // Core is a rose on k distinct generators, reached from the base along the conjugator.
  auto [vin, ein] = g.core();
  std::vector<bool> used(rank + 1, false);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (ein[i]) used[g.edges[i].gen] = true;
  Word u = path_to_core(g);
  r.conjugator = apply_inverse_trace(r.trace, u);
  for (int j = 1; j <= rank; ++j) {
    if (used[j]) continue;
    Word c = u * Word{rank, {{j, 1}}} * inverse(u);
    r.complement.push_back(apply_inverse_trace(r.trace, c));
  }
  r.primitive = true;
  if (r.reason.empty()) r.reason = "extends to a basis";
  return r;
}

// S is a basis of F_rank.
inline bool is_basis(const std::vector<Word>& s, int rank) {
  if (static_cast<int>(s.size()) != rank) return false;
  FoldedGraph g = fold(s, rank);
  return g.vertices == 1 && static_cast<int>(g.edges.size()) == rank;
}

inline bool replay_primitive_witness(const std::vector<Word>& s, int rank, const PrimitiveResult& w) {
  if (!w.primitive) return false;
  std::vector<Word> all = s;
  all.insert(all.end(), w.complement.begin(), w.complement.end());
  return is_basis(all, rank);
}

inline bool is_primitive(const Word& w, int rank) { return is_primitive_set({w}, rank).primitive; }

inline std::pair<CyclicWord, int> power_root(const CyclicWord& w) {
  if (w.empty()) throw input_error("power_root of the empty word");
  const auto& s = w.letters;
  const std::size_t n = s.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = s[i] == s[i - d];
    if (ok) return {CyclicWord{w.rank, least_rotation(Letters(s.begin(), s.begin() + d))},
                    static_cast<int>(n / d)};
  }
  return {w, 1};
}

// Minimal-length genuine graph on all 2*rank vertices is disconnected.
inline bool is_separable(const std::vector<CyclicWord>& s, int rank) {
  auto m = whitehead_minimize(s, rank);
  if (rank < 2) return false;
  std::vector<CyclicWord> nonempty;
  for (const auto& w : m.words)
    if (!w.empty()) nonempty.push_back(w);
  if (nonempty.empty()) return true;
  return !analyze_graph(genuine_graph(nonempty, rank)).connected;
}

}  // namespace circhandle
