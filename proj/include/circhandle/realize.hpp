#pragma once

#include "diagram.hpp"

#include <functional>

namespace circhandle {

// A curve given by its letters read from a chosen cut. Cut j is the edge arriving at letter j;
// cut 0 is the edge closing the word up.
struct CurveSpec {
  std::string name;
  Letters letters;
};

// Transverse meeting of two curves at given cuts.
struct CrossingSpec {
  int curve_a = 0, cut_a = 0;
  int curve_b = 0, cut_b = 0;
  bool flip = false;
};

// A node several curves pass through, as a ccw list of (curve, cut, half); half 0 arrives.
struct MarkSpec {
  struct End {
    int curve = 0, cut = 0, half = 0;
  };
  std::vector<End> ends;
};

inline MarkSpec to_mark(const CrossingSpec& x) {
  if (!x.flip) return {{{x.curve_a, x.cut_a, 0}, {x.curve_b, x.cut_b, 0}, {x.curve_a, x.cut_a, 1}, {x.curve_b, x.cut_b, 1}}};
  return {{{x.curve_a, x.cut_a, 0}, {x.curve_b, x.cut_b, 1}, {x.curve_a, x.cut_a, 1}, {x.curve_b, x.cut_b, 0}}};
}

struct RealizeOptions {
  bool first_is_basepoint = true;
  std::size_t max_solutions = 1;
  std::size_t node_cap = 5000000;
};

struct RealizeResult {
  std::vector<Diagram> diagrams;
  std::size_t nodes = 0;
  bool exhausted = true;  // false if node_cap stopped the search
};

namespace detail {

struct RealizeFrame {
  int rank = 0;
  std::vector<CurveSpec> curves;
  std::vector<int> first_edge;                    // per curve
  std::vector<std::pair<int, int>> occurrences;   // (curve, letter)
  std::vector<std::vector<int>> occ_of_gen;       // per generator, occurrence ids
  std::vector<std::vector<MarkEnd>> marks;

  int edge_of(int c, int j) const {
    const int m = static_cast<int>(curves[c].letters.size());
    return first_edge[c] + ((j % m) + m) % m;
  }
};

inline Diagram frame_diagram(const RealizeFrame& f, const std::vector<std::vector<int>>& order,
                             const std::vector<bool>& placed, bool basepoint) {
  Diagram d;
  d.rank = f.rank;
  for (const auto& c : f.curves) d.curves.push_back(c.name);
  for (std::size_t c = 0; c < f.curves.size(); ++c)
    for (std::size_t j = 0; j < f.curves[c].letters.size(); ++j)
      d.edges.push_back({"e" + std::to_string(d.edges.size() + 1), static_cast<int>(c)});
  std::vector<bool> complete(d.edges.size(), false);
  for (std::size_t c = 0; c < f.curves.size(); ++c) {
    const int m = static_cast<int>(f.curves[c].letters.size());
    for (int j = 0; j < m; ++j) {
      // edge j runs from letter j-1 to letter j
      int occ_prev = -1, occ_here = -1;
      for (std::size_t o = 0; o < f.occurrences.size(); ++o) {
        if (f.occurrences[o].first != static_cast<int>(c)) continue;
        if (f.occurrences[o].second == (j - 1 + m) % m) occ_prev = static_cast<int>(o);
        if (f.occurrences[o].second == j) occ_here = static_cast<int>(o);
      }
      complete[f.edge_of(c, j)] = placed[occ_prev] && placed[occ_here];
    }
  }
  d.vertices.assign(2 * f.rank, {});
  for (int g = 0; g < f.rank; ++g)
    for (int o : order[g]) {
      auto [c, j] = f.occurrences[o];
      Letter l = f.curves[c].letters[j];
      EndRef at_x, at_X;
      if (l.sign > 0) {
        at_x = {f.edge_of(c, j + 1), 0};
        at_X = {f.edge_of(c, j), 1};
      } else {
        at_x = {f.edge_of(c, j), 1};
        at_X = {f.edge_of(c, j + 1), 0};
      }
      if (complete[at_x.edge]) d.vertices[2 * g].push_back(at_x);
      if (complete[at_X.edge]) d.vertices[2 * g + 1].push_back(at_X);
    }
  for (const auto& mk : f.marks) {
    std::vector<MarkEnd> kept;
    for (auto me : mk)
      if (complete[me.edge]) kept.push_back(me);
    d.marks.push_back(kept);
  }
  d.has_basepoint = basepoint && !d.marks.empty();
  // Drop incomplete edges by remapping.
  std::vector<int> remap(d.edges.size(), -1);
  std::vector<Diagram::Edge> kept_edges;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (complete[e]) {
      remap[e] = static_cast<int>(kept_edges.size());
      kept_edges.push_back(d.edges[e]);
    }
  d.edges = kept_edges;
  for (auto& list : d.vertices)
    for (auto& er : list) er.edge = remap[er.edge];
  for (auto& mk : d.marks)
    for (auto& me : mk) me.edge = remap[me.edge];
  return d;
}

}  // namespace detail

// Enumerates rotation systems on the sphere in which the given curves trace the given letters.
inline RealizeResult realize(int rank, const std::vector<CurveSpec>& curves, const std::vector<MarkSpec>& marks,
                             const RealizeOptions& opt = {}) {
  detail::RealizeFrame f;
  f.rank = rank;
  f.curves = curves;
  int next_edge = 0;
  for (const auto& c : curves) {
    if (c.letters.empty()) throw input_error("curve " + c.name + " is empty");
    if (!is_cyclically_reduced(c.letters)) throw input_error("curve " + c.name + " is not cyclically reduced");
    check_rank(c.letters, rank);
    f.first_edge.push_back(next_edge);
    next_edge += static_cast<int>(c.letters.size());
  }
  f.occ_of_gen.assign(rank, {});
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (std::size_t j = 0; j < curves[c].letters.size(); ++j) {
      f.occ_of_gen[curves[c].letters[j].gen - 1].push_back(static_cast<int>(f.occurrences.size()));
      f.occurrences.push_back({static_cast<int>(c), static_cast<int>(j)});
    }
  for (const auto& mk : marks) {
    std::vector<MarkEnd> ends;
    for (const auto& e : mk.ends) {
      if (e.curve < 0 || e.curve >= static_cast<int>(curves.size())) throw input_error("mark names a missing curve");
      ends.push_back({f.edge_of(e.curve, e.cut), e.half});
    }
    f.marks.push_back(ends);
  }
  RealizeResult res;
  std::vector<std::vector<int>> order(rank);
  std::vector<bool> placed(f.occurrences.size(), false);
  const bool base = opt.first_is_basepoint;

  std::function<void(std::size_t)> dfs = [&](std::size_t t) {
    if (res.diagrams.size() >= opt.max_solutions || !res.exhausted) return;
    if (++res.nodes > opt.node_cap) {
      res.exhausted = false;
      return;
    }
    if (t == f.occurrences.size()) {
      Diagram d = detail::frame_diagram(f, order, placed, base);
      try {
        validate(d);
        auto words = trace_based_words(d);
        for (std::size_t c = 0; c < curves.size(); ++c)
          if (cyclic(words[c]) != cyclic(curves[c].letters, rank)) return;
      } catch (const input_error&) {
        return;
      }
      res.diagrams.push_back(std::move(d));
      return;
    }
    const int g = f.curves[f.occurrences[t].first].letters[f.occurrences[t].second].gen - 1;
    auto& ord = order[g];
    const std::size_t slots = ord.empty() ? 1 : ord.size();
    for (std::size_t p = 0; p < slots; ++p) {
      ord.insert(ord.begin() + (ord.empty() ? 0 : p + 1), static_cast<int>(t));
      placed[t] = true;
      Diagram partial = detail::frame_diagram(f, order, placed, base);
      bool ok = true;
      try {
        ok = genus_defect(embed(partial)) == 0;
      } catch (const input_error&) {
        ok = false;
      }
      if (ok) dfs(t + 1);
      placed[t] = false;
      ord.erase(std::find(ord.begin(), ord.end(), static_cast<int>(t)));
      if (res.diagrams.size() >= opt.max_solutions || !res.exhausted) return;
    }
  };
  dfs(0);
  return res;
}

inline RealizeResult realize(int rank, const std::vector<CurveSpec>& curves,
                             const std::vector<CrossingSpec>& crossings, const RealizeOptions& opt = {}) {
  std::vector<MarkSpec> marks;
  for (const auto& x : crossings) {
    if (x.curve_a == x.curve_b && x.cut_a == x.cut_b) throw input_error("a crossing needs two distinct edges");
    marks.push_back(to_mark(x));
  }
  return realize(rank, curves, marks, opt);
}

}  // namespace circhandle
