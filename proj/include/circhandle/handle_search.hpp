#pragma once

#include "diagram.hpp"
#include "free_group.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace circhandle {

// One crossing of the drill path with a diagram segment. sign +1 means the path leaves the
// face on the right of the curve, giving z; -1 gives z^-1.
struct ArcCrossing {
  int segment = 0;
  int edge = 0;
  int curve = 0;
  int sign = 1;
  friend bool operator==(const ArcCrossing&, const ArcCrossing&) = default;
};

struct ArcCandidate {
  int id = 0;
  int face_a = 0, face_b = 0;
  std::vector<ArcCrossing> path;
  std::optional<int> around_vertex;  // fat vertex met by every crossed segment

  int length() const { return static_cast<int>(path.size()); }
};

namespace detail {

inline std::optional<int> common_fat_vertex(const Embedding& m, const std::vector<ArcCrossing>& path) {
  if (path.empty()) return std::nullopt;
  for (int v = 0; v < m.fat; ++v) {
    bool all = true;
    for (const auto& c : path) {
      const auto& s = m.segments[c.segment];
      if (s.from != v && s.to != v) all = false;
    }
    if (all) return v;
  }
  return std::nullopt;
}

}  // namespace detail

inline ArcCrossing crossing_of(const Diagram& d, const Embedding& m, int segment, int from_face) {
  ArcCrossing c;
  c.segment = segment;
  c.edge = m.segments[segment].edge;
  c.curve = d.edges[c.edge].curve;
  c.sign = m.face_of[2 * segment] == from_face ? 1 : -1;
  return c;
}

// Shortest dual path; neighbours tried by (face id, segment id).
inline ArcCandidate arc_between(const Diagram& d, const Embedding& m, int fa, int fb) {
  if (fa == fb) throw input_error("an arc needs two distinct faces");
  if (fa < 0 || fb < 0 || fa >= m.face_count || fb >= m.face_count) throw input_error("face out of range");
  std::vector<std::vector<std::pair<int, int>>> adj(m.face_count);  // (face, segment)
  for (std::size_t s = 0; s < m.segments.size(); ++s) {
    int f = m.face_of[2 * s], g = m.face_of[2 * s + 1];
    if (f == g) continue;
    adj[f].push_back({g, static_cast<int>(s)});
    adj[g].push_back({f, static_cast<int>(s)});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> prev(m.face_count, -1), via(m.face_count, -1);
  std::deque<int> q{fa};
  prev[fa] = fa;
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    if (f == fb) break;
    for (auto [g, s] : adj[f])
      if (prev[g] < 0) {
        prev[g] = f;
        via[g] = s;
        q.push_back(g);
      }
  }
  if (prev[fb] < 0) throw input_error("faces are not connected in the dual graph");
  ArcCandidate c;
  c.face_a = fa;
  c.face_b = fb;
  std::vector<ArcCrossing> rev;
  for (int f = fb; f != fa; f = prev[f]) rev.push_back(crossing_of(d, m, via[f], prev[f]));
  c.path.assign(rev.rbegin(), rev.rend());
  c.around_vertex = detail::common_fat_vertex(m, c.path);
  return c;
}

inline std::vector<ArcCandidate> enumerate_arcs(const Diagram& d, const Embedding& m) {
  std::vector<ArcCandidate> out;
  for (int a = 0; a < m.face_count; ++a)
    for (int b = a + 1; b < m.face_count; ++b) {
      out.push_back(arc_between(d, m, a, b));
      out.back().id = static_cast<int>(out.size()) - 1;
    }
  return out;
}

inline std::vector<ArcCandidate> enumerate_arcs(const Diagram& d) { return enumerate_arcs(d, embed(d)); }

struct DrilledWords {
  int rank = 0;  // original rank + 1; the last generator is z
  std::vector<Word> based;
  std::vector<CyclicWord> words;
};

// Inserts z^sign into each curve where the path crosses it.
inline DrilledWords drill(const Diagram& d, const Embedding& m, const std::vector<ArcCrossing>& path) {
  const auto curves = trace_curves(d);
  const int z = d.rank + 1;
  // Insertion slot of each segment: (position before letter index, order within slot).
  std::vector<std::pair<int, int>> slot(m.segments.size(), {0, 0});
  for (const auto& t : curves) {
    const int len = static_cast<int>(t.letters.size());
    for (int j = 0; j < len; ++j) {
      const auto seg = m.edge_segments[t.edges[j]];
      if (j == 0 && t.based && seg[1] >= 0) {
        slot[seg[1]] = {0, 0};
        slot[seg[0]] = {len, 0};
      } else {
        slot[seg[0]] = {j, 0};
        if (seg[1] >= 0) slot[seg[1]] = {j, 1};
      }
    }
  }
  std::vector<std::map<std::pair<int, int>, Letter>> inserts(curves.size());
  for (const auto& c : path) {
    if (c.segment < 0 || c.segment >= static_cast<int>(m.segments.size())) throw input_error("bad arc segment");
    if (!inserts[c.curve].emplace(slot[c.segment], Letter{z, c.sign}).second)
      throw input_error("arc crosses a segment twice");
  }
  DrilledWords out;
  out.rank = z;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    Letters raw;
    const auto& t = curves[c];
    const int len = static_cast<int>(t.letters.size());
    auto it = inserts[c].begin();
    for (int j = 0; j <= len; ++j) {
      for (; it != inserts[c].end() && it->first.first == j; ++it) raw.push_back(it->second);
      if (j < len) raw.push_back(t.letters[j]);
    }
    out.based.push_back(reduce(raw, z));
    out.words.push_back(cyclic(out.based.back()));
  }
  return out;
}

inline DrilledWords drill(const Diagram& d, const ArcCandidate& c) {
  if (c.face_a == c.face_b) throw input_error("an arc needs two distinct faces");
  return drill(d, embed(d), c.path);
}

// Kills the last generator.
inline std::vector<Word> fill(const std::vector<Word>& s) {
  std::vector<Word> out;
  for (const auto& w : s) {
    Letters raw;
    for (auto l : w.letters)
      if (l.gen != w.rank) raw.push_back(l);
    out.push_back(reduce(raw, w.rank - 1));
  }
  return out;
}

inline std::vector<CyclicWord> fill(const std::vector<CyclicWord>& s) {
  std::vector<CyclicWord> out;
  for (const auto& w : s) {
    Letters raw;
    for (auto l : w.letters)
      if (l.gen != w.rank) raw.push_back(l);
    out.push_back(cyclic(raw, w.rank - 1));
  }
  return out;
}

// ---- slides ----

struct SlideStep {
  int vertex = 0;
  std::vector<int> component;
  WhiteheadAutomorphism aut;
  int complexity_before = 0, complexity_after = 0;
};

inline int complexity(const std::vector<CyclicWord>& s) { return 2 * static_cast<int>(total_length(s)); }

// Slides the part of the graph in `component` along the disk v.
inline std::pair<std::vector<CyclicWord>, SlideStep> slide(const std::vector<CyclicWord>& words, int v,
                                                           const std::vector<int>& component) {
  if (words.empty()) throw input_error("no words to slide");
  const int rank = words.front().rank;
  GWGraph g = genuine_graph(words, rank);
  auto cuts = analyze_graph(g).cut_vertices;
  if (std::find(cuts.begin(), cuts.end(), v) == cuts.end())
    throw input_error(vertex_name(v, rank) + " is not a cut vertex");
  auto comps = components_without(g, v);
  if (std::find(comps.begin(), comps.end(), component) == comps.end())
    throw input_error("not a component of the graph minus " + vertex_name(v, rank));
  if (std::find(component.begin(), component.end(), inverse_index(v)) != component.end())
    throw input_error("component contains the opposite disk");
  std::uint64_t set = 0;
  for (int u : component) set |= std::uint64_t{1} << u;
  SlideStep st;
  st.vertex = v;
  st.component = component;
  st.aut = WhiteheadAutomorphism::type_two(rank, letter_from_index(v), set);
  auto out = apply_automorphism(st.aut, words);
  st.complexity_before = complexity(words);
  st.complexity_after = complexity(out);
  if (st.complexity_after >= st.complexity_before) throw std::logic_error("slide did not lower complexity");
  return {out, st};
}

struct SlideLoop {
  std::vector<CyclicWord> words;
  std::vector<SlideStep> steps;
  GraphAnalysis terminal;
};

// Smallest cut vertex first; first component (by least vertex) avoiding the opposite disk.
inline SlideLoop slide_loop(std::vector<CyclicWord> words) {
  SlideLoop r;
  const int rank = words.front().rank;
  const std::size_t cap = total_length(words) + 1;
  for (;;) {
    auto a = analyze_graph(genuine_graph(words, rank));
    if (!a.connected || a.cut_vertices.empty()) {
      r.terminal = a;
      break;
    }
    if (r.steps.size() > cap) throw std::logic_error("slide loop exceeded its step bound");
    const int v = a.cut_vertices.front();
    auto comps = components_without(genuine_graph(words, rank), v);
    for (const auto& c : comps) {
      if (std::find(c.begin(), c.end(), inverse_index(v)) != c.end()) continue;
      auto [next, st] = slide(words, v, c);
      words = std::move(next);
      r.steps.push_back(st);
      break;
    }
  }
  r.words = std::move(words);
  return r;
}

// ---- arc test ----

struct ArcVerdict {
  ArcCandidate arc;
  bool witness = false;
  std::string reason;
  DrilledWords drilled;
  SlideLoop loop;
  PrimitiveResult primitive;
};

inline ArcVerdict test_arc(const Diagram& d, const Embedding& m, const ArcCandidate& c,
                           std::size_t cap = 100000) {
  if (c.face_a == c.face_b) throw input_error("an arc needs two distinct faces");
  ArcVerdict v;
  v.arc = c;
  v.drilled = drill(d, m, c.path);
  v.loop = slide_loop(v.drilled.words);
  v.primitive = is_primitive_set(v.drilled.based, v.drilled.rank, cap);
  if (v.primitive.primitive) {
    v.witness = true;
    v.reason = "curves are associated primitive after drilling";
  } else if (v.loop.terminal.connected && v.loop.terminal.cut_vertices.empty()) {
    v.reason = "no essential disk misses the curves";
  } else {
    v.reason = "disconnection does not neighborhood the curves";
  }
  return v;
}

inline ArcVerdict test_arc(const Diagram& d, const ArcCandidate& c) { return test_arc(d, embed(d), c); }

// ---- decision ----

struct Assumptions {
  bool minimal_genus = true;         // the surface is of minimal genus
  bool non_fibered_external = false;  // non-fiberedness is known from outside
  bool unique_surface = false;       // unique incompressible Seifert surface
  bool arc_classification = true;     // one-handles come from face-pair arcs
};

struct Witness {
  std::string kind;  // "basis", "associated-primitive", "arc"
  std::vector<int> curves;
  std::optional<ArcCandidate> arc;
  std::vector<WhiteheadAutomorphism> trace;
  std::vector<Word> basis;  // chosen curves followed by the completing elements
  int rank = 0;
};

struct HandleReport {
  int rank = 0;
  int curves = 0;
  bool fibered = false;
  int h_lower = 0, h_upper = 0;
  std::optional<Witness> witness;
  std::optional<std::vector<int>> cw;
  std::vector<std::string> assumptions;
  std::vector<ArcVerdict> per_arc;
  bool arc_search_run = false;

  std::optional<int> h() const {
    if (h_lower == h_upper) return h_lower;
    return std::nullopt;
  }
};

inline Witness witness_from(const std::vector<Word>& chosen, const std::vector<int>& idx, int rank,
                            const PrimitiveResult& p, const std::string& kind) {
  Witness w;
  w.kind = kind;
  w.curves = idx;
  w.trace = p.trace;
  w.rank = rank;
  w.basis = chosen;
  w.basis.insert(w.basis.end(), p.complement.begin(), p.complement.end());
  return w;
}

inline bool replay(const Witness& w) { return is_basis(w.basis, w.rank); }

// Largest associated-primitive subset, scanned by decreasing size then lexicographically.
inline std::pair<std::vector<int>, PrimitiveResult> largest_primitive_subset(const std::vector<Word>& words,
                                                                             int rank, int max_size) {
  const int n = static_cast<int>(words.size());
  for (int k = std::min(max_size, n); k >= 1; --k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Word> sub;
      for (int i : idx) sub.push_back(words[i]);
      auto p = is_primitive_set(sub, rank);
      if (p.primitive) return {idx, p};
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {{}, PrimitiveResult{}};
}

// Circular width of a genus-one surface with h handles in a single step: c = 1 - chi(F) + 2h.
inline int genus_one_width(int h) { return 2 + 2 * h; }

struct DecideOptions {
  Assumptions assumptions;
  bool run_arcs = true;
  bool keep_arcs = true;
};

// Bounds from the spine words alone.
inline HandleReport decide_words(const std::vector<Word>& words, int rank, const Assumptions& as) {
  HandleReport r;
  r.rank = rank;
  r.curves = static_cast<int>(words.size());
  r.h_upper = rank;
  if (r.curves == rank) {
    std::vector<int> all(rank);
    std::iota(all.begin(), all.end(), 0);
    auto p = is_primitive_set(words, rank);
    if (p.primitive) {
      r.fibered = true;
      r.h_lower = r.h_upper = 0;
      r.witness = witness_from(words, all, rank, p, "basis");
      return r;
    }
  }
  auto [idx, p] = largest_primitive_subset(words, rank, std::min(rank, r.curves) - (r.curves == rank ? 1 : 0));
  if (!idx.empty()) {
    std::vector<Word> sub;
    for (int i : idx) sub.push_back(words[i]);
    r.witness = witness_from(sub, idx, rank, p, "associated-primitive");
    r.h_upper = rank - static_cast<int>(idx.size());
  }
  if (r.curves == rank && as.minimal_genus) {
    r.h_lower = 1;
    r.assumptions.push_back("F has minimal genus, so a non-basis spine means k is not fibered");
  } else if (as.non_fibered_external) {
    r.h_lower = 1;
    r.assumptions.push_back("k is non-fibered by an external result");
  }
  return r;
}

struct PowerCheck {
  CyclicWord root;
  int exponent = 1;
  bool root_primitive = false;
  bool flagged = false;  // conjugate to g^n, n >= 2, g primitive
};

// Necessary condition only; whether the curve spoils every disk is not examined.
inline std::vector<PowerCheck> power_of_primitive_check(const std::vector<Word>& words, int rank) {
  std::vector<PowerCheck> out;
  for (const auto& w : words) {
    PowerCheck c;
    std::tie(c.root, c.exponent) = power_root(cyclic(w));
    c.root_primitive = is_primitive_set({as_word(c.root)}, rank).primitive;
    c.flagged = c.exponent >= 2 && c.root_primitive;
    out.push_back(c);
  }
  return out;
}

inline HandleReport decide(const Diagram& d, const DecideOptions& opt = {}) {
  const auto words = trace_based_words(d);
  HandleReport r = decide_words(words, d.rank, opt.assumptions);
  if (opt.assumptions.non_fibered_external && !r.fibered && r.h_lower < 1) {
    r.h_lower = 1;
    r.assumptions.push_back("k is non-fibered by an external result");
  }
  if (!r.fibered && d.rank == 2 && r.curves == 2 && r.h_upper == 2 && opt.run_arcs) {
    Embedding m = embed(d);
    r.arc_search_run = true;
    bool found = false;
    for (const auto& c : enumerate_arcs(d, m)) {
      auto v = test_arc(d, m, c);
      if (v.witness && !found) {
        found = true;
        Witness w = witness_from(v.drilled.based, {0, 1}, v.drilled.rank, v.primitive, "arc");
        w.arc = c;
        r.witness = w;
        r.h_upper = 1;
      }
      if (opt.keep_arcs) r.per_arc.push_back(std::move(v));
    }
    if (!found && r.h_lower >= 1 && opt.assumptions.arc_classification) {
      r.h_lower = 2;
      r.assumptions.push_back("every one-handle arc is parallel into the boundary and is one of the face-pair arcs");
    }
  }
  if (!r.fibered && d.rank == 2 && r.h() && *r.h() >= 1) {
    if (*r.h() == 1) {
      r.cw = std::vector<int>{genus_one_width(1)};
    } else if (opt.assumptions.unique_surface) {
      r.cw = std::vector<int>{genus_one_width(2)};
      r.assumptions.push_back("F is the unique incompressible Seifert surface");
    }
  }
  return r;
}

}  // namespace circhandle
