#pragma once

#include "graph.hpp"
#include "word.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace circhandle {

struct diagram_error : input_error {
  using input_error::input_error;
};

// Tail (side 0) to head (side 1) follows the curve. Arriving at X_i and leaving from x_i at the
// same number is the letter x_i; arriving at x_i and leaving from X_i is X_i.
struct EndRef {
  int edge = 0;
  int side = 0;
  friend bool operator==(const EndRef&, const EndRef&) = default;
};

// An edge passing through a marked node is cut there: half 0 arrives from the tail, half 1
// leaves toward the head.
struct MarkEnd {
  int edge = 0;
  int half = 0;
  friend bool operator==(const MarkEnd&, const MarkEnd&) = default;
};

struct Diagram {
  struct Edge {
    std::string id;
    int curve = 0;
  };

  int rank = 0;
  std::vector<std::string> curves;
  std::vector<Edge> edges;
  // Indexed by letter index. Lists for x_i are counterclockwise, for X_i clockwise; position k
  // carries number k+1 on both.
  std::vector<std::vector<EndRef>> vertices;
  // Points where curves meet on the sphere, each a counterclockwise list of ends. The first
  // is the base point when has_basepoint is set.
  std::vector<std::vector<MarkEnd>> marks;
  bool has_basepoint = false;
  std::optional<int> infinity;

  int edge_index(const std::string& id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].id == id) return static_cast<int>(i);
    throw diagram_error("unknown edge " + id);
  }
  int curve_index(const std::string& name) const {
    for (std::size_t i = 0; i < curves.size(); ++i)
      if (curves[i] == name) return static_cast<int>(i);
    throw diagram_error("unknown curve " + name);
  }
};

inline std::string fat_vertex_name(int v) { return letter_name(letter_from_index(v)); }

// Combinatorial map of the diagram on the sphere: nodes are fat vertices then marks, segments
// are edge pieces between nodes. Dart 2s runs along the curve, 2s+1 against it.
struct Embedding {
  int nodes = 0;
  int fat = 0;
  struct Segment {
    int edge = 0;
    int half = 0;  // 0 unless the edge is cut by a mark
    int from = 0, to = 0;
  };
  std::vector<Segment> segments;
  std::vector<std::array<int, 2>> edge_segments;  // second entry -1 when uncut
  std::vector<std::vector<std::pair<int, int>>> rotation;  // ccw (segment, end) per node
  std::map<std::pair<int, int>, std::pair<int, int>> where;  // (segment, end) -> (node, pos)
  std::vector<int> face_of;  // per dart
  int face_count = 0;
  std::vector<std::vector<int>> face_darts;

  int dart_origin(int d) const {
    const auto& s = segments[d / 2];
    return d % 2 ? s.to : s.from;
  }
  int dart_target(int d) const {
    const auto& s = segments[d / 2];
    return d % 2 ? s.from : s.to;
  }
  int next(int d) const {
    const int s = d / 2;
    const int end_here = d % 2 ? 0 : 1;
    auto [node, pos] = where.at({s, end_here});
    const auto& rot = rotation[node];
    auto [s2, e2] = rot[(pos + 1) % rot.size()];
    return 2 * s2 + (e2 == 0 ? 0 : 1);
  }
};

inline void validate(const Diagram& d);

inline Embedding embed(const Diagram& d) {
  Embedding m;
  m.fat = 2 * d.rank;
  m.nodes = m.fat + static_cast<int>(d.marks.size());
  const int ne = static_cast<int>(d.edges.size());
  std::vector<int> cut_by(ne, -1);
  for (std::size_t k = 0; k < d.marks.size(); ++k)
    for (auto me : d.marks[k]) {
      if (me.edge < 0 || me.edge >= ne) throw diagram_error("mark refers to a missing edge");
      if (cut_by[me.edge] != -1 && cut_by[me.edge] != static_cast<int>(k))
        throw diagram_error("edge " + d.edges[me.edge].id + " passes through two marks");
      cut_by[me.edge] = static_cast<int>(k);
    }
  std::vector<std::array<int, 2>> ends_at(ne, {-1, -1});  // fat vertex of tail / head
  for (int v = 0; v < m.fat; ++v)
    for (auto er : d.vertices[v]) ends_at[er.edge][er.side] = v;
  m.edge_segments.assign(ne, {-1, -1});
  for (int e = 0; e < ne; ++e) {
    if (cut_by[e] < 0) {
      m.edge_segments[e][0] = static_cast<int>(m.segments.size());
      m.segments.push_back({e, 0, ends_at[e][0], ends_at[e][1]});
    } else {
      const int node = m.fat + cut_by[e];
      m.edge_segments[e][0] = static_cast<int>(m.segments.size());
      m.segments.push_back({e, 0, ends_at[e][0], node});
      m.edge_segments[e][1] = static_cast<int>(m.segments.size());
      m.segments.push_back({e, 1, node, ends_at[e][1]});
    }
  }
  m.rotation.assign(m.nodes, {});
  for (int v = 0; v < m.fat; ++v) {
    std::vector<std::pair<int, int>> rot;
    for (auto er : d.vertices[v]) {
      if (er.side == 0)
        rot.push_back({m.edge_segments[er.edge][0], 0});
      else {
        int s = m.edge_segments[er.edge][1] >= 0 ? m.edge_segments[er.edge][1] : m.edge_segments[er.edge][0];
        rot.push_back({s, 1});
      }
    }
    if (v % 2) std::reverse(rot.begin(), rot.end());
    m.rotation[v] = rot;
  }
  for (std::size_t k = 0; k < d.marks.size(); ++k)
    for (auto me : d.marks[k]) {
      if (me.half == 0)
        m.rotation[m.fat + k].push_back({m.edge_segments[me.edge][0], 1});
      else
        m.rotation[m.fat + k].push_back({m.edge_segments[me.edge][1], 0});
    }
  for (int n = 0; n < m.nodes; ++n)
    for (std::size_t p = 0; p < m.rotation[n].size(); ++p) {
      if (m.where.count(m.rotation[n][p])) throw diagram_error("segment end listed twice");
      m.where[m.rotation[n][p]] = {n, static_cast<int>(p)};
    }
  const int darts = 2 * static_cast<int>(m.segments.size());
  for (int dt = 0; dt < darts; ++dt) {
    const auto& s = m.segments[dt / 2];
    if (s.from < 0 || s.to < 0) throw diagram_error("edge " + d.edges[s.edge].id + " has a missing end");
    if (!m.where.count({dt / 2, dt % 2 ? 0 : 1}) || !m.where.count({dt / 2, dt % 2 ? 1 : 0}))
      throw diagram_error("edge " + d.edges[s.edge].id + " is not fully placed");
  }
  m.face_of.assign(darts, -1);
  for (int dt = 0; dt < darts; ++dt) {
    if (m.face_of[dt] >= 0) continue;
    std::vector<int> walk;
    for (int x = dt; m.face_of[x] < 0; x = m.next(x)) {
      m.face_of[x] = m.face_count;
      walk.push_back(x);
    }
    m.face_darts.push_back(walk);
    ++m.face_count;
  }
  return m;
}

struct EulerCount {
  int vertices = 0, edges = 0, faces = 0, components = 0;
  int characteristic() const { return vertices - edges + faces; }
  bool spherical() const { return components <= 1 ? characteristic() == 2 : false; }
};

inline int node_components(const Embedding& m, bool count_isolated = true) {
  std::vector<int> parent(m.nodes);
  for (int i = 0; i < m.nodes; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touched(m.nodes, false);
  for (const auto& s : m.segments) {
    touched[s.from] = touched[s.to] = true;
    parent[find(s.from)] = find(s.to);
  }
  int c = 0;
  for (int i = 0; i < m.nodes; ++i)
    if (find(i) == i && (count_isolated || touched[i])) ++c;
  return c;
}

inline EulerCount euler_count(const Embedding& m) {
  EulerCount e;
  e.vertices = m.nodes;
  e.edges = static_cast<int>(m.segments.size());
  e.faces = m.segments.empty() ? 1 : m.face_count;
  e.components = node_components(m);
  return e;
}

// Sum over components of (V - E + F - 2); zero iff every component is planar.
inline int genus_defect(const Embedding& m) {
  std::vector<int> parent(m.nodes);
  for (int i = 0; i < m.nodes; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : m.segments) parent[find(s.from)] = find(s.to);
  std::map<int, std::array<int, 3>> comp;
  for (int n = 0; n < m.nodes; ++n)
    if (!m.rotation[n].empty()) comp[find(n)][0]++;
  for (const auto& s : m.segments) comp[find(s.from)][1]++;
  for (int f = 0; f < m.face_count; ++f) comp[find(m.dart_origin(m.face_darts[f][0]))][2]++;
  int defect = 0;
  for (auto& [r, c] : comp) defect += 2 - (c[0] - c[1] + c[2]);
  return defect;
}

inline void validate(const Diagram& d) {
  if (d.rank < 0) throw diagram_error("negative rank");
  if (static_cast<int>(d.vertices.size()) != 2 * d.rank) throw diagram_error("wrong number of fat vertices");
  const int ne = static_cast<int>(d.edges.size());
  std::vector<std::array<int, 2>> seen(ne, {0, 0});
  for (int v = 0; v < 2 * d.rank; ++v)
    for (auto er : d.vertices[v]) {
      if (er.edge < 0 || er.edge >= ne || er.side < 0 || er.side > 1)
        throw diagram_error("bad endpoint on " + fat_vertex_name(v));
      if (seen[er.edge][er.side]++) throw diagram_error("endpoint of " + d.edges[er.edge].id + " listed twice");
    }
  for (int e = 0; e < ne; ++e) {
    if (d.edges[e].curve < 0 || d.edges[e].curve >= static_cast<int>(d.curves.size()))
      throw diagram_error("edge " + d.edges[e].id + " has no curve");
    if (!seen[e][0] || !seen[e][1]) throw diagram_error("edge " + d.edges[e].id + " lacks an endpoint");
  }
  std::vector<std::array<int, 2>> at(ne);
  for (int v = 0; v < 2 * d.rank; ++v)
    for (auto er : d.vertices[v]) at[er.edge][er.side] = v;
  for (int e = 0; e < ne; ++e)
    if (at[e][0] == at[e][1])
      throw diagram_error("edge " + d.edges[e].id + " is a loop at " + fat_vertex_name(at[e][0]));
  for (int i = 0; i < d.rank; ++i) {
    const auto& a = d.vertices[2 * i];
    const auto& b = d.vertices[2 * i + 1];
    if (a.size() != b.size())
      throw diagram_error("valence of " + fat_vertex_name(2 * i) + " differs from " + fat_vertex_name(2 * i + 1));
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].side == b[k].side)
        throw diagram_error("gluing mismatch at number " + std::to_string(k + 1) + " of " + fat_vertex_name(2 * i));
  }
  std::vector<int> mark_hits(ne, 0);
  for (const auto& mk : d.marks) {
    std::map<int, int> halves;
    for (auto me : mk) {
      if (me.edge < 0 || me.edge >= ne || me.half < 0 || me.half > 1) throw diagram_error("bad mark entry");
      halves[me.edge] |= 1 << me.half;
    }
    for (auto [e, h] : halves) {
      if (h != 3) throw diagram_error("edge " + d.edges[e].id + " enters a mark without leaving it");
      ++mark_hits[e];
    }
    if (mk.size() != 2 * halves.size()) throw diagram_error("mark lists an end twice");
  }
  if (d.infinity && (*d.infinity < 0 || *d.infinity >= ne)) throw diagram_error("infinity marks a missing edge");
  Embedding m = embed(d);
  if (genus_defect(m) != 0) throw diagram_error("rotation system is not planar");
}

// ---- curves ----

struct TracedCurve {
  std::vector<int> edges;  // in curve order, starting at the based edge
  Letters letters;         // letters[j] sits between edges[j] and edges[j+1]
  bool based = false;      // edges[0] passes through the base point
};

inline std::vector<TracedCurve> trace_curves(const Diagram& d) {
  const int ne = static_cast<int>(d.edges.size());
  std::vector<std::pair<int, int>> head_at(ne), tail_at(ne);  // (vertex, position)
  for (int v = 0; v < 2 * d.rank; ++v)
    for (std::size_t k = 0; k < d.vertices[v].size(); ++k) {
      auto er = d.vertices[v][k];
      (er.side ? head_at : tail_at)[er.edge] = {v, static_cast<int>(k)};
    }
  std::vector<int> base_edge(d.curves.size(), -1);
  if (d.has_basepoint && !d.marks.empty())
    for (auto me : d.marks[0]) {
      int c = d.edges[me.edge].curve;
      if (base_edge[c] >= 0 && base_edge[c] != me.edge)
        throw diagram_error("curve " + d.curves[c] + " passes the base point twice");
      base_edge[c] = me.edge;
    }
  std::vector<TracedCurve> out(d.curves.size());
  std::vector<bool> used(ne, false);
  for (std::size_t c = 0; c < d.curves.size(); ++c) {
    int start = base_edge[c];
    if (start < 0)
      for (int e = 0; e < ne; ++e)
        if (d.edges[e].curve == static_cast<int>(c)) {
          start = e;
          break;
        }
    if (start < 0) throw diagram_error("curve " + d.curves[c] + " has no edges");
    TracedCurve t;
    t.based = base_edge[c] >= 0;
    int e = start;
    do {
      if (used[e]) throw diagram_error("gluing revisits edge " + d.edges[e].id);
      if (d.edges[e].curve != static_cast<int>(c))
        throw diagram_error("gluing joins curve " + d.curves[c] + " to " + d.curves[d.edges[e].curve]);
      used[e] = true;
      t.edges.push_back(e);
      auto [v, k] = head_at[e];
      Letter l = letter_from_index(v);
      t.letters.push_back(inverse(l));
      const auto& partner = d.vertices[v ^ 1];
      if (k >= static_cast<int>(partner.size()) || partner[k].side != 0)
        throw diagram_error("gluing inconsistency at number " + std::to_string(k + 1) + " of " +
                            fat_vertex_name(v ^ 1));
      e = partner[k].edge;
    } while (e != start);
    out[c] = std::move(t);
  }
  for (int e = 0; e < ne; ++e)
    if (!used[e]) throw diagram_error("edge " + d.edges[e].id + " lies on no closed curve");
  return out;
}

// Based words: a curve through the base point is read from there; others from their first edge.
inline std::vector<Word> trace_based_words(const Diagram& d) {
  std::vector<Word> out;
  for (const auto& t : trace_curves(d)) out.push_back(reduce(t.letters, d.rank));
  return out;
}

inline std::vector<CyclicWord> trace_words(const Diagram& d) {
  std::vector<CyclicWord> out;
  for (const auto& w : trace_based_words(d)) out.push_back(cyclic(w));
  return out;
}

// Underlying multigraph read off the edges themselves.
inline GWGraph diagram_graph(const Diagram& d) {
  GWGraph g;
  g.rank = d.rank;
  std::vector<std::array<int, 2>> at(d.edges.size());
  for (int v = 0; v < 2 * d.rank; ++v)
    for (auto er : d.vertices[v]) at[er.edge][er.side] = v;
  for (std::size_t e = 0; e < d.edges.size(); ++e) g.edges.push_back({at[e][0], at[e][1], d.edges[e].curve});
  return g;
}

// ---- faces ----

struct Face {
  int id = 0;
  std::vector<int> darts;  // boundary walk
};

inline std::vector<Face> faces(const Embedding& m) {
  std::vector<Face> out;
  for (int f = 0; f < m.face_count; ++f) out.push_back({f, m.face_darts[f]});
  if (m.segments.empty()) out.push_back({0, {}});
  return out;
}

inline std::vector<Face> faces(const Diagram& d) { return faces(embed(d)); }

// ---- text format ----

inline std::string end_token(const Diagram& d, EndRef e) { return d.edges[e.edge].id + "." + std::to_string(e.side); }
inline std::string mark_token(const Diagram& d, MarkEnd e) {
  return d.edges[e.edge].id + (e.half ? ".out" : ".in");
}

inline std::string write_diagram(const Diagram& d) {
  std::ostringstream o;
  o << "rank " << d.rank << "\n";
  o << "curves";
  for (const auto& c : d.curves) o << ' ' << c;
  o << "\n";
  for (const auto& e : d.edges) o << "edge " << e.id << ' ' << d.curves[e.curve] << "\n";
  for (int v = 0; v < 2 * d.rank; ++v) {
    o << "vertex " << fat_vertex_name(v) << ":";
    for (auto er : d.vertices[v]) o << ' ' << end_token(d, er);
    o << "\n";
  }
  if (d.infinity) o << "infinity " << d.edges[*d.infinity].id << "\n";
  for (std::size_t k = 0; k < d.marks.size(); ++k) {
    o << (k == 0 && d.has_basepoint ? "basepoint" : "crossing");
    for (auto me : d.marks[k]) o << ' ' << mark_token(d, me);
    o << "\n";
  }
  return o.str();
}

inline Diagram read_diagram(std::istream& in) {
  Diagram d;
  bool have_rank = false;
  std::vector<std::pair<int, std::string>> vertex_lines, mark_lines;
  std::vector<std::string> mark_kind;
  std::optional<std::string> inf;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw diagram_error("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    std::istringstream rs(rest);
    if (key == "rank") {
      if (!(rs >> d.rank) || d.rank < 0 || d.rank > 32) fail("bad rank");
      have_rank = true;
      d.vertices.assign(2 * d.rank, {});
    } else if (key == "curves") {
      std::string c;
      while (rs >> c) d.curves.push_back(c);
    } else if (key == "edge") {
      std::string id, c;
      if (!(rs >> id >> c)) fail("edge needs an id and a curve");
      for (const auto& e : d.edges)
        if (e.id == id) fail("duplicate edge " + id);
      auto it = std::find(d.curves.begin(), d.curves.end(), c);
      if (it == d.curves.end()) fail("edge on undeclared curve " + c);
      d.edges.push_back({id, static_cast<int>(it - d.curves.begin())});
    } else if (key == "vertex") {
      vertex_lines.push_back({lineno, rest});
    } else if (key == "infinity") {
      std::string id;
      if (!(rs >> id)) fail("infinity needs an edge");
      inf = id;
    } else if (key == "basepoint" || key == "crossing") {
      mark_lines.push_back({lineno, rest});
      mark_kind.push_back(key);
    } else {
      fail("unknown keyword " + key);
    }
  }
  if (!have_rank) throw diagram_error("missing rank line");
  for (auto& [ln, rest] : vertex_lines) {
    lineno = ln;
    auto colon = rest.find(':');
    if (colon == std::string::npos) fail("vertex line needs ':'");
    std::istringstream ns(rest.substr(0, colon));
    std::string name;
    ns >> name;
    Letter l;
    try {
      l = parse_letter(name);
    } catch (const input_error&) {
      fail("bad vertex name " + name);
    }
    if (l.gen > d.rank) fail("vertex " + name + " outside rank");
    std::istringstream es(rest.substr(colon + 1));
    std::string tok;
    auto& list = d.vertices[letter_index(l)];
    if (!list.empty()) fail("vertex " + name + " listed twice");
    while (es >> tok) {
      auto dot = tok.rfind('.');
      if (dot == std::string::npos) fail("endpoint token needs .0 or .1");
      std::string side = tok.substr(dot + 1);
      if (side != "0" && side != "1") fail("endpoint side must be 0 or 1");
      list.push_back({d.edge_index(tok.substr(0, dot)), side == "1"});
    }
  }
  for (std::size_t k = 0; k < mark_lines.size(); ++k) {
    lineno = mark_lines[k].first;
    std::istringstream ms(mark_lines[k].second);
    std::vector<std::string> toks;
    std::string tok;
    while (ms >> tok) toks.push_back(tok);
    std::vector<MarkEnd> mk;
    bool explicit_form = !toks.empty() && toks[0].find('.') != std::string::npos;
    if (explicit_form) {
      for (const auto& t : toks) {
        auto dot = t.rfind('.');
        if (dot == std::string::npos) fail("mixed mark forms");
        std::string h = t.substr(dot + 1);
        if (h != "in" && h != "out") fail("mark ends are .in or .out");
        mk.push_back({d.edge_index(t.substr(0, dot)), h == "out"});
      }
    } else if (toks.size() == 1) {
      int e = d.edge_index(toks[0]);
      mk = {{e, 0}, {e, 1}};
    } else if (toks.size() == 2) {
      int a = d.edge_index(toks[0]), b = d.edge_index(toks[1]);
      mk = {{a, 0}, {b, 0}, {a, 1}, {b, 1}};
    } else {
      fail("mark needs one or two edges, or explicit ends");
    }
    if (mark_kind[k] == "basepoint") {
      if (d.has_basepoint) fail("second base point");
      d.has_basepoint = true;
      d.marks.insert(d.marks.begin(), mk);
    } else {
      d.marks.push_back(mk);
    }
  }
  if (inf) d.infinity = d.edge_index(*inf);
  if (d.infinity && !d.has_basepoint) {
    d.has_basepoint = true;
    d.marks.insert(d.marks.begin(), {{*d.infinity, 0}, {*d.infinity, 1}});
  }
  validate(d);
  trace_curves(d);
  return d;
}

inline Diagram read_diagram_string(const std::string& s) {
  std::istringstream in(s);
  return read_diagram(in);
}

inline Diagram read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read " + path);
  return read_diagram(in);
}

}  // namespace circhandle
