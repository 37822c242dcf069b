#pragma once

#include "families.hpp"
#include "torus.hpp"

#include <json.hpp>

namespace circhandle {

using json = nlohmann::ordered_json;

inline json words_json(const std::vector<Word>& w) {
  json out = json::array();
  for (const auto& x : w) out.push_back(to_string(x));
  return out;
}

inline json words_json(const std::vector<CyclicWord>& w) {
  json out = json::array();
  for (const auto& x : w) out.push_back(to_string(x));
  return out;
}

inline json arc_json(const Diagram& d, const ArcCandidate& c) {
  json path = json::array();
  for (const auto& x : c.path) path.push_back(d.edges[x.edge].id + (x.sign > 0 ? "+" : "-"));
  json out = {{"id", c.id}, {"faces", {c.face_a, c.face_b}}, {"length", c.length()}, {"path", path}};
  out["around"] = c.around_vertex ? json(vertex_name(*c.around_vertex, d.rank)) : json(nullptr);
  return out;
}

inline json simple_graph_json(const GraphAnalysis& a, int rank, bool drilled) {
  json edges = json::array();
  for (auto [u, v] : a.simple.edges) edges.push_back(vertex_name(u, rank, drilled) + "-" + vertex_name(v, rank, drilled));
  json cuts = json::array();
  for (int v : a.cut_vertices) cuts.push_back(vertex_name(v, rank, drilled));
  return {{"vertices", a.simple.vertex_count}, {"edges", edges}, {"connected", a.connected}, {"cut_vertices", cuts},
          {"complexity", a.complexity}};
}

inline json witness_json(const Diagram* d, const Witness& w) {
  json trace = json::array();
  for (const auto& a : w.trace) trace.push_back(to_string(a));
  json out = {{"kind", w.kind}, {"curves", w.curves}};
  out["arc"] = w.arc && d ? arc_json(*d, *w.arc) : json(nullptr);
  out["trace"] = trace;
  out["basis"] = words_json(w.basis);
  out["replays"] = replay(w);
  return out;
}

inline json report_json(const HandleReport& r, const Diagram* d, bool per_arc) {
  json out;
  out["schema"] = 1;
  out["fibered"] = r.fibered;
  out["h_lower"] = r.h_lower;
  out["h_upper"] = r.h_upper;
  out["h"] = r.h() ? json(*r.h()) : json(nullptr);
  out["witness"] = r.witness ? witness_json(d, *r.witness) : json(nullptr);
  out["cw"] = r.cw ? json(*r.cw) : json(nullptr);
  out["assumptions"] = r.assumptions;
  out["arc_search"] = r.arc_search_run;
  if (per_arc && d) {
    json arcs = json::array();
    for (const auto& v : r.per_arc) {
      json a = arc_json(*d, v.arc);
      a["witness"] = v.witness;
      a["reason"] = v.reason;
      a["drilled"] = words_json(v.drilled.based);
      a["slides"] = v.loop.steps.size();
      a["terminal_words"] = words_json(v.loop.words);
      a["terminal_graph"] = simple_graph_json(v.loop.terminal, v.drilled.rank, true);
      arcs.push_back(a);
    }
    out["per_arc"] = arcs;
  }
  return out;
}

// One line summary used by the text output.
inline std::string report_line(const HandleReport& r) {
  if (r.fibered) return "fibered h=0";
  std::string s = r.h() ? "h=" + std::to_string(*r.h())
                        : "h in [" + std::to_string(r.h_lower) + "," + std::to_string(r.h_upper) + "]";
  if (r.cw) {
    s += " cw=";
    for (std::size_t i = 0; i < r.cw->size(); ++i) s += (i ? "," : "") + std::to_string((*r.cw)[i]);
  }
  return s;
}

inline json slide_trace_json(const TorusDiagram& t, const SlideTrace& tr) {
  json slides = json::array();
  for (const auto& s : tr.slides)
    slides.push_back({{"round", s.round}, {"repetition", s.repetition}, {"kappa", s.kappa}, {"slid", s.slid},
                      {"along", s.along}, {"before", s.step.complexity_before}, {"after", s.step.complexity_after}});
  json stages = json::array();
  for (const auto& st : tr.stages) stages.push_back({{"round", st.round}, {"words", words_json(st.words)}, {"complexity", st.complexity}});
  return {{"schema", 1},
          {"p", t.p},
          {"q", t.q},
          {"kappa", t.cf.terms},
          {"beta", {t.r, t.s}},
          {"remainders", tr.r},
          {"beta_remainders", tr.rho},
          {"slides", slides},
          {"stages", stages},
          {"terminal", words_json(tr.terminal)},
          {"problems", tr.problems}};
}

}  // namespace circhandle
