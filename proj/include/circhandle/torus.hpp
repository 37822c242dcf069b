#pragma once

#include "handle_search.hpp"
#include "realize.hpp"

#include <numeric>
#include <sstream>

namespace circhandle {

// p/q = [k_1, ..., k_n]; convergents p_i/q_i for i = -1..n stored at index i+1.
struct ContinuedFraction {
  int p = 0, q = 0;
  std::vector<int> terms;
  std::vector<long long> P, Q;

  int n() const { return static_cast<int>(terms.size()); }
  long long p_at(int i) const { return P.at(i + 1); }
  long long q_at(int i) const { return Q.at(i + 1); }
};

inline ContinuedFraction cf_expand(int p, int q) {
  if (q < 1 || q >= p) throw input_error("need 0 < q < p");
  if (std::gcd(p, q) != 1) throw input_error("p and q must be coprime");
  ContinuedFraction cf;
  cf.p = p;
  cf.q = q;
  for (int a = p, b = q; b != 0;) {
    cf.terms.push_back(a / b);
    int r = a % b;
    a = b;
    b = r;
  }
  cf.P = {0, 1};
  cf.Q = {1, 0};
  for (int k : cf.terms) {
    std::size_t i = cf.P.size();
    cf.P.push_back(k * cf.P[i - 1] + cf.P[i - 2]);
    cf.Q.push_back(k * cf.Q[i - 1] + cf.Q[i - 2]);
  }
  return cf;
}

struct TorusDiagram {
  int p = 0, q = 0;
  ContinuedFraction cf;
  Diagram diagram;
  bool with_beta = false;
  int r = 0, s = 0;              // beta is the (r, s) curve
  std::vector<int> s_edge;       // s_edge[l] = edge index of s_l, l = 1..p
  std::vector<int> beta_edges;   // strand order
  std::vector<int> beta_rect;    // rectangle of each strand
  int infinity_index = 0;        // l with the infinity marker on s_l
  int delta = 1;                 // r q = delta mod p

  int alpha(int j) const {  // edge index of alpha_j
    int l = infinity_index == q ? j : j + q;
    return s_edge[((l - 1) % p + p) % p + 1];
  }
};

namespace detail {
inline int wrap1(long long k, int p) { return static_cast<int>(((k - 1) % p + p) % p + 1); }
inline std::string xz_name(int v) { return std::string(1, "xXzZ"[v]); }
}  // namespace detail

// Alpha edges s_1..s_p run from x to X; s_l leaves x at alpha point l and reaches X at alpha
// point l - q. Beta strand m lies in the rectangle between s_j and s_{j+1}, j = a - m q; the last
// strand crosses alpha at infinity.
inline TorusDiagram build_diagram(int p, int q, bool with_beta) {
  TorusDiagram t;
  t.p = p;
  t.q = q;
  t.cf = cf_expand(p, q);
  t.with_beta = with_beta;
  const int n = t.cf.n();
  t.infinity_index = n % 2 ? q + 1 : q;
  t.delta = n % 2 ? 1 : -1;
  t.r = static_cast<int>(t.cf.p_at(n - 1));
  t.s = static_cast<int>(t.cf.q_at(n - 1));
  if (t.infinity_index > p) t.infinity_index = detail::wrap1(t.infinity_index, p);

  Diagram& d = t.diagram;
  d.rank = 1;
  d.curves = {"alpha"};
  if (with_beta) d.curves.push_back("beta");
  t.s_edge.assign(p + 1, -1);
  for (int l = 1; l <= p; ++l) {
    t.s_edge[l] = static_cast<int>(d.edges.size());
    d.edges.push_back({"s" + std::to_string(l), 0});
  }
  std::vector<int> strand_in(p + 1, -1);  // rectangle -> strand
  const int a = n % 2 ? 1 : -1;
  if (with_beta) {
    for (int m = 0; m < t.r; ++m) {
      int j = detail::wrap1(static_cast<long long>(a) - static_cast<long long>(m) * q, p);
      if (strand_in[j] >= 0) throw std::logic_error("two beta strands in one rectangle");
      strand_in[j] = m;
      t.beta_rect.push_back(j);
      t.beta_edges.push_back(static_cast<int>(d.edges.size()));
      d.edges.push_back({"b" + std::to_string(m + 1), 1});
    }
  }
  // Points of the meridian disk in order: A_1, G_1?, A_2, G_2?, ...
  struct Point {
    bool beta;
    int k;
  };
  std::vector<Point> pts;
  std::vector<int> a_num(p + 1), g_num(p + 1, -1);
  for (int k = 1; k <= p; ++k) {
    a_num[k] = static_cast<int>(pts.size());
    pts.push_back({false, k});
    if (strand_in[k] >= 0) {
      g_num[k] = static_cast<int>(pts.size());
      pts.push_back({true, k});
    }
  }
  const int N = static_cast<int>(pts.size());
  std::vector<EndRef> xs(N), Xs(N);
  std::vector<bool> filled(N, false);
  for (int k = 1; k <= p; ++k) {
    xs[a_num[k]] = {t.s_edge[k], 0};
    Xs[a_num[k]] = {t.s_edge[detail::wrap1(k + q, p)], 1};
    filled[a_num[k]] = true;
  }
  if (with_beta) {
    for (int m = 0; m < t.r; ++m) {
      int j = t.beta_rect[m];
      xs[g_num[j]] = {t.beta_edges[m], 0};
      int target = detail::wrap1(j - q + (m == t.r - 1 ? t.delta : 0), p);
      if (g_num[target] < 0) throw std::logic_error("beta strand ends in an empty rectangle");
      if (filled[g_num[target]]) throw std::logic_error("beta strands collide");
      Xs[g_num[target]] = {t.beta_edges[m], 1};
      filled[g_num[target]] = true;
    }
  }
  d.vertices = {xs, Xs};
  const int inf_edge = t.s_edge[t.infinity_index];
  d.infinity = inf_edge;
  d.has_basepoint = true;
  if (!with_beta) {
    d.marks = {{{inf_edge, 0}, {inf_edge, 1}}};
    validate(d);
    return t;
  }
  const int c = t.beta_edges.back();
  for (int flip = 0; flip < 2; ++flip) {
    if (!flip)
      d.marks = {{{inf_edge, 0}, {c, 0}, {inf_edge, 1}, {c, 1}}};
    else
      d.marks = {{{inf_edge, 0}, {c, 1}, {inf_edge, 1}, {c, 0}}};
    try {
      validate(d);
      trace_curves(d);
      return t;
    } catch (const diagram_error&) {
    }
  }
  throw std::logic_error("no planar crossing at infinity");
}

// Recovers q from the alpha numbering: s starting at alpha point 1 on x ends at alpha point t.
inline int remark_q_from_numbering(const TorusDiagram& t) {
  const auto& d = t.diagram;
  std::vector<int> xnum(d.edges.size(), -1), Xnum(d.edges.size(), -1);
  int k = 0;
  for (auto er : d.vertices[0])
    if (d.edges[er.edge].curve == 0) xnum[er.edge] = ++k;
  k = 0;
  for (auto er : d.vertices[1])
    if (d.edges[er.edge].curve == 0) Xnum[er.edge] = ++k;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (xnum[e] == 1) return t.p - Xnum[e] + 1;
  return -1;
}

// Around x from the beta arc coming out of infinity, then alpha_1..alpha_q; signs chosen so the
// alpha crossings carry z^-1.
inline ArcCandidate canonical_handle(const TorusDiagram& t) {
  const auto& d = t.diagram;
  const Embedding m = embed(d);
  const auto& rot = m.rotation[0];  // ccw at x
  const int deg = static_cast<int>(rot.size());
  auto pos_of_edge = [&](int e) {
    for (int i = 0; i < deg; ++i)
      if (m.segments[rot[i].first].edge == e) return i;
    throw std::logic_error("edge not at x");
  };
  std::vector<int> seq;  // rotation positions crossed
  int dir = 1;
  int start = -1;
  const int first_alpha = t.alpha(1), last_alpha = t.alpha(t.q);
  if (t.with_beta) {
    start = pos_of_edge(t.beta_edges.back());
    int nxt = pos_of_edge(t.infinity_index == t.q ? last_alpha : first_alpha);
    dir = ((start + 1) % deg == nxt) ? 1 : -1;
  } else {
    start = pos_of_edge(t.infinity_index == t.q ? last_alpha : first_alpha);
    dir = t.infinity_index == t.q ? -1 : 1;
  }
  const int stop_edge = dir == 1 ? last_alpha : first_alpha;
  for (int i = start;; i = ((i + dir) % deg + deg) % deg) {
    seq.push_back(i);
    if (m.segments[rot[i].first].edge == stop_edge) break;
    if (static_cast<int>(seq.size()) > deg) throw std::logic_error("canonical handle overran x");
  }
  // With s = 0 the handle has length 0 on beta, so it stays off c.
  if (t.with_beta && t.s == 0) seq.erase(seq.begin());
  ArcCandidate c;
  for (int i : seq) {
    const int s = rot[i].first;
    // The dart leaving x along i bounds the corner (i-1, i), the arriving one (i, i+1).
    const int leaving = 2 * s + (rot[i].second == 0 ? 0 : 1);
    const int from = m.face_of[dir == 1 ? leaving : leaving ^ 1];
    c.path.push_back(crossing_of(d, m, s, from));
  }
  const auto& first = c.path.front();
  c.face_a = first.sign == 1 ? m.face_of[2 * first.segment] : m.face_of[2 * first.segment + 1];
  const auto& last = c.path.back();
  c.face_b = last.sign == 1 ? m.face_of[2 * last.segment + 1] : m.face_of[2 * last.segment];
  bool flip = false;
  for (const auto& x : c.path)
    if (x.curve == 0 && x.sign == 1) flip = true;
  if (flip) {
    for (auto& x : c.path) x.sign = -x.sign;
    std::swap(c.face_a, c.face_b);
  }
  c.around_vertex = 0;
  return c;
}

// Independent construction of the drilled (P,Q) curve in rank 2 (x = x1, z = x2): follow
// s_1, s_{1-Q}, ...; edges alpha_1..alpha_Q pick up z^-1 before their letter.
inline CyclicWord drilled_formula(int P, int Q) {
  Letters raw;
  for (int k = 0; k < P; ++k) {
    int j = detail::wrap1(1 - static_cast<long long>(k) * Q, P);
    if (j <= Q) raw.push_back({2, -1});
    raw.push_back({1, 1});
  }
  return cyclic(raw, 2);
}

// All cyclic images under relabelling the two generators (swap and inversions).
inline std::vector<WhiteheadAutomorphism> rank_two_relabellings() {
  std::vector<WhiteheadAutomorphism> out;
  for (int swap = 0; swap < 2; ++swap)
    for (int s1 = -1; s1 <= 1; s1 += 2)
      for (int s2 = -1; s2 <= 1; s2 += 2) {
        Letter a{swap ? 2 : 1, s1}, b{swap ? 1 : 2, s2};
        out.push_back(WhiteheadAutomorphism::type_one(2, {a, b}));
      }
  return out;
}

inline bool equal_up_to_relabelling(const std::vector<CyclicWord>& a, const std::vector<CyclicWord>& b) {
  for (const auto& rl : rank_two_relabellings())
    if (apply_automorphism(rl, a) == b) return true;
  return false;
}

struct EuclidStage {
  int round = 0;
  int kappa = 0;
  std::vector<CyclicWord> words;  // alpha, beta after the round
  int complexity = 0;
};

struct SlideRecord {
  int round = 0;
  int repetition = 0;
  int kappa = 0;
  std::string slid, along;
  SlideStep step;
};

struct SlideTrace {
  ContinuedFraction cf;
  std::vector<CyclicWord> start;
  std::vector<SlideRecord> slides;
  std::vector<EuclidStage> stages;  // stage 0 is the drilled diagram
  std::vector<CyclicWord> terminal;
  std::vector<std::string> problems;
  std::vector<int> r, rho;  // alpha and beta remainders; stage i is drilled (r[i], r[i+1]), (rho[i], rho[i+1])

  bool ok() const { return problems.empty(); }
};

// Round i slides the other disk along x (i odd) or z (i even), k_i times.
inline SlideTrace euclid_slide(const TorusDiagram& t) {
  if (!t.with_beta) throw input_error("euclidean slides need the beta curve");
  SlideTrace tr;
  tr.cf = t.cf;
  tr.r = {t.p, t.q};
  tr.rho = {t.r, t.s};
  for (int i = 1; i <= t.cf.n(); ++i) {
    tr.r.push_back(tr.r[i - 1] - t.cf.terms[i - 1] * tr.r[i]);
    if (i < t.cf.n()) tr.rho.push_back(tr.rho[i - 1] - t.cf.terms[i - 1] * tr.rho[i]);
  }
  const auto dr = drill(t.diagram, canonical_handle(t));
  std::vector<CyclicWord> w = dr.words;
  tr.start = w;
  tr.stages.push_back({0, 0, w, complexity(w)});
  for (int i = 1; i <= t.cf.n(); ++i) {
    const int along_gen = i % 2 ? 1 : 2;
    int done = 0;
    for (;;) {
      auto g = genuine_graph(w, 2);
      auto a = analyze_graph(g);
      std::optional<std::pair<int, std::vector<int>>> move;
      for (int v : {2 * (along_gen - 1), 2 * (along_gen - 1) + 1}) {
        if (std::find(a.cut_vertices.begin(), a.cut_vertices.end(), v) == a.cut_vertices.end()) continue;
        for (const auto& comp : components_without(g, v))
          if (comp.size() == 1 && letter_from_index(comp[0]).gen != along_gen) move = {{v, comp}};
        if (move) break;
      }
      if (!move) break;
      auto [next, st] = slide(w, move->first, move->second);
      SlideRecord rec;
      rec.round = i;
      rec.repetition = ++done;
      rec.kappa = t.cf.terms[i - 1];
      rec.along = detail::xz_name(move->first);
      rec.slid = detail::xz_name(move->second[0]);
      rec.step = st;
      tr.slides.push_back(rec);
      w = std::move(next);
    }
    if (done != t.cf.terms[i - 1]) {
      tr.problems.push_back("round " + std::to_string(i) + " made " + std::to_string(done) + " slides, expected " +
                            std::to_string(t.cf.terms[i - 1]));
      break;
    }
    tr.stages.push_back({i, done, w, complexity(w)});
    if (i < t.cf.n()) {
      std::vector<CyclicWord> want = {drilled_formula(tr.r[i], tr.r[i + 1]), drilled_formula(tr.rho[i], tr.rho[i + 1])};
      if (!equal_up_to_relabelling(w, want)) {
        tr.problems.push_back("stage " + std::to_string(i) + " differs from the drilled (" + std::to_string(tr.r[i]) +
                              "," + std::to_string(tr.r[i + 1]) + ") diagram");
        break;
      }
    }
  }
  tr.terminal = w;
  const bool single = w.size() == 2 && w[0].size() == 1 && w[1].size() == 1 &&
                      w[0].letters[0].gen != w[1].letters[0].gen;
  if (tr.problems.empty() && !single) tr.problems.push_back("terminal graph is not one alpha edge and one beta edge");
  return tr;
}

// Remainders p = r_{-1}, q = r_0, r_i = r_{i-2} - k_i r_{i-1}; index i+1.
inline std::vector<int> euclid_remainders(const ContinuedFraction& cf) {
  std::vector<int> r = {cf.p, cf.q};
  for (int i = 1; i <= cf.n(); ++i) r.push_back(r[i - 1] - cf.terms[i - 1] * r[i]);
  return r;
}

inline std::string format_slide(const SlideRecord& s) {
  std::ostringstream o;
  o << "slide " << s.slid << " along " << s.along << " (kappa " << s.repetition << "/" << s.kappa << ") complexity "
    << s.step.complexity_before << "→" << s.step.complexity_after;
  return o.str();
}

// A planar diagram carrying the stage words, alpha and beta meeting once at infinity.
inline Diagram stage_diagram(const EuclidStage& st) {
  const std::vector<CurveSpec> curves = {{"alpha", st.words.at(0).letters}, {"beta", st.words.at(1).letters}};
  for (int i = 0; i < static_cast<int>(curves[0].letters.size()); ++i)
    for (int j = 0; j < static_cast<int>(curves[1].letters.size()); ++j)
      for (int f = 0; f < 2; ++f) {
        auto res = realize(2, curves, std::vector<CrossingSpec>{{0, i, 1, j, f == 1}});
        if (!res.diagrams.empty()) {
          Diagram d = res.diagrams.front();
          d.infinity = d.marks[0].front().edge;
          return d;
        }
      }
  throw std::logic_error("stage words have no planar diagram");
}

}  // namespace circhandle
