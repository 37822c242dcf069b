#pragma once

#include "handle_search.hpp"
#include "realize.hpp"

#include <cstdlib>

namespace circhandle {

// The rational knot [2b_1, ..., 2b_g]; a knot when g is even, a two-component link otherwise.
struct RationalKnot {
  std::vector<int> b;

  int genus_rank() const { return static_cast<int>(b.size()); }
  bool connected() const { return b.size() % 2 == 0; }
};

inline RationalKnot rational_from_terms(const std::vector<int>& terms) {
  if (terms.empty()) throw input_error("rational knot needs at least one term");
  RationalKnot k;
  for (int t : terms) {
    if (t == 0 || t % 2) throw input_error("rational terms must be nonzero and even, got " + std::to_string(t));
    k.b.push_back(t / 2);
  }
  return k;
}

// a_1 = x_1^b_1, a_i = x_i^b_i x_{i-1}.
inline std::vector<Word> rational_spine(const RationalKnot& k) {
  const int g = k.genus_rank();
  if (g < 1 || g > 32) throw input_error("rational knot length out of range");
  std::vector<Word> out;
  for (int i = 1; i <= g; ++i) {
    int b = k.b[i - 1];
    if (b == 0) throw input_error("rational coefficient b_" + std::to_string(i) + " is zero");
    Letters l = gen_power(i, b);
    if (i > 1) l.push_back({i - 1, 1});
    out.push_back(Word{g, l});
  }
  return out;
}

namespace detail {

inline std::vector<CurveSpec> curve_specs(const std::vector<Word>& words) {
  std::vector<CurveSpec> out;
  for (std::size_t i = 0; i < words.size(); ++i) out.push_back({"a" + std::to_string(i + 1), words[i].letters});
  return out;
}

// Tries the crossing choices in order and keeps the first planar realization.
inline Diagram first_realization(int rank, const std::vector<CurveSpec>& curves,
                                 const std::vector<std::vector<CrossingSpec>>& choices) {
  for (const auto& xs : choices) {
    auto res = realize(rank, curves, xs);
    if (!res.diagrams.empty()) return res.diagrams.front();
  }
  throw std::logic_error("no planar diagram for the spine");
}

}  // namespace detail

// Every curve passes once through the base point of the wedge. Cuts, then the ccw order of the
// 2g ends around the base point, are searched in lexicographic order; the first planar choice is
// kept. End 2i + h is curve i arriving (h = 0) or leaving (h = 1).
inline Diagram rational_diagram(const RationalKnot& k) {
  const auto words = rational_spine(k);
  const int g = k.genus_rank();
  const auto curves = detail::curve_specs(words);
  if (g == 1) {
    auto res = realize(1, curves, std::vector<MarkSpec>{});
    if (res.diagrams.empty()) throw std::logic_error("no planar diagram for the spine");
    return res.diagrams.front();
  }
  std::vector<int> cut(g, 0);
  for (;;) {
    std::vector<int> order(2 * g - 1);
    std::iota(order.begin(), order.end(), 1);
    do {
      MarkSpec base;
      base.ends.push_back({0, cut[0], 0});
      for (int e : order) base.ends.push_back({e / 2, cut[e / 2], e % 2});
      auto res = realize(g, curves, std::vector<MarkSpec>{base});
      if (!res.diagrams.empty()) return res.diagrams.front();
    } while (std::next_permutation(order.begin(), order.end()));
    int i = g - 1;
    while (i >= 0 && ++cut[i] == static_cast<int>(words[i].letters.size())) cut[i--] = 0;
    if (i < 0) break;
  }
  throw std::logic_error("no planar diagram for the spine");
}

inline HandleReport rational_classify(const RationalKnot& k) {
  const auto words = rational_spine(k);
  const int g = k.genus_rank();
  HandleReport r;
  r.rank = g;
  r.curves = g;
  std::vector<int> all(g);
  std::iota(all.begin(), all.end(), 0);
  auto whole = is_primitive_set(words, g);
  if (whole.primitive) {
    r.fibered = true;
    r.witness = witness_from(words, all, g, whole, "basis");
    return r;
  }
  r.h_lower = 1;
  r.assumptions.push_back("F has minimal genus, so a non-basis spine means k is not fibered");
  // a_2..a_g, empty for g = 1.
  std::vector<Word> sub(words.begin() + 1, words.end());
  std::vector<int> idx(all.begin() + 1, all.end());
  // x_{i-1} = x_i^-b_i a_i, so a_2..a_g and x_g span everything.
  PrimitiveResult p;
  p.primitive = true;
  p.reason = "completed by x_g";
  p.conjugator = Word{g, {}};
  p.complement = {Word{g, {{g, 1}}}};
  std::vector<Word> basis = sub;
  basis.push_back(p.complement.front());
  if (!is_basis(basis, g)) p = is_primitive_set(sub, g);
  if (!p.primitive) throw std::logic_error("a_2..a_g is not associated primitive");
  r.witness = witness_from(sub, idx, g, p, "associated-primitive");
  r.h_upper = g - static_cast<int>(sub.size());
  r.cw = std::vector<int>{k.connected() ? 2 * g : 2 * g + 1};
  return r;
}

struct PretzelKnot {
  enum class Case { all_positive = 1, one_negative = 2 };
  int p = 0, q = 0, r = 0;
  Case kind = Case::all_positive;
  bool reflected = false;
};

// Reflection and permutation to p <= q <= r with at most p negative.
inline PretzelKnot pretzel_normalize(int p, int q, int r) {
  for (int v : {p, q, r}) {
    if (v % 2 == 0) throw input_error("pretzel parameters must be odd, got " + std::to_string(v));
    if (std::abs(v) < 3) throw input_error("pretzel parameters need |v| >= 3, got " + std::to_string(v));
  }
  std::vector<int> v = {p, q, r};
  const int negatives = static_cast<int>(std::count_if(v.begin(), v.end(), [](int x) { return x < 0; }));
  PretzelKnot k;
  if (negatives >= 2) {
    for (int& x : v) x = -x;
    k.reflected = true;
  }
  std::sort(v.begin(), v.end());
  if (v[1] < 0) throw input_error("sign pattern outside the two supported cases");
  k.p = v[0];
  k.q = v[1];
  k.r = v[2];
  k.kind = k.p < 0 ? PretzelKnot::Case::one_negative : PretzelKnot::Case::all_positive;
  return k;
}

inline std::vector<Word> pretzel_spine(const PretzelKnot& k) {
  const Letters x2x1 = {{2, 1}, {1, 1}};
  Letters a1, a2;
  if (k.kind == PretzelKnot::Case::all_positive) {
    a1 = cat({gen_power(2, (k.r + 1) / 2), gen_power(1, -(k.p - 1) / 2)});
    a2 = cat({gen_power(1, (k.p + 1) / 2), power(x2x1, (k.q - 1) / 2)});
  } else {
    const int P = -k.p;
    a1 = cat({gen_power(2, (k.r + 1) / 2), gen_power(1, (P + 1) / 2)});
    a2 = cat({gen_power(1, -(P - 3) / 2), power(x2x1, (k.q - 3) / 2), gen_power(2, 1)});
  }
  return {Word{2, reduce(a1, 2).letters}, Word{2, reduce(a2, 2).letters}};
}

// All-positive case: the base point is where the diagonal x_1-x_2 arc of a_1 meets an
// x_1-X_1 arc of a_2. The other case takes the first planar placement.
inline Diagram pretzel_diagram(const PretzelKnot& k) {
  const auto words = pretzel_spine(k);
  const auto curves = detail::curve_specs(words);
  auto ends = [](const Letters& w, int cut) {
    const int m = static_cast<int>(w.size());
    return std::pair{letter_index(w[(cut - 1 + m) % m]), letter_index(inverse(w[cut % m]))};
  };
  std::vector<std::vector<CrossingSpec>> preferred, rest;
  const auto& l1 = words[0].letters;
  const auto& l2 = words[1].letters;
  for (int i = 0; i < static_cast<int>(l1.size()); ++i)
    for (int j = 0; j < static_cast<int>(l2.size()); ++j)
      for (int f = 0; f < 2; ++f) {
        std::vector<CrossingSpec> xs = {{0, i, 1, j, f == 1}};
        auto [u1, v1] = ends(l1, i);
        auto [u2, v2] = ends(l2, j);
        const bool diagonal = std::min(u1, v1) == 0 && std::max(u1, v1) == 2;
        const bool loop_x1 = std::min(u2, v2) == 0 && std::max(u2, v2) == 1;
        (k.kind == PretzelKnot::Case::all_positive && diagonal && loop_x1 ? preferred : rest).push_back(xs);
      }
  preferred.insert(preferred.end(), rest.begin(), rest.end());
  return detail::first_realization(2, curves, preferred);
}

struct PretzelReport {
  PretzelKnot knot;
  Diagram diagram;
  HandleReport report;
};

inline PretzelReport pretzel_classify(const PretzelKnot& k, bool keep_arcs = true) {
  PretzelReport out;
  out.knot = k;
  out.diagram = pretzel_diagram(k);
  DecideOptions opt;
  opt.assumptions.unique_surface = true;
  opt.keep_arcs = keep_arcs;
  out.report = decide(out.diagram, opt);
  return out;
}

}  // namespace circhandle
