#include <circhandle/families.hpp>
#include <circhandle/torus.hpp>

#include <gtest/gtest.h>

using namespace circhandle;

namespace {

CyclicWord C(const char* s, int rank) { return cyclic(parse_letters(s), rank); }

std::vector<Diagram> small_diagrams() {
  std::vector<Diagram> out;
  for (auto t : std::vector<std::vector<int>>{{4}, {2, 2}, {4, 2}, {6, -4}, {2, 4, 6}})
    out.push_back(rational_diagram(rational_from_terms(t)));
  for (auto [p, q, r] : std::vector<std::array<int, 3>>{{3, 5, 5}, {5, 5, 5}, {-5, 5, 5}})
    out.push_back(pretzel_diagram(pretzel_normalize(p, q, r)));
  out.push_back(build_diagram(9, 4, false).diagram);
  out.push_back(build_diagram(9, 4, true).diagram);
  return out;
}

// Multiplicities of the three edge classes z-x, Z-X, x-X in rank 2 with z = x2.
std::array<int, 3> torus_counts(const std::vector<CyclicWord>& w) {
  auto c = edge_counts(genuine_graph(w, 2));
  auto at = [&](int u, int v) {
    auto it = c.find({std::min(u, v), std::max(u, v)});
    return it == c.end() ? 0 : it->second;
  };
  return {at(2, 0), at(3, 1), at(0, 1)};
}

}  // namespace

TEST(Arcs, OneCandidatePerFacePair) {
  for (const auto& d : small_diagrams()) {
    auto m = embed(d);
    const int f = m.face_count;
    auto arcs = enumerate_arcs(d, m);
    EXPECT_EQ(static_cast<int>(arcs.size()), f * (f - 1) / 2);
    for (const auto& c : arcs) {
      EXPECT_NE(c.face_a, c.face_b);
      EXPECT_GE(c.length(), 1);
    }
  }
}

TEST(Arcs, TorusNineFourHasThirtySix) {
  Diagram d = build_diagram(9, 4, false).diagram;
  auto m = embed(d);
  EXPECT_EQ(m.face_count, 9);
  EXPECT_EQ(enumerate_arcs(d, m).size(), 36u);
}

TEST(Arcs, IdenticalFacesRejected) {
  Diagram d = pretzel_diagram(pretzel_normalize(5, 5, 5));
  auto m = embed(d);
  EXPECT_THROW(arc_between(d, m, 2, 2), input_error);
  ArcCandidate c;
  c.face_a = c.face_b = 1;
  EXPECT_THROW(test_arc(d, c), input_error);
  EXPECT_THROW(drill(d, c), input_error);
}

TEST(Drill, FillUndoesDrill) {
  for (const auto& d : small_diagrams()) {
    const auto words = trace_words(d);
    for (const auto& c : enumerate_arcs(d)) {
      auto dr = drill(d, c);
      EXPECT_EQ(dr.rank, d.rank + 1);
      EXPECT_EQ(fill(dr.words), words);
      // Each crossing adds one z letter; crossings of the two halves of a cut edge may cancel.
      std::size_t zs = 0;
      for (const auto& w : dr.words)
        for (auto l : w.letters) zs += l.gen == dr.rank;
      EXPECT_LE(zs, c.path.size());
      EXPECT_EQ(zs % 2, c.path.size() % 2);
    }
  }
}

TEST(Drill, FillExamples) {
  auto f = fill(std::vector<Word>{parse_word("x2 x3 X1 X3", 3)});
  EXPECT_EQ(f[0].letters, parse_letters("x2 X1"));
  EXPECT_EQ(f[0].rank, 2);
  auto g = fill(std::vector<CyclicWord>{C("x1 x2 x2", 3)});
  EXPECT_EQ(g[0], C("x1 x2 x2", 2));
}

TEST(Drill, CanonicalTorusArcCounts) {
  for (auto [p, q] : std::vector<std::array<int, 2>>{{9, 4}, {7, 1}, {5, 1}, {19, 12}, {11, 3}}) {
    auto t = build_diagram(p, q, false);
    auto dr = drill(t.diagram, canonical_handle(t));
    auto n = torus_counts(dr.words);
    EXPECT_EQ(n[0], q) << p << "," << q;
    EXPECT_EQ(n[1], q);
    EXPECT_EQ(n[2], p - q);
    EXPECT_EQ(fill(dr.words), trace_words(t.diagram));
  }
}

TEST(Slide, NineFourDropsByEight) {
  auto t = build_diagram(9, 4, false);
  auto dr = drill(t.diagram, canonical_handle(t));
  auto a = analyze_graph(genuine_graph(dr.words, 2));
  ASSERT_NE(std::find(a.cut_vertices.begin(), a.cut_vertices.end(), 0), a.cut_vertices.end());
  auto comps = components_without(genuine_graph(dr.words, 2), 0);
  bool done = false;
  for (const auto& c : comps) {
    if (std::find(c.begin(), c.end(), 1) != c.end()) continue;
    auto [w, st] = slide(dr.words, 0, c);
    EXPECT_EQ(st.complexity_before - st.complexity_after, 2 * 4);
    done = true;
  }
  EXPECT_TRUE(done);
}

TEST(Slide, NonCutVertexRejected) {
  std::vector<CyclicWord> w = {C("x1 x2 X1 X2", 2)};
  EXPECT_THROW(slide(w, 0, {2}), input_error);
}

TEST(Slide, LoopLowersComplexityEveryStep) {
  for (const auto& d : small_diagrams())
    for (const auto& c : enumerate_arcs(d)) {
      auto dr = drill(d, c);
      auto loop = slide_loop(dr.words);
      int prev = complexity(dr.words);
      for (const auto& st : loop.steps) {
        EXPECT_EQ(st.complexity_before, prev);
        EXPECT_LT(st.complexity_after, st.complexity_before);
        prev = st.complexity_after;
      }
      EXPECT_EQ(complexity(loop.words), prev);
      EXPECT_TRUE(!loop.terminal.connected || loop.terminal.cut_vertices.empty());
      EXPECT_EQ(apply_trace([&] {
                  std::vector<WhiteheadAutomorphism> t;
                  for (const auto& st : loop.steps) t.push_back(st.aut);
                  return t;
                }(), dr.words),
                loop.words);
    }
}

TEST(ArcTest, RationalFourTwoHasWitnessArc) {
  Diagram d = rational_diagram(rational_from_terms({4, 2}));
  auto m = embed(d);
  int witnesses = 0;
  for (const auto& c : enumerate_arcs(d, m)) {
    auto v = test_arc(d, m, c);
    if (!v.witness) continue;
    ++witnesses;
    EXPECT_TRUE(replay_primitive_witness(v.drilled.based, v.drilled.rank, v.primitive));
  }
  EXPECT_GT(witnesses, 0);
}

TEST(Decide, Examples) {
  auto fib = decide(rational_diagram(rational_from_terms({2, 2})));
  EXPECT_TRUE(fib.fibered);
  EXPECT_EQ(fib.h(), 0);
  ASSERT_TRUE(fib.witness);
  EXPECT_TRUE(replay(*fib.witness));

  DecideOptions opt;
  opt.assumptions.unique_surface = true;
  auto one = decide(pretzel_diagram(pretzel_normalize(3, 5, 5)), opt);
  EXPECT_EQ(one.h(), 1);
  ASSERT_TRUE(one.cw);
  EXPECT_EQ(*one.cw, std::vector<int>{4});
  EXPECT_FALSE(one.arc_search_run);

  auto two = decide(pretzel_diagram(pretzel_normalize(5, 5, 5)), opt);
  EXPECT_EQ(two.h(), 2);
  ASSERT_TRUE(two.cw);
  EXPECT_EQ(*two.cw, std::vector<int>{6});
  EXPECT_TRUE(two.arc_search_run);
}

TEST(Decide, WithoutUniquenessNoWidthForHTwo) {
  auto r = decide(pretzel_diagram(pretzel_normalize(5, 5, 5)));
  EXPECT_EQ(r.h(), 2);
  EXPECT_FALSE(r.cw);
}

TEST(Decide, WithoutArcClassificationOnlyBounds) {
  DecideOptions opt;
  opt.assumptions.arc_classification = false;
  auto r = decide(pretzel_diagram(pretzel_normalize(5, 5, 5)), opt);
  EXPECT_EQ(r.h_lower, 1);
  EXPECT_EQ(r.h_upper, 2);
  EXPECT_FALSE(r.h());
}
