#include <circhandle/families.hpp>
#include <circhandle/torus.hpp>

#include <gtest/gtest.h>

using namespace circhandle;

namespace {

const char* kSingleEdge = R"(rank 1
curves a
edge e1 a
vertex x1: e1.0
vertex X1: e1.1
)";

const char* kPretzel555 = R"(rank 2
curves a1 a2
edge e1 a1
edge e2 a1
edge e3 a1
edge e4 a1
edge e5 a1
edge e6 a2
edge e7 a2
edge e8 a2
edge e9 a2
edge e10 a2
edge e11 a2
edge e12 a2
vertex x1: e4.1 e8.0 e9.0 e11.0 e6.0 e5.1 e7.0
vertex X1: e5.0 e7.1 e8.1 e10.1 e12.1 e1.0 e6.1
vertex x2: e2.0 e3.0 e4.0 e10.0 e12.0
vertex X2: e1.1 e2.1 e3.1 e9.1 e11.1
basepoint e4.in e8.in e4.out e8.out
)";

std::vector<Diagram> family_diagrams() {
  std::vector<Diagram> out;
  for (auto t : std::vector<std::vector<int>>{{4}, {2, 2}, {4, 2}, {4, -6}, {2, 4, 6}, {6, -4, 2, 4}})
    out.push_back(rational_diagram(rational_from_terms(t)));
  for (auto [p, q, r] : std::vector<std::array<int, 3>>{{3, 5, 5}, {5, 5, 5}, {-3, 5, 7}, {-5, 5, 5}, {7, 9, 9}})
    out.push_back(pretzel_diagram(pretzel_normalize(p, q, r)));
  for (auto [p, q] : std::vector<std::array<int, 2>>{{9, 4}, {19, 12}, {5, 1}, {7, 3}}) {
    out.push_back(build_diagram(p, q, false).diagram);
    out.push_back(build_diagram(p, q, true).diagram);
  }
  return out;
}

}  // namespace

TEST(Diagram, SingleEdgeHasOneFace) {
  Diagram d = read_diagram_string(kSingleEdge);
  auto m = embed(d);
  EXPECT_EQ(m.face_count, 1);
  EXPECT_EQ(euler_count(m).characteristic(), 2);
  auto w = trace_words(d);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].letters, parse_letters("x1"));
}

TEST(Diagram, EmptyDiagramHasNoWords) {
  Diagram d = read_diagram_string("rank 2\n");
  EXPECT_TRUE(trace_words(d).empty());
}

TEST(Diagram, ReadTracesThePretzelSpine) {
  Diagram d = read_diagram_string(kPretzel555);
  auto words = trace_based_words(d);
  ASSERT_EQ(words.size(), 2u);
  auto spine = pretzel_spine(pretzel_normalize(5, 5, 5));
  EXPECT_EQ(cyclic(words[0]), cyclic(spine[0]));
  EXPECT_EQ(cyclic(words[1]), cyclic(spine[1]));
}

TEST(Diagram, WriteReadRoundTrip) {
  for (const auto& d : family_diagrams()) {
    const std::string text = write_diagram(d);
    Diagram e = read_diagram_string(text);
    EXPECT_EQ(write_diagram(e), text);
    EXPECT_EQ(trace_words(e), trace_words(d));
  }
}

TEST(Diagram, EulerOnFamilies) {
  for (const auto& d : family_diagrams()) {
    auto c = euler_count(embed(d));
    EXPECT_EQ(c.characteristic(), 2) << write_diagram(d);
    EXPECT_TRUE(c.spherical());
  }
}

TEST(Diagram, GraphMatchesTracedWords) {
  for (const auto& d : family_diagrams()) {
    auto a = edge_counts(diagram_graph(d));
    auto b = edge_counts(genuine_graph(trace_words(d), d.rank));
    EXPECT_EQ(a, b);
  }
}

TEST(Diagram, FacesPartitionDarts) {
  for (const auto& d : family_diagrams()) {
    auto m = embed(d);
    std::vector<int> hits(2 * m.segments.size(), 0);
    for (const auto& f : faces(m))
      for (int x : f.darts) ++hits[x];
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(Diagram, Rejections) {
  // Missing endpoint.
  EXPECT_THROW(read_diagram_string("rank 1\ncurves a\nedge e1 a\nvertex x1: e1.0\nvertex X1:\n"), diagram_error);
  // Loop at one fat vertex.
  EXPECT_THROW(read_diagram_string("rank 1\ncurves a\nedge e1 a\nvertex x1: e1.0 e1.1\nvertex X1:\n"), diagram_error);
  // Gluing numbers disagree.
  EXPECT_THROW(read_diagram_string("rank 1\ncurves a\nedge e1 a\nvertex x1: e1.1\nvertex X1: e1.1\n"),
               diagram_error);
  EXPECT_THROW(read_diagram_string("curves a\n"), diagram_error);
  EXPECT_THROW(read_diagram_string("rank 1\nbogus\n"), diagram_error);
  EXPECT_THROW(read_diagram_string("rank 1\ncurves a\nedge e1 b\n"), diagram_error);
}

TEST(Diagram, ReorderedRotationsAreCheckedForPlanarity) {
  // Swapping two neighbours around x1 (and the matching pair at X1 to keep the gluing) gives
  // a rotation system that is either rejected or still spherical; some swaps must be rejected.
  Diagram base = read_diagram_string(kPretzel555);
  int rejected = 0;
  const int n = static_cast<int>(base.vertices[0].size());
  for (int k = 0; k + 1 < n; ++k) {
    Diagram d = base;
    std::swap(d.vertices[0][k], d.vertices[0][k + 1]);
    std::swap(d.vertices[1][k], d.vertices[1][k + 1]);
    try {
      validate(d);
      EXPECT_EQ(euler_count(embed(d)).characteristic(), 2);
    } catch (const diagram_error&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}
