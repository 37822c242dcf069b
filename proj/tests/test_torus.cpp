#include "torus_oracle.hpp"

#include <circhandle/torus.hpp>

#include <gtest/gtest.h>

using namespace circhandle;

namespace {

std::vector<std::pair<int, int>> coprime_pairs(int max_p) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p <= max_p; ++p)
    for (int q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) out.push_back({p, q});
  return out;
}

std::pair<oracle::W, oracle::W> canonical(const std::vector<CyclicWord>& w) {
  return torus_oracle::canonical(oracle::from_letters(w.at(0).letters), oracle::from_letters(w.at(1).letters));
}

}  // namespace

TEST(ContinuedFraction, NineteenTwelve) {
  auto cf = cf_expand(19, 12);
  EXPECT_EQ(cf.terms, (std::vector<int>{1, 1, 1, 2, 2}));
  EXPECT_EQ(cf.p_at(4), 8);
  EXPECT_EQ(cf.q_at(4), 5);
}

TEST(ContinuedFraction, NineFour) {
  auto cf = cf_expand(9, 4);
  EXPECT_EQ(cf.terms, (std::vector<int>{2, 4}));
  EXPECT_EQ(cf.p_at(1), 2);
  EXPECT_EQ(cf.q_at(1), 1);
}

TEST(ContinuedFraction, QOne) {
  for (int p = 2; p < 12; ++p) {
    auto cf = cf_expand(p, 1);
    EXPECT_EQ(cf.terms, std::vector<int>{p});
  }
}

TEST(ContinuedFraction, Rejections) {
  EXPECT_THROW(cf_expand(6, 4), input_error);
  EXPECT_THROW(cf_expand(5, 5), input_error);
  EXPECT_THROW(cf_expand(5, 0), input_error);
}

TEST(ContinuedFraction, ConvergentsAndDeterminants) {
  for (auto [p, q] : coprime_pairs(40)) {
    auto cf = cf_expand(p, q);
    const int n = cf.n();
    EXPECT_EQ(torus_oracle::evaluate(cf.terms), (std::pair<long long, long long>{p, q}));
    for (int i = 1; i <= n; ++i) {
      std::vector<int> head(cf.terms.begin(), cf.terms.begin() + i);
      EXPECT_EQ(torus_oracle::evaluate(head), (std::pair<long long, long long>{cf.p_at(i), cf.q_at(i)}));
      const long long det = cf.p_at(i) * cf.q_at(i - 1) - cf.p_at(i - 1) * cf.q_at(i);
      EXPECT_EQ(det, i % 2 ? -1 : 1) << p << "/" << q << " i=" << i;
      if (i >= 2) EXPECT_GT(cf.p_at(i), cf.p_at(i - 1));
    }
    EXPECT_EQ(cf.p_at(n), p);
    EXPECT_EQ(cf.q_at(n), q);
  }
}

TEST(Torus, WordWithoutBetaIsAPower) {
  for (auto [p, q] : coprime_pairs(15)) {
    auto t = build_diagram(p, q, false);
    auto w = trace_words(t.diagram);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].letters, gen_power(1, p));
  }
}

TEST(Torus, NineteenTwelveWithBeta) {
  auto t = build_diagram(19, 12, true);
  EXPECT_EQ(t.r, 8);
  EXPECT_EQ(t.s, 5);
  int alpha = 0, beta = 0;
  for (const auto& e : t.diagram.edges) (e.curve == 0 ? alpha : beta)++;
  EXPECT_EQ(alpha, 19);
  EXPECT_EQ(beta, 8);
  ASSERT_EQ(t.diagram.marks.size(), 1u);
  EXPECT_EQ(t.diagram.marks[0].size(), 4u);
}

TEST(Torus, NumberingRecoversQ) {
  for (auto [p, q] : coprime_pairs(30)) {
    for (bool beta : {false, true}) EXPECT_EQ(remark_q_from_numbering(build_diagram(p, q, beta)), q) << p << "," << q;
  }
}

TEST(Torus, DrilledFormulaMatchesCuttingSequence) {
  for (auto [p, q] : coprime_pairs(30)) {
    auto mine = oracle::from_letters(drilled_formula(p, q).letters);
    EXPECT_EQ(torus_oracle::canonical(mine, "a"), torus_oracle::canonical(torus_oracle::drilled(p, q), "a"))
        << p << "," << q;
  }
}

TEST(Torus, CanonicalHandleMeetsCFirst) {
  auto t = build_diagram(19, 12, true);
  auto c = canonical_handle(t);
  ASSERT_FALSE(c.path.empty());
  EXPECT_EQ(c.path.front().edge, t.beta_edges.back());
  int c_hits = 0;
  for (const auto& x : c.path) c_hits += x.edge == t.beta_edges.back();
  EXPECT_EQ(c_hits, 1);
}

TEST(Torus, StagesMatchIndependentDrilledCurves) {
  for (auto [p, q] : coprime_pairs(30)) {
    auto t = build_diagram(p, q, true);
    auto tr = euclid_slide(t);
    EXPECT_TRUE(tr.ok()) << p << "," << q << ": " << (tr.problems.empty() ? "" : tr.problems.front());
    const auto& k = t.cf.terms;
    const int n = t.cf.n();
    std::vector<int> r = {p, q}, rho = {t.r, t.s};
    for (int i = 1; i <= n; ++i) r.push_back(r[i - 1] - k[i - 1] * r[i]);
    for (int i = 1; i < n; ++i) rho.push_back(rho[i - 1] - k[i - 1] * rho[i]);
    ASSERT_EQ(static_cast<int>(tr.stages.size()), n + 1);
    for (int i = 0; i < n; ++i) {
      auto want = torus_oracle::canonical(torus_oracle::drilled(r[i], r[i + 1]), torus_oracle::drilled(rho[i], rho[i + 1]));
      EXPECT_EQ(canonical(tr.stages[i].words), want) << p << "," << q << " stage " << i;
    }
  }
}

TEST(Torus, TerminalShape) {
  for (auto [p, q] : coprime_pairs(30)) {
    auto tr = euclid_slide(build_diagram(p, q, true));
    ASSERT_EQ(tr.terminal.size(), 2u);
    EXPECT_EQ(tr.terminal[0].size(), 1u);
    EXPECT_EQ(tr.terminal[1].size(), 1u);
    EXPECT_NE(tr.terminal[0].letters[0].gen, tr.terminal[1].letters[0].gen);
  }
}

TEST(Torus, SlidesFollowKappa) {
  for (auto [p, q] : coprime_pairs(30)) {
    auto t = build_diagram(p, q, true);
    auto tr = euclid_slide(t);
    std::vector<int> per_round(t.cf.n() + 1, 0);
    int prev = tr.slides.empty() ? 0 : tr.slides.front().step.complexity_before;
    for (const auto& s : tr.slides) {
      ++per_round.at(s.round);
      EXPECT_EQ(s.step.complexity_before, prev);
      EXPECT_LT(s.step.complexity_after, s.step.complexity_before);
      prev = s.step.complexity_after;
      EXPECT_EQ(s.along, s.round % 2 ? "x" : "z");
    }
    for (int i = 1; i <= t.cf.n(); ++i) EXPECT_EQ(per_round[i], t.cf.terms[i - 1]) << p << "," << q;
  }
}

TEST(Torus, NineFourFirstStageIsFourOne) {
  auto t = build_diagram(9, 4, true);
  auto tr = euclid_slide(t);
  ASSERT_GE(tr.stages.size(), 2u);
  EXPECT_EQ(tr.stages[1].kappa, 2);
  // beta is (2,1); one round leaves it as (1,0), a single x edge.
  EXPECT_EQ(canonical(tr.stages[1].words), torus_oracle::canonical(torus_oracle::drilled(4, 1), "a"));
}

TEST(Torus, QOneIsImmediate) {
  for (int p = 2; p <= 12; ++p) {
    auto tr = euclid_slide(build_diagram(p, 1, true));
    EXPECT_TRUE(tr.ok());
    EXPECT_EQ(tr.stages.size(), 2u);
    EXPECT_EQ(static_cast<int>(tr.slides.size()), p);
  }
}

TEST(Torus, StageDiagramsArePlanar) {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{19, 12}, {9, 4}, {7, 3}}) {
    auto tr = euclid_slide(build_diagram(p, q, true));
    for (const auto& st : tr.stages) {
      Diagram d = stage_diagram(st);
      EXPECT_EQ(euler_count(embed(d)).characteristic(), 2);
      auto w = trace_words(d);
      EXPECT_EQ(canonical(w), canonical(st.words));
    }
  }
}

TEST(Torus, BetaRequiredForSlides) { EXPECT_THROW(euclid_slide(build_diagram(9, 4, false)), input_error); }
