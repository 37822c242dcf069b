#include <circhandle/automorphism.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace circhandle;

namespace {

Letters L(const char* s) { return parse_letters(s); }

// Smallest rotation by trying every start.
Letters brute_least_rotation(const Letters& s) {
  Letters best = s;
  for (std::size_t k = 1; k < s.size(); ++k) {
    Letters r(s.begin() + k, s.end());
    r.insert(r.end(), s.begin(), s.begin() + k);
    if (r < best) best = r;
  }
  return best;
}

Letters random_letters(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> d(0, 2 * rank - 1);
  Letters out;
  for (int i = 0; i < len; ++i) out.push_back(letter_from_index(d(rng)));
  return out;
}

}  // namespace

TEST(Word, ReduceCancels) {
  EXPECT_TRUE(reduce(L("x1 X1"), 2).empty());
  EXPECT_EQ(reduce(L("x2 x2 X1"), 2).letters, L("x2 x2 X1"));
  EXPECT_EQ(reduce(L("x1 x2 X2 x1"), 2).letters, L("x1 x1"));
}

TEST(Word, ReduceRejectsOutOfRank) { EXPECT_THROW(reduce(L("x3"), 2), input_error); }

TEST(Word, ParseRejectsGarbage) {
  EXPECT_THROW(parse_letters("y1"), input_error);
  EXPECT_THROW(parse_letters("x0"), input_error);
}

TEST(Word, CyclicReduce) {
  auto [c, u] = cyclic_reduce(reduce(L("x1 x2 X1"), 2));
  EXPECT_EQ(c.letters, L("x2"));
  EXPECT_EQ(u.letters, L("x1"));
  auto [c2, u2] = cyclic_reduce(reduce(L("x2 x2 X1"), 2));
  EXPECT_EQ(c2.letters, least_rotation(L("x2 x2 X1")));
  EXPECT_TRUE(u2.empty());
  auto [c3, u3] = cyclic_reduce(Word{2, {}});
  EXPECT_TRUE(c3.empty());
  EXPECT_TRUE(u3.empty());
}

TEST(Word, CyclicReduceConjugatorRebuildsWord) {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    Word w = reduce(random_letters(rng, 3, 1 + t % 12), 3);
    auto [c, u] = cyclic_reduce(w);
    EXPECT_TRUE(is_cyclically_reduced(c.letters));
    // w is u * (a rotation of c) * u^-1
    Word core = inverse(u) * w * u;
    EXPECT_EQ(core.size(), c.size());
    EXPECT_EQ(brute_least_rotation(core.letters), c.letters);
  }
}

TEST(Word, LeastRotationMatchesBruteForce) {
  std::mt19937 rng(3);
  for (int t = 0; t < 500; ++t) {
    Letters s = random_letters(rng, 2, 1 + t % 10);
    EXPECT_EQ(least_rotation(s), brute_least_rotation(s));
  }
}

TEST(Word, ToStringRoundTrip) {
  Letters s = L("x1 X2 x3 x3 X1");
  EXPECT_EQ(parse_letters(to_string(s)), s);
}

TEST(Automorphism, TypeOneSwap) {
  auto a = WhiteheadAutomorphism::type_one(2, {{2, 1}, {1, 1}});
  EXPECT_EQ(apply_automorphism(a, reduce(L("x1 x2"), 2)).letters, L("x2 x1"));
}

TEST(Automorphism, TypeTwoRightMultiplies) {
  auto a = WhiteheadAutomorphism::type_two(2, {1, 1}, std::uint64_t{1} << letter_index({2, 1}));
  EXPECT_EQ(apply_automorphism(a, reduce(L("x2"), 2)).letters, L("x2 x1"));
  EXPECT_EQ(apply_automorphism(a, reduce(L("X2"), 2)).letters, L("X1 X2"));
}

TEST(Automorphism, EmptyWordFixed) {
  for (const auto& a : type_two_automorphisms(2)) EXPECT_TRUE(apply_automorphism(a, Word{2, {}}).empty());
}

TEST(Automorphism, ImagesFollowTheMultiplierRule) {
  // Letter by letter: prefix a^-1 when y^-1 is in A, suffix a when y is in A.
  for (int rank : {2, 3})
    for (const auto& a : type_two_automorphisms(rank))
      for (int i = 0; i < 2 * rank; ++i) {
        Letter y = letter_from_index(i);
        if (y.gen == a.multiplier.gen) {
          EXPECT_EQ(a.image_of(y), Letters{y});
          continue;
        }
        Letters want;
        if (a.affected >> letter_index(inverse(y)) & 1) want.push_back(inverse(a.multiplier));
        want.push_back(y);
        if (a.affected >> letter_index(y) & 1) want.push_back(a.multiplier);
        EXPECT_EQ(a.image_of(y), want);
      }
}

TEST(Automorphism, CountsExcludeConjugations) {
  // 2r choices of a, 2^(2r-2) subsets of the rest, minus the empty and full ones.
  for (int rank : {2, 3, 4}) {
    const std::size_t per = (std::size_t{1} << (2 * rank - 2)) - 2;
    EXPECT_EQ(type_two_automorphisms(rank).size(), 2 * rank * per);
  }
  EXPECT_EQ(type_two_automorphisms(2).size(), 8u);
  EXPECT_EQ(type_two_automorphisms(3).size(), 84u);
}

TEST(Automorphism, InverseRoundTrip) {
  std::mt19937 rng(5);
  for (int rank : {2, 3}) {
    const auto autos = type_two_automorphisms(rank);
    for (const auto& a : autos)
      for (int t = 0; t < 20; ++t) {
        Word w = reduce(random_letters(rng, rank, 1 + t % 9), rank);
        EXPECT_EQ(apply_automorphism(a.inverse(), apply_automorphism(a, w)), w) << to_string(a);
      }
  }
}

TEST(Automorphism, TypeTwoRejectsInverseInSet) {
  EXPECT_THROW(WhiteheadAutomorphism::type_two(2, {1, 1}, std::uint64_t{1} << letter_index({1, -1})), input_error);
}

TEST(Automorphism, RankMismatchRejected) {
  auto a = WhiteheadAutomorphism::type_one(2, {{2, 1}, {1, 1}});
  EXPECT_THROW(apply_automorphism(a, reduce(L("x1"), 3)), input_error);
}
