#include <circhandle/free_group.hpp>
#include <circhandle/oracle.hpp>

#include <gtest/gtest.h>

using namespace circhandle;

TEST(Oracle, EncodingMatchesLetterIndex) {
  for (int i = 0; i < 8; ++i) {
    Letter l = letter_from_index(i);
    EXPECT_EQ(oracle::enc(l.gen, l.sign), 'a' + i);
    EXPECT_EQ(oracle::inv(static_cast<char>('a' + i)), 'a' + inverse_index(i));
  }
}

TEST(Oracle, CyclicClassMatchesLibrary) {
  std::mt19937 rng(43);
  for (int t = 0; t < 300; ++t) {
    auto set = oracle::random_set(rng, 3, 12);
    for (const auto& w : set) EXPECT_EQ(oracle::cyclic_class(oracle::from_letters(w)), oracle::from_letters(cyclic(w, 3).letters));
  }
}

TEST(Oracle, MovesAreInvertible) {
  // Every Nielsen move has an inverse among the moves, so the orbit is symmetric.
  for (int rank : {2, 3}) {
    auto moves = oracle::nielsen_moves(rank);
    for (const auto& m : moves) {
      bool found = false;
      for (const auto& n : moves) {
        bool id = true;
        for (int c = 0; c < 2 * rank && id; ++c)
          id = oracle::free_reduce(oracle::substitute(n, m[c])) == std::string(1, static_cast<char>('a' + c));
        found = found || id;
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(Oracle, KnownMinima) {
  EXPECT_EQ(oracle::minimal_length({parse_letters("x1 x2 X1 X2")}, 2).min_length, 4u);
  EXPECT_EQ(oracle::minimal_length({parse_letters("x1 x1 x2 x1 x2")}, 2).min_length, 1u);
  EXPECT_EQ(oracle::minimal_length({parse_letters("x1 x1 x1")}, 2).min_length, 3u);
}

TEST(Oracle, GreedyAgreesOnSmallSets) {
  std::mt19937 rng(7);
  for (int t = 0; t < 40; ++t) {
    const int rank = 2 + t % 2;
    auto set = oracle::random_set(rng, rank, 8);
    std::vector<CyclicWord> s;
    for (const auto& w : set) s.push_back(cyclic(w, rank));
    std::vector<Letters> reduced;
    for (const auto& w : s) reduced.push_back(w.letters);
    auto brute = oracle::minimal_length(reduced, rank);
    ASSERT_FALSE(brute.hit_cap);
    EXPECT_EQ(total_length(whitehead_minimize(s, rank).words), brute.min_length);
  }
}

TEST(Oracle, ReachesGenerators) {
  EXPECT_TRUE(oracle::reaches_generators({parse_letters("x2 x2 x2 X1"), parse_letters("x2")}, 2));
  EXPECT_FALSE(oracle::reaches_generators({parse_letters("x1 x1")}, 2));
}
