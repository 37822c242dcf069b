#pragma once

#include "word.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

// Brute force over Nielsen moves, kept apart from the Whitehead code so the two can be compared.
namespace circhandle::oracle {

// A word is a string of letters: 'a' + 2(g-1) for x_g, one more for its inverse. A tuple is the
// words joined by '|'.
using W = std::string;
using Tuple = std::vector<W>;

inline char enc(int g, int sign) { return static_cast<char>('a' + 2 * (g - 1) + (sign < 0 ? 1 : 0)); }
inline char inv(char c) { return static_cast<char>('a' + ((c - 'a') ^ 1)); }

inline W free_reduce(const W& w) {
  W out;
  out.reserve(w.size());
  for (char a : w) {
    if (!out.empty() && out.back() == inv(a))
      out.pop_back();
    else
      out.push_back(a);
  }
  return out;
}

inline W cyclic_class(const W& w) {
  W r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == inv(r[j - 1])) ++i, --j;
  const std::size_t n = j - i;
  const char* c = r.data() + i;
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t) {
      char x = c[(k + t) % n], y = c[(best + t) % n];
      if (x != y) {
        if (x < y) best = k;
        break;
      }
    }
  W out(n, ' ');
  for (std::size_t t = 0; t < n; ++t) out[t] = c[(best + t) % n];
  return out;
}

inline W inverse_word(const W& w) {
  W r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inv(*it));
  return r;
}

// Conjugacy class of w or of w^-1, whichever is smaller. Lengths do not see the difference.
inline W unoriented_class(const W& w) { return std::min(cyclic_class(w), cyclic_class(inverse_word(w))); }

inline W from_letters(const Letters& l) {
  W w;
  for (auto x : l) w.push_back(enc(x.gen, x.sign));
  return w;
}

inline std::size_t total(const Tuple& t) {
  std::size_t n = 0;
  for (const auto& w : t) n += w.size();
  return n;
}

// Images of the letters: x_i -> x_i x_j^e or x_j^e x_i, x_i -> x_i^-1, and swaps.
using Move = std::vector<W>;  // indexed by letter code - 'a'

inline std::vector<Move> nielsen_moves(int rank) {
  auto identity = [&] {
    Move m(2 * rank);
    for (int c = 0; c < 2 * rank; ++c) m[c] = W(1, static_cast<char>('a' + c));
    return m;
  };
  auto set = [](Move& m, int g, W image) {
    W inverse_image;
    for (auto it = image.rbegin(); it != image.rend(); ++it) inverse_image.push_back(inv(*it));
    m[2 * (g - 1)] = image;
    m[2 * (g - 1) + 1] = inverse_image;
  };
  std::vector<Move> moves;
  for (int i = 1; i <= rank; ++i) {
    auto m = identity();
    set(m, i, W(1, enc(i, -1)));
    moves.push_back(m);
    for (int j = 1; j <= rank; ++j) {
      if (j == i) continue;
      for (int e : {1, -1}) {
        auto r = identity();
        set(r, i, W{enc(i, 1), enc(j, e)});
        moves.push_back(r);
        auto l = identity();
        set(l, i, W{enc(j, e), enc(i, 1)});
        moves.push_back(l);
      }
      if (j > i) {
        auto sw = identity();
        set(sw, i, W(1, enc(j, 1)));
        set(sw, j, W(1, enc(i, 1)));
        moves.push_back(sw);
      }
    }
  }
  return moves;
}

inline W substitute(const Move& m, const W& w) {
  W out;
  out.reserve(2 * w.size());
  for (char a : w) out += m[a - 'a'];
  return out;
}

inline std::string key(const Tuple& t) {
  std::string k;
  for (const auto& w : t) {
    k += w;
    k.push_back('|');
  }
  return k;
}

inline Tuple split(const std::string& k) {
  Tuple t;
  W cur;
  for (char c : k) {
    if (c == '|') {
      t.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return t;
}

struct SearchResult {
  std::size_t min_length = 0;
  std::size_t states = 0;
  bool hit_cap = false;
};

// Best-first over the orbit, shortest tuples first, never longer than start + slack. `normal`
// maps a word to the representative being compared; `done` ends the search early. Tuples are
// kept sorted, since reordering commutes with every automorphism.
template <class Normal, class Done>
SearchResult orbit_search(Tuple start, int rank, std::size_t slack, std::size_t state_cap, Normal normal, Done done) {
  for (auto& w : start) w = normal(w);
  std::sort(start.begin(), start.end());
  const std::size_t limit = total(start) + slack;
  const auto moves = nielsen_moves(rank);
  using Item = std::pair<std::size_t, std::string>;
  std::unordered_set<std::string> seen = {key(start)};
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  open.push({total(start), key(start)});
  SearchResult res;
  res.min_length = total(start);
  while (!open.empty()) {
    auto [len, k] = open.top();
    open.pop();
    res.min_length = std::min(res.min_length, len);
    const Tuple t = split(k);
    if (done(t)) break;
    for (const auto& m : moves) {
      Tuple next;
      std::size_t l = 0;
      for (const auto& w : t) {
        next.push_back(normal(substitute(m, w)));
        l += next.back().size();
      }
      std::sort(next.begin(), next.end());
      std::string nk = key(next);
      if (l > limit || !seen.insert(nk).second) continue;
      if (seen.size() > state_cap) {
        res.hit_cap = true;
        res.states = seen.size();
        return res;
      }
      open.push({l, std::move(nk)});
    }
  }
  res.states = seen.size();
  return res;
}

// Shortest total cyclic length in the orbit of the conjugacy classes.
inline SearchResult minimal_length(const std::vector<Letters>& words, int rank, std::size_t slack = 2,
                                   std::size_t state_cap = 3000000) {
  Tuple start;
  for (const auto& w : words) start.push_back(from_letters(w));
  const std::size_t floor = words.size();
  return orbit_search(start, rank, slack, state_cap, unoriented_class,
                      [&](const Tuple& t) { return total(t) == floor; });
}

inline bool distinct_generators(const Tuple& t) {
  std::set<int> gens;
  for (const auto& w : t) {
    if (w.size() != 1) return false;
    gens.insert((w[0] - 'a') / 2);
  }
  return gens.size() == t.size();
}

// True if some tuple within start + slack is made of distinct generators, as elements.
inline bool reaches_generators(const std::vector<Letters>& words, int rank, std::size_t slack = 2,
                               std::size_t state_cap = 3000000) {
  Tuple start;
  for (const auto& w : words) start.push_back(from_letters(w));
  bool hit = false;
  orbit_search(start, rank, slack, state_cap, free_reduce, [&](const Tuple& t) { return hit = distinct_generators(t); });
  return hit;
}

// Random cyclically reduced words, between 1 and rank of them, total length at most max_total.
inline std::vector<Letters> random_set(std::mt19937& rng, int rank, int max_total) {
  std::uniform_int_distribution<int> count_d(1, rank);
  const int count = count_d(rng);
  std::vector<Letters> out;
  int budget = max_total;
  for (int i = 0; i < count && budget >= 1; ++i) {
    const int left = count - i - 1;
    std::uniform_int_distribution<int> len_d(1, std::max(1, budget - left));
    const int len = len_d(rng);
    std::uniform_int_distribution<int> letter_d(0, 2 * rank - 1);
    Letters w;
    while (static_cast<int>(w.size()) < len) {
      Letter l = letter_from_index(letter_d(rng));
      if (!w.empty() && l == inverse(w.back())) continue;
      if (static_cast<int>(w.size()) == len - 1 && len > 1 && l == inverse(w.front())) continue;
      w.push_back(l);
    }
    budget -= len;
    out.push_back(w);
  }
  return out;
}

}  // namespace circhandle::oracle
