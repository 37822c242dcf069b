#pragma once

#include "word.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace circhandle {

// Type I: x_i -> image[i-1], a single letter.
// Type II (a, A): a -> a; for y not in {a, a^-1}, y -> a^-1 y if y^-1 in A, then y a if y in A.
// A always contains a and never a^-1.
struct WhiteheadAutomorphism {
  enum class Kind { permutation, multiplier };

  Kind kind = Kind::multiplier;
  int rank = 0;
  std::vector<Letter> image;
  Letter multiplier;
  std::uint64_t affected = 0;  // bit i set: letter_from_index(i) in A

  static WhiteheadAutomorphism type_one(int rank, std::vector<Letter> image) {
    if (static_cast<int>(image.size()) != rank) throw input_error("type I image has wrong size");
    std::vector<bool> seen(rank + 1, false);
    for (auto l : image) {
      if (l.gen < 1 || l.gen > rank || seen[l.gen]) throw input_error("type I image is not a permutation");
      seen[l.gen] = true;
    }
    WhiteheadAutomorphism a;
    a.kind = Kind::permutation;
    a.rank = rank;
    a.image = std::move(image);
    return a;
  }

  static WhiteheadAutomorphism type_two(int rank, Letter a, std::uint64_t set) {
    if (rank < 1 || rank > 32) throw input_error("rank out of range for type II automorphism");
    if (a.gen < 1 || a.gen > rank) throw input_error("multiplier outside rank");
    const int ai = letter_index(a);
    set |= std::uint64_t{1} << ai;
    if (set >> (2 * rank)) throw input_error("affected set outside rank");
    if (set >> inverse_index(ai) & 1) throw input_error("affected set contains the inverse multiplier");
    WhiteheadAutomorphism w;
    w.kind = Kind::multiplier;
    w.rank = rank;
    w.multiplier = a;
    w.affected = set;
    return w;
  }

  bool in_set(Letter l) const { return affected >> letter_index(l) & 1; }

  Letters image_of(Letter l) const {
    if (kind == Kind::permutation) {
      Letter t = image[l.gen - 1];
      return {l.sign > 0 ? t : circhandle::inverse(t)};
    }
    if (l.gen == multiplier.gen) return {l};
    Letters out;
    if (in_set(circhandle::inverse(l))) out.push_back(circhandle::inverse(multiplier));
    out.push_back(l);
    if (in_set(l)) out.push_back(multiplier);
    return out;
  }

  WhiteheadAutomorphism inverse() const {
    if (kind == Kind::permutation) {
      std::vector<Letter> inv(rank);
      for (int i = 0; i < rank; ++i) {
        Letter t = image[i];
        inv[t.gen - 1] = Letter{i + 1, t.sign};
      }
      return type_one(rank, inv);
    }
    const int ai = letter_index(multiplier);
    std::uint64_t set = affected & ~(std::uint64_t{1} << ai);
    set |= std::uint64_t{1} << inverse_index(ai);
    return type_two(rank, circhandle::inverse(multiplier), set);
  }

  friend bool operator==(const WhiteheadAutomorphism&, const WhiteheadAutomorphism&) = default;
};

inline Letters apply_raw(const WhiteheadAutomorphism& a, const Letters& s) {
  Letters out;
  for (auto l : s) {
    auto im = a.image_of(l);
    out.insert(out.end(), im.begin(), im.end());
  }
  return out;
}

inline void check_same_rank(const WhiteheadAutomorphism& a, int rank) {
  if (a.rank != rank) throw input_error("automorphism rank does not match word rank");
}

inline Word apply_automorphism(const WhiteheadAutomorphism& a, const Word& w) {
  check_same_rank(a, w.rank);
  return reduce(apply_raw(a, w.letters), w.rank);
}

inline CyclicWord apply_automorphism(const WhiteheadAutomorphism& a, const CyclicWord& w) {
  check_same_rank(a, w.rank);
  return cyclic(apply_raw(a, w.letters), w.rank);
}

template <class W>
std::vector<W> apply_automorphism(const WhiteheadAutomorphism& a, const std::vector<W>& s) {
  std::vector<W> out;
  out.reserve(s.size());
  for (const auto& w : s) out.push_back(apply_automorphism(a, w));
  return out;
}

template <class W>
std::vector<W> apply_trace(const std::vector<WhiteheadAutomorphism>& trace, std::vector<W> s) {
  for (const auto& a : trace) s = apply_automorphism(a, s);
  return s;
}

// Image of w under (trace composed in order)^-1.
inline Word apply_inverse_trace(const std::vector<WhiteheadAutomorphism>& trace, Word w) {
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) w = apply_automorphism(it->inverse(), w);
  return w;
}

// Fixed order: multiplier index, then the bitmask of A. Skips the two choices that act by
// conjugation ({a} and everything but a^-1).
inline std::vector<WhiteheadAutomorphism> type_two_automorphisms(int rank) {
  std::vector<WhiteheadAutomorphism> out;
  const int n = 2 * rank;
  for (int ai = 0; ai < n; ++ai) {
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
      if (i != ai && i != inverse_index(ai)) others.push_back(i);
    const std::uint64_t full = (std::uint64_t{1} << others.size()) - 1;
    for (std::uint64_t m = 0; m <= full; ++m) {
      if (m == 0 || m == full) continue;
      std::uint64_t set = std::uint64_t{1} << ai;
      for (std::size_t k = 0; k < others.size(); ++k)
        if (m >> k & 1) set |= std::uint64_t{1} << others[k];
      out.push_back(WhiteheadAutomorphism::type_two(rank, letter_from_index(ai), set));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int x = letter_index(a.multiplier), y = letter_index(b.multiplier);
    return x != y ? x < y : a.affected < b.affected;
  });
  return out;
}

inline std::string to_string(const WhiteheadAutomorphism& a) {
  std::string s;
  if (a.kind == WhiteheadAutomorphism::Kind::permutation) {
    for (int i = 0; i < a.rank; ++i) {
      if (i) s += ' ';
      s += "x" + std::to_string(i + 1) + "->" + letter_name(a.image[i]);
    }
    return s;
  }
  s = "(" + letter_name(a.multiplier) + "; {";
  bool first = true;
  for (int i = 0; i < 2 * a.rank; ++i)
    if (a.affected >> i & 1) {
      if (!first) s += ',';
      s += letter_name(letter_from_index(i));
      first = false;
    }
  return s + "})";
}

}  // namespace circhandle
