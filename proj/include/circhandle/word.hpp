#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace circhandle {

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// x_gen^sign
struct Letter {
  int gen = 1;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// x1 -> 0, X1 -> 1, x2 -> 2, ...
inline int letter_index(Letter l) { return 2 * (l.gen - 1) + (l.sign < 0 ? 1 : 0); }
inline Letter letter_from_index(int i) { return {i / 2 + 1, (i % 2) ? -1 : 1}; }
inline Letter inverse(Letter l) { return {l.gen, -l.sign}; }
inline int inverse_index(int i) { return i ^ 1; }

inline bool operator<(Letter a, Letter b) { return letter_index(a) < letter_index(b); }

using Letters = std::vector<Letter>;

struct Word {
  int rank = 0;
  Letters letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

// Stored as the least rotation, so equality is conjugacy of cyclically reduced words.
struct CyclicWord {
  int rank = 0;
  Letters letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return std::lexicographical_compare(a.letters.begin(), a.letters.end(), b.letters.begin(),
                                        b.letters.end());
  }
};

inline void check_rank(const Letters& raw, int rank) {
  if (rank < 0) throw input_error("negative rank");
  for (auto l : raw)
    if (l.gen < 1 || l.gen > rank || (l.sign != 1 && l.sign != -1))
      throw input_error("generator x" + std::to_string(l.gen) + " outside rank " +
                        std::to_string(rank));
}

inline Word reduce(const Letters& raw, int rank) {
  check_rank(raw, rank);
  Word w{rank, {}};
  for (auto l : raw) {
    if (!w.letters.empty() && w.letters.back() == inverse(l))
      w.letters.pop_back();
    else
      w.letters.push_back(l);
  }
  return w;
}

inline Word inverse(const Word& w) {
  Word r{w.rank, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(inverse(*it));
  return r;
}

inline Word operator*(const Word& a, const Word& b) {
  Letters raw = a.letters;
  raw.insert(raw.end(), b.letters.begin(), b.letters.end());
  return reduce(raw, std::max(a.rank, b.rank));
}

inline Letters least_rotation(const Letters& s) {
  if (s.empty()) return s;
  Letters best = s;
  Letters cur = s;
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) best = cur;
  }
  return best;
}

// w = conjugator * core * conjugator^-1
inline std::pair<CyclicWord, Word> cyclic_reduce(const Word& w) {
  const Word r = reduce(w.letters, w.rank);
  std::size_t i = 0, j = r.letters.size();
  while (j - i >= 2 && r.letters[i] == inverse(r.letters[j - 1])) {
    ++i;
    --j;
  }
  Word conj{r.rank, Letters(r.letters.begin(), r.letters.begin() + i)};
  Letters core(r.letters.begin() + i, r.letters.begin() + j);
  return {CyclicWord{r.rank, least_rotation(core)}, conj};
}

inline CyclicWord cyclic(const Word& w) { return cyclic_reduce(w).first; }

inline CyclicWord cyclic(const Letters& raw, int rank) { return cyclic(reduce(raw, rank)); }

inline Word as_word(const CyclicWord& c) { return Word{c.rank, c.letters}; }

inline bool is_cyclically_reduced(const Letters& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == inverse(s[i + 1])) return false;
  return s.size() < 2 || !(s.front() == inverse(s.back()));
}

inline std::size_t total_length(const std::vector<CyclicWord>& s) {
  std::size_t n = 0;
  for (const auto& w : s) n += w.size();
  return n;
}

inline std::string letter_name(Letter l) {
  return std::string(l.sign > 0 ? "x" : "X") + std::to_string(l.gen);
}

inline std::string to_string(const Letters& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += letter_name(s[i]);
  }
  return out;
}
inline std::string to_string(const Word& w) { return to_string(w.letters); }
inline std::string to_string(const CyclicWord& w) { return to_string(w.letters); }

inline Letter parse_letter(std::string_view tok) {
  if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X'))
    throw input_error("bad letter token '" + std::string(tok) + "'");
  int gen = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw input_error("bad letter token '" + std::string(tok) + "'");
    gen = gen * 10 + (tok[i] - '0');
    if (gen > 1000000) throw input_error("generator index too large");
  }
  if (gen == 0) throw input_error("generators are numbered from 1, got '" + std::string(tok) + "'");
  return {gen, tok[0] == 'x' ? 1 : -1};
}

inline Letters parse_letters(std::string_view text) {
  Letters out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(parse_letter(tok));
  return out;
}

// Accepts unreduced input and reduces it.
inline Word parse_word(std::string_view text, int rank) { return reduce(parse_letters(text), rank); }

inline Letters power(const Letters& s, int n) {
  Letters out;
  const int k = n < 0 ? -n : n;
  for (int i = 0; i < k; ++i) {
    if (n > 0)
      out.insert(out.end(), s.begin(), s.end());
    else
      for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(inverse(*it));
  }
  return out;
}

inline Letters gen_power(int gen, int n) { return power(Letters{{gen, 1}}, n); }

inline Letters cat(std::initializer_list<Letters> parts) {
  Letters out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace circhandle
