// Words over the generating set {x0, x1, x0^-1, x1^-1} and their text forms.
// Compact letters: a = x0, b = x1, A = x0^-1, B = x1^-1.
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/errors.hpp"

namespace thompson {

enum class Generator : std::uint8_t { X0 = 0, X1 = 1, X0Inv = 2, X1Inv = 3 };

using Word = std::vector<Generator>;

inline Generator inverse_of(Generator g) {
  switch (g) {
    case Generator::X0: return Generator::X0Inv;
    case Generator::X1: return Generator::X1Inv;
    case Generator::X0Inv: return Generator::X0;
    default: return Generator::X1;
  }
}

inline bool is_x0_letter(Generator g) { return g == Generator::X0 || g == Generator::X0Inv; }
inline bool is_x1_letter(Generator g) { return g == Generator::X1 || g == Generator::X1Inv; }

inline char compact_letter(Generator g) {
  static constexpr std::array<char, 4> letters = {'a', 'b', 'A', 'B'};
  return letters[static_cast<std::size_t>(g)];
}

inline std::string long_name(Generator g) {
  static const std::array<std::string, 4> names = {"x0", "x1", "x0^-1", "x1^-1"};
  return names[static_cast<std::size_t>(g)];
}

inline std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Generator g : w) s.push_back(compact_letter(g));
  return s;
}

// w(t): the prefix of w of length t, or w itself when t >= |w|.
inline Word prefix(const Word& w, std::size_t t) {
  if (t >= w.size()) return w;
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_of(*it));
  return out;
}

inline Word operator+(Word lhs, const Word& rhs) {
  lhs.insert(lhs.end(), rhs.begin(), rhs.end());
  return lhs;
}

inline Word repeated(Generator g, std::size_t count) { return Word(count, g); }

// Accepts compact letters (aAbB) and long tokens (x0, x1, x0^-1, x1^-1),
// whitespace-insensitive. Exponent sugar is rejected.
inline Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    switch (c) {
      case 'a': w.push_back(Generator::X0); ++i; continue;
      case 'b': w.push_back(Generator::X1); ++i; continue;
      case 'A': w.push_back(Generator::X0Inv); ++i; continue;
      case 'B': w.push_back(Generator::X1Inv); ++i; continue;
      default: break;
    }
    if (c == 'x' && i + 1 < text.size() && (text[i + 1] == '0' || text[i + 1] == '1')) {
      bool one = text[i + 1] == '1';
      std::size_t j = i + 2;
      if (text.substr(j, 3) == "^-1") {
        w.push_back(one ? Generator::X1Inv : Generator::X0Inv);
        i = j + 3;
      } else if (j < text.size() && text[j] == '^') {
        throw ParseError("exponent sugar is not supported; spell letters out", j);
      } else {
        w.push_back(one ? Generator::X1 : Generator::X0);
        i = j;
      }
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "' in word", i);
  }
  return w;
}

}  // namespace thompson
