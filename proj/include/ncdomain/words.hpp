#pragma once

// Words over the free monoid on n generators g_1..g_n, with the graded
// lexicographic enumeration used as the basis order everywhere else in the
// library.  Letters are 1-based generator indices.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdomain {

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int a : letters_)
      if (a < 1) throw std::invalid_argument("word letters must be >= 1");
  }

  static Word generator(int i) { return Word(std::vector<int>{i}); }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int letter(std::size_t t) const { return letters_.at(t); }  // 0-based position
  const std::vector<int>& letters() const { return letters_; }
  int max_letter() const {
    int m = 0;
    for (int a : letters_) m = std::max(m, a);
    return m;
  }

  Word prefix(std::size_t len) const {
    if (len > length()) throw std::out_of_range("prefix longer than word");
    return Word(std::vector<int>(letters_.begin(), letters_.begin() + len));
  }
  Word suffix_from(std::size_t pos) const {
    if (pos > length()) throw std::out_of_range("suffix start past end");
    return Word(std::vector<int>(letters_.begin() + pos, letters_.end()));
  }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }

  // Graded lexicographic: shorter words first, ties broken letterwise.
  std::strong_ordering operator<=>(const Word& o) const {
    if (auto c = length() <=> o.length(); c != 0) return c;
    return letters_ <=> o.letters_;
  }

 private:
  std::vector<int> letters_;
};

inline Word concat(const Word& u, const Word& v) {
  std::vector<int> out = u.letters();
  out.insert(out.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(out));
}

inline bool is_prefix(const Word& p, const Word& w) {
  if (p.length() > w.length()) return false;
  return std::equal(p.letters().begin(), p.letters().end(), w.letters().begin());
}

// All splittings alpha = beta . gamma, in increasing |beta| (|alpha|+1 pairs).
inline std::vector<std::pair<Word, Word>> factorizations(const Word& alpha) {
  std::vector<std::pair<Word, Word>> out;
  out.reserve(alpha.length() + 1);
  for (std::size_t k = 0; k <= alpha.length(); ++k)
    out.emplace_back(alpha.prefix(k), alpha.suffix_from(k));
  return out;
}

// Visits every ordered tuple (gamma_1,...,gamma_j) of nonempty words whose
// concatenation is alpha; 2^(|alpha|-1) tuples.  Cut positions are encoded as
// bits, so the visit order is deterministic.
inline void for_each_composition(const Word& alpha,
                                 const std::function<void(const std::vector<Word>&)>& fn) {
  const std::size_t d = alpha.length();
  if (d == 0) throw std::invalid_argument("compositions of the empty word are undefined");
  if (d > 24) throw std::invalid_argument("composition enumeration capped at length 24");
  const std::uint64_t masks = std::uint64_t{1} << (d - 1);
  std::vector<Word> parts;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    parts.clear();
    std::size_t start = 0;
    for (std::size_t pos = 0; pos + 1 < d; ++pos) {
      if (mask >> pos & 1) {
        parts.push_back(alpha.prefix(pos + 1).suffix_from(start));
        start = pos + 1;
      }
    }
    parts.push_back(alpha.suffix_from(start));
    fn(parts);
  }
}

inline std::vector<std::vector<Word>> compositions(const Word& alpha) {
  if (alpha.length() > 20)
    throw std::invalid_argument("composition list capped at length 20");
  std::vector<std::vector<Word>> out;
  for_each_composition(alpha, [&](const std::vector<Word>& parts) { out.push_back(parts); });
  return out;
}

// Alphabet context: validates letters and provides the graded-lex index map
// between words of length <= L and [0, dim).
class WordContext {
 public:
  explicit WordContext(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
  }

  int alphabet_size() const { return n_; }

  bool contains(const Word& w) const { return w.max_letter() <= n_; }
  void require(const Word& w) const {
    if (!contains(w))
      throw std::invalid_argument("word uses generator beyond alphabet size " +
                                  std::to_string(n_));
  }

  // Number of words of length exactly len.
  std::uint64_t block_size(int len) const {
    std::uint64_t s = 1;
    for (int t = 0; t < len; ++t) {
      s *= static_cast<std::uint64_t>(n_);
      if (s > kMaxDim) throw std::invalid_argument("truncation length too large");
    }
    return s;
  }

  // Index of the first word of length len (= number of strictly shorter words).
  std::uint64_t block_offset(int len) const {
    std::uint64_t total = 0;
    for (int t = 0; t < len; ++t) {
      total += block_size(t);
      if (total > kMaxDim) throw std::invalid_argument("truncation length too large");
    }
    return total;
  }

  // Number of words of length <= max_len: (n^(L+1)-1)/(n-1), or L+1 when n = 1.
  std::uint64_t dim(int max_len) const {
    if (max_len < 0) throw std::invalid_argument("truncation length must be >= 0");
    return block_offset(max_len + 1);
  }

  std::uint64_t index(const Word& w) const {
    require(w);
    std::uint64_t rank = 0;
    for (std::size_t t = 0; t < w.length(); ++t)
      rank = rank * static_cast<std::uint64_t>(n_) +
             static_cast<std::uint64_t>(w.letter(t) - 1);
    return block_offset(static_cast<int>(w.length())) + rank;
  }

  Word word_at(std::uint64_t idx) const {
    int len = 0;
    while (idx >= block_size(len)) {
      idx -= block_size(len);
      ++len;
      if (len > kMaxLen) throw std::out_of_range("word index out of range");
    }
    std::vector<int> letters(len);
    for (int t = len - 1; t >= 0; --t) {
      letters[t] = static_cast<int>(idx % static_cast<std::uint64_t>(n_)) + 1;
      idx /= static_cast<std::uint64_t>(n_);
    }
    return Word(std::move(letters));
  }

  // All words of length <= max_len in graded-lex order.
  std::vector<Word> enumerate(int max_len) const {
    const std::uint64_t d = dim(max_len);
    std::vector<Word> out;
    out.reserve(d);
    for (std::uint64_t i = 0; i < d; ++i) out.push_back(word_at(i));
    return out;
  }

  // Letter counts r_i(w), i = 1..n.
  std::vector<int> multidegree(const Word& w) const {
    require(w);
    std::vector<int> counts(n_, 0);
    for (std::size_t t = 0; t < w.length(); ++t) ++counts[w.letter(t) - 1];
    return counts;
  }

 private:
  static constexpr std::uint64_t kMaxDim = 100'000'000;
  static constexpr int kMaxLen = 64;
  int n_;
};

// Text syntax: "e" for the empty word; contiguous digits when n <= 9
// (e.g. "121"); dot-separated indices otherwise (e.g. "3.12.7").  Dotted form
// is accepted for every alphabet size.
inline Word parse_word(const std::string& text, int n) {
  if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
  if (text.empty()) throw std::invalid_argument("empty word token");
  if (text == "e") return Word();
  std::vector<int> letters;
  auto push = [&](int v, const std::string& tok) {
    if (v < 1 || v > n)
      throw std::invalid_argument("letter '" + tok + "' outside alphabet 1.." +
                                  std::to_string(n));
    letters.push_back(v);
  };
  if (text.find('.') != std::string::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t dot = text.find('.', start);
      std::string tok = text.substr(start, dot == std::string::npos ? dot : dot - start);
      if (tok.empty()) throw std::invalid_argument("empty letter in word '" + text + "'");
      for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw std::invalid_argument("bad letter '" + tok + "' in word '" + text + "'");
      if (tok.size() > 9)
        throw std::invalid_argument("letter '" + tok + "' outside alphabet 1.." +
                                    std::to_string(n));
      push(std::stoi(tok), tok);
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
  } else {
    for (char c : text)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad character '" + std::string(1, c) +
                                    "' in word '" + text + "'");
    if (n > 9) {
      // undotted input is a single letter once digits alone are ambiguous
      if (text.size() > 9)
        throw std::invalid_argument("letter '" + text + "' outside alphabet 1.." +
                                    std::to_string(n));
      push(std::stoi(text), text);
    } else {
      for (char c : text) push(c - '0', std::string(1, c));
    }
  }
  return Word(std::move(letters));
}

inline std::string format_word(const Word& w, int n) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t t = 0; t < w.length(); ++t) {
    if (n > 9 && t > 0) out += '.';
    out += std::to_string(w.letter(t));
  }
  return out;
}

}  // namespace ncdomain
