#pragma once

#include <cstddef>
#include <vector>

#include "cantor/error.hpp"

namespace cantor {

// Parameters of the space C_{n,r}: digits 0..n-1 and dot letters d0..d(r-1).
struct AlphabetParams {
  int n = 2;
  int r = 1;
  bool operator==(const AlphabetParams&) const = default;
};

void check_params(const AlphabetParams& p);

enum class WordKind { Plain, Rooted };

// A finite word.  Plain words live over the digit alphabet; Rooted words
// start with a dot letter and address a cone of C_{n,r}.  The empty word is
// representable only as a Plain word.
class Word {
 public:
  Word() = default;  // epsilon

  static Word plain(std::vector<int> digits);
  static Word rooted(int dot, std::vector<int> digits = {});

  WordKind kind() const { return kind_; }
  bool is_rooted() const { return kind_ == WordKind::Rooted; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  std::size_t digit_count() const {
    return letters_.size() - (is_rooted() ? 1 : 0);
  }

  int dot() const;
  // Raw letter access; for Rooted words index 0 is the dot letter.
  int letter(std::size_t i) const { return letters_[i]; }
  int back() const { return letters_.back(); }
  // Digit access skipping the dot slot.
  int digit(std::size_t i) const { return letters_[i + (is_rooted() ? 1 : 0)]; }

  Word append(const Word& plain_suffix) const;
  Word append_letter(int digit) const;
  Word prefix(std::size_t len) const;
  Word without_last() const;

  void check_valid(const AlphabetParams& p) const;

  bool operator==(const Word&) const = default;

 private:
  WordKind kind_ = WordKind::Plain;
  std::vector<int> letters_;
};

enum class PrefixRel { Equal, PrefixOf, ExtensionOf, Incomparable };

struct WordOrder {
  PrefixRel prefix;
  int lex;  // -1, 0, +1: strict lex verdict (prefix counts as <=)
};

WordOrder compare_words(const Word& a, const Word& b);
bool lex_less(const Word& a, const Word& b);
bool is_prefix(const Word& nu, const Word& eta);

// eta = nu . tau; returns the Plain word tau.  Throws NotAPrefix.
Word word_subtract(const Word& eta, const Word& nu);

class CompleteAntichain {
 public:
  // Sorts, checks pairwise incomparability and the Kraft equality.
  static CompleteAntichain validate(std::vector<Word> words,
                                    const AlphabetParams& p);
  // The root antichain {d0, ..., d(r-1)}.
  static CompleteAntichain root(const AlphabetParams& p);

  const AlphabetParams& params() const { return params_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  const Word& word(std::size_t i) const { return words_[i]; }
  std::size_t max_digit_depth() const;

  // Index of the unique word that is a prefix of w; throws if w is too
  // shallow (a strict prefix of every matching leaf).
  std::size_t leaf_containing(const Word& w) const;

  bool operator==(const CompleteAntichain&) const = default;

 private:
  CompleteAntichain(AlphabetParams p, std::vector<Word> ws)
      : params_(p), words_(std::move(ws)) {}

  AlphabetParams params_;
  std::vector<Word> words_;
};

// Coarsest common refinement: the maxima of a + b under extension.
CompleteAntichain antichain_refine(const CompleteAntichain& a,
                                   const CompleteAntichain& b);

// Complete antichain in which every leaf either extends one of the given
// pairwise-incomparable cones or is disjoint from all of them.
CompleteAntichain completion(const std::vector<Word>& cones,
                             const AlphabetParams& p);

// Replaces words[i] by its n children (in place, still sorted).
void expand_leaf(std::vector<Word>& words, std::size_t i,
                 const AlphabetParams& p);

// Does the union of `cones` (pairwise incomparable) contain U_w?
bool cones_cover(const Word& w, const std::vector<Word>& cones,
                 const AlphabetParams& p);

// All n^len plain words of the given length, in lex order.
std::vector<Word> all_plain_words(std::size_t len, const AlphabetParams& p);

// A point tau . w^omega of C_{n,r}, held in canonical form: the period is
// primitive and the stem absorbs no rotation-aligned copy of the period.
class EventuallyPeriodicPoint {
 public:
  static EventuallyPeriodicPoint make(Word stem, Word period,
                                      const AlphabetParams& p);

  const Word& stem() const { return stem_; }
  const Word& period() const { return period_; }

  // Letter of the infinite expansion (index 0 is the dot letter).
  int letter_at(std::size_t i) const;
  // Rooted prefix of the expansion of the given total length (>= 1).
  Word prefix(std::size_t len) const;

  bool operator==(const EventuallyPeriodicPoint&) const = default;

 private:
  Word stem_;
  Word period_;
};

// Canonical form of an eventually periodic digit tail pre . period^omega.
struct PlainTail {
  std::vector<int> pre;
  std::vector<int> period;  // nonempty, primitive; pre absorbs no copy

  static PlainTail make(std::vector<int> pre, std::vector<int> period);
  int letter_at(std::size_t i) const;
  bool operator==(const PlainTail&) const = default;
};

}  // namespace cantor
