#include "cantor/words.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace cantor {

using boost::multiprecision::cpp_int;

void check_params(const AlphabetParams& p) {
  if (p.n < 2) fail("BadParams", "arity n must be at least 2");
  if (p.r < 1) fail("BadParams", "root count r must be at least 1");
}

Word Word::plain(std::vector<int> digits) {
  Word w;
  w.kind_ = WordKind::Plain;
  w.letters_ = std::move(digits);
  return w;
}

Word Word::rooted(int dot, std::vector<int> digits) {
  Word w;
  w.kind_ = WordKind::Rooted;
  w.letters_.reserve(digits.size() + 1);
  w.letters_.push_back(dot);
  w.letters_.insert(w.letters_.end(), digits.begin(), digits.end());
  return w;
}

int Word::dot() const {
  if (!is_rooted()) fail("KindMismatch", "plain word has no dot letter");
  return letters_[0];
}

Word Word::append(const Word& plain_suffix) const {
  if (plain_suffix.is_rooted())
    fail("KindMismatch", "can only append a plain word");
  Word w = *this;
  w.letters_.insert(w.letters_.end(), plain_suffix.letters_.begin(),
                    plain_suffix.letters_.end());
  return w;
}

Word Word::append_letter(int digit) const {
  Word w = *this;
  w.letters_.push_back(digit);
  return w;
}

Word Word::prefix(std::size_t len) const {
  Word w;
  w.kind_ = kind_;
  w.letters_.assign(letters_.begin(), letters_.begin() + len);
  return w;
}

Word Word::without_last() const {
  Word w = *this;
  w.letters_.pop_back();
  return w;
}

void Word::check_valid(const AlphabetParams& p) const {
  if (is_rooted()) {
    if (letters_.empty()) fail("BadWord", "rooted word must be nonempty");
    if (letters_[0] < 0 || letters_[0] >= p.r)
      fail("BadWord", "dot letter out of range");
  }
  for (std::size_t i = is_rooted() ? 1 : 0; i < letters_.size(); ++i)
    if (letters_[i] < 0 || letters_[i] >= p.n)
      fail("BadWord", "digit out of range");
}

WordOrder compare_words(const Word& a, const Word& b) {
  if (a.kind() != b.kind())
    fail("KindMismatch", "cannot compare plain and rooted words");
  std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (a.letter(i) != b.letter(i)) {
      int lex = a.letter(i) < b.letter(i) ? -1 : 1;
      return {PrefixRel::Incomparable, lex};
    }
  }
  if (a.size() == b.size()) return {PrefixRel::Equal, 0};
  if (a.size() < b.size()) return {PrefixRel::PrefixOf, -1};
  return {PrefixRel::ExtensionOf, 1};
}

bool lex_less(const Word& a, const Word& b) {
  return compare_words(a, b).lex < 0;
}

bool is_prefix(const Word& nu, const Word& eta) {
  PrefixRel rel = compare_words(nu, eta).prefix;
  return rel == PrefixRel::PrefixOf || rel == PrefixRel::Equal;
}

Word word_subtract(const Word& eta, const Word& nu) {
  if (!is_prefix(nu, eta))
    fail("NotAPrefix", "word subtraction requires a prefix");
  std::vector<int> tail;
  for (std::size_t i = nu.size(); i < eta.size(); ++i)
    tail.push_back(eta.letter(i));
  return Word::plain(std::move(tail));
}

CompleteAntichain CompleteAntichain::validate(std::vector<Word> words,
                                              const AlphabetParams& p) {
  check_params(p);
  if (words.empty()) fail("Incomplete", "empty antichain");
  WordKind kind = words[0].kind();
  for (const Word& w : words) {
    if (w.kind() != kind) fail("KindMismatch", "mixed word kinds");
    w.check_valid(p);
    if (w.is_rooted() && w.empty()) fail("BadWord", "empty rooted word");
  }
  std::sort(words.begin(), words.end(),
            [](const Word& a, const Word& b) { return lex_less(a, b); });
  std::size_t maxlen = 0;
  for (const Word& w : words) maxlen = std::max(maxlen, w.digit_count());
  // In lex order a prefix pair must be adjacent.
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    PrefixRel rel = compare_words(words[i], words[i + 1]).prefix;
    if (rel != PrefixRel::Incomparable)
      fail("NotAntichain", "comparable pair in antichain");
  }
  // Kraft equality in exact integer arithmetic scaled by n^maxlen.
  cpp_int scale = 1;
  for (std::size_t i = 0; i < maxlen; ++i) scale *= p.n;
  cpp_int sum = 0;
  for (const Word& w : words) {
    cpp_int term = scale;
    for (std::size_t i = 0; i < w.digit_count(); ++i) term /= p.n;
    sum += term;
  }
  cpp_int target = kind == WordKind::Rooted ? scale * p.r : scale;
  if (sum != target) fail("Incomplete", "Kraft sum does not match");
  return CompleteAntichain(p, std::move(words));
}

CompleteAntichain CompleteAntichain::root(const AlphabetParams& p) {
  check_params(p);
  std::vector<Word> ws;
  for (int i = 0; i < p.r; ++i) ws.push_back(Word::rooted(i));
  return CompleteAntichain(p, std::move(ws));
}

std::size_t CompleteAntichain::max_digit_depth() const {
  std::size_t d = 0;
  for (const Word& w : words_) d = std::max(d, w.digit_count());
  return d;
}

std::size_t CompleteAntichain::leaf_containing(const Word& w) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    PrefixRel rel = compare_words(words_[i], w).prefix;
    if (rel == PrefixRel::Equal || rel == PrefixRel::PrefixOf) return i;
  }
  fail("WordTooShortForCell", "word is a strict prefix of every leaf");
}

CompleteAntichain antichain_refine(const CompleteAntichain& a,
                                   const CompleteAntichain& b) {
  if (!(a.params() == b.params())) fail("ParamsMismatch", "antichain refine");
  std::vector<Word> all = a.words();
  all.insert(all.end(), b.words().begin(), b.words().end());
  std::sort(all.begin(), all.end(),
            [](const Word& x, const Word& y) { return lex_less(x, y); });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  // Keep the maxima under extension; a proper prefix is lex-adjacent to
  // at least one of its extensions after sorting.
  std::vector<Word> keep;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool is_proper_prefix =
        i + 1 < all.size() &&
        compare_words(all[i], all[i + 1]).prefix == PrefixRel::PrefixOf;
    if (!is_proper_prefix) keep.push_back(all[i]);
  }
  return CompleteAntichain::validate(std::move(keep), a.params());
}

namespace {

void completion_rec(const Word& w, const std::vector<Word>& cones,
                    const AlphabetParams& p, std::vector<Word>& out) {
  bool inside_or_disjoint = true;
  for (const Word& c : cones) {
    PrefixRel rel = compare_words(c, w).prefix;
    if (rel == PrefixRel::Equal || rel == PrefixRel::PrefixOf) {
      out.push_back(w);
      return;
    }
    if (rel == PrefixRel::ExtensionOf) inside_or_disjoint = false;
  }
  if (inside_or_disjoint) {
    out.push_back(w);
    return;
  }
  for (int a = 0; a < p.n; ++a) completion_rec(w.append_letter(a), cones, p, out);
}

}  // namespace

CompleteAntichain completion(const std::vector<Word>& cones,
                             const AlphabetParams& p) {
  std::vector<Word> out;
  for (int i = 0; i < p.r; ++i) completion_rec(Word::rooted(i), cones, p, out);
  return CompleteAntichain::validate(std::move(out), p);
}

void expand_leaf(std::vector<Word>& words, std::size_t i,
                 const AlphabetParams& p) {
  Word base = words[i];
  std::vector<Word> children;
  for (int a = 0; a < p.n; ++a) children.push_back(base.append_letter(a));
  words.erase(words.begin() + i);
  words.insert(words.begin() + i, children.begin(), children.end());
}

bool cones_cover(const Word& w, const std::vector<Word>& cones,
                 const AlphabetParams& p) {
  // U_w is covered iff no leaf of the completion below w lies outside.
  CompleteAntichain comp = completion(cones, p);
  for (const Word& leaf : comp.words()) {
    PrefixRel rel = compare_words(leaf, w).prefix;
    if (rel == PrefixRel::Incomparable) continue;
    // leaf meets U_w; it must itself be inside one of the cones
    bool inside = false;
    for (const Word& c : cones)
      if (is_prefix(c, leaf)) inside = true;
    if (!inside) {
      // part of U_w below leaf (or all of it) is uncovered
      if (rel == PrefixRel::PrefixOf || rel == PrefixRel::Equal ||
          rel == PrefixRel::ExtensionOf)
        return false;
    }
  }
  return true;
}

namespace {

std::vector<int> primitive_root(const std::vector<int>& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (w.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i)
      if (w[i] != w[i - p]) ok = false;
    if (ok) return std::vector<int>(w.begin(), w.begin() + p);
  }
  return w;
}

}  // namespace

EventuallyPeriodicPoint EventuallyPeriodicPoint::make(Word stem, Word period,
                                                      const AlphabetParams& p) {
  check_params(p);
  if (!stem.is_rooted()) fail("BadWord", "point stem must be rooted");
  if (period.is_rooted() || period.empty())
    fail("BadWord", "point period must be a nonempty plain word");
  stem.check_valid(p);
  period.check_valid(p);
  std::vector<int> per;
  for (std::size_t i = 0; i < period.size(); ++i) per.push_back(period.letter(i));
  per = primitive_root(per);
  // Absorb rotation-aligned copies of the period into the period itself.
  while (stem.digit_count() > 0 && stem.back() == per.back()) {
    stem = stem.without_last();
    std::rotate(per.begin(), per.end() - 1, per.end());
  }
  EventuallyPeriodicPoint pt;
  pt.stem_ = std::move(stem);
  pt.period_ = Word::plain(std::move(per));
  return pt;
}

int EventuallyPeriodicPoint::letter_at(std::size_t i) const {
  if (i < stem_.size()) return stem_.letter(i);
  return period_.letter((i - stem_.size()) % period_.size());
}

Word EventuallyPeriodicPoint::prefix(std::size_t len) const {
  std::vector<int> digits;
  for (std::size_t i = 1; i < len; ++i) digits.push_back(letter_at(i));
  return Word::rooted(stem_.dot(), std::move(digits));
}

PlainTail PlainTail::make(std::vector<int> pre, std::vector<int> period) {
  if (period.empty()) fail("BadWord", "tail period must be nonempty");
  period = primitive_root(period);
  while (!pre.empty() && pre.back() == period.back()) {
    pre.pop_back();
    std::rotate(period.begin(), period.end() - 1, period.end());
  }
  return PlainTail{std::move(pre), std::move(period)};
}

int PlainTail::letter_at(std::size_t i) const {
  if (i < pre.size()) return pre[i];
  return period[(i - pre.size()) % period.size()];
}

std::vector<Word> all_plain_words(std::size_t len, const AlphabetParams& p) {
  std::vector<Word> out{Word()};
  for (std::size_t d = 0; d < len; ++d) {
    std::vector<Word> next;
    next.reserve(out.size() * p.n);
    for (const Word& w : out)
      for (int a = 0; a < p.n; ++a) next.push_back(w.append_letter(a));
    out = std::move(next);
  }
  return out;
}

}  // namespace cantor
