#include "cantor/nadic.hpp"

#include <map>
#include <vector>

namespace cantor {

Rational point_value(const EventuallyPeriodicPoint& p, const AlphabetParams& ap) {
  check_params(ap);
  const Word& stem = p.stem();
  const Word& per = p.period();
  Rational v = stem.dot();
  Rational scale = Rational(1, ap.n);
  for (std::size_t i = 0; i < stem.digit_count(); ++i) {
    v += scale * stem.digit(i);
    scale /= ap.n;
  }
  // geometric series for the periodic tail
  Rational tail = 0;
  Rational s2 = Rational(1, ap.n);
  for (std::size_t i = 0; i < per.size(); ++i) {
    tail += s2 * per.letter(i);
    s2 /= ap.n;
  }
  BigInt npow = 1;
  for (std::size_t i = 0; i < per.size(); ++i) npow *= ap.n;
  tail = tail * Rational(npow) / Rational(npow - 1);
  // scale currently equals n^-(k+1) for k stem digits
  v += scale * ap.n * tail;
  // the supremum expansion d(r-1).(n-1)^omega wraps around to 0
  if (v >= ap.r) v -= ap.r;
  return v;
}

EventuallyPeriodicPoint value_to_point(const Rational& x, const AlphabetParams& ap) {
  check_params(ap);
  if (x < 0 || x >= ap.r) fail("BadValue", "value outside [0, r)");
  BigInt dot_big = numerator(x) / denominator(x);
  int dot = int(dot_big);
  Rational frac = x - dot;
  std::vector<int> digits;
  std::map<Rational, std::size_t> seen;
  Rational state = frac;
  for (;;) {
    auto it = seen.find(state);
    if (it != seen.end()) {
      std::vector<int> stem_digits(digits.begin(), digits.begin() + it->second);
      std::vector<int> period(digits.begin() + it->second, digits.end());
      return EventuallyPeriodicPoint::make(Word::rooted(dot, std::move(stem_digits)),
                                           Word::plain(std::move(period)), ap);
    }
    seen.emplace(state, digits.size());
    state *= ap.n;
    BigInt d = numerator(state) / denominator(state);
    digits.push_back(int(d));
    state -= int(d);
  }
}

bool is_nadic(const Rational& x, int n) {
  BigInt den = denominator(x);
  while (den % n == 0) den /= n;
  return den == 1;
}

namespace {

// n-adic points in canonical form have a single-letter period 0 or n-1.
enum class Side { NotNAdic, Lower, Upper };

Side nadic_side(const EventuallyPeriodicPoint& p, const AlphabetParams& ap) {
  if (p.period().size() != 1) return Side::NotNAdic;
  int c = p.period().letter(0);
  if (c == 0) return Side::Upper;
  if (c == ap.n - 1) return Side::Lower;
  return Side::NotNAdic;
}

}  // namespace

std::optional<EventuallyPeriodicPoint> partner_point(
    const EventuallyPeriodicPoint& p, const AlphabetParams& ap) {
  check_params(ap);
  Side side = nadic_side(p, ap);
  if (side == Side::NotNAdic) return std::nullopt;
  const Word& stem = p.stem();
  if (side == Side::Upper) {
    // nu.a.0^w  ->  nu.(a-1).(n-1)^w ; wraparound at d_i.0^w
    if (stem.digit_count() == 0) {
      int dot = stem.dot();
      int pdot = dot == 0 ? ap.r - 1 : dot - 1;
      return EventuallyPeriodicPoint::make(Word::rooted(pdot),
                                           Word::plain({ap.n - 1}), ap);
    }
    Word ns = stem.without_last().append_letter(stem.back() - 1);
    return EventuallyPeriodicPoint::make(ns, Word::plain({ap.n - 1}), ap);
  }
  // Lower: nu.a.(n-1)^w -> nu.(a+1).0^w ; wraparound at d_i.(n-1)^w
  if (stem.digit_count() == 0) {
    int dot = stem.dot();
    int pdot = dot == ap.r - 1 ? 0 : dot + 1;
    return EventuallyPeriodicPoint::make(Word::rooted(pdot), Word::plain({0}), ap);
  }
  Word ns = stem.without_last().append_letter(stem.back() + 1);
  return EventuallyPeriodicPoint::make(ns, Word::plain({0}), ap);
}

bool simeq_equal(const EventuallyPeriodicPoint& a,
                 const EventuallyPeriodicPoint& b, const AlphabetParams& ap) {
  if (a == b) return true;
  auto pa = partner_point(a, ap);
  return pa && *pa == b;
}

}  // namespace cantor
