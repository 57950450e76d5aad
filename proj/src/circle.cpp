#include "cantor/circle.hpp"

#include <algorithm>

namespace cantor {

namespace {

// all letters of t at index >= j equal to x?
bool constant_from(const PlainTail& t, std::size_t j, int x) {
  for (std::size_t i = j; i < t.pre.size(); ++i)
    if (t.pre[i] != x) return false;
  for (int c : t.period)
    if (c != x) return false;
  return true;
}

// {t1, t2} = {P c 0^w, P (c-1) (n-1)^w} for the common prefix P?
bool plain_partners(const PlainTail& t1, const PlainTail& t2, int n) {
  std::size_t bound = t1.pre.size() + t2.pre.size() +
                      t1.period.size() * t2.period.size() + 2;
  std::size_t j = 0;
  while (j < bound && t1.letter_at(j) == t2.letter_at(j)) ++j;
  if (j == bound) return false;  // equal tails never glue
  int c1 = t1.letter_at(j), c2 = t2.letter_at(j);
  if (c2 == c1 + 1)
    return constant_from(t2, j + 1, 0) && constant_from(t1, j + 1, n - 1);
  if (c1 == c2 + 1)
    return constant_from(t1, j + 1, 0) && constant_from(t2, j + 1, n - 1);
  return false;
}

PlainTail tail_from_state(const AnchoredHomeo& h, int q, int first,
                          int repeated) {
  int out0 = h.core().out(q, first);
  TailImage ti =
      tail_image(h.core(), h.core().next(q, first), Word::plain({repeated}));
  std::vector<int> pre{out0};
  pre.insert(pre.end(), ti.image.pre.begin(), ti.image.pre.end());
  return PlainTail::make(std::move(pre), ti.image.period);
}

// shortest address of each core state, starting from the cells
std::vector<Word> state_addresses(const AnchoredHomeo& h) {
  std::vector<Word> addr(h.core().num_states());
  std::vector<bool> have(h.core().num_states(), false);
  std::vector<int> queue;
  for (const AnchoredCell& c : h.cells())
    if (!have[c.q]) {
      have[c.q] = true;
      addr[c.q] = c.u;
      queue.push_back(c.q);
    }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int q = queue[i];
    for (int a = 0; a < h.params().n; ++a) {
      int nx = h.core().next(q, a);
      if (!have[nx]) {
        have[nx] = true;
        addr[nx] = addr[q].append_letter(a);
        queue.push_back(nx);
      }
    }
  }
  return addr;
}

}  // namespace

SimeqVerdict simeq_compatible(const AnchoredHomeo& h) {
  const AlphabetParams& p = h.params();
  std::string why;
  if (!h.is_bijective(&why)) fail("NotInvertible", why);

  // adjacent cell boundaries (including the wraparound)
  std::size_t l = h.cells().size();
  for (std::size_t i = 0; i < l; ++i) {
    EventuallyPeriodicPoint x1 = EventuallyPeriodicPoint::make(
        h.cells()[i].u, Word::plain({p.n - 1}), p);
    EventuallyPeriodicPoint x2 = EventuallyPeriodicPoint::make(
        h.cells()[(i + 1) % l].u, Word::plain({0}), p);
    if (!simeq_equal(h.evaluate(x1), h.evaluate(x2), p))
      return {false, std::make_pair(x1, x2)};
  }

  // digit boundaries inside a cell, per settled core state
  for (int q = 0; q < h.core().num_states(); ++q)
    for (int a = 1; a < p.n; ++a) {
      PlainTail t1 = tail_from_state(h, q, a - 1, p.n - 1);
      PlainTail t2 = tail_from_state(h, q, a, 0);
      if (!plain_partners(t1, t2, p.n)) {
        Word nu = state_addresses(h)[q];
        EventuallyPeriodicPoint x1 = EventuallyPeriodicPoint::make(
            nu.append_letter(a - 1), Word::plain({p.n - 1}), p);
        EventuallyPeriodicPoint x2 = EventuallyPeriodicPoint::make(
            nu.append_letter(a), Word::plain({0}), p);
        return {false, std::make_pair(x1, x2)};
      }
    }
  return {true, std::nullopt};
}

Orientation orientation_of(const AnchoredHomeo& h) {
  SimeqVerdict sv = simeq_compatible(h);
  if (!sv.compatible)
    fail("NotCircleMap", "element does not descend to the circle");
  const AlphabetParams& p = h.params();

  std::vector<Rational> vals;
  auto add = [&](const Rational& v) {
    if (std::find(vals.begin(), vals.end(), v) == vals.end())
      vals.push_back(v);
  };
  add(0);
  for (const AnchoredCell& c : h.cells()) {
    if (vals.size() >= 3) break;
    add(point_value(
        EventuallyPeriodicPoint::make(c.u, Word::plain({0}), p), p));
  }
  for (BigInt den = p.n; vals.size() < 3; den *= p.n)
    for (BigInt num = 1; num < den * p.r && vals.size() < 3; ++num)
      add(Rational(num, den));
  std::sort(vals.begin(), vals.end());

  std::vector<Rational> img;
  for (const Rational& v : vals)
    img.push_back(point_value(h.evaluate(value_to_point(v, p)), p));
  bool up = (img[0] < img[1] && img[1] < img[2]) ||
            (img[1] < img[2] && img[2] < img[0]) ||
            (img[2] < img[0] && img[0] < img[1]);
  return up ? Orientation::Preserving : Orientation::Reversing;
}

}  // namespace cantor
