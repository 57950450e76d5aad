#include "cantor/prefix_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cantor {

namespace {

bool cell_less(const PrefixMap::Cell& a, const PrefixMap::Cell& b) {
  return lex_less(a.u, b.u);
}

// Is the finite word w a prefix of the expansion of x?
bool word_prefixes_point(const Word& w, const EventuallyPeriodicPoint& x) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.letter(i) != x.letter_at(i)) return false;
  return true;
}

// Is the circle/Cantor point x inside the union of the given cones?
bool point_in_cones(const EventuallyPeriodicPoint& x,
                    const std::vector<Word>& cones) {
  for (const Word& c : cones)
    if (word_prefixes_point(c, x)) return true;
  return false;
}

std::vector<PrefixMap::Cell> reduce_cells(std::vector<PrefixMap::Cell> cells,
                                          const AlphabetParams& p) {
  std::sort(cells.begin(), cells.end(), cell_less);
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i + p.n <= cells.size(); ++i) {
      if (cells[i].u.digit_count() == 0) continue;
      if (cells[i].u.back() != 0 || cells[i].v.size() < 2) continue;
      Word pu = cells[i].u.without_last();
      Word pv = cells[i].v.without_last();
      bool family = true;
      for (int a = 0; a < p.n && family; ++a) {
        const PrefixMap::Cell& c = cells[i + a];
        if (c.u != pu.append_letter(a) || c.v != pv.append_letter(a))
          family = false;
      }
      if (family) {
        cells.erase(cells.begin() + i + 1, cells.begin() + i + p.n);
        cells[i] = {pu, pv};
        again = true;
        break;
      }
    }
  }
  return cells;
}

}  // namespace

PrefixMap PrefixMap::from_cells(std::vector<Cell> cells, const AlphabetParams& p) {
  check_params(p);
  std::vector<Word> dom, rng;
  for (const Cell& c : cells) {
    dom.push_back(c.u);
    rng.push_back(c.v);
  }
  CompleteAntichain d = CompleteAntichain::validate(dom, p);
  CompleteAntichain r = CompleteAntichain::validate(rng, p);
  if (d.size() != cells.size() || r.size() != cells.size())
    fail("NotBijective", "repeated cone in prefix map");
  if (d.words()[0].kind() != WordKind::Rooted)
    fail("KindMismatch", "prefix map cones must be rooted");
  return PrefixMap(p, reduce_cells(std::move(cells), p));
}

PrefixMap PrefixMap::from_antichains(const CompleteAntichain& dom,
                                     const CompleteAntichain& rng,
                                     const std::vector<int>& perm) {
  if (!(dom.params() == rng.params()))
    fail("ParamsMismatch", "prefix map antichains");
  if (dom.size() != rng.size() || perm.size() != dom.size())
    fail("NotBijective", "antichain size mismatch");
  std::vector<Cell> cells;
  for (std::size_t a = 0; a < dom.size(); ++a)
    cells.push_back({dom.word(a), rng.word(perm[a])});
  return from_cells(std::move(cells), dom.params());
}

PrefixMap PrefixMap::identity(const AlphabetParams& p) {
  std::vector<Cell> cells;
  for (int i = 0; i < p.r; ++i)
    cells.push_back({Word::rooted(i), Word::rooted(i)});
  return from_cells(std::move(cells), p);
}

CompleteAntichain PrefixMap::domain() const {
  std::vector<Word> ws;
  for (const Cell& c : cells_) ws.push_back(c.u);
  return CompleteAntichain::validate(std::move(ws), params_);
}

CompleteAntichain PrefixMap::range() const {
  std::vector<Word> ws;
  for (const Cell& c : cells_) ws.push_back(c.v);
  return CompleteAntichain::validate(std::move(ws), params_);
}

std::vector<int> PrefixMap::perm() const {
  std::vector<Word> rng;
  for (const Cell& c : cells_) rng.push_back(c.v);
  std::vector<Word> sorted = rng;
  std::sort(sorted.begin(), sorted.end(),
            [](const Word& a, const Word& b) { return lex_less(a, b); });
  std::vector<int> perm;
  for (const Word& v : rng)
    perm.push_back(int(std::lower_bound(sorted.begin(), sorted.end(), v,
                                        [](const Word& a, const Word& b) {
                                          return lex_less(a, b);
                                        }) -
                       sorted.begin()));
  return perm;
}

bool PrefixMap::is_identity() const {
  for (const Cell& c : cells_)
    if (c.u != c.v) return false;
  return true;
}

Word PrefixMap::apply(const Word& w) const {
  for (const Cell& c : cells_) {
    PrefixRel rel = compare_words(c.u, w).prefix;
    if (rel == PrefixRel::Equal || rel == PrefixRel::PrefixOf)
      return c.v.append(word_subtract(w, c.u));
  }
  fail("WordTooShortForCell", "word does not reach a domain cell");
}

EventuallyPeriodicPoint PrefixMap::apply(const EventuallyPeriodicPoint& x) const {
  for (const Cell& c : cells_) {
    if (!word_prefixes_point(c.u, x)) continue;
    std::size_t stem_len = x.stem().size();
    std::size_t m = x.period().size();
    if (c.u.size() <= stem_len) {
      std::vector<int> digits;
      for (std::size_t i = c.u.size(); i < stem_len; ++i)
        digits.push_back(x.letter_at(i));
      return EventuallyPeriodicPoint::make(
          c.v.append(Word::plain(std::move(digits))), x.period(), params_);
    }
    // cell reaches into the periodic part: rotate the period
    std::size_t off = (c.u.size() - stem_len) % m;
    std::vector<int> per;
    for (std::size_t i = 0; i < m; ++i)
      per.push_back(x.period().letter((off + i) % m));
    return EventuallyPeriodicPoint::make(c.v, Word::plain(std::move(per)),
                                         params_);
  }
  fail("Internal", "point escaped the domain antichain");
}

PrefixMap canonicalize(const PrefixMap& g) {
  return PrefixMap::from_cells(g.cells(), g.params());
}

PrefixMap compose(const PrefixMap& g, const PrefixMap& h) {
  if (!(g.params() == h.params())) fail("ParamsMismatch", "compose");
  CompleteAntichain mid = antichain_refine(g.range(), h.domain());
  std::vector<PrefixMap::Cell> cells;
  for (const Word& w : mid.words()) {
    // preimage of w under g
    Word u;
    bool found = false;
    for (const auto& c : g.cells()) {
      if (is_prefix(c.v, w)) {
        u = c.u.append(word_subtract(w, c.v));
        found = true;
        break;
      }
    }
    if (!found) fail("Internal", "refinement missed a g-cell");
    cells.push_back({u, h.apply(w)});
  }
  return PrefixMap::from_cells(std::move(cells), g.params());
}

PrefixMap inverse(const PrefixMap& g) {
  std::vector<PrefixMap::Cell> cells;
  for (const auto& c : g.cells()) cells.push_back({c.v, c.u});
  return PrefixMap::from_cells(std::move(cells), g.params());
}

TorderResult is_torder(const PrefixMap& g) {
  std::vector<int> perm = g.perm();
  int l = int(perm.size());
  int b = perm[0];
  for (int a = 0; a < l; ++a)
    if (perm[a] != (a + b) % l) return {false, 0};
  return {true, b};
}

PrefixMap cone_swap(const Word& a, const Word& b, const AlphabetParams& p) {
  if (compare_words(a, b).prefix != PrefixRel::Incomparable)
    fail("BadCones", "cone swap needs incomparable cones");
  CompleteAntichain comp = completion({a, b}, p);
  std::vector<PrefixMap::Cell> cells;
  for (const Word& leaf : comp.words()) {
    if (leaf == a)
      cells.push_back({a, b});
    else if (leaf == b)
      cells.push_back({b, a});
    else
      cells.push_back({leaf, leaf});
  }
  return PrefixMap::from_cells(std::move(cells), p);
}

SmallSupportFactors small_support_decompose(const PrefixMap& g) {
  if (g.is_identity()) fail("IsIdentity", "identity has no decomposition");
  const AlphabetParams& p = g.params();

  // Find a cone E with E and (E)g disjoint, E u (E)g proper.
  Word w1, w2;
  bool found = false;
  for (const auto& c : g.cells()) {
    if (c.u == c.v) continue;
    PrefixRel rel = compare_words(c.u, c.v).prefix;
    if (rel == PrefixRel::Incomparable) {
      w1 = c.u.append_letter(0);
      w2 = c.v.append_letter(0);
    } else {
      // one is a prefix of the other; step off the overlap direction
      const Word& longer = rel == PrefixRel::PrefixOf ? c.v : c.u;
      const Word& shorter = rel == PrefixRel::PrefixOf ? c.u : c.v;
      Word sigma = word_subtract(longer, shorter);
      int cdir = sigma.letter(0) == 0 ? 1 : 0;
      w1 = c.u.append_letter(cdir);
      w2 = c.v.append_letter(cdir);
    }
    found = true;
    break;
  }
  if (!found) fail("Internal", "non-identity map with no moved cell");

  PrefixMap h = cone_swap(w1, w2, p);
  PrefixMap s1 = compose(g, h);
  // h is an involution, so s2 = h^-1 = h
  Word fix2;
  CompleteAntichain comp = completion({w1, w2}, p);
  bool have_fix2 = false;
  for (const Word& leaf : comp.words())
    if (leaf != w1 && leaf != w2) {
      fix2 = leaf;
      have_fix2 = true;
      break;
    }
  if (!have_fix2) fail("Internal", "swap cones cover the whole space");
  return SmallSupportFactors{std::move(s1), h, w1, fix2};
}

namespace {

void validate_cone_set(const std::vector<Word>& cones, const AlphabetParams& p,
                       const char* what) {
  if (cones.empty()) fail("EmptyTarget", std::string(what) + " is empty");
  for (const Word& c : cones) {
    c.check_valid(p);
    if (!c.is_rooted()) fail("KindMismatch", "cone words must be rooted");
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j)
      if (compare_words(cones[i], cones[j]).prefix != PrefixRel::Incomparable)
        fail("BadCones", std::string(what) + " is not an antichain");
}

bool leaf_inside(const Word& leaf, const std::vector<Word>& cones) {
  for (const Word& c : cones)
    if (is_prefix(c, leaf)) return true;
  return false;
}

bool cone_set_proper(const std::vector<Word>& cones, const AlphabetParams& p) {
  CompleteAntichain comp = completion(cones, p);
  for (const Word& leaf : comp.words())
    if (!leaf_inside(leaf, cones)) return true;
  return false;
}

bool cone_set_subset(const std::vector<Word>& a, const std::vector<Word>& b,
                     const AlphabetParams& p) {
  for (const Word& c : a)
    if (!cones_cover(c, b, p)) return false;
  return true;
}

}  // namespace

PrefixMap flexibility_witness(const std::vector<Word>& e1,
                              const std::vector<Word>& e2,
                              const AlphabetParams& p) {
  check_params(p);
  validate_cone_set(e2, p, "E2");
  validate_cone_set(e1, p, "E1");
  if (!cone_set_proper(e1, p)) fail("E1NotProper", "E1 covers the space");
  if (cone_set_subset(e1, e2, p)) return PrefixMap::identity(p);

  // Target: the lex-least cone of E2 (one level down if it is everything).
  std::vector<Word> e2s = e2;
  std::sort(e2s.begin(), e2s.end(),
            [](const Word& a, const Word& b) { return lex_less(a, b); });
  Word t = e2s[0];
  if (p.r == 1 && t.digit_count() == 0) t = t.append_letter(0);

  CompleteAntichain comp = completion(e1, p);
  std::vector<Word> inside, outside;
  for (const Word& leaf : comp.words())
    (leaf_inside(leaf, e1) ? inside : outside).push_back(leaf);

  // Lexicographically first descendants of t at a depth that fits them all.
  std::size_t k = inside.size();
  int depth = 0;
  std::size_t cap = 1;
  while (cap < k + 1) {
    cap *= p.n;
    ++depth;
  }
  std::vector<Word> r_in;
  for (std::size_t idx = 0; idx < k; ++idx) {
    Word w = t;
    std::size_t rest = idx;
    std::vector<int> digs(depth, 0);
    for (int i = depth - 1; i >= 0; --i) {
      digs[i] = int(rest % p.n);
      rest /= p.n;
    }
    for (int d : digs) w = w.append_letter(d);
    r_in.push_back(w);
  }
  std::vector<Word> c_out;
  CompleteAntichain r_comp = completion(r_in, p);
  for (const Word& leaf : r_comp.words())
    if (std::find(r_in.begin(), r_in.end(), leaf) == r_in.end())
      c_out.push_back(leaf);

  // Leaf expansion changes counts by n-1, and both deficits agree mod n-1.
  while (c_out.size() < outside.size()) expand_leaf(c_out, 0, p);
  while (outside.size() < c_out.size()) expand_leaf(outside, 0, p);

  std::vector<PrefixMap::Cell> cells;
  for (std::size_t i = 0; i < inside.size(); ++i)
    cells.push_back({inside[i], r_in[i]});
  for (std::size_t i = 0; i < outside.size(); ++i)
    cells.push_back({outside[i], c_out[i]});
  PrefixMap g = PrefixMap::from_cells(std::move(cells), p);

  // post-check: every domain cone inside E1 lands inside E2
  CompleteAntichain chk = antichain_refine(g.domain(), completion(e1, p));
  for (const Word& w : chk.words())
    if (leaf_inside(w, e1) && !cones_cover(g.apply(w), e2, p))
      fail("Internal", "flexibility post-check failed");
  return g;
}

PrefixMap rubin_witness(const EventuallyPeriodicPoint& x,
                        const std::vector<Word>& u_cones,
                        const std::vector<Word>& v_cones,
                        const AlphabetParams& p) {
  check_params(p);
  validate_cone_set(u_cones, p, "U");
  validate_cone_set(v_cones, p, "V");
  if (!cone_set_subset(v_cones, u_cones, p))
    fail("VNotInsideU", "V is not contained in U");
  if (!point_in_cones(x, u_cones)) fail("PointOutsideU", "x is not in U");
  if (point_in_cones(x, v_cones)) return PrefixMap::identity(p);

  std::vector<Word> vs = v_cones;
  std::sort(vs.begin(), vs.end(),
            [](const Word& a, const Word& b) { return lex_less(a, b); });
  const Word& wv = vs[0];

  // Cone around x inside U, deep enough to clear wv.
  std::size_t depth = wv.size() + 1;
  for (const Word& c : u_cones)
    if (word_prefixes_point(c, x)) depth = std::max(depth, c.size() + 1);
  Word wx = x.prefix(depth);
  return cone_swap(wx, wv, p);
}

namespace {

int lex_vs_tail(const Word& cone, const Word& prefix, const Word& period) {
  // strict lex comparison of the cone word against prefix.period^omega;
  // the cone is never a prefix of that infinite word here
  for (std::size_t i = 0; i < cone.size(); ++i) {
    int tail_letter = i < prefix.size()
                          ? prefix.letter(i)
                          : period.letter((i - prefix.size()) % period.size());
    if (cone.letter(i) != tail_letter)
      return cone.letter(i) < tail_letter ? -1 : 1;
  }
  fail("Internal", "cone lies on the shift path");
}

}  // namespace

PrefixMap shift_block(const Word& prefix, const Word& period, int m, int s,
                      const AlphabetParams& p) {
  check_params(p);
  if (!prefix.is_rooted()) fail("KindMismatch", "shift prefix must be rooted");
  if (period.is_rooted() || period.empty())
    fail("BadWord", "shift period must be a nonempty plain word");
  if (m == 0) return PrefixMap::identity(p);
  if (s < std::abs(m) + 2) fail("BadParams", "shift depth too small");

  auto pw = [&](int reps) {
    Word w = prefix;
    for (int i = 0; i < reps; ++i) w = w.append(period);
    return w;
  };
  // cones of one period block complementary to the period path
  std::vector<Word> comp_cones;
  for (std::size_t t = 0; t < period.size(); ++t)
    for (int c = 0; c < p.n; ++c) {
      if (c == period.letter(t)) continue;
      Word w;  // plain
      for (std::size_t i = 0; i < t; ++i) w = w.append_letter(period.letter(i));
      comp_cones.push_back(w.append_letter(c));
    }

  int dom_layers = m > 0 ? 1 : 1 - m;
  int rng_layers = m > 0 ? 1 + m : 1;
  Word dom_special = pw(m > 0 ? s : s - m);
  Word rng_special = pw(m > 0 ? s + m : s);

  auto layer_cones = [&](int layers) {
    std::vector<Word> out;
    for (int t = 0; t < layers; ++t)
      for (const Word& u : comp_cones) out.push_back(pw(s - 1 + t).append(u));
    return out;
  };
  std::vector<Word> dom_rest = layer_cones(dom_layers);
  std::vector<Word> rng_rest = layer_cones(rng_layers);

  auto split = [&](const std::vector<Word>& cones) {
    std::pair<std::vector<Word>, std::vector<Word>> lr;
    for (const Word& c : cones)
      (lex_vs_tail(c, prefix, period) < 0 ? lr.first : lr.second).push_back(c);
    auto bylex = [](const Word& a, const Word& b) { return lex_less(a, b); };
    std::sort(lr.first.begin(), lr.first.end(), bylex);
    std::sort(lr.second.begin(), lr.second.end(), bylex);
    return lr;
  };
  auto [dl, dr] = split(dom_rest);
  auto [rl, rr] = split(rng_rest);

  auto equalize = [&](std::vector<Word>& a, std::vector<Word>& b) {
    if ((a.size() > b.size() ? a.size() - b.size() : b.size() - a.size()) %
        (p.n - 1))
      fail("NotRealizable", "shift block sides incongruent mod n-1");
    while (a.size() < b.size()) expand_leaf(a, 0, p);
    while (b.size() < a.size()) expand_leaf(b, 0, p);
  };
  equalize(dl, rl);
  equalize(dr, rr);

  std::vector<PrefixMap::Cell> cells;
  cells.push_back({dom_special, rng_special});
  for (std::size_t i = 0; i < dl.size(); ++i) cells.push_back({dl[i], rl[i]});
  for (std::size_t i = 0; i < dr.size(); ++i) cells.push_back({dr[i], rr[i]});
  // identity outside the block
  Word root = pw(s - 1);
  CompleteAntichain around = completion({root}, p);
  for (const Word& leaf : around.words())
    if (leaf != root) cells.push_back({leaf, leaf});
  return PrefixMap::from_cells(std::move(cells), p);
}

PrefixMap realize_germ(const EventuallyPeriodicPoint& x, int d_offset,
                       int e_offset, const std::optional<Word>& avoid,
                       const AlphabetParams& p) {
  check_params(p);
  auto partner = partner_point(x, p);
  if (!partner) fail("NotNAdic", "germ realization needs an n-adic point");
  const EventuallyPeriodicPoint& upper =
      x.period().letter(0) == 0 ? x : *partner;
  const EventuallyPeriodicPoint& lower =
      x.period().letter(0) == 0 ? *partner : x;

  if (avoid) {
    avoid->check_valid(p);
    if (word_prefixes_point(*avoid, upper) || word_prefixes_point(*avoid, lower))
      fail("AvoidContainsX", "avoid cone contains the fixed point");
  }

  // depth: both side blocks pairwise incomparable and clear of avoid
  int s = std::max(std::abs(d_offset), std::abs(e_offset)) + 2;
  auto block_root = [&](const EventuallyPeriodicPoint& pt, int depth) {
    return pt.prefix(pt.stem().size() + depth);
  };
  for (;; ++s) {
    Word up_root = block_root(upper, s - 1);
    Word lo_root = block_root(lower, s - 1);
    if (compare_words(up_root, lo_root).prefix != PrefixRel::Incomparable)
      continue;
    if (avoid && (compare_words(up_root, *avoid).prefix != PrefixRel::Incomparable ||
                  compare_words(lo_root, *avoid).prefix != PrefixRel::Incomparable))
      continue;
    break;
  }

  PrefixMap f = PrefixMap::identity(p);
  if (e_offset != 0)
    f = compose(f, shift_block(upper.stem(), Word::plain({0}), e_offset, s, p));
  if (d_offset != 0)
    f = compose(f, shift_block(lower.stem(), Word::plain({p.n - 1}), d_offset,
                               s, p));
  return f;
}

PrefixMap transitive_witness(const std::vector<Rational>& xs,
                             const std::vector<Rational>& ys,
                             const AlphabetParams& p) {
  check_params(p);
  if (xs.empty() || xs.size() != ys.size())
    fail("BadParams", "point lists must be nonempty and of equal length");
  for (const Rational& q : xs)
    if (q < 0 || q >= p.r || !is_nadic(q, p.n))
      fail("NotNAdic", "source point is not an n-adic in [0, r)");
  for (const Rational& q : ys)
    if (q < 0 || q >= p.r || !is_nadic(q, p.n))
      fail("NotNAdic", "target point is not an n-adic in [0, r)");

  auto circular_ok = [](const std::vector<Rational>& v) {
    int descents = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Rational& a = v[i];
      const Rational& b = v[(i + 1) % v.size()];
      if (a == b && v.size() > 1) return false;
      if (b < a) ++descents;
    }
    return v.size() <= 1 || descents == 1;
  };
  if (!circular_ok(xs) || !circular_ok(ys))
    fail("NotCircularlyOrdered", "points must be in strict circular order");

  std::size_t k = xs.size();

  auto depth_of = [&](const std::vector<Rational>& v) {
    int d = 0;
    for (const Rational& q : v) {
      BigInt den = denominator(q);
      int c = 0;
      while (den > 1) {
        den /= p.n;
        ++c;
      }
      d = std::max(d, c);
    }
    return d;
  };

  auto leaves_at = [&](int depth) {
    std::vector<Word> out;
    for (int i = 0; i < p.r; ++i) {
      std::vector<std::vector<int>> digs{{}};
      for (int d = 0; d < depth; ++d) {
        std::vector<std::vector<int>> nxt;
        for (const auto& w : digs)
          for (int a = 0; a < p.n; ++a) {
            auto e = w;
            e.push_back(a);
            nxt.push_back(e);
          }
        digs = std::move(nxt);
      }
      for (auto& w : digs) out.push_back(Word::rooted(i, std::move(w)));
    }
    return out;
  };

  int dx = depth_of(xs), dy = depth_of(ys);
  BigInt lx = p.r, ly = p.r;
  for (int i = 0; i < dx; ++i) lx *= p.n;
  for (int i = 0; i < dy; ++i) ly *= p.n;
  if (lx > (1 << 22) || ly > (1 << 22))
    fail("DepthTooLarge", "point denominators too large");

  auto pos_of = [&](const Rational& q, int depth) {
    Rational scaled = q;
    for (int i = 0; i < depth; ++i) scaled *= p.n;
    return std::size_t(numerator(scaled));
  };

  // circular leaf lists starting at the first point
  auto circ_list = [&](const std::vector<Word>& leaves, std::size_t start) {
    std::vector<Word> out(leaves.begin() + start, leaves.end());
    out.insert(out.end(), leaves.begin(), leaves.begin() + start);
    return out;
  };
  std::vector<Word> dom = circ_list(leaves_at(dx), pos_of(xs[0], dx));
  std::vector<Word> rng = circ_list(leaves_at(dy), pos_of(ys[0], dy));

  // circular arc lengths, in leaves at the uniform depth
  auto seg_sizes = [&](const std::vector<Rational>& v, int depth,
                       const BigInt& total) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < k; ++i) {
      BigInt a = pos_of(v[i], depth);
      BigInt b = pos_of(v[(i + 1) % k], depth);
      BigInt len = ((b - a) % total + total) % total;
      if (len == 0) len = total;  // single point: the whole circle
      sizes.push_back(std::size_t(len));
    }
    return sizes;
  };
  std::vector<std::size_t> L = seg_sizes(xs, dx, lx);
  std::vector<std::size_t> M = seg_sizes(ys, dy, ly);

  for (std::size_t i = 0; i < k; ++i)
    if ((L[i] > M[i] ? L[i] - M[i] : M[i] - L[i]) % (p.n - 1))
      fail("NotRealizable", "arc lengths incongruent mod n-1");

  // pad the shorter segment in place (expand the lex-least leaf inside it)
  auto pad_segment = [&](std::vector<Word>& list, std::size_t seg_start,
                         std::size_t& seg_len, std::size_t want) {
    while (seg_len < want) {
      std::size_t best = seg_start;
      for (std::size_t i = seg_start; i < seg_start + seg_len; ++i)
        if (lex_less(list[i], list[best])) best = i;
      expand_leaf(list, best, p);
      seg_len += p.n - 1;
    }
  };
  std::size_t doff = 0, roff = 0;
  std::vector<PrefixMap::Cell> cells;
  for (std::size_t i = 0; i < k; ++i) {
    pad_segment(dom, doff, L[i], M[i]);
    pad_segment(rng, roff, M[i], L[i]);
    for (std::size_t j = 0; j < L[i]; ++j)
      cells.push_back({dom[doff + j], rng[roff + j]});
    doff += L[i];
    roff += M[i];
  }
  PrefixMap g = PrefixMap::from_cells(std::move(cells), p);
  if (!is_torder(g).is_torder) fail("Internal", "witness is not a T-element");
  return g;
}

}  // namespace cantor
