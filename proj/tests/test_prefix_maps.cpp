#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cantor/io.hpp"
#include "cantor/prefix_map.hpp"
#include "test_support.hpp"

using namespace cantor;
using testsupport::Rng;

namespace {
const AlphabetParams P21{2, 1};

Word W(const std::string& s, const AlphabetParams& p = P21) {
  return parse_word(s, p);
}

PrefixMap rotation3() {
  return PrefixMap::from_cells({{W("d0:0"), W("d0:10")},
                                {W("d0:10"), W("d0:11")},
                                {W("d0:11"), W("d0:0")}},
                               P21);
}

// Evaluation oracle: do g and h agree on every rooted word of this depth?
bool agree_at_depth(const PrefixMap& g, const PrefixMap& h, std::size_t depth) {
  for (const Word& w : testsupport::rooted_words_at(depth, g.params()))
    if (g.apply(w) != h.apply(w)) return false;
  return true;
}
}  // namespace

TEST_CASE("reduction yields the unique minimal form") {
  // artificially split cells must collapse back
  PrefixMap g = PrefixMap::from_cells({{W("d0:0"), W("d0:0")},
                                       {W("d0:10"), W("d0:10")},
                                       {W("d0:11"), W("d0:11")}},
                                      P21);
  CHECK(g.size() == 1);
  CHECK(g.is_identity());
}

TEST_CASE("reduced form agrees pointwise with the raw cells") {
  Rng rng(3001);
  for (int it = 0; it < 30; ++it) {
    // build an 8-leaf map, then expand random domain cells with matching
    // image expansions to get an unreduced presentation of the same map
    PrefixMap g = testsupport::random_prefix_map(rng, P21, 7);
    std::vector<PrefixMap::Cell> cells = g.cells();
    for (int k = 0; k < 3; ++k) {
      std::size_t i = std::size_t(testsupport::pick(rng, 0, int(cells.size()) - 1));
      PrefixMap::Cell c = cells[i];
      cells.erase(cells.begin() + long(i));
      for (int a = 0; a < 2; ++a)
        cells.push_back({c.u.append_letter(a), c.v.append_letter(a)});
    }
    PrefixMap h = PrefixMap::from_cells(cells, P21);
    CHECK(g == h);
    CHECK(agree_at_depth(g, h, 12));
  }
}

TEST_CASE("composition laws") {
  Rng rng(3002);
  PrefixMap id = PrefixMap::identity(P21);
  for (int it = 0; it < 30; ++it) {
    PrefixMap g = testsupport::random_prefix_map(rng, P21, 5);
    CHECK(compose(g, inverse(g)) == id);
    CHECK(compose(inverse(g), g) == id);
    CHECK(compose(id, g) == g);
    CHECK(compose(g, id) == g);
  }
  CHECK(inverse(id) == id);
}

TEST_CASE("composition matches pointwise evaluation") {
  Rng rng(3003);
  for (const auto& p : testsupport::param_grid()) {
    for (int it = 0; it < 10; ++it) {
      PrefixMap g = testsupport::random_prefix_map(rng, p, 5);
      PrefixMap h = testsupport::random_prefix_map(rng, p, 5);
      PrefixMap gh = compose(g, h);
      for (const auto& cell : gh.cells())
        for (const Word& e : all_plain_words(2, p)) {
          Word w = cell.u.append(e);
          CHECK(gh.apply(w) == h.apply(g.apply(w)));
        }
    }
  }
}

TEST_CASE("composition is associative") {
  Rng rng(3004);
  for (int it = 0; it < 30; ++it) {
    PrefixMap a = testsupport::random_prefix_map(rng, P21, 4);
    PrefixMap b = testsupport::random_prefix_map(rng, P21, 4);
    PrefixMap c = testsupport::random_prefix_map(rng, P21, 4);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("T-membership") {
  CHECK(is_torder(PrefixMap::identity(P21)).is_torder);
  CHECK(is_torder(PrefixMap::identity(P21)).offset == 0);
  TorderResult r = is_torder(rotation3());
  CHECK(r.is_torder);
  CHECK(r.offset == 1);
  // a transposition of two incomparable cones is not order-rotating
  CHECK(!is_torder(cone_swap(W("d0:01"), W("d0:10"), P21)).is_torder);
}

TEST_CASE("T-elements are closed under composition and inverse") {
  Rng rng(3005);
  for (int it = 0; it < 40; ++it) {
    const AlphabetParams& p =
        testsupport::param_grid()[it % testsupport::param_grid().size()];
    PrefixMap g = testsupport::random_torder(rng, p, 4);
    PrefixMap h = testsupport::random_torder(rng, p, 4);
    CHECK(is_torder(compose(g, h)).is_torder);
    CHECK(is_torder(inverse(g)).is_torder);
  }
}

TEST_CASE("small support decomposition") {
  CHECK_THROWS_WITH_AS(small_support_decompose(PrefixMap::identity(P21)),
                       doctest::Contains("IsIdentity"), Error);
  Rng rng(3006);
  std::vector<PrefixMap> samples{rotation3(),
                                 cone_swap(W("d0:01"), W("d0:10"), P21)};
  for (int it = 0; it < 20; ++it)
    samples.push_back(testsupport::random_prefix_map(rng, P21, 5));
  for (const PrefixMap& g : samples) {
    if (g.is_identity()) continue;
    SmallSupportFactors f = small_support_decompose(g);
    CHECK(compose(f.s1, f.s2) == g);
    // each factor fixes its named cone pointwise
    for (const Word& w : testsupport::rooted_words_at(12, P21)) {
      if (is_prefix(f.fix1, w)) CHECK(f.s1.apply(w) == w);
      if (is_prefix(f.fix2, w)) CHECK(f.s2.apply(w) == w);
    }
  }
}

TEST_CASE("flexibility witness") {
  CHECK_THROWS_WITH_AS(flexibility_witness({W("d0:1")}, {}, P21),
                       doctest::Contains("EmptyTarget"), Error);
  // E1 inside E2: identity is acceptable
  PrefixMap id_ok = flexibility_witness({W("d0:10")}, {W("d0:1")}, P21);
  CHECK(id_ok.is_identity());

  auto check_witness = [](const PrefixMap& g, const std::vector<Word>& e1,
                          const std::vector<Word>& e2,
                          const AlphabetParams& p) {
    std::size_t depth = g.domain().max_digit_depth() + 2;
    for (const Word& w : testsupport::rooted_words_at(depth, p)) {
      bool in_e1 = false;
      for (const Word& c : e1)
        if (is_prefix(c, w)) in_e1 = true;
      if (in_e1) CHECK(cones_cover(g.apply(w), e2, p));
    }
  };
  PrefixMap g = flexibility_witness({W("d0:1")}, {W("d0:01")}, P21);
  check_witness(g, {W("d0:1")}, {W("d0:01")}, P21);

  Rng rng(3007);
  for (int it = 0; it < 25; ++it) {
    const AlphabetParams& p =
        testsupport::param_grid()[it % testsupport::param_grid().size()];
    auto a1 = testsupport::random_antichain(rng, p, 2);
    auto a2 = testsupport::random_antichain(rng, p, 2);
    // drop a leaf from each so neither covers the space
    a1.erase(a1.begin() + testsupport::pick(rng, 0, int(a1.size()) - 1));
    std::vector<Word> e2{a2[std::size_t(testsupport::pick(rng, 0, int(a2.size()) - 1))]};
    PrefixMap w = flexibility_witness(a1, e2, p);
    check_witness(w, a1, e2, p);
  }
}

TEST_CASE("rubin witness") {
  auto x = EventuallyPeriodicPoint::make(W("d0"), Word::plain({0}), P21);
  CHECK_THROWS_WITH_AS(
      rubin_witness(x, {W("d0:0")}, {W("d0:10")}, P21),
      doctest::Contains("VNotInsideU"), Error);

  PrefixMap h = rubin_witness(x, {W("d0:0")}, {W("d0:01")}, P21);
  CHECK(cones_cover(h.apply(x).prefix(4), {W("d0:01")}, P21));
  // supported inside U: identity outside
  for (const Word& w : testsupport::rooted_words_at(10, P21))
    if (!is_prefix(W("d0:0"), w)) CHECK(h.apply(w) == w);

  // x already in V: identity permitted
  PrefixMap h2 = rubin_witness(x, {W("d0:0")}, {W("d0:0")}, P21);
  CHECK(cones_cover(h2.apply(x).prefix(3), {W("d0:0")}, P21));
}

TEST_CASE("rubin witness on random instances") {
  Rng rng(3008);
  for (int it = 0; it < 25; ++it) {
    const AlphabetParams& p =
        testsupport::param_grid()[it % testsupport::param_grid().size()];
    auto u = testsupport::random_antichain(rng, p, 1);
    std::size_t ui = std::size_t(testsupport::pick(rng, 0, int(u.size()) - 1));
    std::vector<Word> U{u[ui]};
    // V: a proper descendant cone of U
    std::vector<Word> V{U[0].append_letter(testsupport::pick(rng, 0, p.n - 1))
                            .append_letter(testsupport::pick(rng, 0, p.n - 1))};
    auto x = EventuallyPeriodicPoint::make(
        U[0].append_letter(testsupport::pick(rng, 0, p.n - 1)),
        Word::plain({testsupport::pick(rng, 0, p.n - 1)}), p);
    PrefixMap h = rubin_witness(x, U, V, p);
    std::size_t depth =
        std::max(h.domain().max_digit_depth(), V[0].digit_count()) + 2;
    CHECK(cones_cover(h.apply(x).prefix(1 + depth), V, p));
    for (const Word& w : testsupport::rooted_words_at(depth, p))
      if (!cones_cover(w, U, p)) CHECK(h.apply(w) == w);
  }
}

TEST_CASE("transitive witness moves 1/2 to 1/4") {
  PrefixMap g = transitive_witness({Rational(1, 2)}, {Rational(1, 4)}, P21);
  CHECK(is_torder(g).is_torder);
  // both expansions of 1/2 land on expansions of 1/4
  auto upper = value_to_point(Rational(1, 2), P21);
  auto lower = *partner_point(upper, P21);
  CHECK(point_value(g.apply(upper), P21) == Rational(1, 4));
  CHECK(point_value(g.apply(lower), P21) == Rational(1, 4));
}

TEST_CASE("transitive witness handles rotations and identity") {
  PrefixMap id = transitive_witness({Rational(1, 2)}, {Rational(1, 2)}, P21);
  CHECK(id.apply(value_to_point(Rational(1, 2), P21)) ==
        value_to_point(Rational(1, 2), P21));

  PrefixMap g = transitive_witness({Rational(1, 4), Rational(1, 2)},
                                   {Rational(1, 2), Rational(1, 4)}, P21);
  CHECK(is_torder(g).is_torder);
  CHECK(point_value(g.apply(value_to_point(Rational(1, 4), P21)), P21) ==
        Rational(1, 2));
  CHECK(point_value(g.apply(value_to_point(Rational(1, 2), P21)), P21) ==
        Rational(1, 4));

  CHECK_THROWS_WITH_AS(
      transitive_witness({Rational(0), Rational(1, 4), Rational(1, 2)},
                         {Rational(0), Rational(1, 2), Rational(1, 4)}, P21),
      doctest::Contains("NotCircularlyOrdered"), Error);
}

TEST_CASE("transitive witness on random tuples") {
  Rng rng(3009);
  for (int it = 0; it < 20; ++it) {
    const AlphabetParams& p = (it % 2 == 0) ? P21 : AlphabetParams{2, 2};
    int k = testsupport::pick(rng, 1, 3);
    auto draw = [&] {
      std::set<Rational> s;
      while (int(s.size()) < k) {
        int d = testsupport::pick(rng, 0, 4);
        int den = 1 << d;
        s.insert(Rational(testsupport::pick(rng, 0, p.r * den - 1), den));
      }
      return std::vector<Rational>(s.begin(), s.end());
    };
    auto xs = draw();
    auto ys = draw();
    PrefixMap g = transitive_witness(xs, ys, p);
    CHECK(is_torder(g).is_torder);
    for (int i = 0; i < k; ++i)
      CHECK(point_value(g.apply(value_to_point(xs[std::size_t(i)], p)), p) ==
            ys[std::size_t(i)]);
  }
}

TEST_CASE("germ realization blocks") {
  auto zero = EventuallyPeriodicPoint::make(W("d0"), Word::plain({0}), P21);
  PrefixMap f0 = realize_germ(zero, 0, 0, std::nullopt, P21);
  CHECK(f0.is_identity());
  // shift block moves U_{d0.0^s} to U_{d0.0^(s+m)} order-preservingly
  PrefixMap sb = shift_block(W("d0"), Word::plain({0}), 1, 3, P21);
  for (const Word& w : testsupport::rooted_words_at(10, P21)) {
    if (is_prefix(W("d0:000"), w))
      CHECK(sb.apply(w) == W("d0:0").append(word_subtract(w, W("d0"))));
    if (!is_prefix(W("d0:00"), w)) CHECK(sb.apply(w) == w);
  }
}
