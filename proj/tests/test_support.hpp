#pragma once

// Seeded random generators shared by the unit suites and the acceptance
// runner.  Everything is deterministic: pass your own engine.

#include <numeric>
#include <random>
#include <vector>

#include "cantor/anchored.hpp"
#include "cantor/mealy.hpp"
#include "cantor/prefix_map.hpp"
#include "cantor/words.hpp"

namespace testsupport {

using namespace cantor;

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Complete antichain with exactly r + steps*(n-1) leaves.
inline std::vector<Word> random_antichain(Rng& rng, const AlphabetParams& p,
                                          int steps) {
  std::vector<Word> ws;
  for (int i = 0; i < p.r; ++i) ws.push_back(Word::rooted(i));
  for (int s = 0; s < steps; ++s)
    expand_leaf(ws, std::size_t(pick(rng, 0, int(ws.size()) - 1)), p);
  return ws;
}

inline PrefixMap random_prefix_map(Rng& rng, const AlphabetParams& p,
                                   int max_steps) {
  int steps = pick(rng, 0, max_steps);
  std::vector<Word> dom = random_antichain(rng, p, steps);
  std::vector<Word> img = random_antichain(rng, p, steps);
  std::vector<int> perm(dom.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<PrefixMap::Cell> cells;
  for (std::size_t i = 0; i < dom.size(); ++i)
    cells.push_back({dom[i], img[perm[i]]});
  return PrefixMap::from_cells(std::move(cells), p);
}

inline PrefixMap random_torder(Rng& rng, const AlphabetParams& p,
                               int max_steps) {
  int steps = pick(rng, 0, max_steps);
  std::vector<Word> dom = random_antichain(rng, p, steps);
  std::vector<Word> img = random_antichain(rng, p, steps);
  int l = int(dom.size());
  int b = pick(rng, 0, l - 1);
  std::vector<PrefixMap::Cell> cells;
  for (int i = 0; i < l; ++i) cells.push_back({dom[i], img[(i + b) % l]});
  return PrefixMap::from_cells(std::move(cells), p);
}

inline Mealy random_invertible_machine(Rng& rng, int n, int states) {
  Mealy m(n, states);
  for (int q = 0; q < states; ++q) {
    std::vector<int> row(n);
    std::iota(row.begin(), row.end(), 0);
    std::shuffle(row.begin(), row.end(), rng);
    for (int a = 0; a < n; ++a)
      m.set_edge(q, a, row[a], pick(rng, 0, states - 1));
  }
  return m;
}

inline Mealy random_sync_invertible(Rng& rng, int n, int max_states) {
  for (;;) {
    Mealy m = random_invertible_machine(rng, n, pick(rng, 1, max_states));
    if (std::holds_alternative<SyncCertificate>(synchronization_certificate(m)))
      return m;
  }
}

// Invertible machine that is synchronizing in both directions.
inline Mealy random_bisync(Rng& rng, int n, int max_states) {
  for (;;) {
    Mealy m = random_sync_invertible(rng, n, max_states);
    if (std::holds_alternative<SyncCertificate>(
            synchronization_certificate(invert(m))))
      return m;
  }
}

// Bijective element of B_{n,r} over a random bi-synchronizing core.
inline AnchoredHomeo random_anchored(Rng& rng, const AlphabetParams& p,
                                     int max_steps, int max_states) {
  Mealy m = random_bisync(rng, p.n, max_states);
  int steps = pick(rng, 0, max_steps);
  std::vector<Word> dom = random_antichain(rng, p, steps);
  std::vector<Word> img = random_antichain(rng, p, steps);
  std::vector<int> perm(dom.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<AnchoredCell> cells;
  for (std::size_t i = 0; i < dom.size(); ++i)
    cells.push_back(
        {dom[i], img[perm[i]], pick(rng, 0, m.num_states() - 1)});
  return AnchoredHomeo::from_parts(p, m, std::move(cells));
}

inline EventuallyPeriodicPoint random_point(Rng& rng, const AlphabetParams& p,
                                            int max_len) {
  std::vector<int> stem, per;
  int sl = pick(rng, 0, max_len);
  for (int i = 0; i < sl; ++i) stem.push_back(pick(rng, 0, p.n - 1));
  int pl = pick(rng, 1, max_len);
  for (int i = 0; i < pl; ++i) per.push_back(pick(rng, 0, p.n - 1));
  return EventuallyPeriodicPoint::make(
      Word::rooted(pick(rng, 0, p.r - 1), std::move(stem)),
      Word::plain(std::move(per)), p);
}

// All rooted words of the given digit depth.
inline std::vector<Word> rooted_words_at(std::size_t depth,
                                         const AlphabetParams& p) {
  std::vector<Word> out;
  for (int i = 0; i < p.r; ++i)
    for (const Word& w : all_plain_words(depth, p))
      out.push_back(Word::rooted(i).append(w));
  return out;
}

inline const std::vector<AlphabetParams>& param_grid() {
  static const std::vector<AlphabetParams> grid{
      {2, 1}, {2, 2}, {3, 1}, {3, 2}};
  return grid;
}

}  // namespace testsupport
