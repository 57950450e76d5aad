#pragma once

#include <optional>
#include <vector>

#include "cantor/nadic.hpp"
#include "cantor/words.hpp"

namespace cantor {

// An element of G_{n,r}: a prefix replacement map, stored as its unique
// reduced cell list sorted by domain word.
class PrefixMap {
 public:
  struct Cell {
    Word u;  // domain cone
    Word v;  // image cone
    bool operator==(const Cell&) const = default;
  };

  // Validates (both columns complete antichains of equal size) and reduces.
  static PrefixMap from_cells(std::vector<Cell> cells, const AlphabetParams& p);
  static PrefixMap from_antichains(const CompleteAntichain& dom,
                                   const CompleteAntichain& rng,
                                   const std::vector<int>& perm);
  static PrefixMap identity(const AlphabetParams& p);

  const AlphabetParams& params() const { return params_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  CompleteAntichain domain() const;
  CompleteAntichain range() const;
  // perm[a] = lex index in the range of the image of domain leaf a.
  std::vector<int> perm() const;

  bool is_identity() const;

  // Image of a rooted word at least as deep as its domain cell.
  Word apply(const Word& w) const;
  EventuallyPeriodicPoint apply(const EventuallyPeriodicPoint& x) const;

  bool operator==(const PrefixMap&) const = default;  // canonical equality

 private:
  PrefixMap(AlphabetParams p, std::vector<Cell> cells)
      : params_(p), cells_(std::move(cells)) {}

  AlphabetParams params_;
  std::vector<Cell> cells_;
};

// canonicalize is from_cells on the existing cells; exposed for tests.
PrefixMap canonicalize(const PrefixMap& g);

PrefixMap compose(const PrefixMap& g, const PrefixMap& h);  // g then h
PrefixMap inverse(const PrefixMap& g);

struct TorderResult {
  bool is_torder;
  int offset;  // rotation b when is_torder
};

TorderResult is_torder(const PrefixMap& g);

// Swaps the cones U_a and U_b (a, b incomparable), identity elsewhere.
PrefixMap cone_swap(const Word& a, const Word& b, const AlphabetParams& p);

struct SmallSupportFactors {
  PrefixMap s1, s2;  // s1 . s2 = g
  Word fix1, fix2;   // cones fixed pointwise by s1 resp. s2
};

SmallSupportFactors small_support_decompose(const PrefixMap& g);

// g with (E1)g contained in the union of the E2 cones.
PrefixMap flexibility_witness(const std::vector<Word>& e1,
                              const std::vector<Word>& e2,
                              const AlphabetParams& p);

// h supported inside U with (x)h in V.
PrefixMap rubin_witness(const EventuallyPeriodicPoint& x,
                        const std::vector<Word>& u_cones,
                        const std::vector<Word>& v_cones,
                        const AlphabetParams& p);

// T-element mapping the circularly ordered n-adic points xs onto ys.
PrefixMap transitive_witness(const std::vector<Rational>& xs,
                             const std::vector<Rational>& ys,
                             const AlphabetParams& p);

// T-element fixing the n-adic point x with germ offsets d_offset on the
// (n-1)-side and e_offset on the 0-side, identity on the avoid cone.
PrefixMap realize_germ(const EventuallyPeriodicPoint& x, int d_offset,
                       int e_offset, const std::optional<Word>& avoid,
                       const AlphabetParams& p);

// One-sided building block of realize_germ: supported in U_{p.w^(s-1)},
// maps U_{p.w^s} onto U_{p.w^(s+m)} order-preservingly.  Exposed for the
// germ tests at rational points.
PrefixMap shift_block(const Word& prefix, const Word& period, int m, int s,
                      const AlphabetParams& p);

}  // namespace cantor
