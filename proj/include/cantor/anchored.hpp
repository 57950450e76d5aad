#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cantor/mealy.hpp"
#include "cantor/prefix_map.hpp"
#include "cantor/words.hpp"

namespace cantor {

struct AnchoredCell {
  Word u;  // domain cone
  Word v;  // output word
  int q;   // core state acting on the tail
  bool operator==(const AnchoredCell&) const = default;
};

// An element of B_{n,r} in canonical form: a complete antichain of cells
// over a minimal, strongly connected, synchronizing, invertible core.
// Each cell sends u.rho to v.lambda(rho, q).
class AnchoredHomeo {
 public:
  // Canonicalizes: minimizes the machine, pushes cells to settled core
  // states, extracts the core, collapses sibling cell families, and
  // relabels the core canonically.
  static AnchoredHomeo from_parts(const AlphabetParams& p, const Mealy& machine,
                                  std::vector<AnchoredCell> cells);
  static AnchoredHomeo from_prefix_map(const PrefixMap& g);
  static AnchoredHomeo identity(const AlphabetParams& p);

  const AlphabetParams& params() const { return params_; }
  const Mealy& core() const { return core_; }
  const std::vector<AnchoredCell>& cells() const { return cells_; }

  struct WordImage {
    Word out;       // determined output prefix
    bool complete;  // false when the input is shallower than its cells
  };
  WordImage evaluate(const Word& w) const;
  EventuallyPeriodicPoint evaluate(const EventuallyPeriodicPoint& x) const;

  // Output word and settled core state at a word at least cell-deep.
  struct Settled {
    Word out;
    int state;
  };
  Settled settle(const Word& w) const;

  std::size_t max_cell_depth() const;

  // True iff the image words form a complete antichain (the point map is
  // then a bijection); on failure names an offending word pair.
  bool is_bijective(std::string* why = nullptr) const;

  bool operator==(const AnchoredHomeo&) const = default;

 private:
  AnchoredHomeo(AlphabetParams p, Mealy core, std::vector<AnchoredCell> cells)
      : params_(p), core_(std::move(core)), cells_(std::move(cells)) {}

  AlphabetParams params_;
  Mealy core_;
  std::vector<AnchoredCell> cells_;
};

// An initial transducer as input format: dot edges from the start state
// (outputs rooted words), digit edges elsewhere (outputs plain words,
// possibly empty or longer than one letter).
struct RawInitial {
  AlphabetParams params;
  int num_states = 0;
  int start = 0;
  std::vector<Word> dot_out;  // indexed by dot letter
  std::vector<int> dot_next;
  std::vector<Word> dig_out;  // indexed q * n + a; start-state slots unused
  std::vector<int> dig_next;

  void check_valid() const;
  // Concatenated output of reading a rooted word from the start state.
  Word run(const Word& w) const;

  bool operator==(const RawInitial&) const = default;
};

// Decides synchronization of the digit part, checks the core is letter-to-
// letter and invertible, and tabulates cells at the certified level.
AnchoredHomeo from_raw(const RawInitial& t);

AnchoredHomeo compose(const AnchoredHomeo& g, const AnchoredHomeo& h);
AnchoredHomeo inverse(const AnchoredHomeo& h);  // throws NotBijective
// h^-1 g h.
AnchoredHomeo conjugate(const AnchoredHomeo& g, const AnchoredHomeo& h);

bool canonical_equal(const AnchoredHomeo& a, const AnchoredHomeo& b);

// PrefixMap when the core is the one-state identity, else the core.
std::variant<PrefixMap, Mealy> trivial_core_extract(const AnchoredHomeo& h);

struct SmallSupportVerdict {
  bool small;
  std::optional<Word> cone;  // a cone fixed pointwise, when small
};

SmallSupportVerdict is_small_support(const AnchoredHomeo& h);

}  // namespace cantor
