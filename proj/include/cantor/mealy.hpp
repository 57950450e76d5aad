#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantor/words.hpp"

namespace cantor {

// A synchronous (letter-to-letter) transducer over X_n.  The start state is
// optional; non-initial machines (cores) leave it unset.
class Mealy {
 public:
  Mealy(int n, int num_states, std::optional<int> start = std::nullopt);

  static Mealy identity(int n);  // ID1
  // Single-state machine applying the given letter permutation.
  static Mealy letter_map(int n, std::vector<int> out_row);

  int n() const { return n_; }
  int num_states() const { return num_states_; }
  std::optional<int> start() const { return start_; }
  void set_start(std::optional<int> q) { start_ = q; }

  void set_edge(int q, int a, int out, int next);
  bool has_edge(int q, int a) const { return next_[idx(q, a)] >= 0; }
  int next(int q, int a) const { return next_[idx(q, a)]; }
  int out(int q, int a) const { return out_[idx(q, a)]; }

  void check_total() const;  // pi and lambda total
  bool invertible() const;   // every output row a permutation
  bool output_row_identity(int q) const;

  bool operator==(const Mealy&) const = default;

 private:
  std::size_t idx(int q, int a) const { return std::size_t(q) * n_ + a; }

  int n_;
  int num_states_;
  std::optional<int> start_;
  std::vector<int> next_;
  std::vector<int> out_;
};

int run_state(const Mealy& m, int q, const Word& w);
Word run_output(const Mealy& m, int q, const Word& w);  // plain output word

struct MinimizeResult {
  Mealy machine;
  std::vector<int> state_class;  // old state -> new state (-1 if pruned)
};

// Moore-style partition refinement seeded by output rows; when a start
// state is set, unreachable states are pruned first.
MinimizeResult minimize(const Mealy& m);

struct ProductResult {
  Mealy machine;                // minimized
  std::vector<int> pair_state;  // (p * |Q_b| + q) -> state, -1 if pruned
};

// Pair-state machine running a then b; restricted to pairs reachable from
// (start_a, start_b) when both starts are set, minimized either way.
ProductResult product_full(const Mealy& a, const Mealy& b);
Mealy product(const Mealy& a, const Mealy& b);

// Edge-reversal on outputs; requires every output row to be a permutation.
Mealy invert(const Mealy& m);

struct SyncCertificate {
  int level;              // minimal synchronization level
  std::vector<int> smap;  // indexed by base-n rank of the level-length word
  int state_for(const Mealy& m, const Word& plain_suffix) const;
};

struct NotSyncWitness {
  // Non-singleton state subsets lying on a reachable cycle of the subset
  // automaton seeded at the full state set.
  std::vector<std::vector<int>> subsets;
};

using SyncResult = std::variant<SyncCertificate, NotSyncWitness>;

// Exact decision via the deterministic subset automaton seeded at Q.
SyncResult synchronization_certificate(const Mealy& m);
SyncCertificate require_sync(const Mealy& m);  // throws NotSynchronizing

struct CoreResult {
  Mealy core;
  std::vector<int> state_map;  // old -> new, -1 for states outside the core
};

CoreResult core_extract(const Mealy& m);

struct TailImage {
  int entry;      // w-steps before the state sequence cycles
  int cycle_len;  // length m of the w-cycle: pi(w^m, q') = q'
  PlainTail image;
};

// Follows pi(w, .) from q and returns the output of reading w^omega.
TailImage tail_image(const Mealy& m, int q, const Word& w);

bool is_strongly_connected(const Mealy& m);

// Unique canonical relabeling of a minimal strongly connected machine:
// the BFS numbering (seed chosen to minimize the edge table) is an
// isomorphism invariant.
struct CanonicalMealy {
  Mealy machine;
  std::vector<int> relabel;  // old -> canonical
};

CanonicalMealy core_canonical(const Mealy& m);
bool machine_isomorphic(const Mealy& a, const Mealy& b);

// The state inducing the identity on C_n, if present.
std::optional<int> identity_state(const Mealy& m);

}  // namespace cantor
