#pragma once

#include <string>

#include "cantor/anchored.hpp"
#include "cantor/circle.hpp"

namespace cantor {

enum class GermKind { NAdic, Rational };

// Germ of an orientation-preserving circle element at a fixed point:
// the minimal core plus stabilized address-length offsets.
struct Germ {
  GermKind kind;
  Mealy core;  // canonical labeling, no start state
  int d = 0;   // (n-1)-side offset; the only offset in the Rational case
  int e = 0;   // 0-side offset (NAdic case only)

  bool operator==(const Germ&) const = default;
};

// extra_depth adds a margin above the certified measurement depth.
Germ germ_at(const AnchoredHomeo& h, const EventuallyPeriodicPoint& x,
             int extra_depth = 0);

Germ germ_compose(const Germ& a, const Germ& b);

// lambda(w^m, q) = w^m on the w-cycle of t.
bool core_fixes_tail(const Mealy& t, const Word& w);

// "trivial" for the one-state identity core, else a stable digest of the
// canonical edge table.
std::string core_digest(const Mealy& core);
std::string render_germ(const Germ& g);

}  // namespace cantor
