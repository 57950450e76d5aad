#pragma once

#include <optional>
#include <utility>

#include "cantor/anchored.hpp"
#include "cantor/nadic.hpp"

namespace cantor {

struct SimeqVerdict {
  bool compatible;
  // a glued pair of source points whose images fail to glue
  std::optional<std::pair<EventuallyPeriodicPoint, EventuallyPeriodicPoint>>
      witness;
};

// Does h map every glued expansion pair to a glued pair?  Decided exactly
// on the finite set of boundary configurations: adjacent cell boundaries
// and, per core state, the digit-boundary tails.
SimeqVerdict simeq_compatible(const AnchoredHomeo& h);

enum class Orientation { Preserving, Reversing };

// Cyclic order of the images of three fixed n-adic circle points.
Orientation orientation_of(const AnchoredHomeo& h);

}  // namespace cantor
