#include "cantor/germ.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace cantor {

namespace {

// stabilized |output| - |input| along the expansion of pt
int side_offset(const AnchoredHomeo& h, const EventuallyPeriodicPoint& pt,
                int extra_depth) {
  std::size_t len =
      std::max(pt.stem().size() + 1, h.max_cell_depth() + 1) + extra_depth;
  Word in1 = pt.prefix(len);
  Word in2 = pt.prefix(len + 1);
  int off1 = int(h.settle(in1).out.size()) - int(in1.size());
  int off2 = int(h.settle(in2).out.size()) - int(in2.size());
  if (off1 != off2) fail("Internal", "germ offset failed to stabilize");
  return off1;
}

}  // namespace

Germ germ_at(const AnchoredHomeo& h, const EventuallyPeriodicPoint& x,
             int extra_depth) {
  const AlphabetParams& p = h.params();
  SimeqVerdict sv = simeq_compatible(h);
  if (!sv.compatible)
    fail("NotOrientationPreserving", "element does not descend to the circle");
  if (orientation_of(h) != Orientation::Preserving)
    fail("NotOrientationPreserving", "element reverses the circle order");
  if (!simeq_equal(h.evaluate(x), x, p))
    fail("DoesNotFixPoint", "element moves the base point");

  auto partner = partner_point(x, p);
  if (partner) {
    const EventuallyPeriodicPoint& upper =
        x.period().letter(0) == 0 ? x : *partner;
    const EventuallyPeriodicPoint& lower =
        x.period().letter(0) == 0 ? *partner : x;
    int e = side_offset(h, upper, extra_depth);
    int d = side_offset(h, lower, extra_depth);
    return Germ{GermKind::NAdic, h.core(), d, e};
  }
  int d = side_offset(h, x, extra_depth);
  return Germ{GermKind::Rational, h.core(), d, 0};
}

Germ germ_compose(const Germ& a, const Germ& b) {
  if (a.kind != b.kind) fail("VariantMismatch", "germ kinds differ");
  if (a.core.n() != b.core.n()) fail("ParamsMismatch", "germ core arity");
  Mealy prod = product(a.core, b.core);
  CoreResult cr = core_extract(prod);
  Mealy core = core_canonical(cr.core).machine;
  if (a.kind == GermKind::NAdic)
    return Germ{GermKind::NAdic, core, a.d + b.d, a.e + b.e};
  return Germ{GermKind::Rational, core, a.d + b.d, 0};
}

bool core_fixes_tail(const Mealy& t, const Word& w) {
  if (w.empty() || w.is_rooted()) fail("BadWord", "tail must be a plain word");
  std::map<int, int> seen;
  int q = 0, steps = 0;
  while (!seen.count(q)) {
    seen[q] = steps++;
    q = run_state(t, q, w);
  }
  int m = steps - seen[q];
  Word wm;
  for (int i = 0; i < m; ++i) wm = wm.append(w);
  return run_output(t, q, wm) == wm;
}

std::string core_digest(const Mealy& core) {
  if (core.num_states() == 1 && core.output_row_identity(0)) return "trivial";
  std::string table = std::to_string(core.n()) + ";";
  for (int q = 0; q < core.num_states(); ++q)
    for (int a = 0; a < core.n(); ++a)
      table += std::to_string(core.out(q, a)) + "," +
               std::to_string(core.next(q, a)) + ";";
  // FNV-1a, fixed so the digest is stable across platforms
  unsigned long long hash = 14695981039346656037ull;
  for (unsigned char c : table) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", hash);
  return buf;
}

std::string render_germ(const Germ& g) {
  std::string core = core_digest(g.core);
  if (g.kind == GermKind::NAdic)
    return "NADIC core=" + core + " d=" + std::to_string(g.d) +
           " e=" + std::to_string(g.e);
  return "RATIONAL core=" + core + " d=" + std::to_string(g.d);
}

}  // namespace cantor
