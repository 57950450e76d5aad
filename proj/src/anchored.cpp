#include "cantor/anchored.hpp"

#include <algorithm>
#include <string>

namespace cantor {

namespace {

bool cell_less(const AnchoredCell& a, const AnchoredCell& b) {
  return lex_less(a.u, b.u);
}

bool word_prefixes_point(const Word& w, const EventuallyPeriodicPoint& x) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.letter(i) != x.letter_at(i)) return false;
  return true;
}

CompleteAntichain cell_domain(const std::vector<AnchoredCell>& cells,
                              const AlphabetParams& p) {
  std::vector<Word> us;
  for (const AnchoredCell& c : cells) us.push_back(c.u);
  return CompleteAntichain::validate(std::move(us), p);
}

// Collapse digit-sibling families {(u.a, v.lambda(q,a), pi(q,a))} to (u,v,q).
void collapse_cells(std::vector<AnchoredCell>& cells, const Mealy& core,
                    const AlphabetParams& p) {
  std::sort(cells.begin(), cells.end(), cell_less);
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i + p.n <= cells.size(); ++i) {
      const AnchoredCell& c0 = cells[i];
      if (c0.u.digit_count() == 0 || c0.u.back() != 0) continue;
      if (c0.v.digit_count() == 0) continue;
      Word pu = c0.u.without_last();
      Word pv = c0.v.without_last();
      bool family = true;
      for (int a = 0; a < p.n && family; ++a) {
        const AnchoredCell& c = cells[i + a];
        if (c.u != pu.append_letter(a) || c.v.digit_count() == 0 ||
            c.v.without_last() != pv)
          family = false;
      }
      if (!family) continue;
      int parent_state = -1;
      for (int q = 0; q < core.num_states() && parent_state < 0; ++q) {
        bool ok = true;
        for (int a = 0; a < p.n && ok; ++a)
          ok = core.next(q, a) == cells[i + a].q &&
               core.out(q, a) == cells[i + a].v.back();
        if (ok) parent_state = q;
      }
      if (parent_state < 0) continue;
      cells.erase(cells.begin() + i + 1, cells.begin() + i + p.n);
      cells[i] = {pu, pv, parent_state};
      again = true;
      break;
    }
  }
}

}  // namespace

AnchoredHomeo AnchoredHomeo::from_parts(const AlphabetParams& p,
                                        const Mealy& machine,
                                        std::vector<AnchoredCell> cells) {
  check_params(p);
  if (machine.n() != p.n) fail("ParamsMismatch", "machine arity");
  machine.check_total();
  cell_domain(cells, p);  // validates the domain antichain
  for (const AnchoredCell& c : cells) {
    c.v.check_valid(p);
    if (!c.v.is_rooted()) fail("KindMismatch", "cell outputs must be rooted");
    if (c.q < 0 || c.q >= machine.num_states())
      fail("BadState", "cell state out of range");
  }

  Mealy m = machine;
  m.set_start(std::nullopt);
  MinimizeResult mr = minimize(m);
  SyncCertificate cert = require_sync(mr.machine);
  CoreResult cr = core_extract(mr.machine);
  if (!cr.core.invertible())
    fail("CoreNotInvertible", "core output rows are not all permutations");

  // push every cell down to the synchronization level: states settle in
  // the core there
  std::vector<AnchoredCell> refined;
  std::vector<Word> level_words = all_plain_words(std::size_t(cert.level), p);
  for (const AnchoredCell& c : cells) {
    int q = mr.state_class[c.q];
    for (const Word& w : level_words) {
      int q2 = cr.state_map[run_state(mr.machine, q, w)];
      refined.push_back(
          {c.u.append(w), c.v.append(run_output(mr.machine, q, w)), q2});
    }
  }

  collapse_cells(refined, cr.core, p);

  CanonicalMealy cm = core_canonical(cr.core);
  for (AnchoredCell& c : refined) c.q = cm.relabel[c.q];
  std::sort(refined.begin(), refined.end(), cell_less);
  return AnchoredHomeo(p, cm.machine, std::move(refined));
}

AnchoredHomeo AnchoredHomeo::from_prefix_map(const PrefixMap& g) {
  std::vector<AnchoredCell> cells;
  for (const auto& c : g.cells()) cells.push_back({c.u, c.v, 0});
  return from_parts(g.params(), Mealy::identity(g.params().n),
                    std::move(cells));
}

AnchoredHomeo AnchoredHomeo::identity(const AlphabetParams& p) {
  return from_prefix_map(PrefixMap::identity(p));
}

AnchoredHomeo::WordImage AnchoredHomeo::evaluate(const Word& w) const {
  w.check_valid(params_);
  if (!w.is_rooted()) fail("KindMismatch", "evaluation input must be rooted");
  for (const AnchoredCell& c : cells_)
    if (is_prefix(c.u, w))
      return {c.v.append(run_output(core_, c.q, word_subtract(w, c.u))), true};
  // shallower than its cells: the determined output is the longest common
  // prefix of the matching cells' output words
  std::optional<Word> lcp;
  for (const AnchoredCell& c : cells_) {
    if (!is_prefix(w, c.u)) continue;
    if (!lcp) {
      lcp = c.v;
      continue;
    }
    if (lcp->is_rooted() && (!c.v.is_rooted() || lcp->dot() != c.v.dot())) {
      lcp = Word();
      continue;
    }
    std::size_t k = 0;
    while (k < lcp->size() && k < c.v.size() &&
           lcp->letter(k) == c.v.letter(k))
      ++k;
    lcp = lcp->prefix(k);
  }
  if (!lcp) fail("Internal", "word escaped the cell antichain");
  return {*lcp, false};
}

EventuallyPeriodicPoint AnchoredHomeo::evaluate(
    const EventuallyPeriodicPoint& x) const {
  for (const AnchoredCell& c : cells_) {
    if (!word_prefixes_point(c.u, x)) continue;
    std::size_t stem_len = x.stem().size();
    std::size_t m = x.period().size();
    std::vector<int> pre;
    std::vector<int> per;
    if (c.u.size() <= stem_len) {
      for (std::size_t i = c.u.size(); i < stem_len; ++i)
        pre.push_back(x.letter_at(i));
      for (std::size_t i = 0; i < m; ++i) per.push_back(x.period().letter(i));
    } else {
      std::size_t off = (c.u.size() - stem_len) % m;
      for (std::size_t i = 0; i < m; ++i)
        per.push_back(x.period().letter((off + i) % m));
    }
    Word out1 = run_output(core_, c.q, Word::plain(pre));
    int q2 = run_state(core_, c.q, Word::plain(pre));
    TailImage ti = tail_image(core_, q2, Word::plain(per));
    return EventuallyPeriodicPoint::make(
        c.v.append(out1).append(Word::plain(ti.image.pre)),
        Word::plain(ti.image.period), params_);
  }
  fail("Internal", "point escaped the cell antichain");
}

AnchoredHomeo::Settled AnchoredHomeo::settle(const Word& w) const {
  for (const AnchoredCell& c : cells_)
    if (is_prefix(c.u, w)) {
      Word rest = word_subtract(w, c.u);
      return {c.v.append(run_output(core_, c.q, rest)),
              run_state(core_, c.q, rest)};
    }
  fail("WordTooShortForCell", "word does not reach a cell");
}

std::size_t AnchoredHomeo::max_cell_depth() const {
  std::size_t d = 0;
  for (const AnchoredCell& c : cells_) d = std::max(d, c.u.size());
  return d;
}

bool AnchoredHomeo::is_bijective(std::string* why) const {
  std::vector<Word> vs;
  for (const AnchoredCell& c : cells_) vs.push_back(c.v);
  try {
    CompleteAntichain::validate(std::move(vs), params_);
    return true;
  } catch (const Error& e) {
    if (why) *why = e.what();
    return false;
  }
}

void RawInitial::check_valid() const {
  check_params(params);
  if (num_states < 1) fail("BadMachine", "no states");
  if (start < 0 || start >= num_states) fail("BadMachine", "bad start state");
  if (int(dot_out.size()) != params.r || int(dot_next.size()) != params.r)
    fail("BadMachine", "dot edges must cover every dot letter");
  if (int(dig_out.size()) != num_states * params.n ||
      int(dig_next.size()) != num_states * params.n)
    fail("BadMachine", "digit edge tables have wrong size");
  for (int i = 0; i < params.r; ++i) {
    if (!dot_out[i].empty()) {
      dot_out[i].check_valid(params);
      if (!dot_out[i].is_rooted())
        fail("BadMachine", "dot edge output must be rooted or empty");
    }
    if (dot_next[i] < 0 || dot_next[i] >= num_states || dot_next[i] == start)
      fail("BadMachine", "dot edge must enter a non-initial state");
  }
  for (int q = 0; q < num_states; ++q) {
    if (q == start) continue;
    for (int a = 0; a < params.n; ++a) {
      const Word& o = dig_out[std::size_t(q) * params.n + a];
      int nx = dig_next[std::size_t(q) * params.n + a];
      if (o.is_rooted()) fail("BadMachine", "digit edge output must be plain");
      o.check_valid(params);
      if (nx < 0 || nx >= num_states || nx == start)
        fail("BadMachine", "digit edge must stay off the initial state");
    }
  }
}

Word RawInitial::run(const Word& w) const {
  if (!w.is_rooted()) fail("KindMismatch", "raw machines read rooted words");
  w.check_valid(params);
  Word out = dot_out[w.dot()];
  int q = dot_next[w.dot()];
  for (std::size_t i = 0; i < w.digit_count(); ++i) {
    int a = w.digit(i);
    out = out.append(dig_out[std::size_t(q) * params.n + a]);
    q = dig_next[std::size_t(q) * params.n + a];
  }
  return out;
}

AnchoredHomeo from_raw(const RawInitial& t) {
  t.check_valid();
  const AlphabetParams& p = t.params;

  // digit part, reindexed without the initial state
  std::vector<int> to_digit(t.num_states, -1), from_digit;
  for (int q = 0; q < t.num_states; ++q)
    if (q != t.start) {
      to_digit[q] = int(from_digit.size());
      from_digit.push_back(q);
    }
  int m = int(from_digit.size());
  Mealy sync_view(p.n, m);
  for (int dq = 0; dq < m; ++dq)
    for (int a = 0; a < p.n; ++a) {
      // outputs are irrelevant to synchronization
      int old_q = from_digit[dq];
      sync_view.set_edge(dq, a, 0,
                         to_digit[t.dig_next[std::size_t(old_q) * p.n + a]]);
    }
  SyncResult sr = synchronization_certificate(sync_view);
  if (const NotSyncWitness* w = std::get_if<NotSyncWitness>(&sr)) {
    std::string detail = "witness subsets:";
    for (const auto& sub : w->subsets) {
      detail += " {";
      for (std::size_t i = 0; i < sub.size(); ++i)
        detail += (i ? "," : "") + std::to_string(from_digit[sub[i]]);
      detail += "}";
    }
    fail("NotSynchronizing", detail);
  }
  const SyncCertificate& cert = std::get<SyncCertificate>(sr);

  // core states = image of the synchronization map
  std::vector<int> core_of(m, -1), core_states;
  for (int dq : cert.smap)
    if (core_of[dq] < 0) {
      core_of[dq] = 0;
      core_states.push_back(dq);
    }
  std::sort(core_states.begin(), core_states.end());
  std::fill(core_of.begin(), core_of.end(), -1);
  for (std::size_t i = 0; i < core_states.size(); ++i)
    core_of[core_states[i]] = int(i);

  Mealy core(p.n, int(core_states.size()));
  for (std::size_t i = 0; i < core_states.size(); ++i) {
    int old_q = from_digit[core_states[i]];
    for (int a = 0; a < p.n; ++a) {
      const Word& o = t.dig_out[std::size_t(old_q) * p.n + a];
      if (o.size() != 1)
        fail("CoreNotSynchronous",
             "core edge from state " + std::to_string(old_q) + " on letter " +
                 std::to_string(a) + " outputs a word of length " +
                 std::to_string(o.size()));
      int nx = to_digit[t.dig_next[std::size_t(old_q) * p.n + a]];
      if (core_of[nx] < 0) fail("Internal", "core is not closed");
      core.set_edge(int(i), a, o.letter(0), core_of[nx]);
    }
  }
  if (!core.invertible())
    fail("CoreNotInvertible", "a core output row is not a permutation");

  std::vector<AnchoredCell> cells;
  for (int dot = 0; dot < p.r; ++dot)
    for (const Word& w : all_plain_words(std::size_t(cert.level), p)) {
      Word u = Word::rooted(dot).append(w);
      Word v = t.run(u);
      if (!v.is_rooted())
        fail("NotRootedOutput",
             "output of " + std::to_string(dot) + "-cone cell is not rooted");
      int dq = to_digit[t.dot_next[dot]];
      dq = run_state(sync_view, dq, w);
      cells.push_back({u, v, core_of[dq]});
    }
  return AnchoredHomeo::from_parts(p, core, std::move(cells));
}

AnchoredHomeo compose(const AnchoredHomeo& g, const AnchoredHomeo& h) {
  if (!(g.params() == h.params())) fail("ParamsMismatch", "compose");
  const AlphabetParams& p = g.params();
  int qh_count = h.core().num_states();

  // pair machine running g then h
  Mealy pair(p.n, g.core().num_states() * qh_count);
  for (int qg = 0; qg < g.core().num_states(); ++qg)
    for (int qh = 0; qh < qh_count; ++qh)
      for (int a = 0; a < p.n; ++a) {
        int mid = g.core().out(qg, a);
        pair.set_edge(qg * qh_count + qh, a, h.core().out(qh, mid),
                      g.core().next(qg, a) * qh_count + h.core().next(qh, mid));
      }

  std::size_t h_depth = h.max_cell_depth();
  std::vector<AnchoredCell> cells;
  for (const AnchoredCell& c : g.cells()) {
    std::size_t ext = c.v.size() >= h_depth ? 0 : h_depth - c.v.size();
    for (const Word& w : all_plain_words(ext, p)) {
      Word mid = c.v.append(run_output(g.core(), c.q, w));
      int qg = run_state(g.core(), c.q, w);
      AnchoredHomeo::Settled s = h.settle(mid);
      cells.push_back({c.u.append(w), s.out, qg * qh_count + s.state});
    }
  }
  return AnchoredHomeo::from_parts(p, pair, std::move(cells));
}

AnchoredHomeo inverse(const AnchoredHomeo& h) {
  std::string why;
  if (!h.is_bijective(&why)) fail("NotBijective", why);
  std::vector<AnchoredCell> cells;
  for (const AnchoredCell& c : h.cells()) cells.push_back({c.v, c.u, c.q});
  return AnchoredHomeo::from_parts(h.params(), invert(h.core()),
                                   std::move(cells));
}

AnchoredHomeo conjugate(const AnchoredHomeo& g, const AnchoredHomeo& h) {
  return compose(compose(inverse(h), g), h);
}

bool canonical_equal(const AnchoredHomeo& a, const AnchoredHomeo& b) {
  if (!(a.params() == b.params())) fail("ParamsMismatch", "canonical_equal");
  if (a == b) return true;
  if (!(a.core() == b.core())) return false;
  CompleteAntichain common = antichain_refine(cell_domain(a.cells(), a.params()),
                                              cell_domain(b.cells(), b.params()));
  for (const Word& w : common.words()) {
    AnchoredHomeo::Settled sa = a.settle(w);
    AnchoredHomeo::Settled sb = b.settle(w);
    if (sa.out != sb.out || sa.state != sb.state) return false;
  }
  return true;
}

std::variant<PrefixMap, Mealy> trivial_core_extract(const AnchoredHomeo& h) {
  if (h.core().num_states() == 1 && h.core().output_row_identity(0)) {
    std::vector<PrefixMap::Cell> cells;
    for (const AnchoredCell& c : h.cells()) cells.push_back({c.u, c.v});
    return PrefixMap::from_cells(std::move(cells), h.params());
  }
  return h.core();
}

SmallSupportVerdict is_small_support(const AnchoredHomeo& h) {
  for (const AnchoredCell& c : h.cells()) {
    if (c.u != c.v) continue;
    // every state reachable from c.q must echo its input
    std::vector<int> stack{c.q};
    std::vector<bool> seen(h.core().num_states(), false);
    seen[c.q] = true;
    bool all_identity = true;
    while (!stack.empty() && all_identity) {
      int q = stack.back();
      stack.pop_back();
      if (!h.core().output_row_identity(q)) {
        all_identity = false;
        break;
      }
      for (int a = 0; a < h.params().n; ++a) {
        int nx = h.core().next(q, a);
        if (!seen[nx]) {
          seen[nx] = true;
          stack.push_back(nx);
        }
      }
    }
    if (all_identity) return {true, c.u};
  }
  return {false, std::nullopt};
}

}  // namespace cantor
