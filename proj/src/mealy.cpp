#include "cantor/mealy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace cantor {

Mealy::Mealy(int n, int num_states, std::optional<int> start)
    : n_(n), num_states_(num_states), start_(start) {
  if (n < 2) fail("BadParams", "arity n must be at least 2");
  if (num_states < 1) fail("BadMachine", "machine needs at least one state");
  if (start && (*start < 0 || *start >= num_states))
    fail("BadMachine", "start state out of range");
  next_.assign(std::size_t(num_states) * n, -1);
  out_.assign(std::size_t(num_states) * n, -1);
}

Mealy Mealy::identity(int n) {
  Mealy m(n, 1);
  for (int a = 0; a < n; ++a) m.set_edge(0, a, a, 0);
  return m;
}

Mealy Mealy::letter_map(int n, std::vector<int> out_row) {
  Mealy m(n, 1);
  for (int a = 0; a < n; ++a) m.set_edge(0, a, out_row.at(a), 0);
  return m;
}

void Mealy::set_edge(int q, int a, int out, int next) {
  if (q < 0 || q >= num_states_ || a < 0 || a >= n_ || out < 0 || out >= n_ ||
      next < 0 || next >= num_states_)
    fail("BadMachine", "edge out of range");
  next_[idx(q, a)] = next;
  out_[idx(q, a)] = out;
}

void Mealy::check_total() const {
  for (int q = 0; q < num_states_; ++q)
    for (int a = 0; a < n_; ++a)
      if (next_[idx(q, a)] < 0)
        fail("BadMachine", "transition missing at state " + std::to_string(q) +
                               " letter " + std::to_string(a));
}

bool Mealy::invertible() const {
  for (int q = 0; q < num_states_; ++q) {
    std::vector<bool> seen(n_, false);
    for (int a = 0; a < n_; ++a) {
      int o = out_[idx(q, a)];
      if (o < 0 || seen[o]) return false;
      seen[o] = true;
    }
  }
  return true;
}

bool Mealy::output_row_identity(int q) const {
  for (int a = 0; a < n_; ++a)
    if (out_[idx(q, a)] != a) return false;
  return true;
}

int run_state(const Mealy& m, int q, const Word& w) {
  if (w.is_rooted()) fail("KindMismatch", "machine input must be plain");
  for (std::size_t i = 0; i < w.size(); ++i) q = m.next(q, w.letter(i));
  return q;
}

Word run_output(const Mealy& m, int q, const Word& w) {
  if (w.is_rooted()) fail("KindMismatch", "machine input must be plain");
  std::vector<int> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.push_back(m.out(q, w.letter(i)));
    q = m.next(q, w.letter(i));
  }
  return Word::plain(std::move(out));
}

namespace {

std::vector<int> reachable_filter(const Mealy& m) {
  std::vector<int> keep(m.num_states(), 1);
  if (!m.start()) return keep;
  keep.assign(m.num_states(), 0);
  std::queue<int> bfs;
  bfs.push(*m.start());
  keep[*m.start()] = 1;
  while (!bfs.empty()) {
    int q = bfs.front();
    bfs.pop();
    for (int a = 0; a < m.n(); ++a) {
      int t = m.next(q, a);
      if (!keep[t]) {
        keep[t] = 1;
        bfs.push(t);
      }
    }
  }
  return keep;
}

}  // namespace

MinimizeResult minimize(const Mealy& m) {
  m.check_total();
  int n = m.n();
  std::vector<int> keep = reachable_filter(m);

  // Initial partition by output row.
  std::vector<int> cls(m.num_states(), -1);
  {
    std::map<std::vector<int>, int> rows;
    for (int q = 0; q < m.num_states(); ++q) {
      if (!keep[q]) continue;
      std::vector<int> row(n);
      for (int a = 0; a < n; ++a) row[a] = m.out(q, a);
      auto [it, added] = rows.emplace(row, int(rows.size()));
      cls[q] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> next_cls(m.num_states(), -1);
    for (int q = 0; q < m.num_states(); ++q) {
      if (!keep[q]) continue;
      std::vector<int> s;
      s.push_back(cls[q]);
      for (int a = 0; a < n; ++a) s.push_back(cls[m.next(q, a)]);
      auto [it, added] = sig.emplace(s, int(sig.size()));
      next_cls[q] = it->second;
    }
    bool changed = false;
    for (int q = 0; q < m.num_states(); ++q)
      if (keep[q] && next_cls[q] != cls[q]) changed = true;
    cls = next_cls;
    if (!changed) break;
  }

  // Canonical numbering: classes ordered by smallest original state index.
  std::vector<int> first_of_class;
  std::vector<int> renum(m.num_states(), -1);
  std::map<int, int> seen;
  int count = 0;
  for (int q = 0; q < m.num_states(); ++q) {
    if (!keep[q]) continue;
    auto it = seen.find(cls[q]);
    if (it == seen.end()) {
      seen.emplace(cls[q], count);
      renum[q] = count++;
      first_of_class.push_back(q);
    } else {
      renum[q] = it->second;
    }
  }

  std::optional<int> start;
  if (m.start()) start = renum[*m.start()];
  Mealy out(n, count, start);
  for (int c = 0; c < count; ++c) {
    int q = first_of_class[c];
    for (int a = 0; a < n; ++a)
      out.set_edge(c, a, m.out(q, a), renum[m.next(q, a)]);
  }
  return MinimizeResult{std::move(out), std::move(renum)};
}

ProductResult product_full(const Mealy& a, const Mealy& b) {
  if (a.n() != b.n()) fail("ParamsMismatch", "product arity mismatch");
  a.check_total();
  b.check_total();
  int n = a.n();
  int mb = b.num_states();
  std::vector<int> pair_index(std::size_t(a.num_states()) * mb, -1);
  std::vector<std::pair<int, int>> pairs;

  auto add_pair = [&](int p, int q) {
    int& slot = pair_index[std::size_t(p) * mb + q];
    if (slot < 0) {
      slot = int(pairs.size());
      pairs.emplace_back(p, q);
    }
    return slot;
  };

  std::optional<int> start;
  if (a.start() && b.start()) {
    start = add_pair(*a.start(), *b.start());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [p, q] = pairs[i];
      for (int x = 0; x < n; ++x)
        add_pair(a.next(p, x), b.next(q, a.out(p, x)));
    }
  } else {
    for (int p = 0; p < a.num_states(); ++p)
      for (int q = 0; q < mb; ++q) add_pair(p, q);
  }

  Mealy raw(n, int(pairs.size()), start);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (int x = 0; x < n; ++x) {
      int mid = a.out(p, x);
      raw.set_edge(int(i), x, b.out(q, mid),
                   pair_index[std::size_t(a.next(p, x)) * mb + b.next(q, mid)]);
    }
  }
  MinimizeResult min = minimize(raw);
  std::vector<int> pair_state(pair_index.size(), -1);
  for (std::size_t i = 0; i < pair_index.size(); ++i)
    if (pair_index[i] >= 0) pair_state[i] = min.state_class[pair_index[i]];
  return ProductResult{std::move(min.machine), std::move(pair_state)};
}

Mealy product(const Mealy& a, const Mealy& b) {
  return product_full(a, b).machine;
}

Mealy invert(const Mealy& m) {
  m.check_total();
  for (int q = 0; q < m.num_states(); ++q) {
    std::vector<bool> seen(m.n(), false);
    for (int a = 0; a < m.n(); ++a) {
      int o = m.out(q, a);
      if (seen[o])
        fail("NotInvertible",
             "output row of state " + std::to_string(q) + " is not a permutation");
      seen[o] = true;
    }
  }
  Mealy inv(m.n(), m.num_states(), m.start());
  for (int q = 0; q < m.num_states(); ++q)
    for (int a = 0; a < m.n(); ++a)
      inv.set_edge(q, m.out(q, a), a, m.next(q, a));
  return inv;
}

namespace {

using Subset = std::vector<int>;  // sorted state list

Subset subset_image(const Mealy& m, const Subset& s, int a) {
  std::set<int> img;
  for (int q : s) img.insert(m.next(q, a));
  return Subset(img.begin(), img.end());
}

}  // namespace

SyncResult synchronization_certificate(const Mealy& m) {
  m.check_total();
  Subset full(m.num_states());
  std::iota(full.begin(), full.end(), 0);

  // Iterate the frontier of subsets reachable by exactly k letters; subset
  // sizes never grow, so the frontier sequence is eventually periodic.
  std::set<Subset> frontier{full};
  std::set<std::set<Subset>> seen;
  int level = 0;
  for (;;) {
    bool all_singleton = true;
    for (const Subset& s : frontier)
      if (s.size() > 1) all_singleton = false;
    if (all_singleton) break;
    if (!seen.insert(frontier).second) {
      NotSyncWitness w;
      for (const Subset& s : frontier)
        if (s.size() > 1) w.subsets.push_back(s);
      return w;
    }
    std::set<Subset> next;
    for (const Subset& s : frontier)
      for (int a = 0; a < m.n(); ++a) next.insert(subset_image(m, s, a));
    frontier = std::move(next);
    ++level;
  }

  SyncCertificate cert;
  cert.level = level;
  std::size_t table = 1;
  for (int i = 0; i < level; ++i) {
    table *= m.n();
    if (table > (1u << 22)) fail("LevelTooLarge", "synchronization table too big");
  }
  cert.smap.assign(table, -1);
  for (std::size_t rank = 0; rank < table; ++rank) {
    int q = 0;
    std::size_t rest = rank;
    // most significant letter first
    for (int i = level - 1; i >= 0; --i) {
      std::size_t pw = 1;
      for (int j = 0; j < i; ++j) pw *= m.n();
      int letter = int(rest / pw);
      rest %= pw;
      q = m.next(q, letter);
    }
    cert.smap[rank] = q;
  }
  return cert;
}

int SyncCertificate::state_for(const Mealy& m, const Word& suffix) const {
  if (int(suffix.size()) != level) fail("BadWord", "suffix length != sync level");
  std::size_t rank = 0;
  for (std::size_t i = 0; i < suffix.size(); ++i)
    rank = rank * m.n() + suffix.letter(i);
  return smap[rank];
}

SyncCertificate require_sync(const Mealy& m) {
  SyncResult r = synchronization_certificate(m);
  if (auto* w = std::get_if<NotSyncWitness>(&r))
    fail("NotSynchronizing", "machine is not synchronizing (" +
                                 std::to_string(w->subsets.size()) +
                                 " persistent subsets)");
  return std::get<SyncCertificate>(std::move(r));
}

CoreResult core_extract(const Mealy& m) {
  SyncCertificate cert = require_sync(m);
  std::set<int> image(cert.smap.begin(), cert.smap.end());
  std::vector<int> state_map(m.num_states(), -1);
  int count = 0;
  for (int q : image) state_map[q] = count++;
  Mealy core(m.n(), count);
  for (int q : image)
    for (int a = 0; a < m.n(); ++a)
      core.set_edge(state_map[q], a, m.out(q, a), state_map[m.next(q, a)]);
  return CoreResult{std::move(core), std::move(state_map)};
}

TailImage tail_image(const Mealy& m, int q, const Word& w) {
  if (w.empty() || w.is_rooted()) fail("BadWord", "tail word must be a nonempty plain word");
  std::vector<int> trace{q};
  std::map<int, int> pos{{q, 0}};
  std::vector<int> letters;
  int cur = q;
  int entry, cycle;
  for (;;) {
    Word o = run_output(m, cur, w);
    for (std::size_t i = 0; i < o.size(); ++i) letters.push_back(o.letter(i));
    cur = run_state(m, cur, w);
    auto it = pos.find(cur);
    if (it != pos.end()) {
      entry = it->second;
      cycle = int(trace.size()) - entry;
      break;
    }
    pos.emplace(cur, int(trace.size()));
    trace.push_back(cur);
  }
  std::size_t wl = w.size();
  std::vector<int> pre(letters.begin(), letters.begin() + std::size_t(entry) * wl);
  std::vector<int> per(letters.begin() + std::size_t(entry) * wl,
                       letters.begin() + std::size_t(entry + cycle) * wl);
  return TailImage{entry, cycle, PlainTail::make(std::move(pre), std::move(per))};
}

bool is_strongly_connected(const Mealy& m) {
  auto reach = [&](int s) {
    std::vector<bool> vis(m.num_states(), false);
    std::queue<int> bfs;
    bfs.push(s);
    vis[s] = true;
    while (!bfs.empty()) {
      int q = bfs.front();
      bfs.pop();
      for (int a = 0; a < m.n(); ++a)
        if (!vis[m.next(q, a)]) {
          vis[m.next(q, a)] = true;
          bfs.push(m.next(q, a));
        }
    }
    return vis;
  };
  std::vector<bool> from0 = reach(0);
  for (int q = 0; q < m.num_states(); ++q) {
    if (!from0[q]) return false;
    if (q > 0 && !reach(q)[0]) return false;
  }
  return true;
}

namespace {

// BFS relabeling from a seed; returns the edge table in canonical order,
// or nullopt if the seed does not reach every state.
std::optional<std::pair<std::vector<int>, std::vector<int>>> bfs_table(
    const Mealy& m, int seed) {
  std::vector<int> label(m.num_states(), -1);
  std::vector<int> order;
  label[seed] = 0;
  order.push_back(seed);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < m.n(); ++a) {
      int t = m.next(order[i], a);
      if (label[t] < 0) {
        label[t] = int(order.size());
        order.push_back(t);
      }
    }
  if (int(order.size()) != m.num_states()) return std::nullopt;
  std::vector<int> table;
  for (int q : order)
    for (int a = 0; a < m.n(); ++a) {
      table.push_back(m.out(q, a));
      table.push_back(label[m.next(q, a)]);
    }
  return std::make_pair(std::move(table), std::move(label));
}

}  // namespace

CanonicalMealy core_canonical(const Mealy& m) {
  m.check_total();
  std::optional<std::pair<std::vector<int>, std::vector<int>>> best;
  for (int seed = 0; seed < m.num_states(); ++seed) {
    auto cand = bfs_table(m, seed);
    if (!cand) continue;
    if (!best || cand->first < best->first) best = std::move(cand);
  }
  if (!best) fail("BadMachine", "no state reaches the whole machine");
  const auto& [table, label] = *best;
  Mealy canon(m.n(), m.num_states());
  for (int q = 0; q < m.num_states(); ++q)
    for (int a = 0; a < m.n(); ++a)
      canon.set_edge(label[q], a, m.out(q, a), label[m.next(q, a)]);
  return CanonicalMealy{std::move(canon), label};
}

bool machine_isomorphic(const Mealy& a, const Mealy& b) {
  if (a.n() != b.n() || a.num_states() != b.num_states()) return false;
  return core_canonical(a).machine == core_canonical(b).machine;
}

std::optional<int> identity_state(const Mealy& m) {
  for (int q = 0; q < m.num_states(); ++q) {
    bool ok = m.output_row_identity(q);
    for (int a = 0; a < m.n() && ok; ++a)
      if (m.next(q, a) != q) ok = false;
    if (ok) return q;
  }
  return std::nullopt;
}

}  // namespace cantor
