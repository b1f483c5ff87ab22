#pragma once

// Maximal permitted walks (paths) and forbidden walks (antipaths), the
// bijections between them, orbit enumeration and the derived invariant.

#include <compare>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "gentle/core.hpp"

namespace gentle {

enum class ThreadKind { Path, Antipath };

// A maximal permitted or forbidden walk. Nontrivial threads list their arrows
// target-to-source; trivial threads live at a vertex and carry a sign eps.
// A trivial path has sigma == eps, tau == -eps; a trivial antipath has
// sigma == tau == eps.
class Thread {
 public:
  static Thread path(std::vector<ArrowId> arrows) {
    return Thread(ThreadKind::Path, std::move(arrows), {}, 0);
  }
  static Thread antipath(std::vector<ArrowId> arrows) {
    return Thread(ThreadKind::Antipath, std::move(arrows), {}, 0);
  }
  static Thread trivial_path(VertexId v, Sign eps) {
    return Thread(ThreadKind::Path, {}, std::move(v), eps);
  }
  static Thread trivial_antipath(VertexId v, Sign eps) {
    return Thread(ThreadKind::Antipath, {}, std::move(v), eps);
  }

  ThreadKind kind() const { return kind_; }
  bool trivial() const { return arrows_.empty(); }
  int length() const { return static_cast<int>(arrows_.size()); }
  const std::vector<ArrowId>& arrows() const { return arrows_; }
  const VertexId& vertex() const { return vertex_; }
  Sign eps() const { return eps_; }

  VertexId source(const GentleQuiver& g) const {
    return trivial() ? vertex_ : g.arrow(arrows_.back()).source;
  }
  VertexId target(const GentleQuiver& g) const {
    return trivial() ? vertex_ : g.arrow(arrows_.front()).target;
  }
  Sign sigma(const GentleQuiver& g) const {
    return trivial() ? eps_ : g.sigma(arrows_.back());
  }
  Sign tau(const GentleQuiver& g) const {
    if (!trivial()) return g.tau(arrows_.front());
    return kind_ == ThreadKind::Path ? -eps_ : eps_;
  }

  std::string describe() const {
    std::ostringstream os;
    if (trivial()) {
      os << (kind_ == ThreadKind::Path ? "1(" : "1'(") << vertex_ << ','
         << (eps_ > 0 ? "+1" : "-1") << ')';
    } else {
      os << (kind_ == ThreadKind::Path ? "path(" : "antipath(");
      for (std::size_t i = 0; i < arrows_.size(); ++i)
        os << (i ? "," : "") << arrows_[i];
      os << ')';
    }
    return os.str();
  }

  friend bool operator==(const Thread&, const Thread&) = default;
  friend auto operator<=>(const Thread& a, const Thread& b) {
    return std::tie(a.kind_, a.arrows_, a.vertex_, a.eps_) <=>
           std::tie(b.kind_, b.arrows_, b.vertex_, b.eps_);
  }

 private:
  Thread(ThreadKind k, std::vector<ArrowId> arrows, VertexId v, Sign eps)
      : kind_(k), arrows_(std::move(arrows)), vertex_(std::move(v)), eps_(eps) {}

  ThreadKind kind_;
  std::vector<ArrowId> arrows_;
  VertexId vertex_;
  Sign eps_;
};

namespace detail {

// Chains of a partial successor function over arrows. cont(a) is the arrow
// appended at the target end while walking; arrows on cycles of the function
// are reported separately (they extend forever, so lie on no maximal walk).
struct ChainDecomposition {
  std::vector<std::vector<ArrowId>> chains;  // stored target-to-source
  std::vector<ArrowId> cyclic;               // arrows on functional cycles
};

template <typename Cont, typename Pred>
ChainDecomposition decompose_chains(const GentleQuiver& g, Cont cont, Pred pred) {
  ChainDecomposition out;
  std::set<ArrowId> assigned;
  std::vector<ArrowId> ids;
  for (const Arrow& a : g.presentation().arrows) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());
  for (const ArrowId& start : ids) {
    if (pred(start) || assigned.count(start)) continue;
    std::vector<ArrowId> walk{start};
    assigned.insert(start);
    for (auto next = cont(start); next; next = cont(*next)) {
      if (assigned.count(*next))
        throw internal_error("walk decomposition revisited arrow " + *next);
      walk.push_back(*next);
      assigned.insert(*next);
    }
    std::reverse(walk.begin(), walk.end());  // target-to-source
    out.chains.push_back(std::move(walk));
  }
  for (const ArrowId& id : ids)
    if (!assigned.count(id)) out.cyclic.push_back(id);
  return out;
}

}  // namespace detail

struct ThreadSets {
  std::vector<Thread> paths;      // the set M of maximal paths
  std::vector<Thread> antipaths;  // the set N of maximal antipaths
};

// Enumerates every maximal path and maximal antipath, including the trivial
// threads that cannot be extended.
inline ThreadSets enumerate_threads(const GentleQuiver& g) {
  ThreadSets out;

  auto path_chains = detail::decompose_chains(
      g, [&](const ArrowId& a) { return g.path_continuation(a); },
      [&](const ArrowId& a) { return g.path_predecessor(a).has_value(); });
  if (!path_chains.cyclic.empty())
    throw internal_error("relation-free cycle in a validated gentle quiver");
  for (auto& c : path_chains.chains) out.paths.push_back(Thread::path(std::move(c)));

  auto anti_chains = detail::decompose_chains(
      g, [&](const ArrowId& a) { return g.relation_continuation(a); },
      [&](const ArrowId& a) { return g.relation_predecessor(a).has_value(); });
  for (auto& c : anti_chains.chains)
    out.antipaths.push_back(Thread::antipath(std::move(c)));

  for (const VertexId& v : g.presentation().vertices)
    for (Sign eps : {+1, -1}) {
      bool out_blocked = false, in_path_blocked = false, in_anti_blocked = false;
      for (const ArrowId& a : g.arrows_out(v))
        if (g.sigma(a) == eps) out_blocked = true;
      for (const ArrowId& b : g.arrows_in(v)) {
        if (g.tau(b) == -eps) in_path_blocked = true;
        if (g.tau(b) == eps) in_anti_blocked = true;
      }
      if (!out_blocked && !in_path_blocked)
        out.paths.push_back(Thread::trivial_path(v, eps));
      if (!out_blocked && !in_anti_blocked)
        out.antipaths.push_back(Thread::trivial_antipath(v, eps));
    }

  std::sort(out.paths.begin(), out.paths.end());
  std::sort(out.antipaths.begin(), out.antipaths.end());
  return out;
}

struct OrbitStats {
  int p = 0;
  int q = 0;

  friend bool operator==(const OrbitStats&, const OrbitStats&) = default;
  friend auto operator<=>(const OrbitStats&, const OrbitStats&) = default;
};

// Finite-support multiset over N^2: the function f mapping (p, q) to the
// number of orbits with those statistics. Zero multiplicities are never
// stored.
class AagInvariant {
 public:
  AagInvariant() = default;

  void add(int p, int q, int mult = 1) {
    if (mult == 0) return;
    auto it = support_.find({p, q});
    if (it == support_.end()) {
      support_.emplace(std::make_pair(p, q), mult);
    } else {
      it->second += mult;
      if (it->second == 0) support_.erase(it);
    }
  }

  int operator()(int p, int q) const {
    auto it = support_.find({p, q});
    return it == support_.end() ? 0 : it->second;
  }

  const std::map<std::pair<int, int>, int>& support() const { return support_; }

  int total_multiplicity() const {
    int t = 0;
    for (const auto& [pq, m] : support_) t += m;
    return t;
  }

  AagInvariant& operator+=(const AagInvariant& o) {
    for (const auto& [pq, m] : o.support_) add(pq.first, pq.second, m);
    return *this;
  }
  friend AagInvariant operator+(AagInvariant a, const AagInvariant& b) {
    a += b;
    return a;
  }
  friend AagInvariant operator*(int k, const AagInvariant& a) {
    AagInvariant out;
    for (const auto& [pq, m] : a.support_) out.add(pq.first, pq.second, k * m);
    return out;
  }

  static AagInvariant point(int p, int q, int mult = 1) {
    AagInvariant f;
    f.add(p, q, mult);
    return f;
  }

  std::string to_string() const {
    if (support_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [pq, m] : support_) {
      if (!first) os << " + ";
      first = false;
      if (m != 1) os << m << '*';
      os << '[' << pq.first << ',' << pq.second << ']';
    }
    return os.str();
  }

  friend bool operator==(const AagInvariant&, const AagInvariant&) = default;

 private:
  std::map<std::pair<int, int>, int> support_;
};

// The full combinatorial system: both thread sets, the bijections phi, psi,
// Phi = phi o psi on antipaths, the cycle set C with its bijection Psi, and
// the orbit partitions. Orbits are listed sorted by (p, q, smallest member).
struct ThreadSystem {
  std::vector<Thread> paths;      // M
  std::vector<Thread> antipaths;  // N
  std::map<Thread, Thread> phi;   // M -> N
  std::map<Thread, Thread> psi;   // N -> M
  std::map<Thread, Thread> Phi;   // N -> N
  std::vector<ArrowId> cycle_arrows;  // C, sorted
  std::map<ArrowId, ArrowId> Psi;     // C -> C
  std::vector<std::vector<Thread>> antipath_orbits;
  std::vector<std::vector<ArrowId>> cycle_orbits;

  bool in_cycle_set(const ArrowId& a) const {
    return std::binary_search(cycle_arrows.begin(), cycle_arrows.end(), a);
  }
};

inline ThreadSystem build_thread_system(const GentleQuiver& g) {
  ThreadSystem ts;
  ThreadSets sets = enumerate_threads(g);
  ts.paths = std::move(sets.paths);
  ts.antipaths = std::move(sets.antipaths);
  if (ts.paths.size() != ts.antipaths.size())
    throw internal_error("|M| != |N| on a validated gentle quiver");

  // phi matches a path to the antipath with the same target and opposite tau;
  // psi matches an antipath to the path with the same source and opposite
  // sigma. Each key must identify exactly one thread.
  std::map<std::pair<VertexId, Sign>, const Thread*> antipath_by_target,
      path_by_source;
  for (const Thread& t : ts.antipaths) {
    auto key = std::make_pair(t.target(g), t.tau(g));
    if (!antipath_by_target.emplace(key, &t).second)
      throw internal_error("antipath (target, tau) key not unique");
  }
  for (const Thread& t : ts.paths) {
    auto key = std::make_pair(t.source(g), t.sigma(g));
    if (!path_by_source.emplace(key, &t).second)
      throw internal_error("path (source, sigma) key not unique");
  }
  for (const Thread& t : ts.paths) {
    auto it = antipath_by_target.find({t.target(g), -t.tau(g)});
    if (it == antipath_by_target.end())
      throw internal_error("phi undefined for " + t.describe());
    ts.phi.emplace(t, *it->second);
  }
  for (const Thread& t : ts.antipaths) {
    auto it = path_by_source.find({t.source(g), -t.sigma(g)});
    if (it == path_by_source.end())
      throw internal_error("psi undefined for " + t.describe());
    ts.psi.emplace(t, *it->second);
  }
  for (const Thread& t : ts.antipaths) ts.Phi.emplace(t, ts.phi.at(ts.psi.at(t)));

  // C consists of the arrows on full-relation cycles; Psi steps backwards
  // along such a cycle, sending a to the arrow b with (a, b) in R.
  std::set<ArrowId> in_antipath;
  for (const Thread& t : ts.antipaths)
    for (const ArrowId& a : t.arrows()) in_antipath.insert(a);
  for (const Arrow& a : g.presentation().arrows)
    if (!in_antipath.count(a.id)) ts.cycle_arrows.push_back(a.id);
  std::sort(ts.cycle_arrows.begin(), ts.cycle_arrows.end());
  for (const ArrowId& a : ts.cycle_arrows) {
    auto b = g.relation_predecessor(a);
    if (!b || !ts.in_cycle_set(*b))
      throw internal_error("Psi undefined or leaves C at arrow " + a);
    ts.Psi[a] = *b;
  }

  auto orbit_sort_key = [&](const std::vector<Thread>& orbit) {
    int q = 0;
    for (const Thread& t : orbit) q += t.length();
    return std::make_tuple(static_cast<int>(orbit.size()), q,
                           *std::min_element(orbit.begin(), orbit.end()));
  };
  std::set<Thread> seen;
  for (const Thread& t : ts.antipaths) {
    if (seen.count(t)) continue;
    std::vector<Thread> orbit;
    Thread cur = t;
    while (!seen.count(cur)) {
      seen.insert(cur);
      orbit.push_back(cur);
      cur = ts.Phi.at(cur);
    }
    if (!(cur == t)) throw internal_error("Phi orbit did not close");
    ts.antipath_orbits.push_back(std::move(orbit));
  }
  std::sort(ts.antipath_orbits.begin(), ts.antipath_orbits.end(),
            [&](const auto& a, const auto& b) {
              return orbit_sort_key(a) < orbit_sort_key(b);
            });

  std::set<ArrowId> cseen;
  for (const ArrowId& a : ts.cycle_arrows) {
    if (cseen.count(a)) continue;
    std::vector<ArrowId> orbit;
    ArrowId cur = a;
    while (!cseen.count(cur)) {
      cseen.insert(cur);
      orbit.push_back(cur);
      cur = ts.Psi.at(cur);
    }
    if (cur != a) throw internal_error("Psi orbit did not close");
    ts.cycle_orbits.push_back(std::move(orbit));
  }
  std::sort(ts.cycle_orbits.begin(), ts.cycle_orbits.end(),
            [](const auto& a, const auto& b) {
              return std::make_pair(a.size(), a.front()) <
                     std::make_pair(b.size(), b.front());
            });

  return ts;
}

inline OrbitStats orbit_stats(const std::vector<Thread>& antipath_orbit) {
  OrbitStats s;
  s.p = static_cast<int>(antipath_orbit.size());
  for (const Thread& t : antipath_orbit) s.q += t.length();
  return s;
}

inline AagInvariant aag_invariant(const ThreadSystem& ts) {
  AagInvariant f;
  for (const auto& orbit : ts.antipath_orbits) {
    OrbitStats s = orbit_stats(orbit);
    f.add(s.p, s.q);
  }
  for (const auto& orbit : ts.cycle_orbits) f.add(0, static_cast<int>(orbit.size()));
  return f;
}

inline AagInvariant aag_invariant(const GentleQuiver& g) {
  return aag_invariant(build_thread_system(g));
}

struct SumIdentityReport {
  int pSum = 0;
  int qSum = 0;
  int expectedP = 0;
  int expectedQ = 0;
  bool ok = false;
};

// The orbit statistics always satisfy sum(p) == 2|vertices| - |arrows| and
// sum(q) == |arrows|.
inline SumIdentityReport check_sum_identities(const GentleQuiver& g) {
  SumIdentityReport r;
  ThreadSystem ts = build_thread_system(g);
  for (const auto& orbit : ts.antipath_orbits) {
    OrbitStats s = orbit_stats(orbit);
    r.pSum += s.p;
    r.qSum += s.q;
  }
  for (const auto& orbit : ts.cycle_orbits) r.qSum += static_cast<int>(orbit.size());
  r.expectedP = 2 * static_cast<int>(g.vertex_count()) -
                static_cast<int>(g.arrow_count());
  r.expectedQ = static_cast<int>(g.arrow_count());
  r.ok = r.pSum == r.expectedP && r.qSum == r.expectedQ;
  return r;
}

}  // namespace gentle
