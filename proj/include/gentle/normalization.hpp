#pragma once

// Constructive normalization: rewrites class A quivers to cluster tilted type
// A form and class A-tilde quivers to cluster tilted type A-tilde form via
// reflections and coreflections chosen by termination measures, emitting a
// replayable trace. Every step is checked for invariant preservation and
// every measure for strict lexicographic decrease; a violation means the
// implementation (not the input) is wrong and surfaces as internal_error.

#include <optional>

#include "gentle/classification.hpp"
#include "gentle/core.hpp"
#include "gentle/threads.hpp"
#include "gentle/transforms.hpp"

namespace gentle {

// Per-iteration measures, recomputable from the quiver alone. nullopt stands
// for an infinite / undefined value. Each elimination phase fills the fields
// its induction argument uses and tags the snapshot with its name.
struct MeasureSnapshot {
  std::string phase;
  int r = 0;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> k;
  int s = 0;
};

struct NormalizationResult {
  GentleQuiver final;
  RewriteTrace trace;
  std::vector<MeasureSnapshot> measureLog;
};

// Branch relations with the class A measure: the number of vertices in the
// component of g - {first} containing target(first).
inline std::vector<std::pair<Relation, int>> branch_relations_with_measure(
    const GentleQuiver& g) {
  std::vector<std::pair<Relation, int>> out;
  for (const Relation& r : g.presentation().relations) {
    if (!is_branch_relation(g, r)) continue;
    auto comp =
        component_of(g.presentation(), {r.first}, g.arrow(r.first).target);
    out.push_back({r, static_cast<int>(comp.size())});
  }
  return out;
}

// Structural data for the class A-tilde measures.
struct AtildeStructure {
  ThreadSystem ts;
  std::vector<std::vector<ArrowId>> triangles;
  std::vector<std::vector<ArrowId>> branch_triangles;
  std::set<ArrowId> branch_arrows;
  std::set<ArrowId> cycle_triangle_arrows;
  std::set<ArrowId> strongly_cycle_arrows;
  std::set<VertexId> strongly_cycle_vertices;
};

inline AtildeStructure atilde_structure(const GentleQuiver& g) {
  AtildeStructure st{build_thread_system(g), {}, {}, {}, {}, {}, {}};
  for (const auto& orbit : st.ts.cycle_orbits) {
    if (orbit.size() != 3)
      throw internal_error("full-relation cycle of size " +
                           std::to_string(orbit.size()) + " out of class");
    st.triangles.push_back(orbit);
  }
  for (const Arrow& a : g.presentation().arrows)
    if (!connected(remove_arrows(g.presentation(), {a.id})))
      st.branch_arrows.insert(a.id);
  for (const auto& t : st.triangles) {
    if (is_branch_triangle(g, t)) {
      st.branch_triangles.push_back(t);
    } else {
      for (const ArrowId& a : t) st.cycle_triangle_arrows.insert(a);
    }
  }
  // Strongly cycle arrows: cycle arrows outside C plus cycle-triangle arrows.
  for (const Arrow& a : g.presentation().arrows) {
    if (st.branch_arrows.count(a.id)) continue;
    if (!st.ts.in_cycle_set(a.id) || st.cycle_triangle_arrows.count(a.id)) {
      st.strongly_cycle_arrows.insert(a.id);
      st.strongly_cycle_vertices.insert(a.source);
      st.strongly_cycle_vertices.insert(a.target);
    }
  }
  return st;
}

// Far-side vertex count for a branch arrow: the size of the component of
// g - {a} containing no strongly cycle vertices. Exactly one side qualifies.
inline int atilde_arrow_measure(const GentleQuiver& g, const AtildeStructure& st,
                                const ArrowId& a) {
  const Arrow& ar = g.arrow(a);
  auto compT = component_of(g.presentation(), {a}, ar.target);
  auto compS = component_of(g.presentation(), {a}, ar.source);
  auto free_side = [&](const std::set<VertexId>& comp) {
    for (const VertexId& v : comp)
      if (st.strongly_cycle_vertices.count(v)) return false;
    return true;
  };
  bool tf = free_side(compT), sf = free_side(compS);
  if (tf == sf)
    throw internal_error("branch arrow " + a +
                         " has no unique strongly-cycle-free side");
  return static_cast<int>((tf ? compT : compS).size());
}

struct AtildeBranchRelation {
  Relation rel;
  int n;           // min of the two arrow measures
  bool via_first;  // minimum realized at the first arrow: reflect at its target
};

// Branch relations with the class A-tilde measure min{n_first, n_second},
// where n is the far-side count of a branch arrow and infinite on cycle
// arrows. When the minimum sits at the first arrow the eliminating move is
// the reflection at its target, otherwise the dual coreflection at the
// second arrow's source.
inline std::vector<AtildeBranchRelation> branch_relations_with_measure_atilde(
    const GentleQuiver& g) {
  AtildeStructure st = atilde_structure(g);
  std::vector<AtildeBranchRelation> out;
  for (const Relation& r : g.presentation().relations) {
    bool bf = st.branch_arrows.count(r.first) > 0;
    bool bs = st.branch_arrows.count(r.second) > 0;
    if (!bf && !bs) continue;
    std::optional<int> na, nb;
    if (bf) na = atilde_arrow_measure(g, st, r.first);
    if (bs) nb = atilde_arrow_measure(g, st, r.second);
    if (na && (!nb || *na <= *nb)) {
      out.push_back({r, *na, true});
    } else {
      out.push_back({r, *nb, false});
    }
  }
  return out;
}

namespace detail {

inline std::pair<ArrowId, ArrowId> relation_key(const Relation& r) {
  return {std::min(r.first, r.second), std::max(r.first, r.second)};
}

// (r2, n2) strictly below (r1, n1) lexicographically; nullopt acts as
// infinity.
inline bool lex_below(int r2, std::optional<int> n2, int r1,
                      std::optional<int> n1) {
  if (r2 != r1) return r2 < r1;
  if (!n2) return false;
  if (!n1) return true;
  return *n2 < *n1;
}

inline void assert_invariant_unchanged(const GentleQuiver& g,
                                       const AagInvariant& f0,
                                       const std::string& where) {
  if (!(aag_invariant(g) == f0))
    throw internal_error("derived invariant changed during " + where);
}

inline void reject_loops(const GentleQuiver& g, const std::string& op) {
  for (const Arrow& a : g.presentation().arrows)
    if (a.source == a.target)
      throw std::invalid_argument(op + ": quiver has a loop at " + a.source);
}

}  // namespace detail

// While branch relations exist, reflect at the target of the first arrow of
// a branch relation of minimal measure. The pair (branch relation count,
// minimal measure) decreases strictly in lexicographic order; the loop ends
// in a quiver with no branch relations, which for class A inputs is cluster
// tilted of type A.
inline NormalizationResult normalize_A(const GentleQuiver& g0) {
  detail::reject_loops(g0, "normalize_A");
  if (!classify(g0).classA)
    throw std::invalid_argument("normalize_A: quiver is not in class A");

  const AagInvariant f0 = aag_invariant(g0);
  GentleQuiver g = g0;
  std::vector<RewriteStep> steps;
  std::vector<MeasureSnapshot> log;

  long cap = 1;
  {
    auto initial = branch_relations_with_measure(g0);
    int nmax = 1;
    for (const auto& [rel, n] : initial) nmax = std::max(nmax, n);
    cap = static_cast<long>(g0.vertex_count()) *
          (static_cast<long>(initial.size()) + 1) * (nmax + 1);
  }

  std::optional<std::pair<int, std::optional<int>>> prev;
  for (long iter = 0;; ++iter) {
    auto brs = branch_relations_with_measure(g);
    int r = static_cast<int>(brs.size());
    std::optional<int> n;
    const std::pair<Relation, int>* pick = nullptr;
    for (const auto& e : brs) {
      if (!n || e.second < *n) n = e.second;
    }
    for (const auto& e : brs)
      if (e.second == *n &&
          (!pick || detail::relation_key(e.first) < detail::relation_key(pick->first)))
        pick = &e;
    MeasureSnapshot snap;
    snap.phase = "branch_relations";
    snap.r = r;
    snap.n = n;
    log.push_back(snap);
    if (prev && !detail::lex_below(r, n, prev->first, prev->second))
      throw internal_error("(r, n) did not decrease in branch-relation elimination");
    prev = {r, n};
    if (r == 0) break;
    if (iter >= cap)
      throw internal_error("iteration cap exceeded in branch-relation elimination");

    VertexId x = g.arrow(pick->first.first).target;
    ReflectCheck chk = can_reflect(g, x);
    if (!chk.ok)
      throw internal_error("expected reflection unavailable at " + x + ": " + chk.reason);
    g = reflect(g, x);
    steps.push_back(RewriteStep::reflect(x));
    detail::assert_invariant_unchanged(g, f0, "branch-relation elimination");
  }

  Classification cls = classify(g);
  if (!cls.clusterTilted || *cls.clusterTilted != ClusterTiltedType::TypeA)
    throw internal_error("normalize_A did not reach a cluster tilted quiver");
  return {g, RewriteTrace{g0, std::move(steps), g}, std::move(log)};
}

// Class A-tilde variant of branch-relation elimination: same loop with the
// modified measure, eliminating either by the reflection at target(first) or
// by the dual coreflection at source(second), whichever side realizes the
// minimum.
inline NormalizationResult eliminate_branch_relations_atilde(const GentleQuiver& g0) {
  detail::reject_loops(g0, "eliminate_branch_relations_atilde");
  if (!classify(g0).classAtilde)
    throw std::invalid_argument("quiver is not in class A-tilde");

  const AagInvariant f0 = aag_invariant(g0);
  GentleQuiver g = g0;
  std::vector<RewriteStep> steps;
  std::vector<MeasureSnapshot> log;

  long cap = 1;
  {
    auto initial = branch_relations_with_measure_atilde(g0);
    int nmax = 1;
    for (const auto& e : initial) nmax = std::max(nmax, e.n);
    cap = static_cast<long>(g0.vertex_count()) *
          (static_cast<long>(initial.size()) + 1) * (nmax + 1);
  }

  std::optional<std::pair<int, std::optional<int>>> prev;
  for (long iter = 0;; ++iter) {
    auto brs = branch_relations_with_measure_atilde(g);
    int r = static_cast<int>(brs.size());
    std::optional<int> n;
    const AtildeBranchRelation* pick = nullptr;
    for (const auto& e : brs)
      if (!n || e.n < *n) n = e.n;
    for (const auto& e : brs)
      if (e.n == *n &&
          (!pick || detail::relation_key(e.rel) < detail::relation_key(pick->rel)))
        pick = &e;
    MeasureSnapshot snap;
    snap.phase = "branch_relations";
    snap.r = r;
    snap.n = n;
    log.push_back(snap);
    if (prev && !detail::lex_below(r, n, prev->first, prev->second))
      throw internal_error("(r, n) did not decrease in branch-relation elimination");
    prev = {r, n};
    if (r == 0) break;
    if (iter >= cap)
      throw internal_error("iteration cap exceeded in branch-relation elimination");

    if (pick->via_first) {
      VertexId x = g.arrow(pick->rel.first).target;
      ReflectCheck chk = can_reflect(g, x);
      if (!chk.ok)
        throw internal_error("expected reflection unavailable at " + x + ": " + chk.reason);
      g = reflect(g, x);
      steps.push_back(RewriteStep::reflect(x));
    } else {
      VertexId x = g.arrow(pick->rel.second).source;
      ReflectCheck chk = can_coreflect(g, x);
      if (!chk.ok)
        throw internal_error("expected coreflection unavailable at " + x + ": " + chk.reason);
      g = coreflect(g, x);
      steps.push_back(RewriteStep::coreflect(x));
    }
    detail::assert_invariant_unchanged(g, f0, "branch-relation elimination");
  }

  if (!branch_relations(g).empty())
    throw internal_error("branch relations survived their elimination");
  return {g, RewriteTrace{g0, std::move(steps), g}, std::move(log)};
}

namespace detail {

inline bool triangle_adjacent(const GentleQuiver& g,
                              const std::vector<ArrowId>& triangle,
                              const VertexId& x) {
  for (const ArrowId& a : triangle) {
    const Arrow& ar = g.arrow(a);
    if (ar.source == x || ar.target == x) return true;
  }
  return false;
}

// The depth measures m' / m'' walked backwards / forwards along the strongly
// cycle arrows; zero at cycle-triangle vertices and where the incoming
// (outgoing) strongly cycle arrow carries no relation.
class Phase2Depth {
 public:
  Phase2Depth(const GentleQuiver& g, const AtildeStructure& st) : g_(g), st_(st) {}

  int m_prime(const VertexId& x) { return depth(x, true, {}); }
  int m_double_prime(const VertexId& x) { return depth(x, false, {}); }

 private:
  int depth(const VertexId& x, bool incoming, std::set<VertexId> visiting) {
    if (!visiting.insert(x).second)
      throw internal_error("depth measure recursion cycled at " + x);
    for (const auto& t : st_.triangles)
      if (!is_branch_triangle(g_, t) && triangle_adjacent(g_, t, x)) return 0;
    std::vector<ArrowId> hits;
    for (const ArrowId& a : st_.strongly_cycle_arrows) {
      const Arrow& ar = g_.arrow(a);
      if (incoming && ar.target == x && g_.relation_predecessor(a)) hits.push_back(a);
      if (!incoming && ar.source == x && g_.relation_continuation(a)) hits.push_back(a);
    }
    if (hits.empty()) return 0;
    if (hits.size() > 1)
      throw internal_error("strongly cycle arrow at " + x + " not unique");
    if (st_.ts.in_cycle_set(hits.front()))
      throw internal_error("depth recursion entered the cycle set at " + x);
    const Arrow& ar = g_.arrow(hits.front());
    return depth(incoming ? ar.source : ar.target, incoming, std::move(visiting)) + 1;
  }

  const GentleQuiver& g_;
  const AtildeStructure& st_;
};

// One elimination move at x for the case of a branch arrow terminating at x
// or a branch triangle adjacent to x: the reflection at x, followed for a
// positive-depth branch arrow by the reflection at the source of the strongly
// cycle arrow entering x. Returns the result and the reflected vertices.
inline std::pair<GentleQuiver, std::vector<VertexId>> phase2_move_incoming(
    const GentleQuiver& g, const AtildeStructure& st, const VertexId& x, int m_x) {
  std::optional<VertexId> second;
  bool branch_in = false;
  for (const ArrowId& a : st.branch_arrows)
    if (g.arrow(a).target == x) branch_in = true;
  if (m_x > 0 && branch_in) {
    std::vector<ArrowId> sc_in, sc_out;
    for (const ArrowId& a : st.strongly_cycle_arrows) {
      const Arrow& ar = g.arrow(a);
      if (ar.target == x) sc_in.push_back(a);
      if (ar.source == x) sc_out.push_back(a);
    }
    if (sc_in.size() != 1 || sc_out.size() != 1)
      throw internal_error("unexpected strongly cycle arrows at " + x);
    if (!g.has_relation(sc_out.front(), sc_in.front()))
      throw internal_error("strongly cycle arrows at " + x + " carry no relation");
    second = g.arrow(sc_in.front()).source;
  }

  std::vector<VertexId> verts{x};
  ReflectCheck chk = can_reflect(g, x);
  if (!chk.ok)
    throw internal_error("expected reflection unavailable at " + x + ": " + chk.reason);
  GentleQuiver out = reflect(g, x);
  if (second) {
    chk = can_reflect(out, *second);
    if (!chk.ok)
      throw internal_error("expected follow-up reflection unavailable at " +
                           *second + ": " + chk.reason);
    out = reflect(out, *second);
    verts.push_back(*second);
  }
  return {std::move(out), std::move(verts)};
}

}  // namespace detail

// Removes branch arrows and branch triangles from a class A-tilde quiver with
// no branch relations. Each round picks a strongly cycle vertex x, adjacent
// to a branch arrow or a branch triangle, of minimal depth measure, and
// applies the reflection move at x (or its dual when the branch arrow leaves
// x). The pair (branch arrows + branch triangles, minimal depth) decreases
// strictly.
inline NormalizationResult eliminate_branch_arrows_and_triangles(
    const GentleQuiver& g0) {
  detail::reject_loops(g0, "eliminate_branch_arrows_and_triangles");
  if (!classify(g0).classAtilde)
    throw std::invalid_argument("quiver is not in class A-tilde");
  if (!branch_relations(g0).empty())
    throw std::invalid_argument("quiver still has branch relations");

  const AagInvariant f0 = aag_invariant(g0);
  GentleQuiver g = g0;
  std::vector<RewriteStep> steps;
  std::vector<MeasureSnapshot> log;
  const long cap =
      (static_cast<long>(g0.arrow_count()) + 2) * (static_cast<long>(g0.vertex_count()) + 2);

  std::optional<std::pair<int, std::optional<int>>> prev;
  for (long iter = 0;; ++iter) {
    AtildeStructure st = atilde_structure(g);
    int r = static_cast<int>(st.branch_arrows.size() + st.branch_triangles.size());

    struct Candidate {
      VertexId x;
      int m;
      bool incoming;  // branch arrow terminates at x or branch triangle at x
      ArrowId tiebreak;
    };
    std::vector<Candidate> candidates;
    detail::Phase2Depth depth(g, st);
    for (const VertexId& x : st.strongly_cycle_vertices) {
      bool tri = false;
      for (const auto& t : st.branch_triangles)
        if (detail::triangle_adjacent(g, t, x)) tri = true;
      bool bin = false, bout = false;
      for (const ArrowId& a : st.branch_arrows) {
        const Arrow& ar = g.arrow(a);
        if (ar.target == x) bin = true;
        if (ar.source == x) bout = true;
      }
      if (!tri && !bin && !bout) continue;
      bool incoming = tri || bin;
      int m = incoming ? depth.m_prime(x) : depth.m_double_prime(x);
      ArrowId tb;
      for (const ArrowId& a : g.arrows_out(x))
        if (tb.empty() || a < tb) tb = a;
      for (const ArrowId& a : g.arrows_in(x))
        if (tb.empty() || a < tb) tb = a;
      candidates.push_back({x, m, incoming, tb});
    }

    std::optional<int> m;
    for (const auto& c : candidates)
      if (!m || c.m < *m) m = c.m;

    MeasureSnapshot snap;
    snap.phase = "branch_arrows_and_triangles";
    snap.r = r;
    snap.m = m;
    log.push_back(snap);
    if (prev && !detail::lex_below(r, m, prev->first, prev->second))
      throw internal_error("(r, m) did not decrease in branch arrow/triangle elimination");
    prev = {r, m};
    if (r == 0) break;
    if (iter >= cap)
      throw internal_error("iteration cap exceeded in branch arrow/triangle elimination");
    if (candidates.empty())
      throw internal_error("branch structure present but no eligible vertex");

    const Candidate* pick = nullptr;
    for (const auto& c : candidates)
      if (c.m == *m && (!pick || std::make_pair(c.tiebreak, c.x) <
                                     std::make_pair(pick->tiebreak, pick->x)))
        pick = &c;

    if (pick->incoming) {
      auto [next, verts] = detail::phase2_move_incoming(g, st, pick->x, pick->m);
      g = std::move(next);
      for (const VertexId& v : verts) steps.push_back(RewriteStep::reflect(v));
    } else {
      GentleQuiver gop = opposite(g);
      AtildeStructure stop = atilde_structure(gop);
      auto [next_op, verts] = detail::phase2_move_incoming(gop, stop, pick->x, pick->m);
      g = opposite(next_op);
      for (const VertexId& v : verts) steps.push_back(RewriteStep::coreflect(v));
    }
    detail::assert_invariant_unchanged(g, f0, "branch arrow/triangle elimination");
  }

  return {g, RewriteTrace{g0, std::move(steps), g}, std::move(log)};
}

namespace detail {

// Traversal of a cycle quiver. verts[i] and verts[i+1] are joined by
// arrows[i]; forward[i] records whether the arrow points in traversal
// direction. The direction of travel is that of the smallest arrow id.
struct CycleWalk {
  std::vector<VertexId> verts;
  std::vector<ArrowId> arrows;
  std::vector<bool> forward;
  std::map<VertexId, int> pos;
  std::map<ArrowId, bool> oriented;

  int size() const { return static_cast<int>(arrows.size()); }
};

inline CycleWalk cycle_walk(const QuiverWithRelations& q) {
  if (q.arrows.empty() || q.arrows.size() != q.vertices.size())
    throw internal_error("cycle walk requested on a non-cycle quiver");
  ArrowId a0 = q.arrows.front().id;
  for (const Arrow& a : q.arrows) a0 = std::min(a0, a.id);

  CycleWalk w;
  const Arrow& first = q.arrow(a0);
  if (first.source == first.target)
    throw internal_error("cycle walk on a loop");
  w.verts.push_back(first.source);
  w.arrows.push_back(a0);
  w.forward.push_back(true);
  VertexId cur = first.target;
  ArrowId curEdge = a0;
  while (cur != w.verts.front()) {
    w.verts.push_back(cur);
    const Arrow* next = nullptr;
    for (const Arrow& a : q.arrows)
      if (a.id != curEdge && (a.source == cur || a.target == cur)) {
        next = &a;
        break;
      }
    if (!next) throw internal_error("cycle walk stuck at " + cur);
    w.arrows.push_back(next->id);
    w.forward.push_back(next->source == cur);
    cur = next->source == cur ? next->target : next->source;
    curEdge = next->id;
  }
  if (w.arrows.size() != q.arrows.size())
    throw internal_error("cycle walk did not cover the quiver");
  for (int i = 0; i < w.size(); ++i) w.pos[w.verts[i]] = i;
  for (int i = 0; i < w.size(); ++i) w.oriented[w.arrows[i]] = w.forward[i];
  return w;
}

struct GammaRelation {
  Relation rel;
  bool clockwise;  // oriented along the traversal direction
  VertexId head;   // target of rel.first
};

// Relations of g whose arrows both survive in the standard model; such a
// relation occupies two consecutive equioriented cycle steps.
inline std::vector<GammaRelation> gamma_relations(const GentleQuiver& g,
                                                  const CycleWalk& w) {
  std::vector<GammaRelation> out;
  for (const Relation& r : g.presentation().relations) {
    auto i1 = w.oriented.find(r.first);
    auto i2 = w.oriented.find(r.second);
    if (i1 == w.oriented.end() || i2 == w.oriented.end()) continue;
    if (i1->second != i2->second)
      throw internal_error("cycle relation is not equioriented");
    out.push_back({r, i1->second, g.arrow(r.first).target});
  }
  return out;
}

// The segment from a free relation to the nearest oppositely oriented cycle
// relation, walked in the free relation's own direction.
struct FreeRelationSegment {
  bool clockwise = true;
  int k = 0;
  std::vector<VertexId> xs;        // x0..xk
  std::vector<ArrowId> arrows;     // the k crossed cycle arrows
  std::vector<bool> along;         // crossed arrow points along the walk
  Relation opposite_rel;
};

inline FreeRelationSegment free_relation_segment(const CycleWalk& w,
                                                 const std::vector<GammaRelation>& rels,
                                                 const Relation& rho) {
  const GammaRelation* self = nullptr;
  for (const auto& gr : rels)
    if (gr.rel == rho) self = &gr;
  if (!self) throw internal_error("free relation missing from the cycle");

  FreeRelationSegment seg;
  seg.clockwise = self->clockwise;
  int i = w.pos.at(self->head);
  seg.xs.push_back(self->head);
  const int L = w.size();
  for (int step = 0;; ++step) {
    const VertexId& v = seg.xs.back();
    const GammaRelation* found = nullptr;
    for (const auto& gr : rels)
      if (gr.head == v && gr.clockwise != seg.clockwise) found = &gr;
    if (found) {
      seg.k = step;
      seg.opposite_rel = found->rel;
      return seg;
    }
    if (step >= L)
      throw internal_error("no oppositely oriented relation on the cycle");
    int edge = seg.clockwise ? i : (i - 1 + L) % L;
    seg.arrows.push_back(w.arrows[edge]);
    seg.along.push_back(w.forward[edge] == seg.clockwise);
    i = seg.clockwise ? (i + 1) % L : (i - 1 + L) % L;
    seg.xs.push_back(w.verts[i]);
  }
}

// Pairs (i, j) with i > j where the i-th crossed arrow runs along the free
// relation's direction outside C while the j-th runs against it or lies in C.
inline int segment_disorder(const FreeRelationSegment& seg, const ThreadSystem& ts) {
  int count = 0;
  for (int i = 0; i < seg.k; ++i) {
    if (!seg.along[i] || ts.in_cycle_set(seg.arrows[i])) continue;
    for (int j = 0; j < i; ++j)
      if (!seg.along[j] || ts.in_cycle_set(seg.arrows[j])) ++count;
  }
  return count;
}

// Smallest interior vertex index whose reflection improves the segment order,
// or nullopt when the segment is ordered.
inline std::optional<int> segment_bad_index(const FreeRelationSegment& seg,
                                            const ThreadSystem& ts) {
  for (int i = 1; i < seg.k; ++i) {
    bool next_forward_free =
        seg.along[i] && !ts.in_cycle_set(seg.arrows[i]);
    bool prev_blocking =
        !seg.along[i - 1] || ts.in_cycle_set(seg.arrows[i - 1]);
    if (next_forward_free && prev_blocking) return i;
  }
  return std::nullopt;
}

inline int segment_ordered_prefix(const FreeRelationSegment& seg,
                                  const ThreadSystem& ts) {
  int l = 0;
  while (l < seg.k && seg.along[l] && !ts.in_cycle_set(seg.arrows[l])) ++l;
  return l;
}

}  // namespace detail

inline std::vector<Relation> free_relations(const GentleQuiver& g,
                                            const ThreadSystem& ts) {
  std::vector<Relation> out;
  for (const Relation& r : g.presentation().relations)
    if (!ts.in_cycle_set(r.first) && !ts.in_cycle_set(r.second)) out.push_back(r);
  return out;
}

inline std::vector<Relation> free_relations(const GentleQuiver& g) {
  return free_relations(g, build_thread_system(g));
}

// Removes the free relations of a class A-tilde quiver without branch arrows
// or branch triangles. A round picks a free relation at minimal distance k
// from an oppositely oriented relation on the standard model, reorders the
// segment between them by interior reflections, then either shortens the
// distance by one boundary move or, at distance zero, eliminates by the final
// two or three reflections. (free relation count, k) decreases strictly per
// round; the segment disorder decreases strictly within the reordering.
inline NormalizationResult eliminate_free_relations(const GentleQuiver& g0) {
  detail::reject_loops(g0, "eliminate_free_relations");
  if (!classify(g0).classAtilde)
    throw std::invalid_argument("quiver is not in class A-tilde");
  if (has_branch_arrows(g0.presentation()))
    throw std::invalid_argument("quiver still has branch arrows");
  for (const auto& t : triangles(g0))
    if (is_branch_triangle(g0, t))
      throw std::invalid_argument("quiver still has a branch triangle");

  const AagInvariant f0 = aag_invariant(g0);
  GentleQuiver g = g0;
  std::vector<RewriteStep> steps;
  std::vector<MeasureSnapshot> log;
  const long outer_cap =
      (static_cast<long>(g0.relation_count()) + 2) * (static_cast<long>(g0.vertex_count()) + 3);
  const long inner_cap = static_cast<long>(g0.vertex_count() + 2) *
                         static_cast<long>(g0.vertex_count() + 2);

  auto apply_reflect = [&](const VertexId& v) {
    ReflectCheck chk = can_reflect(g, v);
    if (!chk.ok)
      throw internal_error("expected reflection unavailable at " + v + ": " + chk.reason);
    g = reflect(g, v);
    steps.push_back(RewriteStep::reflect(v));
    detail::assert_invariant_unchanged(g, f0, "free-relation elimination");
  };
  auto apply_coreflect = [&](const VertexId& v) {
    ReflectCheck chk = can_coreflect(g, v);
    if (!chk.ok)
      throw internal_error("expected coreflection unavailable at " + v + ": " + chk.reason);
    g = coreflect(g, v);
    steps.push_back(RewriteStep::coreflect(v));
    detail::assert_invariant_unchanged(g, f0, "free-relation elimination");
  };

  std::optional<std::pair<int, std::optional<int>>> prev;  // (s, k)
  for (long iter = 0;; ++iter) {
    ThreadSystem ts = build_thread_system(g);
    std::vector<Relation> free = free_relations(g, ts);
    int s = static_cast<int>(free.size());

    std::optional<int> k;
    std::optional<Relation> rho;
    if (s > 0) {
      GentleQuiver model = standard_model(g);
      detail::CycleWalk w = detail::cycle_walk(model.presentation());
      auto rels = detail::gamma_relations(g, w);
      for (const Relation& r : free) {
        auto seg = detail::free_relation_segment(w, rels, r);
        if (!k || seg.k < *k) {
          k = seg.k;
          rho = r;
        } else if (seg.k == *k &&
                   detail::relation_key(r) < detail::relation_key(*rho)) {
          rho = r;
        }
      }
    }

    MeasureSnapshot snap;
    snap.phase = "free_relations";
    snap.s = s;
    snap.k = k;
    log.push_back(snap);
    if (prev && !detail::lex_below(s, k, prev->first, prev->second))
      throw internal_error("(s, k) did not decrease in free-relation elimination");
    prev = {s, k};
    if (s == 0) break;
    if (iter >= outer_cap)
      throw internal_error("iteration cap exceeded in free-relation elimination");

    // Reorder the chosen segment by interior reflections.
    for (long inner = 0;; ++inner) {
      if (inner >= inner_cap)
        throw internal_error("ordering cap exceeded in free-relation elimination");
      ThreadSystem tcur = build_thread_system(g);
      GentleQuiver model = standard_model(g);
      detail::CycleWalk w = detail::cycle_walk(model.presentation());
      auto rels = detail::gamma_relations(g, w);
      auto seg = detail::free_relation_segment(w, rels, *rho);
      if (seg.k != *k)
        throw internal_error("segment reordering changed the distance measure");
      auto bad = detail::segment_bad_index(seg, tcur);
      if (!bad) break;
      int before = detail::segment_disorder(seg, tcur);
      apply_reflect(seg.xs[*bad]);
      ThreadSystem tnext = build_thread_system(g);
      GentleQuiver model2 = standard_model(g);
      detail::CycleWalk w2 = detail::cycle_walk(model2.presentation());
      auto rels2 = detail::gamma_relations(g, w2);
      auto seg2 = detail::free_relation_segment(w2, rels2, *rho);
      if (detail::segment_disorder(seg2, tnext) >= before)
        throw internal_error("segment disorder did not decrease");
      if (static_cast<int>(free_relations(g, tnext).size()) != s)
        throw internal_error("segment reordering changed the relation count");
    }

    // One boundary move (k > 0) or the final elimination (k == 0).
    {
      ThreadSystem tcur = build_thread_system(g);
      GentleQuiver model = standard_model(g);
      detail::CycleWalk w = detail::cycle_walk(model.presentation());
      auto rels = detail::gamma_relations(g, w);
      auto seg = detail::free_relation_segment(w, rels, *rho);
      if (seg.k > 0) {
        int l = detail::segment_ordered_prefix(seg, tcur);
        if (l > 0) {
          apply_reflect(seg.xs[0]);
        } else if (!tcur.in_cycle_set(seg.opposite_rel.first)) {
          apply_reflect(seg.xs[seg.k]);
        } else {
          apply_coreflect(seg.xs[seg.k]);
        }
      } else {
        VertexId x0 = seg.xs[0];
        VertexId yprime = g.arrow(seg.opposite_rel.first).source;
        if (tcur.in_cycle_set(seg.opposite_rel.first)) {
          apply_reflect(x0);
          apply_reflect(yprime);
        } else {
          VertexId y = g.arrow(rho->first).source;
          apply_reflect(x0);
          apply_reflect(y);
          apply_reflect(yprime);
        }
      }
    }
  }

  return {g, RewriteTrace{g0, std::move(steps), g}, std::move(log)};
}

// The full class A-tilde pipeline: branch relations, then branch arrows and
// branch triangles, then free relations. The result is cluster tilted of type
// A-tilde with the invariant preserved throughout.
inline NormalizationResult normalize_A_tilde(const GentleQuiver& g0) {
  detail::reject_loops(g0, "normalize_A_tilde");
  if (!classify(g0).classAtilde)
    throw std::invalid_argument("normalize_A_tilde: quiver is not in class A-tilde");

  const AagInvariant f0 = aag_invariant(g0);
  NormalizationResult p1 = eliminate_branch_relations_atilde(g0);
  NormalizationResult p2 = eliminate_branch_arrows_and_triangles(p1.final);
  NormalizationResult p3 = eliminate_free_relations(p2.final);

  std::vector<RewriteStep> steps = p1.trace.steps;
  steps.insert(steps.end(), p2.trace.steps.begin(), p2.trace.steps.end());
  steps.insert(steps.end(), p3.trace.steps.begin(), p3.trace.steps.end());
  std::vector<MeasureSnapshot> log = std::move(p1.measureLog);
  log.insert(log.end(), p2.measureLog.begin(), p2.measureLog.end());
  log.insert(log.end(), p3.measureLog.begin(), p3.measureLog.end());

  detail::assert_invariant_unchanged(p3.final, f0, "normalize_A_tilde");
  Classification cls = classify(p3.final);
  if (!cls.clusterTilted || *cls.clusterTilted != ClusterTiltedType::TypeAtilde)
    throw internal_error("normalize_A_tilde did not reach a cluster tilted quiver");
  return {p3.final, RewriteTrace{g0, std::move(steps), p3.final}, std::move(log)};
}

struct TraceCheck {
  bool ok = true;
  std::size_t step = 0;  // failing step index, or the step count on final mismatch
  std::string reason;

  static TraceCheck pass() { return {}; }
  static TraceCheck fail(std::size_t i, std::string r) {
    return {false, i, std::move(r)};
  }
};

// Replays a trace from its initial quiver, checking every step's
// precondition, gentleness of every intermediate, constancy of the derived
// invariant, and equality of the replay result with the recorded final
// quiver.
inline TraceCheck verify_trace(const RewriteTrace& t) {
  const AagInvariant f0 = aag_invariant(t.initial);
  GentleQuiver cur = t.initial;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const RewriteStep& st = t.steps[i];
    try {
      switch (st.kind) {
        case StepKind::Reflect: {
          ReflectCheck chk = can_reflect(cur, st.vertex);
          if (!chk.ok) return TraceCheck::fail(i, "precondition: " + chk.reason);
          cur = reflect(cur, st.vertex);
          break;
        }
        case StepKind::Coreflect: {
          ReflectCheck chk = can_coreflect(cur, st.vertex);
          if (!chk.ok) return TraceCheck::fail(i, "precondition: " + chk.reason);
          cur = coreflect(cur, st.vertex);
          break;
        }
        case StepKind::Complete: {
          auto res = complete_relations(cur, st.relations);
          if (std::holds_alternative<NotGentleCompletion>(res))
            return TraceCheck::fail(i, "completion is not gentle");
          cur = std::get<GentleQuiver>(std::move(res));
          break;
        }
        case StepKind::RemoveArrows: {
          std::set<ArrowId> ids(st.arrows.begin(), st.arrows.end());
          auto res = validate_gentle(remove_arrows(cur.presentation(), ids));
          if (!std::holds_alternative<GentleQuiver>(res))
            return TraceCheck::fail(i, "arrow removal left a non-gentle quiver");
          cur = std::get<GentleQuiver>(std::move(res));
          break;
        }
      }
    } catch (const std::exception& e) {
      return TraceCheck::fail(i, e.what());
    }
    if (!(aag_invariant(cur) == f0))
      return TraceCheck::fail(i, "derived invariant changed");
  }
  if (!structurally_equal(cur.presentation(), t.final.presentation()))
    return TraceCheck::fail(t.steps.size(), "replay result differs from the recorded final quiver");
  return TraceCheck::pass();
}

}  // namespace gentle
