#pragma once

// Decision procedures built on the invariant: tree type, 1-cycle, the two
// derived classes, cluster-tiltedness and Gorenstein dimension.

#include <optional>

#include "gentle/core.hpp"
#include "gentle/threads.hpp"

namespace gentle {

// Encodes f = m*[0,3] + [p+m+2, p].
struct ClassDecompositionA {
  int m = 0;
  int p = 0;

  friend bool operator==(const ClassDecompositionA&,
                         const ClassDecompositionA&) = default;
};

// Encodes f = (m1+m2)*[0,3] + [p+m1, p] + [q+m2, q] with p+m1 > 0, q+m2 > 0.
struct ClassDecompositionAtilde {
  int m1 = 0;
  int m2 = 0;
  int p = 0;
  int q = 0;

  friend bool operator==(const ClassDecompositionAtilde&,
                         const ClassDecompositionAtilde&) = default;
};

// The count m of [0,3] summands is forced: the residual summand [p+m+2, p]
// has first coordinate >= 2 and so can never be (0,3) itself.
inline std::optional<ClassDecompositionA> decompose_class_A(const AagInvariant& f) {
  int m = f(0, 3);
  std::vector<std::pair<std::pair<int, int>, int>> residual;
  for (const auto& [pq, mult] : f.support()) {
    int rest = pq == std::make_pair(0, 3) ? mult - m : mult;
    if (rest > 0) residual.push_back({pq, rest});
  }
  if (residual.size() != 1 || residual.front().second != 1) return std::nullopt;
  auto [a, b] = residual.front().first;
  if (a != b + m + 2) return std::nullopt;
  return ClassDecompositionA{m, b};
}

// Residual points have positive first coordinate, so m is again forced. The
// two summands are ordered canonically: larger (p+m, p) pair first.
inline std::optional<ClassDecompositionAtilde> decompose_class_A_tilde(
    const AagInvariant& f) {
  int m = f(0, 3);
  std::vector<std::pair<int, int>> points;
  for (const auto& [pq, mult] : f.support()) {
    int rest = pq == std::make_pair(0, 3) ? mult - m : mult;
    for (int i = 0; i < rest; ++i) points.push_back(pq);
    if (points.size() > 2) return std::nullopt;
  }
  if (points.size() != 2) return std::nullopt;
  std::sort(points.begin(), points.end());
  std::reverse(points.begin(), points.end());
  auto [a, b] = points[0];
  auto [c, d] = points[1];
  if (a < b || c < d || a <= 0 || c <= 0) return std::nullopt;
  if ((a - b) + (c - d) != m) return std::nullopt;
  return ClassDecompositionAtilde{a - b, c - d, b, d};
}

// Gorenstein dimension per the maximal-antipath formula; when there is no
// maximal antipath the theorem only bounds the value by one.
struct GorensteinDimension {
  bool exact = false;
  int value = 0;  // meaningful only when exact

  static GorensteinDimension exactly(int n) { return {true, n}; }
  static GorensteinDimension at_most_one() { return {false, 0}; }

  bool at_most(int bound) const { return exact ? value <= bound : bound >= 1; }

  friend bool operator==(const GorensteinDimension&,
                         const GorensteinDimension&) = default;
};

inline GorensteinDimension gorenstein_dimension(const ThreadSystem& ts) {
  if (ts.antipaths.empty()) return GorensteinDimension::at_most_one();
  int mx = 0;
  for (const Thread& t : ts.antipaths) mx = std::max(mx, t.length());
  return GorensteinDimension::exactly(mx);
}

inline GorensteinDimension gorenstein_dimension(const GentleQuiver& g) {
  return gorenstein_dimension(build_thread_system(g));
}

enum class ClusterTiltedType { TypeA, TypeAtilde };

struct Classification {
  bool gentle = true;
  bool treeType = false;
  bool oneCycle = false;
  std::optional<bool> typeAtilde;  // only defined for 1-cycle quivers
  std::optional<ClassDecompositionA> classA;
  std::optional<ClassDecompositionAtilde> classAtilde;
  std::optional<ClusterTiltedType> clusterTilted;
  GorensteinDimension gorenstein;
};

inline bool is_branch_relation(const GentleQuiver& g, const Relation& r) {
  return is_branch_arrow(g, r.first) || is_branch_arrow(g, r.second);
}

inline std::vector<Relation> branch_relations(const GentleQuiver& g) {
  std::vector<Relation> out;
  for (const Relation& r : g.presentation().relations)
    if (is_branch_relation(g, r)) out.push_back(r);
  return out;
}

inline Classification classify(const GentleQuiver& g) {
  Classification c;
  ThreadSystem ts = build_thread_system(g);
  AagInvariant f = aag_invariant(ts);

  int v = static_cast<int>(g.vertex_count());
  int a = static_cast<int>(g.arrow_count());
  c.treeType = v == a + 1;
  c.oneCycle = v == a;
  if (c.oneCycle) {
    // f = [p,p] + [q,q] characterizes type A-tilde among 1-cycle quivers.
    bool shape = true;
    int total = 0;
    for (const auto& [pq, mult] : f.support()) {
      if (pq.first != pq.second) shape = false;
      total += mult;
    }
    c.typeAtilde = shape && total == 2;
  }
  c.classA = decompose_class_A(f);
  c.classAtilde = decompose_class_A_tilde(f);
  if (c.classA && c.classAtilde)
    throw internal_error("invariant decomposes as both class A and class A-tilde");
  c.gorenstein = gorenstein_dimension(ts);

  if (c.classA || c.classAtilde) {
    // Two independent routes to cluster-tiltedness which must agree: the
    // Gorenstein bound, and the structural criterion (no branch relations for
    // class A; every relation inside a triangle for class A-tilde).
    bool viaGdim = c.gorenstein.at_most(1);
    bool viaStructure;
    if (c.classA) {
      viaStructure = branch_relations(g).empty();
    } else {
      viaStructure = true;
      for (const Relation& r : g.presentation().relations)
        if (!ts.in_cycle_set(r.first) || !ts.in_cycle_set(r.second)) {
          viaStructure = false;
          break;
        }
    }
    if (viaGdim != viaStructure)
      throw internal_error("cluster-tilted decision routes disagree");
    if (viaGdim)
      c.clusterTilted = c.classA ? ClusterTiltedType::TypeA
                                 : ClusterTiltedType::TypeAtilde;
  }
  return c;
}

enum class EquivalenceVerdict {
  EquivalentInClass,
  NotEquivalent,
  InconclusiveEqualInvariant,
};

// Unequal invariants always separate derived classes. Equal invariants decide
// equivalence only inside the two classified families; outside them the
// verdict stays inconclusive.
inline EquivalenceVerdict derived_equivalent(const GentleQuiver& g1,
                                             const GentleQuiver& g2) {
  AagInvariant f1 = aag_invariant(g1);
  AagInvariant f2 = aag_invariant(g2);
  if (!(f1 == f2)) return EquivalenceVerdict::NotEquivalent;
  bool in1 = decompose_class_A(f1).has_value() || decompose_class_A_tilde(f1).has_value();
  bool in2 = decompose_class_A(f2).has_value() || decompose_class_A_tilde(f2).has_value();
  return in1 && in2 ? EquivalenceVerdict::EquivalentInClass
                    : EquivalenceVerdict::InconclusiveEqualInvariant;
}

}  // namespace gentle
