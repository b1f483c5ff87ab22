#pragma once

// Quiver rewrites: reflections and coreflections at a vertex, completion of
// isolated relations, triangle enumeration and model extraction.

#include <variant>

#include "gentle/classification.hpp"
#include "gentle/core.hpp"
#include "gentle/threads.hpp"

namespace gentle {

enum class StepKind { Reflect, Coreflect, Complete, RemoveArrows };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Reflect: return "reflect";
    case StepKind::Coreflect: return "coreflect";
    case StepKind::Complete: return "complete";
    case StepKind::RemoveArrows: return "remove_arrows";
  }
  return "?";
}

struct RewriteStep {
  StepKind kind;
  VertexId vertex;                  // Reflect / Coreflect
  std::vector<Relation> relations;  // Complete
  std::vector<ArrowId> arrows;      // RemoveArrows

  static RewriteStep reflect(VertexId v) {
    return {StepKind::Reflect, std::move(v), {}, {}};
  }
  static RewriteStep coreflect(VertexId v) {
    return {StepKind::Coreflect, std::move(v), {}, {}};
  }
  static RewriteStep complete(std::vector<Relation> rels) {
    return {StepKind::Complete, {}, std::move(rels), {}};
  }
  static RewriteStep remove(std::vector<ArrowId> ids) {
    return {StepKind::RemoveArrows, {}, {}, std::move(ids)};
  }

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct RewriteTrace {
  GentleQuiver initial;
  std::vector<RewriteStep> steps;
  GentleQuiver final;
};

// Loop handling for (co)reflections. The rewrite touches only arrows adjacent
// to the chosen vertex, so by default only a loop at that vertex blocks it; a
// strict policy refuses any quiver containing a loop.
enum class LoopPolicy { AtVertexOnly, RejectAnywhere };

struct ReflectCheck {
  bool ok = true;
  std::string reason;

  static ReflectCheck yes() { return {}; }
  static ReflectCheck no(std::string r) { return {false, std::move(r)}; }
};

// The reflection at x is defined when x carries no loop and every arrow a
// starting at x has a (necessarily unique) arrow b terminating at x with
// (a, b) not a relation.
inline ReflectCheck can_reflect(const GentleQuiver& g, const VertexId& x,
                                LoopPolicy policy = LoopPolicy::AtVertexOnly) {
  if (!g.has_vertex(x)) throw std::invalid_argument("unknown vertex: " + x);
  for (const Arrow& a : g.presentation().arrows) {
    if (a.source == a.target) {
      if (a.source == x)
        return ReflectCheck::no("loop " + a.id + " at vertex " + x);
      if (policy == LoopPolicy::RejectAnywhere)
        return ReflectCheck::no("loop " + a.id + " in the quiver");
      // A loop is also off limits when the rewrite would retarget it.
      for (const ArrowId& c : g.arrows_in(x))
        if (g.arrow(c).source == a.target && g.has_relation(c, a.id))
          return ReflectCheck::no("loop " + a.id + " touched by the rewrite at " + x);
    }
  }
  for (const ArrowId& a : g.arrows_out(x)) {
    int partners = 0;
    for (const ArrowId& b : g.arrows_in(x))
      if (!g.has_relation(a, b)) ++partners;
    if (partners == 0)
      return ReflectCheck::no("arrow " + a + " out of " + x +
                              " has no relation-free partner into " + x);
    if (partners > 1)
      throw internal_error("relation-free partner of " + a + " not unique");
  }
  return ReflectCheck::yes();
}

namespace detail {

// b_a: the unique arrow into x that composes with a without a relation.
inline ArrowId reflection_partner(const GentleQuiver& g, const VertexId& x,
                                  const ArrowId& a) {
  for (const ArrowId& b : g.arrows_in(x))
    if (!g.has_relation(a, b)) return b;
  throw internal_error("missing reflection partner for " + a);
}

}  // namespace detail

// Applies the reflection at x. Arrow ids are preserved; endpoints and
// relations are rewritten by the three-case source/target formulas and the
// three-part union for the new relation set. The result is revalidated.
inline GentleQuiver reflect(const GentleQuiver& g, const VertexId& x,
                            LoopPolicy policy = LoopPolicy::AtVertexOnly) {
  ReflectCheck chk = can_reflect(g, x, policy);
  if (!chk.ok)
    throw std::invalid_argument("cannot reflect at " + x + ": " + chk.reason);

  const QuiverWithRelations& q = g.presentation();
  QuiverWithRelations out;
  out.vertices = q.vertices;

  for (const Arrow& a : q.arrows) {
    Arrow na = a;
    if (a.target == x) {
      na.source = x;
    } else if (a.source == x) {
      na.source = q.arrow(detail::reflection_partner(g, x, a.id)).source;
    }
    if (a.target == x) {
      na.target = a.source;
    } else {
      bool pull_in = false;
      for (const ArrowId& b : g.arrows_in(x))
        if (q.arrow(b).source == a.target && q.has_relation(b, a.id)) pull_in = true;
      if (pull_in) na.target = x;
    }
    out.arrows.push_back(na);
  }

  for (const Relation& r : q.relations) {
    const Arrow& f = q.arrow(r.first);
    if (f.target != x && f.source != x) out.relations.push_back(r);
  }
  for (const ArrowId& a : g.arrows_out(x))
    out.relations.push_back({a, detail::reflection_partner(g, x, a)});
  for (const ArrowId& a : g.arrows_in(x))
    for (const Arrow& b : q.arrows) {
      bool hit = false;
      for (const ArrowId& c : g.arrows_in(x))
        if (c != a && q.arrow(c).source == b.target && q.has_relation(c, b.id))
          hit = true;
      if (hit) out.relations.push_back({a, b.id});
    }

  return require_gentle(out, "reflection at " + x);
}

inline ReflectCheck can_coreflect(const GentleQuiver& g, const VertexId& x,
                                  LoopPolicy policy = LoopPolicy::AtVertexOnly) {
  if (!g.has_vertex(x)) throw std::invalid_argument("unknown vertex: " + x);
  for (const Arrow& a : g.presentation().arrows) {
    if (a.source == a.target) {
      if (a.source == x)
        return ReflectCheck::no("loop " + a.id + " at vertex " + x);
      if (policy == LoopPolicy::RejectAnywhere)
        return ReflectCheck::no("loop " + a.id + " in the quiver");
      for (const ArrowId& c : g.arrows_out(x))
        if (g.arrow(c).target == a.source && g.has_relation(a.id, c))
          return ReflectCheck::no("loop " + a.id + " touched by the rewrite at " + x);
    }
  }
  for (const ArrowId& b : g.arrows_in(x)) {
    int partners = 0;
    for (const ArrowId& a : g.arrows_out(x))
      if (!g.has_relation(a, b)) ++partners;
    if (partners == 0)
      return ReflectCheck::no("arrow " + b + " into " + x +
                              " has no relation-free continuation out of " + x);
    if (partners > 1)
      throw internal_error("relation-free continuation of " + b + " not unique");
  }
  return ReflectCheck::yes();
}

inline GentleQuiver opposite(const GentleQuiver& g) {
  return require_gentle(opposite(g.presentation()), "opposite quiver");
}

// The coreflection is the dual rewrite: conjugation of the reflection by the
// opposite quiver.
inline GentleQuiver coreflect(const GentleQuiver& g, const VertexId& x,
                              LoopPolicy policy = LoopPolicy::AtVertexOnly) {
  ReflectCheck chk = can_coreflect(g, x, policy);
  if (!chk.ok)
    throw std::invalid_argument("cannot coreflect at " + x + ": " + chk.reason);
  return opposite(reflect(opposite(g), x, policy));
}

// A relation is isolated when, read as a length-2 forbidden walk, it is
// already maximal.
inline std::vector<Relation> isolated_relations(const GentleQuiver& g) {
  std::vector<Relation> out;
  for (const Relation& r : g.presentation().relations)
    if (!g.relation_continuation(r.first) && !g.relation_predecessor(r.second))
      out.push_back(r);
  return out;
}

struct NotGentleCompletion {
  std::vector<Thread> witness_orbit;  // a Phi-orbit fully contained in R0
};

// Completes each relation (a, b) in r0 with a fresh arrow from target(a) to
// source(b) and the two closing relations, producing a full-relation triangle.
// Fails exactly when some Phi-orbit consists entirely of completed relations.
inline std::variant<GentleQuiver, NotGentleCompletion> complete_relations(
    const GentleQuiver& g, const std::vector<Relation>& r0) {
  std::vector<Relation> isolated = isolated_relations(g);
  std::set<Relation> r0set;
  for (const Relation& r : r0) {
    if (std::find(isolated.begin(), isolated.end(), r) == isolated.end())
      throw std::invalid_argument("relation (" + r.first + ", " + r.second +
                                  ") is not isolated");
    r0set.insert(r);
  }

  ThreadSystem ts = build_thread_system(g);
  auto completed = [&](const Thread& t) {
    return t.kind() == ThreadKind::Antipath && t.length() == 2 &&
           r0set.count(Relation{t.arrows()[0], t.arrows()[1]}) > 0;
  };
  for (const auto& orbit : ts.antipath_orbits) {
    bool all = !orbit.empty();
    for (const Thread& t : orbit)
      if (!completed(t)) all = false;
    if (all) return NotGentleCompletion{orbit};
  }

  QuiverWithRelations out = g.presentation();
  std::set<ArrowId> used;
  for (const Arrow& a : out.arrows) used.insert(a.id);
  for (const Relation& r : r0) {
    ArrowId fresh = "g_" + r.first + "_" + r.second;
    for (int k = 2; used.count(fresh); ++k)
      fresh = "g_" + r.first + "_" + r.second + "_" + std::to_string(k);
    used.insert(fresh);
    const Arrow& alpha = g.arrow(r.first);
    const Arrow& beta = g.arrow(r.second);
    out.arrows.push_back({fresh, alpha.target, beta.source});
    out.relations.push_back({fresh, r.first});
    out.relations.push_back({r.second, fresh});
  }
  return require_gentle(out, "completion");
}

// All Psi-orbits of size three, each listed in cyclic walk order starting
// from its smallest arrow id.
inline std::vector<std::vector<ArrowId>> triangles(const ThreadSystem& ts) {
  std::vector<std::vector<ArrowId>> out;
  for (const auto& orbit : ts.cycle_orbits)
    if (orbit.size() == 3) out.push_back(orbit);
  return out;
}

inline std::vector<std::vector<ArrowId>> triangles(const GentleQuiver& g) {
  return triangles(build_thread_system(g));
}

struct ModelResult {
  GentleQuiver model;
  std::vector<ArrowId> removed;
};

// Removes one arrow per triangle (canonically the smallest id). Requires
// every full-relation cycle to be a triangle.
inline ModelResult model_of(const GentleQuiver& g) {
  ThreadSystem ts = build_thread_system(g);
  std::set<ArrowId> removed;
  for (const auto& orbit : ts.cycle_orbits) {
    if (orbit.size() != 3)
      throw std::invalid_argument("full-relation cycle of size " +
                                  std::to_string(orbit.size()) +
                                  " is not a triangle");
    removed.insert(*std::min_element(orbit.begin(), orbit.end()));
  }
  QuiverWithRelations rest = remove_arrows(g.presentation(), removed);
  return ModelResult{require_gentle(rest, "model extraction"),
                     {removed.begin(), removed.end()}};
}

inline bool is_branch_triangle(const GentleQuiver& g,
                               const std::vector<ArrowId>& triangle) {
  // Branch triangle: removing any two of its arrows disconnects the quiver.
  for (std::size_t i = 0; i < triangle.size(); ++i)
    for (std::size_t j = i + 1; j < triangle.size(); ++j) {
      QuiverWithRelations rest =
          remove_arrows(g.presentation(), {triangle[i], triangle[j]});
      if (connected(rest)) return false;
    }
  return true;
}

inline bool has_branch_arrows(const QuiverWithRelations& q) {
  for (const Arrow& a : q.arrows)
    if (!connected(remove_arrows(q, {a.id}))) return true;
  return false;
}

// For a class A-tilde quiver with neither branch arrows nor branch triangles:
// removes from each triangle the unique arrow whose single removal leaves no
// branch arrows. The result is a cycle.
inline GentleQuiver standard_model(const GentleQuiver& g) {
  if (!decompose_class_A_tilde(aag_invariant(g)))
    throw std::invalid_argument("quiver is not in class A-tilde");
  if (has_branch_arrows(g.presentation()))
    throw std::invalid_argument("quiver has branch arrows");
  ThreadSystem ts = build_thread_system(g);
  std::set<ArrowId> removed;
  for (const auto& orbit : triangles(ts)) {
    if (is_branch_triangle(g, orbit))
      throw std::invalid_argument("quiver has a branch triangle");
    std::vector<ArrowId> candidates;
    for (const ArrowId& c : orbit)
      if (!has_branch_arrows(remove_arrows(g.presentation(), {c})))
        candidates.push_back(c);
    if (candidates.size() != 1)
      throw internal_error("distinguished triangle arrow not unique");
    removed.insert(candidates.front());
  }
  GentleQuiver model =
      require_gentle(remove_arrows(g.presentation(), removed), "standard model");
  if (model.vertex_count() != model.arrow_count() ||
      has_branch_arrows(model.presentation()))
    throw internal_error("standard model is not a cycle");
  return model;
}

}  // namespace gentle
