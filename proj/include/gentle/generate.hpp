#pragma once

// Seeded random instance generation for the two classified families.
//
// Class A: a random gentle quiver of tree type, with a chosen fraction of its
// isolated relations completed into triangles. Class A-tilde: the same from a
// random 1-cycle gentle quiver, rejecting candidates whose completion is not
// gentle or whose invariant does not decompose for the class.

#include <cstdint>
#include <sstream>

#include "gentle/classification.hpp"
#include "gentle/core.hpp"
#include "gentle/dsl.hpp"
#include "gentle/transforms.hpp"

namespace gentle {

enum class InstanceClass { A, Atilde };

namespace detail {

// Small deterministic generator (xorshift*), independent of the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed + 0x12345)) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool flip() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline std::string vertex_name(int i) { return "v" + std::to_string(i + 1); }
inline std::string arrow_name(int i) { return "a" + std::to_string(i + 1); }

// Per-vertex relation choices. With two composable out/in pairs the relation
// pattern is a perfect matching (two choices); with one of each it is free.
inline void place_relations(QuiverWithRelations& q, Rng& rng) {
  for (const VertexId& v : q.vertices) {
    auto outs = q.arrows_out(v);
    auto ins = q.arrows_in(v);
    if (outs.empty() || ins.empty()) continue;
    if (outs.size() == 1 && ins.size() == 1) {
      if (rng.flip()) q.relations.push_back({outs[0], ins[0]});
    } else if (outs.size() == 1) {
      q.relations.push_back({outs[0], ins[rng.below(2)]});
    } else if (ins.size() == 1) {
      q.relations.push_back({outs[rng.below(2)], ins[0]});
    } else {
      int m = rng.below(2);
      q.relations.push_back({outs[0], ins[m]});
      q.relations.push_back({outs[1], ins[1 - m]});
    }
  }
}

// A random orientation of a new edge between `fresh` and an existing vertex,
// respecting the in/out degree caps. Returns false when no attachment exists.
inline bool attach_vertex(QuiverWithRelations& q, Rng& rng, const VertexId& fresh,
                          int arrow_index) {
  struct Slot {
    VertexId host;
    bool outgoing;  // host -> fresh
  };
  std::vector<Slot> slots;
  for (const VertexId& u : q.vertices) {
    if (u == fresh) continue;
    if (q.arrows_out(u).size() < 2) slots.push_back({u, true});
    if (q.arrows_in(u).size() < 2) slots.push_back({u, false});
  }
  if (slots.empty()) return false;
  Slot s = slots[rng.below(static_cast<int>(slots.size()))];
  if (s.outgoing)
    q.arrows.push_back({arrow_name(arrow_index), s.host, fresh});
  else
    q.arrows.push_back({arrow_name(arrow_index), fresh, s.host});
  return true;
}

inline std::optional<GentleQuiver> random_tree_quiver(int n, Rng& rng) {
  QuiverWithRelations q;
  for (int i = 0; i < n; ++i) q.vertices.push_back(vertex_name(i));
  QuiverWithRelations body;
  body.vertices.push_back(q.vertices[0]);
  for (int i = 1; i < n; ++i) {
    body.vertices.push_back(q.vertices[i]);
    if (!attach_vertex(body, rng, q.vertices[i], i - 1)) return std::nullopt;
  }
  place_relations(body, rng);
  auto res = validate_gentle(body);
  if (auto* g = std::get_if<GentleQuiver>(&res)) return *g;
  return std::nullopt;
}

inline std::optional<GentleQuiver> random_one_cycle_quiver(int n, Rng& rng) {
  int cycle_len = 2 + rng.below(n - 1);  // in [2, n]
  QuiverWithRelations body;
  for (int i = 0; i < cycle_len; ++i) body.vertices.push_back(vertex_name(i));
  for (int i = 0; i < cycle_len; ++i) {
    VertexId a = vertex_name(i), b = vertex_name((i + 1) % cycle_len);
    if (rng.flip())
      body.arrows.push_back({arrow_name(i), a, b});
    else
      body.arrows.push_back({arrow_name(i), b, a});
  }
  for (int i = cycle_len; i < n; ++i) {
    body.vertices.push_back(vertex_name(i));
    if (!attach_vertex(body, rng, vertex_name(i), i)) return std::nullopt;
  }
  place_relations(body, rng);
  auto res = validate_gentle(body);
  if (auto* g = std::get_if<GentleQuiver>(&res)) return *g;
  return std::nullopt;  // e.g. an equioriented relation-free cycle
}

inline std::vector<Relation> pick_fraction(std::vector<Relation> pool,
                                           double fraction, Rng& rng) {
  for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
    std::swap(pool[i], pool[rng.below(i + 1)]);
  auto count = static_cast<std::size_t>(fraction * static_cast<double>(pool.size()) + 0.5);
  if (count > pool.size()) count = pool.size();
  pool.resize(count);
  return pool;
}

}  // namespace detail

// Deterministic in all arguments. Throws std::runtime_error when the
// rejection budget runs out (another seed will typically succeed).
inline QuiverDocument generate_random_instance(InstanceClass cls, int vertices,
                                               double fraction, std::uint64_t seed) {
  if (vertices < 2) throw std::invalid_argument("need at least 2 vertices");
  if (fraction < 0.0 || fraction > 1.0)
    throw std::invalid_argument("fraction must lie in [0, 1]");

  const int budget = 500;
  detail::Rng rng(seed ^ (cls == InstanceClass::A ? 0xA11CEull : 0xA71DEull));
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::optional<GentleQuiver> base =
        cls == InstanceClass::A ? detail::random_tree_quiver(vertices, rng)
                                : detail::random_one_cycle_quiver(vertices, rng);
    if (!base) continue;
    std::vector<Relation> r0 =
        detail::pick_fraction(isolated_relations(*base), fraction, rng);
    auto completed = complete_relations(*base, r0);
    if (!std::holds_alternative<GentleQuiver>(completed)) continue;
    GentleQuiver g = std::get<GentleQuiver>(std::move(completed));
    AagInvariant f = aag_invariant(g);
    if (cls == InstanceClass::A) {
      if (!decompose_class_A(f))
        throw internal_error("completed tree-type quiver left class A");
    } else {
      if (!decompose_class_A_tilde(f)) continue;  // the converse genuinely fails
    }
    std::ostringstream name;
    name << "gen_" << (cls == InstanceClass::A ? "A" : "Atilde") << "_v" << vertices
         << "_f" << static_cast<int>(fraction * 100 + 0.5) << "_s" << seed;
    return make_document(name.str(), g.presentation());
  }
  throw std::runtime_error("instance generation budget exhausted; try another seed");
}

}  // namespace gentle
