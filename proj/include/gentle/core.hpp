#pragma once

// Quivers with monomial length-2 relations: presentation types, gentleness
// validation, canonical sign assignments and basic structural queries.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gentle {

using VertexId = std::string;
using ArrowId = std::string;
using Sign = int;  // +1 or -1

// Signals a broken internal invariant (a bug), never a caller error.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Arrow {
  ArrowId id;
  VertexId source;
  VertexId target;

  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// A zero relation (first, second). Composability means
// source(first) == target(second): as a walk, `second` is traversed first,
// then `first`.
struct Relation {
  ArrowId first;
  ArrowId second;

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation&, const Relation&) = default;
};

struct QuiverWithRelations {
  std::vector<VertexId> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  const Arrow* find_arrow(const ArrowId& id) const {
    for (const Arrow& a : arrows)
      if (a.id == id) return &a;
    return nullptr;
  }

  const Arrow& arrow(const ArrowId& id) const {
    if (const Arrow* a = find_arrow(id)) return *a;
    throw std::invalid_argument("unknown arrow id: " + id);
  }

  bool has_vertex(const VertexId& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }

  bool has_arrow(const ArrowId& id) const { return find_arrow(id) != nullptr; }

  bool has_relation(const ArrowId& first, const ArrowId& second) const {
    return std::find(relations.begin(), relations.end(),
                     Relation{first, second}) != relations.end();
  }

  std::vector<ArrowId> arrows_out(const VertexId& v) const {
    std::vector<ArrowId> out;
    for (const Arrow& a : arrows)
      if (a.source == v) out.push_back(a.id);
    return out;
  }

  std::vector<ArrowId> arrows_in(const VertexId& v) const {
    std::vector<ArrowId> in;
    for (const Arrow& a : arrows)
      if (a.target == v) in.push_back(a.id);
    return in;
  }

  // Vertices sorted, arrows sorted by id, relations sorted and deduplicated.
  QuiverWithRelations normalized() const {
    QuiverWithRelations q = *this;
    std::sort(q.vertices.begin(), q.vertices.end());
    q.vertices.erase(std::unique(q.vertices.begin(), q.vertices.end()),
                     q.vertices.end());
    std::sort(q.arrows.begin(), q.arrows.end(),
              [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    std::sort(q.relations.begin(), q.relations.end());
    q.relations.erase(std::unique(q.relations.begin(), q.relations.end()),
                      q.relations.end());
    return q;
  }

  friend bool operator==(const QuiverWithRelations&,
                         const QuiverWithRelations&) = default;
};

inline bool structurally_equal(const QuiverWithRelations& a,
                               const QuiverWithRelations& b) {
  return a.normalized() == b.normalized();
}

// All arrows reversed, every relation (a, b) mapped to (b, a).
inline QuiverWithRelations opposite(const QuiverWithRelations& q) {
  QuiverWithRelations op;
  op.vertices = q.vertices;
  for (const Arrow& a : q.arrows) op.arrows.push_back({a.id, a.target, a.source});
  for (const Relation& r : q.relations) op.relations.push_back({r.second, r.first});
  return op;
}

// Connectivity of the underlying undirected graph. An isolated vertex makes a
// multi-vertex quiver disconnected; the one-vertex quiver is connected.
inline bool connected(const QuiverWithRelations& q) {
  if (q.vertices.empty()) return false;
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Arrow& a : q.arrows) {
    adj[a.source].push_back(a.target);
    adj[a.target].push_back(a.source);
  }
  std::set<VertexId> seen{q.vertices.front()};
  std::vector<VertexId> stack{q.vertices.front()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const VertexId& w : adj[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen.size() == q.vertices.size();
}

// Arrows kept, every relation mentioning a removed arrow dropped, vertex set
// unchanged.
inline QuiverWithRelations remove_arrows(const QuiverWithRelations& q,
                                         const std::set<ArrowId>& ids) {
  for (const ArrowId& id : ids)
    if (!q.has_arrow(id)) throw std::invalid_argument("unknown arrow id: " + id);
  QuiverWithRelations out;
  out.vertices = q.vertices;
  for (const Arrow& a : q.arrows)
    if (!ids.count(a.id)) out.arrows.push_back(a);
  for (const Relation& r : q.relations)
    if (!ids.count(r.first) && !ids.count(r.second)) out.relations.push_back(r);
  return out;
}

enum class ViolationKind {
  Disconnected,
  OutDegreeExceeded,
  InDegreeExceeded,
  NonRelationSuccessorNotUnique,
  RelationSuccessorNotUnique,
  NonRelationPredecessorNotUnique,
  RelationPredecessorNotUnique,
  InfiniteDimensional,
  DanglingRelation,
  BadRelationComposability,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Disconnected: return "Disconnected";
    case ViolationKind::OutDegreeExceeded: return "OutDegreeExceeded";
    case ViolationKind::InDegreeExceeded: return "InDegreeExceeded";
    case ViolationKind::NonRelationSuccessorNotUnique: return "NonRelationSuccessorNotUnique";
    case ViolationKind::RelationSuccessorNotUnique: return "RelationSuccessorNotUnique";
    case ViolationKind::NonRelationPredecessorNotUnique: return "NonRelationPredecessorNotUnique";
    case ViolationKind::RelationPredecessorNotUnique: return "RelationPredecessorNotUnique";
    case ViolationKind::InfiniteDimensional: return "InfiniteDimensional";
    case ViolationKind::DanglingRelation: return "DanglingRelation";
    case ViolationKind::BadRelationComposability: return "BadRelationComposability";
  }
  return "?";
}

struct GentlenessViolation {
  ViolationKind kind;
  std::vector<VertexId> vertices;  // implicated vertices
  std::vector<ArrowId> arrows;     // implicated arrows

  std::string describe() const {
    std::ostringstream os;
    os << to_string(kind);
    if (!vertices.empty()) {
      os << " at";
      for (const auto& v : vertices) os << ' ' << v;
    }
    if (!arrows.empty()) {
      os << " [";
      for (std::size_t i = 0; i < arrows.size(); ++i)
        os << (i ? " " : "") << arrows[i];
      os << ']';
    }
    return os.str();
  }
};

struct SignAssignment {
  std::map<ArrowId, Sign> sigma;
  std::map<ArrowId, Sign> tau;

  friend bool operator==(const SignAssignment&, const SignAssignment&) = default;
};

// Checks the sign axioms: (i) arrows sharing a source have opposite sigma,
// (ii) arrows sharing a target have opposite tau, (iii) for composable
// (a, b) membership in R is equivalent to sigma(a) == tau(b).
inline std::vector<std::string> sign_assignment_errors(
    const QuiverWithRelations& q, const SignAssignment& s) {
  std::vector<std::string> errs;
  for (const Arrow& a : q.arrows) {
    if (!s.sigma.count(a.id) || !s.tau.count(a.id)) {
      errs.push_back("missing signs for arrow " + a.id);
      continue;
    }
    Sign sg = s.sigma.at(a.id), tu = s.tau.at(a.id);
    if ((sg != 1 && sg != -1) || (tu != 1 && tu != -1))
      errs.push_back("non-unit sign on arrow " + a.id);
  }
  if (!errs.empty()) return errs;
  for (const Arrow& a : q.arrows)
    for (const Arrow& b : q.arrows) {
      if (a.id < b.id && a.source == b.source &&
          s.sigma.at(a.id) == s.sigma.at(b.id))
        errs.push_back("arrows " + a.id + ", " + b.id +
                       " share a source but not opposite sigma");
      if (a.id < b.id && a.target == b.target &&
          s.tau.at(a.id) == s.tau.at(b.id))
        errs.push_back("arrows " + a.id + ", " + b.id +
                       " share a target but not opposite tau");
      if (a.source == b.target) {
        bool rel = q.has_relation(a.id, b.id);
        bool eq = s.sigma.at(a.id) == s.tau.at(b.id);
        if (rel != eq)
          errs.push_back("composable pair (" + a.id + ", " + b.id +
                         ") breaks the relation/sign correspondence");
      }
    }
  return errs;
}

namespace detail {

// Union-find over sign variables with parity relative to the root.
class ParityDsu {
 public:
  explicit ParityDsu(std::size_t n) : parent_(n), parity_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }

  int find(int x) {
    if (parent_[x] == x) return x;
    int root = find(parent_[x]);
    parity_[x] = static_cast<std::uint8_t>(parity_[x] ^ parity_[parent_[x]]);
    parent_[x] = root;
    return root;
  }

  std::uint8_t parity(int x) {
    find(x);
    return parent_[x] == x ? 0 : parity_[x];
  }

  // rel: 0 = equal, 1 = opposite. Returns false on parity conflict.
  bool unite(int a, int b, std::uint8_t rel) {
    int ra = find(a), rb = find(b);
    std::uint8_t pa = parity(a), pb = parity(b);
    if (ra == rb) return static_cast<std::uint8_t>(pa ^ pb) == rel;
    parent_[ra] = rb;
    parity_[ra] = static_cast<std::uint8_t>(pa ^ pb ^ rel);
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<std::uint8_t> parity_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Computes a valid sign assignment. Variables sigma(a), tau(a) are linked by
// parity constraints (same-source sigma flip, same-target tau flip, and the
// composability constraint). Canonically, each constraint component is seeded
// by giving +1 to its smallest variable, ordering variables by arrow id and
// then sigma before tau. A nonzero flip_seed instead seeds components
// pseudo-randomly; any seed yields a valid assignment.
inline SignAssignment compute_sign_assignment(const QuiverWithRelations& q,
                                              std::uint64_t flip_seed = 0) {
  std::vector<const Arrow*> arrows;
  for (const Arrow& a : q.arrows) arrows.push_back(&a);
  std::sort(arrows.begin(), arrows.end(),
            [](const Arrow* a, const Arrow* b) { return a->id < b->id; });
  std::map<ArrowId, int> index;
  for (std::size_t i = 0; i < arrows.size(); ++i) index[arrows[i]->id] = static_cast<int>(i);
  const auto svar = [&](const ArrowId& id) { return 2 * index.at(id); };
  const auto tvar = [&](const ArrowId& id) { return 2 * index.at(id) + 1; };

  detail::ParityDsu dsu(2 * arrows.size());
  const auto conflict = [](const std::string& what) {
    throw std::invalid_argument("inconsistent sign constraints: " + what);
  };
  for (const Arrow* a : arrows)
    for (const Arrow* b : arrows) {
      if (a->id < b->id && a->source == b->source)
        if (!dsu.unite(svar(a->id), svar(b->id), 1))
          conflict("sigma(" + a->id + ") vs sigma(" + b->id + ")");
      if (a->id < b->id && a->target == b->target)
        if (!dsu.unite(tvar(a->id), tvar(b->id), 1))
          conflict("tau(" + a->id + ") vs tau(" + b->id + ")");
      if (a->source == b->target) {
        std::uint8_t rel = q.has_relation(a->id, b->id) ? 0 : 1;
        if (!dsu.unite(svar(a->id), tvar(b->id), rel))
          conflict("sigma(" + a->id + ") vs tau(" + b->id + ")");
      }
    }

  std::map<int, std::uint8_t> seed;  // root -> parity value assigned to root
  std::vector<Sign> value(2 * arrows.size(), 0);
  for (std::size_t v = 0; v < 2 * arrows.size(); ++v) {
    int root = dsu.find(static_cast<int>(v));
    std::uint8_t p = dsu.parity(static_cast<int>(v));
    auto it = seed.find(root);
    if (it == seed.end()) {
      std::uint8_t s = p;  // makes this, the smallest variable, +1
      if (flip_seed != 0)
        s = static_cast<std::uint8_t>(s ^ (detail::mix64(flip_seed + root) & 1));
      it = seed.emplace(root, s).first;
    }
    value[v] = (p ^ it->second) == 0 ? +1 : -1;
  }

  SignAssignment out;
  for (const Arrow* a : arrows) {
    out.sigma[a->id] = value[svar(a->id)];
    out.tau[a->id] = value[tvar(a->id)];
  }
  return out;
}

class GentleQuiver;

std::variant<GentleQuiver, std::vector<GentlenessViolation>> validate_gentle(
    const QuiverWithRelations& q);
GentleQuiver gentle_with_signs(const QuiverWithRelations& q, SignAssignment signs);

// A validated gentle presentation together with a sign assignment. Immutable
// after construction; obtained only through validate_gentle / gentle_with_signs.
class GentleQuiver {
 public:
  const QuiverWithRelations& presentation() const { return pres_; }
  const SignAssignment& signs() const { return signs_; }

  std::size_t vertex_count() const { return pres_.vertices.size(); }
  std::size_t arrow_count() const { return pres_.arrows.size(); }
  std::size_t relation_count() const { return pres_.relations.size(); }

  const Arrow& arrow(const ArrowId& id) const { return pres_.arrow(id); }
  bool has_vertex(const VertexId& v) const { return pres_.has_vertex(v); }
  bool has_relation(const ArrowId& f, const ArrowId& s) const {
    return pres_.has_relation(f, s);
  }

  Sign sigma(const ArrowId& id) const { return signs_.sigma.at(id); }
  Sign tau(const ArrowId& id) const { return signs_.tau.at(id); }

  const std::vector<ArrowId>& arrows_out(const VertexId& v) const {
    auto it = out_.find(v);
    return it == out_.end() ? empty_ : it->second;
  }
  const std::vector<ArrowId>& arrows_in(const VertexId& v) const {
    auto it = in_.find(v);
    return it == in_.end() ? empty_ : it->second;
  }

  // d with (d, a) in R: the arrow extending a forbidden walk at its target end.
  std::optional<ArrowId> relation_continuation(const ArrowId& a) const {
    auto it = rel_cont_.find(a);
    if (it == rel_cont_.end()) return std::nullopt;
    return it->second;
  }
  // d with (a, d) in R.
  std::optional<ArrowId> relation_predecessor(const ArrowId& a) const {
    auto it = rel_pred_.find(a);
    if (it == rel_pred_.end()) return std::nullopt;
    return it->second;
  }
  // d with source(d) == target(a) and (d, a) not in R: the arrow extending a
  // permitted walk at its target end.
  std::optional<ArrowId> path_continuation(const ArrowId& a) const {
    auto it = path_cont_.find(a);
    if (it == path_cont_.end()) return std::nullopt;
    return it->second;
  }
  // d with target(d) == source(a) and (a, d) not in R.
  std::optional<ArrowId> path_predecessor(const ArrowId& a) const {
    auto it = path_pred_.find(a);
    if (it == path_pred_.end()) return std::nullopt;
    return it->second;
  }

 private:
  struct ValidatedTag {};
  GentleQuiver(ValidatedTag, QuiverWithRelations pres, SignAssignment signs)
      : pres_(std::move(pres)), signs_(std::move(signs)) {
    build_index();
  }

  void build_index() {
    for (const Arrow& a : pres_.arrows) {
      out_[a.source].push_back(a.id);
      in_[a.target].push_back(a.id);
    }
    for (auto& [v, ids] : out_) std::sort(ids.begin(), ids.end());
    for (auto& [v, ids] : in_) std::sort(ids.begin(), ids.end());
    for (const Relation& r : pres_.relations) {
      rel_cont_[r.second] = r.first;
      rel_pred_[r.first] = r.second;
    }
    for (const Arrow& a : pres_.arrows)
      for (const ArrowId& d : arrows_out(a.target))
        if (!pres_.has_relation(d, a.id)) {
          if (path_cont_.count(a.id))
            throw internal_error("permitted continuation of " + a.id + " not unique");
          path_cont_[a.id] = d;
        }
    for (const Arrow& a : pres_.arrows)
      for (const ArrowId& d : arrows_in(a.source))
        if (!pres_.has_relation(a.id, d)) {
          if (path_pred_.count(a.id))
            throw internal_error("permitted predecessor of " + a.id + " not unique");
          path_pred_[a.id] = d;
        }
  }

  friend std::variant<GentleQuiver, std::vector<GentlenessViolation>>
  validate_gentle(const QuiverWithRelations& q);
  friend GentleQuiver gentle_with_signs(const QuiverWithRelations& q,
                                        SignAssignment signs);

  QuiverWithRelations pres_;
  SignAssignment signs_;
  std::map<VertexId, std::vector<ArrowId>> out_, in_;
  std::map<ArrowId, ArrowId> rel_cont_, rel_pred_, path_cont_, path_pred_;
  std::vector<ArrowId> empty_;
};

namespace detail {

// Basic well-formedness that the parser already enforces; programmatic
// construction errors are rejected up front rather than reported as
// gentleness violations.
inline void check_construction(const QuiverWithRelations& q) {
  if (q.vertices.empty()) throw std::invalid_argument("empty vertex set");
  std::set<VertexId> vs(q.vertices.begin(), q.vertices.end());
  if (vs.size() != q.vertices.size())
    throw std::invalid_argument("duplicate vertex name");
  std::set<ArrowId> ids;
  for (const Arrow& a : q.arrows) {
    if (!ids.insert(a.id).second)
      throw std::invalid_argument("duplicate arrow id: " + a.id);
    if (!vs.count(a.source) || !vs.count(a.target))
      throw std::invalid_argument("arrow " + a.id + " references undeclared vertex");
  }
}

}  // namespace detail

// Checks conditions (1)-(3) plus connectivity, finite-dimensionality and the
// structural sanity of the relation set. Returns every violation found.
// Finite-dimensionality is decided on the composition graph over arrows, with
// an edge b -> a whenever source(a) == target(b) and (a, b) is not a relation;
// a directed cycle there yields relation-free walks of unbounded length.
inline std::vector<GentlenessViolation> gentleness_violations(
    const QuiverWithRelations& raw) {
  detail::check_construction(raw);
  QuiverWithRelations q = raw;
  std::sort(q.relations.begin(), q.relations.end());
  q.relations.erase(std::unique(q.relations.begin(), q.relations.end()),
                    q.relations.end());

  std::vector<GentlenessViolation> out;
  if (!connected(q)) out.push_back({ViolationKind::Disconnected, {}, {}});

  for (const VertexId& v : q.vertices) {
    auto o = q.arrows_out(v);
    auto i = q.arrows_in(v);
    if (o.size() > 2) out.push_back({ViolationKind::OutDegreeExceeded, {v}, o});
    if (i.size() > 2) out.push_back({ViolationKind::InDegreeExceeded, {v}, i});
  }

  bool refs_ok = true;
  for (const Relation& r : q.relations) {
    const Arrow* f = q.find_arrow(r.first);
    const Arrow* s = q.find_arrow(r.second);
    if (!f || !s) {
      out.push_back({ViolationKind::DanglingRelation, {}, {r.first, r.second}});
      refs_ok = false;
    } else if (f->source != s->target) {
      out.push_back({ViolationKind::BadRelationComposability, {}, {r.first, r.second}});
      refs_ok = false;
    }
  }
  if (!refs_ok) return out;

  for (const Arrow& a : q.arrows) {
    std::vector<ArrowId> freeSucc, relSucc, freePred, relPred;
    for (const Arrow& d : q.arrows) {
      if (d.source == a.target)
        (q.has_relation(d.id, a.id) ? relSucc : freeSucc).push_back(d.id);
      if (d.target == a.source)
        (q.has_relation(a.id, d.id) ? relPred : freePred).push_back(d.id);
    }
    auto flag = [&](ViolationKind k, std::vector<ArrowId> w) {
      w.insert(w.begin(), a.id);
      out.push_back({k, {}, std::move(w)});
    };
    if (freeSucc.size() > 1) flag(ViolationKind::NonRelationSuccessorNotUnique, freeSucc);
    if (relSucc.size() > 1) flag(ViolationKind::RelationSuccessorNotUnique, relSucc);
    if (freePred.size() > 1) flag(ViolationKind::NonRelationPredecessorNotUnique, freePred);
    if (relPred.size() > 1) flag(ViolationKind::RelationPredecessorNotUnique, relPred);
  }

  // Condition (4): composition graph acyclicity.
  {
    std::size_t n = q.arrows.size();
    std::vector<std::vector<int>> next(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (q.arrows[j].source == q.arrows[i].target &&
            !q.has_relation(q.arrows[j].id, q.arrows[i].id))
          next[i].push_back(static_cast<int>(j));
    std::vector<int> color(n, 0);
    std::vector<int> trail;
    std::vector<ArrowId> cycle;
    auto dfs = [&](auto&& self, int v) -> bool {
      color[v] = 1;
      trail.push_back(v);
      for (int w : next[v]) {
        if (color[w] == 1) {
          auto it = std::find(trail.begin(), trail.end(), w);
          for (; it != trail.end(); ++it) cycle.push_back(q.arrows[*it].id);
          return true;
        }
        if (color[w] == 0 && self(self, w)) return true;
      }
      color[v] = 2;
      trail.pop_back();
      return false;
    };
    for (std::size_t i = 0; i < n && cycle.empty(); ++i)
      if (color[i] == 0) dfs(dfs, static_cast<int>(i));
    if (!cycle.empty())
      out.push_back({ViolationKind::InfiniteDimensional, {}, cycle});
  }

  return out;
}

inline std::variant<GentleQuiver, std::vector<GentlenessViolation>>
validate_gentle(const QuiverWithRelations& q) {
  auto violations = gentleness_violations(q);
  if (!violations.empty()) return violations;
  QuiverWithRelations norm = q;
  std::sort(norm.relations.begin(), norm.relations.end());
  norm.relations.erase(std::unique(norm.relations.begin(), norm.relations.end()),
                       norm.relations.end());
  SignAssignment signs;
  try {
    signs = compute_sign_assignment(norm);
  } catch (const std::invalid_argument& e) {
    throw internal_error(std::string("sign assignment failed on validated input: ") + e.what());
  }
  return GentleQuiver(GentleQuiver::ValidatedTag{}, std::move(norm), std::move(signs));
}

// Same validation but with caller-provided signs, which must satisfy the sign
// axioms for this presentation.
inline GentleQuiver gentle_with_signs(const QuiverWithRelations& q,
                                      SignAssignment signs) {
  auto violations = gentleness_violations(q);
  if (!violations.empty()) {
    std::string msg = "not a gentle quiver:";
    for (const auto& v : violations) msg += " " + v.describe() + ";";
    throw std::invalid_argument(msg);
  }
  auto errs = sign_assignment_errors(q, signs);
  if (!errs.empty()) throw std::invalid_argument("bad sign assignment: " + errs.front());
  QuiverWithRelations norm = q;
  std::sort(norm.relations.begin(), norm.relations.end());
  norm.relations.erase(std::unique(norm.relations.begin(), norm.relations.end()),
                       norm.relations.end());
  return GentleQuiver(GentleQuiver::ValidatedTag{}, std::move(norm), std::move(signs));
}

inline GentleQuiver require_gentle(const QuiverWithRelations& q,
                                   const std::string& context) {
  auto r = validate_gentle(q);
  if (auto* g = std::get_if<GentleQuiver>(&r)) return *g;
  std::string msg = context + ": not gentle:";
  for (const auto& v : std::get<std::vector<GentlenessViolation>>(r))
    msg += " " + v.describe() + ";";
  throw internal_error(msg);
}

enum class ArrowKind { Branch, Cycle };

// Branch iff removing the arrow disconnects the underlying graph.
inline ArrowKind arrow_kind(const GentleQuiver& g, const ArrowId& a) {
  g.arrow(a);  // throws on unknown id
  QuiverWithRelations rest = remove_arrows(g.presentation(), {a});
  return connected(rest) ? ArrowKind::Cycle : ArrowKind::Branch;
}

inline bool is_branch_arrow(const GentleQuiver& g, const ArrowId& a) {
  return arrow_kind(g, a) == ArrowKind::Branch;
}

// Vertices of the connected component of q - {removed} containing `from`.
inline std::set<VertexId> component_of(const QuiverWithRelations& q,
                                       const std::set<ArrowId>& removed,
                                       const VertexId& from) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Arrow& a : q.arrows) {
    if (removed.count(a.id)) continue;
    adj[a.source].push_back(a.target);
    adj[a.target].push_back(a.source);
  }
  std::set<VertexId> seen{from};
  std::vector<VertexId> stack{from};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const VertexId& w : adj[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen;
}

}  // namespace gentle
