#pragma once

// Local structure of the cube complex K(G0): 0-cubes are range-equivalence
// classes of rearrangements out of X(G0), 1-cubes are single expansions,
// the rank is the edge count of the target graph.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "basilica/diagram.hpp"
#include "basilica/families.hpp"
#include "basilica/homology.hpp"
#include "basilica/rewrite.hpp"

namespace basilica {

class CubeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CubeVertex {
  std::string key;
  GraphPairDiagram representative;

  static CubeVertex of(const GraphPairDiagram& f) {
    GraphPairDiagram r = reduce(f);
    std::string k = vertex_key(r);
    return CubeVertex{std::move(k), std::move(r)};
  }
  [[nodiscard]] std::size_t rank() const { return basilica::rank(representative); }
};

struct DownMove {
  Occurrence occurrence;
  CubeVertex target;
};

inline std::vector<DownMove> down_moves(const CubeVertex& v) {
  std::vector<DownMove> out;
  for (const auto& occ : occurrences(v.representative.base_range)) {
    out.push_back(DownMove{occ, CubeVertex::of(contract_range(v.representative, occ).diagram)});
  }
  return out;
}

inline std::vector<CubeVertex> up_moves(const CubeVertex& v, std::size_t rank_cap) {
  std::vector<CubeVertex> out;
  if (v.rank() + 2 > rank_cap) return out;
  for (const auto& eta : v.representative.base_range.edge_addresses()) {
    out.push_back(CubeVertex::of(expand_range(v.representative, eta)));
  }
  return out;
}

/// Simplices are the sets of pairwise edge-disjoint occurrences of the
/// target graph; vertex i is occurrences(...)[i].
inline SimplicialComplex descending_link(const CubeVertex& v) {
  const auto occ = occurrences(v.representative.base_range);
  const int k = static_cast<int>(occ.size());
  auto disjoint = [&](int i, int j) {
    for (const auto& a : occ[i].edges()) {
      if (occ[j].contains(a)) return false;
    }
    return true;
  };
  SimplicialComplex c(k);
  if (k > 20) throw CubeError("descending_link: too many occurrences");
  for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
    Simplex s;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (!(mask & (1UL << i))) continue;
      for (int j : s) ok = ok && disjoint(i, j);
      s.push_back(i);
    }
    if (ok && s.size() > 1) c.add_simplex(s);
  }
  return c;
}

struct ExploredGraph {
  std::vector<CubeVertex> vertices;
  std::map<std::string, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // (lower rank, higher rank)
  bool exhaustive = true;

  [[nodiscard]] std::map<std::size_t, std::size_t> rank_histogram() const {
    std::map<std::size_t, std::size_t> h;
    for (const auto& v : vertices) ++h[v.rank()];
    return h;
  }
};

/// Breadth-first exploration of the vertices reachable from `start` through
/// vertices of rank at most `rank_cap`. At most `node_budget` vertices are
/// kept; hitting the budget clears the exhaustive flag. Deterministic.
inline ExploredGraph bfs_sublevel(const CubeVertex& start, std::size_t rank_cap, std::size_t node_budget) {
  if (start.rank() > rank_cap) throw CubeError("bfs_sublevel: start vertex above rank cap");
  ExploredGraph g;
  if (node_budget == 0) {
    g.exhaustive = false;
    return g;
  }
  g.vertices.push_back(start);
  g.index[start.key] = 0;
  for (std::size_t qi = 0; qi < g.vertices.size(); ++qi) {
    std::vector<CubeVertex> next;
    for (auto& d : down_moves(g.vertices[qi])) next.push_back(std::move(d.target));
    for (auto& u : up_moves(g.vertices[qi], rank_cap)) next.push_back(std::move(u));
    for (auto& w : next) {
      auto it = g.index.find(w.key);
      if (it == g.index.end()) {
        if (g.vertices.size() >= node_budget) {
          g.exhaustive = false;
          continue;
        }
        it = g.index.emplace(w.key, g.vertices.size()).first;
        g.vertices.push_back(std::move(w));
      }
      const std::size_t a = qi, b = it->second;
      g.edges.insert(g.vertices[a].rank() < g.vertices[b].rank() ? std::pair{a, b} : std::pair{b, a});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Walls

namespace detail {
inline std::set<Address> edge_set(const Occurrence& o) { return {o.in, o.loop, o.out}; }
}  // namespace detail

/// The wall through the 1-cube [f] - [∇_T f].
struct WallSpec {
  GraphPairDiagram base;
  Occurrence triple;

  /// Cell signature of the merged edge at the lower end of the defining
  /// 1-cube; a 1-cube is in the wall iff its expanded edge has this signature.
  [[nodiscard]] CellSignature signature() const {
    const auto c = contract_range(base, triple);
    return cell_signature(c.diagram, c.merged);
  }
};

enum class TrackerPolicy { Exact, Conservative };

/// True when the 1-cube traversed by the move from `before` to `after` lies
/// in the wall with signature `wall`.
inline bool crosses_wall(const CellSignature& wall, const GraphPairDiagram& before, const Move& m,
                         const GraphPairDiagram& after) {
  if (const auto* e = std::get_if<ExpandMove>(&m)) return cell_signature(before, e->edge) == wall;
  if (!std::holds_alternative<ContractMove>(m)) return false;
  std::vector<Address> added;
  for (const auto& a : after.base_range.edge_addresses()) {
    if (!before.base_range.has_edge(a)) added.push_back(a);
  }
  return added.size() == 1 && cell_signature(after, added.front()) == wall;
}

/// Follows one wall along a move path. The exact policy compares cell
/// signatures and is always determinate. The conservative policy only
/// watches edge names: a move equal to the marked triple's contraction or
/// the marked merged edge's expansion crosses; a move overlapping the marks
/// partially degrades the tracker, and a later move touching a degraded
/// remnant makes it indeterminate.
class WallTracker {
 public:
  enum class Status { Intact, Suspended, Degraded, Indeterminate };

  WallTracker(const WallSpec& wall, TrackerPolicy policy)
      : policy_(policy), signature_(wall.signature()), marked_(detail::edge_set(wall.triple)) {}

  /// Records the move from `before` to `after`.
  void step(const GraphPairDiagram& before, const Move& m, const GraphPairDiagram& after) {
    if (policy_ == TrackerPolicy::Exact) {
      step_exact(before, m, after);
    } else {
      step_conservative(before, m);
    }
  }

  [[nodiscard]] std::size_t crossings() const { return crossings_; }
  [[nodiscard]] Status status() const { return status_; }
  [[nodiscard]] bool determinate() const { return status_ != Status::Indeterminate; }
  /// +1 on the side of the path's start, -1 across the wall.
  [[nodiscard]] int side() const { return crossings_ % 2 == 0 ? 1 : -1; }

 private:
  void step_exact(const GraphPairDiagram& before, const Move& m, const GraphPairDiagram& after) {
    if (crosses_wall(signature_, before, m, after)) ++crossings_;
  }

  bool touches(const std::set<Address>& edges) const {
    return std::any_of(edges.begin(), edges.end(), [&](const Address& a) { return marked_.count(a) > 0; });
  }

  void step_conservative(const GraphPairDiagram& before, const Move& m) {
    if (status_ == Status::Indeterminate) return;
    if (const auto* b = std::get_if<BaseIsoMove>(&m)) {
      std::set<Address> renamed;
      for (const auto& a : marked_) renamed.insert(b->psi.at(a));
      marked_ = std::move(renamed);
      for (auto& s : suspended_) s = b->psi.at(s);
      return;
    }
    if (const auto* e = std::get_if<ExpandMove>(&m)) {
      const std::set<Address> hit{e->edge};
      if (status_ == Status::Degraded) {
        if (touches(hit)) status_ = Status::Indeterminate;
        return;
      }
      if (marked_.size() == 1 && marked_.count(e->edge)) {
        ++crossings_;
        marked_ = {e->edge.child(1), e->edge.child(2), e->edge.child(3)};
        return;
      }
      if (marked_.count(e->edge)) {
        if (status_ == Status::Suspended) {
          status_ = Status::Indeterminate;
          return;
        }
        status_ = Status::Suspended;
        marked_.erase(e->edge);
        suspended_ = {e->edge};
        for (int i = 1; i <= 3; ++i) marked_.insert(e->edge.child(i));
      }
      return;
    }
    const auto& occ = std::get<ContractMove>(m).occurrence;
    const std::set<Address> hit = detail::edge_set(occ);
    const Address merged = fresh_token(before.base_range);
    if (status_ == Status::Degraded) {
      if (touches(hit)) status_ = Status::Indeterminate;
      return;
    }
    if (status_ == Status::Suspended) {
      const Address s = suspended_.front();
      if (hit == std::set<Address>{s.child(1), s.child(2), s.child(3)}) {
        for (const auto& a : hit) marked_.erase(a);
        marked_.insert(merged);
        status_ = Status::Intact;
      } else if (touches(hit)) {
        status_ = Status::Indeterminate;
      }
      return;
    }
    if (hit == marked_) {
      ++crossings_;
      marked_ = {merged};
    } else if (touches(hit)) {
      status_ = Status::Degraded;
      for (const auto& a : hit) marked_.erase(a);
    }
  }

  TrackerPolicy policy_;
  CellSignature signature_;
  std::set<Address> marked_;
  std::vector<Address> suspended_;
  Status status_ = Status::Intact;
  std::size_t crossings_ = 0;
};

struct PathSides {
  std::vector<int> sides;                // +1 / -1 per wall
  std::vector<std::size_t> crossings;    // per wall
  bool indeterminate = false;
  std::vector<GraphPairDiagram> trace;   // every vertex along the path, start included
};

/// Walks `path` from `start`, counting crossings of each wall. Sides are
/// relative to `start`.
inline PathSides certify_path_sides(const GraphPairDiagram& start, const std::vector<WallSpec>& walls,
                                    const MoveWord& path, TrackerPolicy policy = TrackerPolicy::Exact) {
  std::vector<WallTracker> trackers;
  for (const auto& w : walls) trackers.emplace_back(w, policy);
  PathSides out;
  out.trace.push_back(start);
  for (const auto& m : path) {
    GraphPairDiagram next = apply_move(out.trace.back(), m);
    for (auto& t : trackers) t.step(out.trace.back(), m, next);
    out.trace.push_back(std::move(next));
  }
  for (const auto& t : trackers) {
    out.sides.push_back(t.side());
    out.crossings.push_back(t.crossings());
    out.indeterminate = out.indeterminate || !t.determinate();
  }
  return out;
}

/// Vertices reachable from labelled starting points within `rank_cap`, each
/// with its side of every wall. Sides are carried along move edges by
/// crossing parity; reaching a known vertex with different sides is
/// recorded as a conflict.
struct SidedExploration {
  ExploredGraph graph;
  std::vector<std::vector<int>> sides;
  std::size_t conflicts = 0;
};

inline SidedExploration sided_bfs(const std::vector<std::pair<GraphPairDiagram, std::vector<int>>>& starts,
                                  const std::vector<CellSignature>& walls, std::size_t rank_cap,
                                  std::size_t node_budget) {
  SidedExploration out;
  ExploredGraph& g = out.graph;
  std::vector<GraphPairDiagram> diagrams;
  auto visit = [&](const GraphPairDiagram& f, const std::vector<int>& sides) -> std::optional<std::size_t> {
    CubeVertex v = CubeVertex::of(f);
    const auto it = g.index.find(v.key);
    if (it != g.index.end()) {
      if (out.sides[it->second] != sides) ++out.conflicts;
      return it->second;
    }
    if (g.vertices.size() >= node_budget) {
      g.exhaustive = false;
      return std::nullopt;
    }
    g.index.emplace(v.key, g.vertices.size());
    g.vertices.push_back(std::move(v));
    out.sides.push_back(sides);
    diagrams.push_back(f);
    return g.vertices.size() - 1;
  };
  for (const auto& [f, sides] : starts) {
    if (rank(f) > rank_cap) throw CubeError("sided_bfs: start vertex above rank cap");
    visit(f, sides);
  }
  for (std::size_t qi = 0; qi < diagrams.size(); ++qi) {
    const GraphPairDiagram f = diagrams[qi];
    MoveWord moves;
    for (const auto& occ : occurrences(f.base_range)) moves.push_back(ContractMove{occ});
    if (rank(f) + 2 <= rank_cap) {
      for (const auto& eta : f.base_range.edge_addresses()) moves.push_back(ExpandMove{eta});
    }
    for (const auto& m : moves) {
      const GraphPairDiagram next = apply_move(f, m);
      std::vector<int> sides = out.sides[qi];
      for (std::size_t w = 0; w < walls.size(); ++w) {
        if (crosses_wall(walls[w], f, m, next)) sides[w] = -sides[w];
      }
      if (const auto j = visit(next, sides)) {
        g.edges.insert(rank(f) < rank(next) ? std::pair{qi, *j} : std::pair{*j, qi});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The vertex [f_n] and its two walls

/// A rearrangement X(G0) -> X(J_n): an expansion of G0 isomorphic to J_n,
/// mapped onto J_n.
inline GraphPairDiagram make_f_n(std::size_t n) {
  const AddressedGraph g0 = make_G0();
  const AddressedGraph j = make_J(n);
  const auto e = find_isomorphic_expansion(g0, j);
  if (!e) throw CubeError("J_n is not an expansion of G0");
  const auto iso = isomorphism(*e, j);
  GraphPairDiagram f{g0, j, *e, j, *iso};
  f.validate();
  return f;
}

struct WallPair {
  GraphPairDiagram f_n;
  WallSpec h1;  // through [f_n] - [∇_{x,y,z} f_n]
  WallSpec h2;  // through [f_n] - [∇_{c,d,e} f_n]
};

inline WallPair make_walls(std::size_t n) {
  const auto frame = make_wall_frame(n);
  GraphPairDiagram f = make_f_n(n);
  return WallPair{f, WallSpec{f, frame.triple1}, WallSpec{f, frame.triple2}};
}

struct QuarterWitness {
  std::string name;
  MoveWord path;
  CubeVertex vertex;
  std::vector<int> sides;
  bool indeterminate = false;
};

/// The four vertices ∇_{abc}∇_{vwx} f_n, ∇_{cde}∇_{vwx} f_n,
/// ∇_{abc}∇_{xyz} f_n, ∇_{cde}∇_{xyz} f_n with their sides of (H1, H2).
inline std::vector<QuarterWitness> quarter_witnesses(std::size_t n, TrackerPolicy policy = TrackerPolicy::Exact) {
  const WallPair walls = make_walls(n);
  const Occurrence vwx{Address("v"), Address("w"), Address("x"), "p"};
  const Occurrence xyz{Address("x"), Address("y"), Address("z"), "q"};
  const Occurrence abc{Address("a"), Address("b"), Address("c"), "l"};
  const Occurrence cde{Address("c"), Address("d"), Address("e"), "m"};
  std::vector<QuarterWitness> out;
  for (const auto& [first, fname] : {std::pair{vwx, "vwx"}, std::pair{xyz, "xyz"}}) {
    for (const auto& [second, sname] : {std::pair{abc, "abc"}, std::pair{cde, "cde"}}) {
      QuarterWitness w;
      w.name = std::string("∇") + sname + " ∇" + fname;
      w.path = {ContractMove{first}, ContractMove{second}};
      const auto r = certify_path_sides(walls.f_n, {walls.h1, walls.h2}, w.path, policy);
      w.vertex = CubeVertex::of(r.trace.back());
      w.sides = r.sides;
      w.indeterminate = r.indeterminate;
      out.push_back(std::move(w));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wall model

struct WallEmbedding {
  CubeVertex corner;                 // image of [phi]: the minimal corner of the 2-cube
  CubeVertex top;                    // both wall edges expanded: the maximal corner
  std::size_t rank_phi = 0;
  bool edges_in_walls = false;       // the 2-cube's two edges at the corner lie in H1 and H2
  bool adjacent_to_frame = false;    // corner is ∇cde∇xyz f_n when phi is trivial
};

/// Image in H1 ∩ H2 of a rearrangement phi: X(O_n) -> X(G'). The two wall
/// edges are added back at the images of their endpoints (which have degree
/// other than 4, so they are vertices of G'), and the result is composed
/// with ∇_{cde}∇_{xyz} f_n.
inline WallEmbedding wall_model_embed(std::size_t n, const GraphPairDiagram& phi) {
  const auto frame = make_wall_frame(n);
  const AddressedGraph o = make_O(n);
  if (phi.base_domain.edges() != o.edges()) throw CubeError("wall_model_embed: phi does not start at O_n");
  const WallPair walls = make_walls(n);
  const GraphPairDiagram h =
      contract_range(contract_range(walls.f_n, frame.triple1).diagram, frame.triple2).diagram;

  // Vertex map of phi on the domain's base vertices.
  std::map<Vertex, Vertex> vmap;
  for (const auto& [e, rho] : phi.phi) {
    vmap[phi.domain.source(e)] = phi.range.source(rho);
    vmap[phi.domain.target(e)] = phi.range.target(rho);
  }
  AddressedGraph base_range = phi.base_range;
  AddressedGraph range = phi.range;
  std::map<Address, Address> wall_names;
  for (const Address& dom : {frame.wall1, frame.wall2}) {
    const Address rng = fresh_token(base_range);
    wall_names[dom] = rng;
    const Incidence inc = frame.contracted.incidence(dom);
    const Vertex s = vmap.at(inc.source), t = vmap.at(inc.target);
    if (!base_range.has_vertex(s) || !base_range.has_vertex(t)) {
      throw CubeError("wall_model_embed: wall endpoint is not a vertex of the target base");
    }
    base_range.add_edge(rng, s, t);
    range.add_edge(rng, s, t);
  }
  std::set<Address> dom_edges;
  for (const auto& [a, inc] : phi.domain.edges()) dom_edges.insert(a);
  dom_edges.insert(frame.wall1);
  dom_edges.insert(frame.wall2);
  GraphPairDiagram lifted{frame.contracted, base_range, build_expansion(frame.contracted, dom_edges), range, phi.phi};
  for (const auto& [dom, rng] : wall_names) lifted.phi[dom] = rng;
  lifted.validate();

  const GraphPairDiagram corner = compose(lifted, h);
  const Address m1 = wall_names.at(frame.wall1), m2 = wall_names.at(frame.wall2);
  WallEmbedding out;
  out.rank_phi = rank(phi);
  out.corner = CubeVertex::of(corner);
  out.top = CubeVertex::of(expand_range(expand_range(corner, m1), m2));
  out.edges_in_walls =
      cell_signature(corner, m1) == walls.h1.signature() && cell_signature(corner, m2) == walls.h2.signature();
  out.adjacent_to_frame = out.corner.key == CubeVertex::of(h).key;
  return out;
}

/// Random rearrangement out of X(g): a random walk of target-side moves.
inline GraphPairDiagram random_rearrangement(const AddressedGraph& g, std::size_t steps, std::mt19937_64& rng) {
  GraphPairDiagram f = GraphPairDiagram::identity(g);
  for (std::size_t i = 0; i < steps; ++i) {
    const auto occ = occurrences(f.base_range);
    if (!occ.empty() && rng() % 3 == 0) {
      f = contract_range(f, occ[rng() % occ.size()]).diagram;
    } else {
      const auto edges = f.base_range.edge_addresses();
      f = expand_range(f, edges[rng() % edges.size()]);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Detour between two neighbours below a vertex, avoiding the wall of Z

struct DetourConfig {
  GraphPairDiagram f;
  Occurrence a;
  Occurrence b;
  Occurrence z;
};

struct DetourResult {
  MoveWord path;
  std::vector<GraphPairDiagram> trace;  // y, ..., z
  std::vector<std::size_t> ranks;
  std::size_t rank_x = 0;
  std::size_t z_wall_crossings = 0;
  bool conservative_indeterminate = false;
  bool endpoints_ok = false;
  bool twisted_differs = false;  // [∇Z''∇Z'Δε f] != [∇Z f]
};

namespace detail {

inline std::optional<std::string> detour_precondition_defect(const DetourConfig& c) {
  const AddressedGraph& g = c.f.base_range;
  for (const auto* o : {&c.a, &c.b, &c.z}) {
    if (auto why = occurrence_defect(g, *o)) return "not an occurrence " + o->str() + ": " + *why;
  }
  std::set<Address> ab;
  const auto ea = edge_set(c.a), eb = edge_set(c.b), ez = edge_set(c.z);
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::inserter(ab, ab.end()));
  if (ab.size() != 1) return std::string("A and B must share exactly one edge");
  for (const auto& e : ez) {
    if (ea.count(e) || eb.count(e)) return std::string("Z must be edge-disjoint from A and B");
  }
  return std::nullopt;
}

/// Edge of the target base whose cell signature is `sig`.
inline Address edge_with_signature(const GraphPairDiagram& f, const CellSignature& sig) {
  for (const auto& a : f.base_range.edge_addresses()) {
    if (cell_signature(f, a) == sig) return a;
  }
  throw CubeError("detour: lost track of an edge");
}

inline std::vector<CellSignature> signatures(const GraphPairDiagram& f, const Occurrence& o) {
  return {cell_signature(f, o.in), cell_signature(f, o.loop), cell_signature(f, o.out)};
}

/// The occurrence of f's target base whose edges carry the given signatures.
inline Occurrence occurrence_with_signatures(const GraphPairDiagram& f, const std::vector<CellSignature>& sigs) {
  std::set<Address> edges;
  for (const auto& s : sigs) edges.insert(edge_with_signature(f, s));
  const auto occ = find_occurrence(f.base_range, edges);
  if (!occ) throw CubeError("detour: tracked edges no longer form an occurrence");
  return *occ;
}

/// The occurrence containing the two edges of `o` not in `gone`, after `gone`
/// was contracted (the image of o).
inline Occurrence image_after(const AddressedGraph& g, const Occurrence& o, const Occurrence& gone) {
  for (const auto& occ : occurrences(g)) {
    int kept = 0;
    for (const auto& e : o.edges()) kept += !gone.contains(e) && occ.contains(e);
    if (kept == 2) return occ;
  }
  throw CubeError("detour: image occurrence not found");
}

}  // namespace detail

/// The explicit path from y = [∇_A f] to z = [∇_B f] through vertices of
/// rank below rank(f), never crossing the wall of [f] - [∇_Z f]. Z is
/// (γ, δ, ε) with ε its out-edge.
inline DetourResult detour_path(const DetourConfig& c) {
  using detail::occurrence_with_signatures;
  using detail::signatures;
  if (auto why = detail::detour_precondition_defect(c)) throw CubeError("detour precondition: " + *why);
  const GraphPairDiagram& f = c.f;
  const Address eps = c.z.out;

  // Reference diagrams and the signatures that identify edges along the way.
  const auto cA = contract_range(f, c.a);
  const auto cB = contract_range(f, c.b);
  const Occurrence b1 = detail::image_after(cA.diagram.base_range, c.b, c.a);  // B'
  const Occurrence a1 = detail::image_after(cB.diagram.base_range, c.a, c.b);  // A'
  const auto cB1A = contract_range(cA.diagram, b1);
  const auto cA1B = contract_range(cB.diagram, a1);
  const GraphPairDiagram de = expand_range(f, eps);
  const Occurrence z1{c.z.in, c.z.loop, eps.child(1), c.z.interior};  // Z'
  const auto cZ1 = contract_range(de, z1);
  const Occurrence z2{cZ1.merged, eps.child(2), eps.child(3), Vertex::interior_of(eps)};  // Z''
  const auto cZ2 = contract_range(cZ1.diagram, z2);

  const auto sig_b = signatures(f, c.b);
  const auto sig_b1 = signatures(cA.diagram, b1), sig_a1 = signatures(cB.diagram, a1);
  const auto sig_z1 = signatures(de, z1), sig_z2 = signatures(cZ1.diagram, z2);
  const auto sig_eps = signatures(de, Occurrence{eps.child(1), eps.child(2), eps.child(3), Vertex::interior_of(eps)});
  const auto mu_a = cell_signature(cA.diagram, cA.merged);
  const auto mu_b1 = cell_signature(cB1A.diagram, cB1A.merged);
  const auto mu_a1 = cell_signature(cA1B.diagram, cA1B.merged);
  const auto mu_z1 = cell_signature(cZ1.diagram, cZ1.merged);
  const auto mu_z2 = cell_signature(cZ2.diagram, cZ2.merged);
  const auto sig_eps_edge = cell_signature(f, eps);

  enum class Kind { Contract, Expand };
  struct Step {
    Kind kind;
    std::vector<CellSignature> sigs;
  };
  const std::vector<Step> plan = {
      {Kind::Contract, sig_b1}, {Kind::Expand, {sig_eps_edge}}, {Kind::Contract, sig_z1},
      {Kind::Contract, sig_z2}, {Kind::Expand, {mu_b1}},        {Kind::Expand, {mu_a}},
      {Kind::Contract, sig_b},  {Kind::Contract, sig_a1},       {Kind::Expand, {mu_z2}},
      {Kind::Expand, {mu_z1}},  {Kind::Contract, sig_eps},      {Kind::Expand, {mu_a1}},
  };

  DetourResult r;
  r.rank_x = rank(f);
  GraphPairDiagram cur = cA.diagram;
  r.trace.push_back(cur);
  for (const auto& s : plan) {
    Move m = s.kind == Kind::Contract ? Move{ContractMove{occurrence_with_signatures(cur, s.sigs)}}
                                      : Move{ExpandMove{detail::edge_with_signature(cur, s.sigs.front())}};
    cur = apply_move(cur, m);
    r.path.push_back(std::move(m));
    r.trace.push_back(cur);
  }
  for (const auto& g : r.trace) r.ranks.push_back(rank(g));

  const WallSpec zwall{f, c.z};
  const auto exact = certify_path_sides(cA.diagram, {zwall}, r.path, TrackerPolicy::Exact);
  r.z_wall_crossings = exact.crossings.front();
  r.conservative_indeterminate = certify_path_sides(cA.diagram, {zwall}, r.path, TrackerPolicy::Conservative).indeterminate;
  r.endpoints_ok = vertex_key(r.trace.front()) == vertex_key(cA.diagram) &&
                   vertex_key(r.trace.back()) == vertex_key(cB.diagram);
  r.twisted_differs = !range_equivalent(cZ2.diagram, contract_range(f, c.z).diagram);
  return r;
}

/// The instance drawn for the detour: f the expansion X(G0) -> X(G0◁c◁c1),
/// Z = (d, a, b), A = (c13, c2, c3), B = (c11, c12, c13).
inline DetourConfig graph_dance_config() {
  GraphPairDiagram f = GraphPairDiagram::identity(make_G0());
  f = expand_range(expand_range(f, Address("c")), Address("c1"));
  const AddressedGraph& g = f.base_range;
  return DetourConfig{f, *find_occurrence(g, {Address("c13"), Address("c2"), Address("c3")}),
                      *find_occurrence(g, {Address("c11"), Address("c12"), Address("c13")}),
                      *find_occurrence(g, {Address("d"), Address("a"), Address("b")})};
}

/// Random configurations satisfying the detour preconditions: random
/// rearrangements out of X(G0) whose target contains two occurrences
/// sharing one edge and a third occurrence disjoint from both.
inline std::vector<DetourConfig> generate_detour_configs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DetourConfig> out;
  std::set<std::string> seen;
  for (std::size_t attempt = 0; out.size() < count && attempt < 100000; ++attempt) {
    const GraphPairDiagram f = random_rearrangement(make_G0(), 2 + rng() % 8, rng);
    const auto occ = occurrences(f.base_range);
    std::vector<DetourConfig> found;
    for (const auto& a : occ) {
      for (const auto& b : occ) {
        for (const auto& z : occ) {
          DetourConfig c{f, a, b, z};
          if (!detail::detour_precondition_defect(c)) found.push_back(std::move(c));
        }
      }
    }
    if (found.empty()) continue;
    DetourConfig c = found[rng() % found.size()];
    const std::string key = vertex_key(c.f) + c.a.str() + c.b.str() + c.z.str();
    if (seen.insert(key).second) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace basilica
