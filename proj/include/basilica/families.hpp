#pragma once

// Named graphs: the Basilica base graph G0, the families J_n and O_n, and the
// small configuration used to illustrate the half-space detour.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "basilica/graph.hpp"
#include "basilica/isomorphism.hpp"
#include "basilica/rewrite.hpp"

namespace basilica {

namespace detail {

/// Builds a graph from its outer boundary walk when that walk traverses
/// every edge exactly once and forwards. At each vertex the rotation lists,
/// visit by visit, the arriving head end followed by the departing tail end.
inline AddressedGraph from_forward_walk(const std::vector<std::tuple<std::string, Vertex, Vertex>>& walk) {
  AddressedGraph g;
  std::map<Vertex, std::vector<EdgeEnd>> rot;
  for (const auto& [name, s, t] : walk) g.add_edge_record(Address::parse(name), s, t);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto& [name, s, t] = walk[i];
    const auto& next = walk[(i + 1) % walk.size()];
    if (std::get<1>(next) != t) throw GraphError("walk is not closed at " + name);
    rot[t].push_back(EdgeEnd{Address::parse(name), true});
    rot[t].push_back(EdgeEnd{Address::parse(std::get<0>(next)), false});
  }
  for (auto& [v, r] : rot) {
    g.add_vertex(v);
    g.set_rotation(v, std::move(r));
  }
  g.validate();
  return g;
}

inline std::string chain_vertex(std::size_t i) { return "[o" + std::to_string(i) + "]"; }
inline std::string lower_edge(std::size_t i) { return "[l" + std::to_string(i) + "]"; }
inline std::string upper_edge(std::size_t i) { return "[u" + std::to_string(i) + "]"; }

}  // namespace detail

/// The Basilica base graph: vertices x, y; loop a at x, b: x->y, loop c at
/// y, d: y->x. Its outer boundary walk is a, b, c, d.
inline AddressedGraph make_G0() {
  return detail::from_forward_walk({{"a", "x", "x"}, {"b", "x", "y"}, {"c", "y", "y"}, {"d", "y", "x"}});
}

/// J_n: a chain of n+1 vertices [o0] .. [on] joined by lower edges [li]
/// ([oi] -> [o(i+1)]) and upper edges [ui] ([o(i+1)] -> [oi]); at [o0] the
/// triangle v, x, z through p and q with loops w, y; at [on] the triangle
/// a, c, e through l and m with loops b, d. n+5 vertices, 2n+10 edges.
inline AddressedGraph make_J(std::size_t n) {
  using detail::chain_vertex;
  const Vertex o0 = chain_vertex(0), on = chain_vertex(n);
  std::vector<std::tuple<std::string, Vertex, Vertex>> walk = {
      {"v", o0, "p"}, {"w", "p", "p"}, {"x", "p", "q"}, {"y", "q", "q"}, {"z", "q", o0}};
  for (std::size_t i = 0; i < n; ++i) walk.emplace_back(detail::lower_edge(i), chain_vertex(i), chain_vertex(i + 1));
  for (const auto& e : std::vector<std::tuple<std::string, Vertex, Vertex>>{
           {"a", on, "l"}, {"b", "l", "l"}, {"c", "l", "m"}, {"d", "m", "m"}, {"e", "m", on}}) {
    walk.push_back(e);
  }
  for (std::size_t i = n; i-- > 0;) walk.emplace_back(detail::upper_edge(i), chain_vertex(i + 1), chain_vertex(i));
  return detail::from_forward_walk(walk);
}

/// J_n with the two marked triples {x,y,z} and {c,d,e} contracted. The
/// merged edges are the wall edges; removing them gives O_n.
struct WallFrame {
  AddressedGraph j;           // J_n
  AddressedGraph contracted;  // J_n with both triples contracted
  Address wall1;              // merged edge of {x, y, z}
  Address wall2;              // merged edge of {c, d, e}
  Occurrence triple1;         // (x, y, z) in J_n
  Occurrence triple2;         // (c, d, e) in J_n
};

inline WallFrame make_wall_frame(std::size_t n) {
  WallFrame f;
  f.j = make_J(n);
  f.triple1 = Occurrence{Address("x"), Address("y"), Address("z"), "q"};
  f.triple2 = Occurrence{Address("c"), Address("d"), Address("e"), "m"};
  auto first = contract(f.j, f.triple1);
  auto second = contract(first.graph, f.triple2);
  f.contracted = second.graph;
  f.wall1 = first.merged;
  f.wall2 = second.merged;
  return f;
}

/// O_n: J_n with {x,y,z} and {c,d,e} contracted and the two merged edges
/// deleted. Vertices [o0] .. [on], p, l; edges v, w, a, b and the chain.
/// n+3 vertices, 2n+4 edges.
inline AddressedGraph make_O(std::size_t n) {
  const auto frame = make_wall_frame(n);
  AddressedGraph g = frame.contracted;
  g.remove_edge(frame.wall1);
  g.remove_edge(frame.wall2);
  return g;
}

/// The configuration drawn for the half-space detour: a 2-cycle x <-> y with
/// a loop at x (the subgraph Z), and a triangle y -> z -> w -> y with loops
/// at z and w (the overlapping occurrences B and A). Realised here as the
/// expansion G0 ◁ c ◁ c1, so Z = (d, a, b), A = (c13, c2, c3),
/// B = (c11, c12, c13).
inline AddressedGraph make_graph_dance() { return expand(expand(make_G0(), Address("c")), Address("c1")); }

/// G_n: every edge of G_{n-1} expanded once.
inline AddressedGraph full_expansion(const AddressedGraph& base, std::size_t depth) {
  AddressedGraph g = base;
  for (std::size_t k = 0; k < depth; ++k) {
    for (const auto& a : g.edge_addresses()) g = expand(g, a);
  }
  return g;
}

/// Endpoints of the edge with address `a` in any expansion of `base` that
/// contains it: e_i inherits source/target from e according to the rule.
inline Incidence address_endpoints(const AddressedGraph& base, const Address& a) {
  Address cur{a.root};
  Incidence inc = base.incidence(cur);
  for (char c : a.path) {
    const Vertex mid = Vertex::interior_of(cur);
    switch (c) {
      case '1': inc = Incidence{inc.source, mid}; break;
      case '2': inc = Incidence{mid, mid}; break;
      case '3': inc = Incidence{mid, inc.target}; break;
      default: throw AddressError("invalid symbol in " + a.str());
    }
    cur = cur.child(c - '0');
  }
  return inc;
}

/// Finite-depth test of the limit-space equivalence: for every n <= depth
/// the edges of G_n addressed by the length-(n+1) prefixes share a vertex.
inline bool addresses_adjacent(const AddressedGraph& base, const Address& a1, const Address& a2, std::size_t depth) {
  if (a1.depth() < depth || a2.depth() < depth) throw AddressError("address shorter than requested depth");
  if (!base.has_edge(Address{a1.root}) || !base.has_edge(Address{a2.root})) {
    throw AddressError("address root is not an edge of the base graph");
  }
  for (std::size_t n = 0; n <= depth; ++n) {
    const auto i1 = address_endpoints(base, Address{a1.root, a1.path.substr(0, n)});
    const auto i2 = address_endpoints(base, Address{a2.root, a2.path.substr(0, n)});
    const bool share = i1.source == i2.source || i1.source == i2.target || i1.target == i2.source ||
                       i1.target == i2.target;
    if (!share) return false;
  }
  return true;
}

/// Searches the expansions of `base` (breadth first over isomorphism
/// classes) for one isomorphic to `wanted`. Returns the expansion with its
/// native addresses, or nullopt if none exists within the size bound.
inline std::optional<AddressedGraph> find_isomorphic_expansion(const AddressedGraph& base,
                                                               const AddressedGraph& wanted) {
  if (wanted.edge_count() < base.edge_count() || (wanted.edge_count() - base.edge_count()) % 2 != 0) {
    return std::nullopt;
  }
  const std::size_t steps = (wanted.edge_count() - base.edge_count()) / 2;
  const std::string target = canonical_form(wanted);
  std::vector<AddressedGraph> level{base};
  for (std::size_t k = 0; k < steps; ++k) {
    std::map<std::string, AddressedGraph> next;
    for (const auto& g : level) {
      for (const auto& a : g.edge_addresses()) {
        auto h = expand(g, a);
        next.try_emplace(canonical_form(h), std::move(h));
      }
    }
    level.clear();
    for (auto& [key, g] : next) level.push_back(std::move(g));
  }
  for (const auto& g : level) {
    if (canonical_form(g) == target) return g;
  }
  return std::nullopt;
}

}  // namespace basilica
