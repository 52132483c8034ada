#pragma once

// Expansion and contraction moves of the Basilica replacement rule
//
//     v --e--> w    becomes    v --e1--> e4 --e3--> w,  plus the loop e2 at e4.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "basilica/graph.hpp"

namespace basilica {

/// A contractible pattern: `in` arrives at `interior`, `loop` is a loop at
/// `interior`, `out` leaves it, and nothing else touches `interior`.
struct Occurrence {
  Address in;
  Address loop;
  Address out;
  Vertex interior;

  [[nodiscard]] std::vector<Address> edges() const { return {in, loop, out}; }
  [[nodiscard]] bool contains(const Address& a) const { return a == in || a == loop || a == out; }
  [[nodiscard]] std::string str() const { return "(" + in.str() + "," + loop.str() + "," + out.str() + ")"; }

  auto operator<=>(const Occurrence&) const = default;
  bool operator==(const Occurrence&) const = default;
};

/// Simple expansion g ◁ e. Addresses of all other edges are unchanged; the
/// new edges e1, e2, e3 take the slots of e in the rotation, and the interior
/// vertex e4 gets the cyclic order (e1 in, e2 out, e2 in, e3 out) so that the
/// face left of e now runs e1, e2, e3.
inline AddressedGraph expand(const AddressedGraph& g, const Address& e) {
  if (!g.has_edge(e)) throw GraphError("expand: unknown edge " + e.str());
  const Incidence inc = g.incidence(e);
  const Address e1 = e.child(1), e2 = e.child(2), e3 = e.child(3);
  const Vertex mid = Vertex::interior_of(e);
  if (g.has_vertex(mid)) throw GraphError("expand: vertex " + mid.name + " already present");

  AddressedGraph out = g;
  out.replace_end(inc.source, EdgeEnd{e, false}, EdgeEnd{e1, false});
  out.replace_end(inc.target, EdgeEnd{e, true}, EdgeEnd{e3, true});
  out.erase_edge_record(e);
  out.add_vertex(mid);
  out.add_edge_record(e1, inc.source, mid);
  out.add_edge_record(e2, mid, mid);
  out.add_edge_record(e3, mid, inc.target);
  out.set_rotation(mid, {EdgeEnd{e1, true}, EdgeEnd{e2, false}, EdgeEnd{e2, true}, EdgeEnd{e3, false}});
  return out;
}

/// Checks the occurrence shape in g; returns a reason on failure.
inline std::optional<std::string> occurrence_defect(const AddressedGraph& g, const Occurrence& occ) {
  for (const auto& a : occ.edges()) {
    if (!g.has_edge(a)) return "unknown edge " + a.str();
  }
  if (occ.in == occ.loop || occ.in == occ.out || occ.loop == occ.out) return "repeated edge";
  if (!g.has_vertex(occ.interior)) return "unknown interior vertex";
  if (g.degree(occ.interior) != 4) return "interior vertex does not have degree 4";
  if (g.target(occ.in) != occ.interior || g.source(occ.in) == occ.interior) return "in-edge does not enter the interior vertex";
  if (g.source(occ.loop) != occ.interior || g.target(occ.loop) != occ.interior) return "middle edge is not a loop at the interior vertex";
  if (g.source(occ.out) != occ.interior || g.target(occ.out) == occ.interior) return "out-edge does not leave the interior vertex";
  return std::nullopt;
}

/// All occurrences of g, ordered by interior vertex.
inline std::vector<Occurrence> occurrences(const AddressedGraph& g) {
  std::vector<Occurrence> out;
  for (const auto& [v, rot] : g.rotations()) {
    if (rot.size() != 4) continue;
    std::optional<Address> in, loop, outgoing;
    bool ok = true;
    for (const auto& end : rot) {
      const Address& a = end.edge;
      if (g.is_loop(a)) {
        if (loop && *loop != a) ok = false;
        loop = a;
      } else if (end.head) {
        if (in) ok = false;
        in = a;
      } else {
        if (outgoing) ok = false;
        outgoing = a;
      }
    }
    if (ok && in && loop && outgoing) out.push_back(Occurrence{*in, *loop, *outgoing, v});
  }
  return out;
}

/// Finds the occurrence whose edge set is exactly {a, b, c} (any order).
inline std::optional<Occurrence> find_occurrence(const AddressedGraph& g, std::set<Address> edges) {
  for (const auto& occ : occurrences(g)) {
    if (std::set<Address>{occ.in, occ.loop, occ.out} == edges) return occ;
  }
  return std::nullopt;
}

/// Contraction with an explicit name for the merged edge. The merged edge
/// takes the rotation slots of in (at its source) and out (at its target).
inline AddressedGraph contract_as(const AddressedGraph& g, const Occurrence& occ, const Address& merged) {
  if (auto why = occurrence_defect(g, occ)) throw GraphError("contract: not an occurrence " + occ.str() + ": " + *why);
  if (g.has_edge(merged)) throw GraphError("contract: merged name " + merged.str() + " already in use");
  const Vertex s = g.source(occ.in);
  const Vertex t = g.target(occ.out);

  AddressedGraph out = g;
  out.replace_end(s, EdgeEnd{occ.in, false}, EdgeEnd{merged, false});
  out.replace_end(t, EdgeEnd{occ.out, true}, EdgeEnd{merged, true});
  out.set_rotation(occ.interior, {});
  for (const auto& a : occ.edges()) out.erase_edge_record(a);
  out.remove_vertex(occ.interior);
  out.add_edge_record(merged, s, t);
  return out;
}

/// Smallest journal token "[#k]" not used as a root by any edge of g.
inline Address fresh_token(const AddressedGraph& g) {
  long next = 0;
  for (const auto& [a, inc] : g.edges()) {
    if (a.root.size() > 3 && a.root[1] == '#') {
      try {
        next = std::max(next, std::stol(a.root.substr(2, a.root.size() - 3)) + 1);
      } catch (const std::exception&) {
      }
    }
  }
  return Address{"[#" + std::to_string(next) + "]"};
}

struct Contraction {
  AddressedGraph graph;
  Address merged;
};

/// Simple contraction. The merged edge always receives a fresh journal token,
/// so the live edge set stays prefix-free.
inline Contraction contract(const AddressedGraph& g, const Occurrence& occ) {
  Address merged = fresh_token(g);
  return Contraction{contract_as(g, occ, merged), merged};
}

/// True when the occurrence is the sibling triple e1, e2, e3 created by
/// expanding e (so collapsing it restores the address e).
inline bool is_sibling_triple(const Occurrence& occ) {
  if (!occ.in.has_parent()) return false;
  const Address p = occ.in.parent();
  return occ.in == p.child(1) && occ.loop == p.child(2) && occ.out == p.child(3) &&
         occ.interior == Vertex::interior_of(p);
}

/// Inverse of expand(g, e): collapses e1, e2, e3 back into e.
inline AddressedGraph collapse(const AddressedGraph& g, const Address& e) {
  const Occurrence occ{e.child(1), e.child(2), e.child(3), Vertex::interior_of(e)};
  return contract_as(g, occ, e);
}

/// Renames every edge (and interior vertex) lying under `from` so that it
/// lies under `to`; other names are untouched. Base vertex `interior_from`,
/// when given, is renamed to `interior_to`.
inline AddressedGraph rebase_prefixes(const AddressedGraph& g, const std::vector<std::pair<Address, Address>>& moves,
                                      const std::vector<std::pair<Vertex, Vertex>>& vertex_moves = {}) {
  auto map_edge = [&](const Address& a) {
    for (const auto& [from, to] : moves) {
      if (from.is_prefix_of(a)) return a.rebased(from, to);
    }
    return a;
  };
  auto map_vertex = [&](const Vertex& v) {
    for (const auto& [from, to] : vertex_moves) {
      if (v == from) return to;
    }
    if (v.is_interior()) {
      const Address c = v.creator();
      for (const auto& [from, to] : moves) {
        if (from.is_prefix_of(c)) return Vertex::interior_of(c.rebased(from, to));
      }
    }
    return v;
  };
  AddressedGraph out;
  for (const auto& [v, rot] : g.rotations()) out.add_vertex(map_vertex(v));
  for (const auto& [a, inc] : g.edges()) out.add_edge_record(map_edge(a), map_vertex(inc.source), map_vertex(inc.target));
  for (const auto& [v, rot] : g.rotations()) {
    std::vector<EdgeEnd> r;
    r.reserve(rot.size());
    for (const auto& e : rot) r.push_back(EdgeEnd{map_edge(e.edge), e.head});
    out.set_rotation(map_vertex(v), std::move(r));
  }
  return out;
}

}  // namespace basilica
