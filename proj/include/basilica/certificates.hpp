#pragma once

// Counting argument for the empty middle of the wall model: special
// circuits, collapsible vertices and the defect V - C, which no expansion or
// contraction changes.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "basilica/families.hpp"
#include "basilica/graph.hpp"
#include "basilica/ribbon.hpp"
#include "basilica/rewrite.hpp"

namespace basilica {

struct SpecialCircuit {
  Vertex base;
  std::vector<Dart> darts;

  [[nodiscard]] std::string str() const {
    std::string s = base.name + ":";
    for (const auto& d : darts) s += " " + d.str();
    return s;
  }
  bool operator==(const SpecialCircuit&) const = default;
};

/// Closed runs of the outer boundary walk through degree-4 vertices only.
/// For each position of the walk whose vertex has degree 4, the run from
/// there to the first return to that vertex is reported (if every vertex on
/// the way has degree 4). Circuits are sorted, so the result does not depend
/// on where the walk starts.
inline std::vector<SpecialCircuit> special_circuits(const AddressedGraph& g) {
  const auto walk = outer_boundary_walk(g);
  const std::size_t len = walk.size();
  std::vector<SpecialCircuit> out;
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex v = g.vertex_of(walk[i].departure());
    if (g.degree(v) != 4) continue;
    SpecialCircuit c{v, {}};
    for (std::size_t k = 0; k < len; ++k) {
      const Dart& d = walk[(i + k) % len];
      c.darts.push_back(d);
      const Vertex u = g.vertex_of(d.arrival());
      if (g.degree(u) != 4) break;
      if (u == v) {
        out.push_back(c);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SpecialCircuit& a, const SpecialCircuit& b) {
    return std::tie(a.base, a.darts) < std::tie(b.base, b.darts);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::set<Vertex> collapsible_vertices(const AddressedGraph& g) {
  std::set<Vertex> out;
  for (const auto& c : special_circuits(g)) out.insert(c.base);
  return out;
}

struct DefectCertificate {
  std::string key;
  std::size_t vertices = 0;
  std::size_t collapsible = 0;
  std::size_t defect = 0;
  long offset = 0;  // E - 2V
};

inline DefectCertificate defect_certificate(const AddressedGraph& g) {
  DefectCertificate c;
  c.key = ribbon_canonical_form(g);
  c.vertices = g.vertex_count();
  c.collapsible = collapsible_vertices(g).size();
  c.defect = c.vertices - c.collapsible;
  c.offset = static_cast<long>(g.edge_count()) - 2 * static_cast<long>(g.vertex_count());
  return c;
}

inline std::size_t defect(const AddressedGraph& g) { return g.vertex_count() - collapsible_vertices(g).size(); }

/// Lower bound on the edge count of every graph reachable from `start` by
/// moves: E = 2V + (E - 2V) and V >= defect.
inline long min_edge_bound(const AddressedGraph& start) {
  return 2 * static_cast<long>(defect(start)) + static_cast<long>(start.edge_count()) -
         2 * static_cast<long>(start.vertex_count());
}

/// Every graph reachable from g by one expansion or contraction.
inline std::vector<AddressedGraph> move_neighbours(const AddressedGraph& g, std::size_t edge_cap) {
  std::vector<AddressedGraph> out;
  if (g.edge_count() + 2 <= edge_cap) {
    for (const auto& a : g.edge_addresses()) out.push_back(expand(g, a));
  }
  for (const auto& occ : occurrences(g)) out.push_back(contract(g, occ).graph);
  return out;
}

struct KeyLemmaReport {
  std::size_t n = 0;
  std::size_t slack = 0;
  std::size_t edge_cap = 0;
  std::size_t classes_visited = 0;
  std::size_t min_edges_seen = 0;
  std::map<std::size_t, std::size_t> defect_histogram;
  std::size_t collapsible_violations = 0;
  bool invariant_certified = false;  // defect(O_n) = n+3, C = 0, bound 2n+4
  bool search_consistent = false;    // (i)-(iii) on every visited graph
  bool exhaustive = false;
  bool certified = false;
};

/// Certificate for K(O_n) below 2n+4 edges: the invariant computation, plus
/// a breadth-first search over ribbon-isomorphism classes reachable from O_n
/// with at most 2n+4+2·slack edges as corroboration.
inline KeyLemmaReport verify_key_lemma(std::size_t n, std::size_t slack, std::size_t node_budget) {
  KeyLemmaReport r;
  r.n = n;
  r.slack = slack;
  r.edge_cap = 2 * n + 4 + 2 * slack;

  const AddressedGraph start = make_O(n);
  const auto cert = defect_certificate(start);
  r.invariant_certified = cert.defect == n + 3 && cert.collapsible == 0 &&
                          min_edge_bound(start) == static_cast<long>(2 * n + 4);

  std::set<std::string> seen{cert.key};
  std::deque<AddressedGraph> queue{start};
  r.min_edges_seen = start.edge_count();
  bool ok = true;
  while (!queue.empty()) {
    if (seen.size() > node_budget) break;
    const AddressedGraph g = std::move(queue.front());
    queue.pop_front();
    const std::size_t c = collapsible_vertices(g).size();
    const std::size_t d = g.vertex_count() - c;
    ++r.defect_histogram[d];
    ++r.classes_visited;
    r.min_edges_seen = std::min(r.min_edges_seen, g.edge_count());
    if (d != n + 3 || g.edge_count() <= 2 * n + 3) ok = false;
    for (auto& h : move_neighbours(g, r.edge_cap)) {
      const std::size_t ch = collapsible_vertices(h).size();
      const bool expanded = h.edge_count() > g.edge_count();
      if ((expanded && ch != c + 1) || (!expanded && ch + 1 != c)) ++r.collapsible_violations;
      if (seen.insert(ribbon_canonical_form(h)).second) queue.push_back(std::move(h));
    }
  }
  r.exhaustive = queue.empty();
  r.search_consistent = ok && r.collapsible_violations == 0;
  r.certified = r.invariant_certified && r.search_consistent;
  return r;
}

}  // namespace basilica
