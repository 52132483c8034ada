#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "basilica/graph.hpp"

namespace basilica {

/// Dart that follows `d` along its face: arrive at the far end of d, step to
/// the next end in the rotation there, and leave through it.
inline Dart next_dart(const AddressedGraph& g, const Dart& d) {
  const EdgeEnd arrive = d.arrival();
  const auto& rot = g.rotation(g.vertex_of(arrive));
  const auto it = std::find(rot.begin(), rot.end(), arrive);
  if (it == rot.end()) throw GraphError("rotation inconsistent at end " + arrive.str());
  const auto nx = std::next(it) == rot.end() ? rot.begin() : std::next(it);
  return Dart{nx->edge, !nx->head};
}

/// All faces of the ribbon graph, each as the cyclic dart sequence starting
/// from its smallest dart. Faces are listed in order of their smallest dart.
inline std::vector<std::vector<Dart>> faces(const AddressedGraph& g) {
  g.validate();
  std::set<Dart> seen;
  std::vector<std::vector<Dart>> out;
  for (const auto& [a, inc] : g.edges()) {
    for (bool fwd : {false, true}) {
      const Dart start{a, fwd};
      if (seen.count(start)) continue;
      std::vector<Dart> face;
      Dart d = start;
      do {
        if (!seen.insert(d).second) throw GraphError("rotation inconsistent: face tracing revisits a dart");
        face.push_back(d);
        d = next_dart(g, d);
      } while (d != start);
      out.push_back(std::move(face));
    }
  }
  return out;
}

/// Euler characteristic V - E + F of the ribbon surface (2 for planar,
/// connected graphs).
inline long euler_characteristic(const AddressedGraph& g) {
  return static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
         static_cast<long>(faces(g).size());
}

/// The boundary walk of the outer region: the face whose boundary meets every
/// edge. When several faces qualify (e.g. a bare 2-cycle) the longest one,
/// then the one with the smallest dart, is used. Throws when no face meets
/// every edge.
inline std::vector<Dart> outer_boundary_walk(const AddressedGraph& g) {
  const auto all = faces(g);
  const std::vector<Dart>* best = nullptr;
  for (const auto& f : all) {
    std::set<Address> covered;
    for (const auto& d : f) covered.insert(d.edge);
    if (covered.size() != g.edge_count()) continue;
    if (!best || f.size() > best->size()) best = &f;
  }
  if (!best) throw GraphError("rotation inconsistent: no face meets every edge");
  return *best;
}

/// Rotates a cyclic sequence so it starts at its smallest element.
template <class T>
std::vector<T> canonical_rotation(std::vector<T> cyc) {
  if (cyc.empty()) return cyc;
  std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
  return cyc;
}

/// Mirror image: every rotation reversed. Faces are traversed backwards.
inline AddressedGraph reflected(const AddressedGraph& g) {
  AddressedGraph out = g;
  for (const auto& [v, rot] : g.rotations()) {
    std::vector<EdgeEnd> r(rot.rbegin(), rot.rend());
    out.set_rotation(v, std::move(r));
  }
  return out;
}

/// Canonical key of a connected ribbon graph up to orientation-preserving
/// isomorphism (addresses ignored, rotations respected). Ends are numbered in
/// breadth-first order from a starting end using "next in rotation" and
/// "other end of the edge"; the key is the smallest such numbering over all
/// starting ends.
inline std::string ribbon_canonical_form(const AddressedGraph& g) {
  g.validate();
  std::vector<EdgeEnd> ends;
  for (const auto& [a, inc] : g.edges()) {
    ends.push_back(EdgeEnd{a, false});
    ends.push_back(EdgeEnd{a, true});
  }
  const std::size_t m = ends.size();
  std::map<EdgeEnd, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[ends[i]] = i;
  std::vector<std::size_t> sigma(m), alpha(m);
  for (const auto& [v, rot] : g.rotations()) {
    for (std::size_t k = 0; k < rot.size(); ++k) sigma[index.at(rot[k])] = index.at(rot[(k + 1) % rot.size()]);
  }
  for (std::size_t i = 0; i < m; ++i) alpha[i] = i ^ 1U;

  std::string best;
  for (std::size_t start = 0; start < m; ++start) {
    std::vector<long> label(m, -1);
    std::vector<std::size_t> order{start};
    label[start] = 0;
    std::string code;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
      const std::size_t e = order[qi];
      for (std::size_t nb : {sigma[e], alpha[e]}) {
        if (label[nb] < 0) {
          label[nb] = static_cast<long>(order.size());
          order.push_back(nb);
        }
      }
      code += std::to_string(label[sigma[e]]) + "/" + std::to_string(label[alpha[e]]) + (ends[e].head ? "h" : "t") + ",";
    }
    if (order.size() != m) throw GraphError("ribbon_canonical_form: graph is not connected");
    if (best.empty() || code < best) best = std::move(code);
  }
  return "V" + std::to_string(g.vertex_count()) + "E" + std::to_string(g.edge_count()) + ":" + best;
}

}  // namespace basilica
