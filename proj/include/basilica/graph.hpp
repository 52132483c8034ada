#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "basilica/address.hpp"

namespace basilica {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One end of an edge as seen from the vertex it is attached to.
struct EdgeEnd {
  Address edge;
  bool head = false;  // true: the end where the edge arrives

  [[nodiscard]] std::string str() const { return edge.str() + (head ? ":head" : ":tail"); }
  auto operator<=>(const EdgeEnd&) const = default;
  bool operator==(const EdgeEnd&) const = default;
};

/// An edge traversed in a given direction.
struct Dart {
  Address edge;
  bool forward = true;

  [[nodiscard]] EdgeEnd departure() const { return EdgeEnd{edge, !forward}; }
  [[nodiscard]] EdgeEnd arrival() const { return EdgeEnd{edge, forward}; }
  [[nodiscard]] Dart reversed() const { return Dart{edge, !forward}; }
  [[nodiscard]] std::string str() const { return (forward ? "" : "~") + edge.str(); }

  auto operator<=>(const Dart&) const = default;
  bool operator==(const Dart&) const = default;
};

struct Incidence {
  Vertex source;
  Vertex target;
  bool operator==(const Incidence&) const = default;
};

/// Directed multigraph whose edges carry hierarchical addresses, together
/// with a rotation system: for every vertex the cyclic order of the edge ends
/// attached to it. Loops contribute two ends (and two to the degree).
class AddressedGraph {
 public:
  AddressedGraph() = default;

  void add_vertex(const Vertex& v) {
    if (rotation_.count(v)) throw GraphError("duplicate vertex " + v.name);
    rotation_.emplace(v, std::vector<EdgeEnd>{});
  }

  /// Adds an edge and appends its ends to the rotation at both endpoints.
  void add_edge(const Address& a, const Vertex& source, const Vertex& target) {
    if (edges_.count(a)) throw GraphError("duplicate edge " + a.str());
    if (!rotation_.count(source)) add_vertex(source);
    if (!rotation_.count(target)) add_vertex(target);
    edges_.emplace(a, Incidence{source, target});
    rotation_[source].push_back(EdgeEnd{a, false});
    rotation_[target].push_back(EdgeEnd{a, true});
  }

  void remove_edge(const Address& a) {
    const auto it = edges_.find(a);
    if (it == edges_.end()) throw GraphError("unknown edge " + a.str());
    for (const Vertex& v : {it->second.source, it->second.target}) {
      auto& rot = rotation_.at(v);
      rot.erase(std::remove_if(rot.begin(), rot.end(), [&](const EdgeEnd& e) { return e.edge == a; }), rot.end());
    }
    edges_.erase(it);
  }

  void remove_vertex(const Vertex& v) {
    const auto it = rotation_.find(v);
    if (it == rotation_.end()) throw GraphError("unknown vertex " + v.name);
    if (!it->second.empty()) throw GraphError("vertex " + v.name + " still has incident edges");
    rotation_.erase(it);
  }

  /// Low-level edit used by the rewriting moves: records an edge without
  /// touching any rotation. The caller restores rotation consistency.
  void add_edge_record(const Address& a, const Vertex& source, const Vertex& target) {
    if (edges_.count(a)) throw GraphError("duplicate edge " + a.str());
    edges_.emplace(a, Incidence{source, target});
  }
  void erase_edge_record(const Address& a) {
    if (edges_.erase(a) == 0) throw GraphError("unknown edge " + a.str());
  }

  void set_rotation(const Vertex& v, std::vector<EdgeEnd> order) { rotation_.at(v) = std::move(order); }

  /// Replaces one end in the rotation at `v` (keeps its cyclic slot).
  void replace_end(const Vertex& v, const EdgeEnd& from, const EdgeEnd& to) {
    auto& rot = rotation_.at(v);
    const auto it = std::find(rot.begin(), rot.end(), from);
    if (it == rot.end()) throw GraphError("end " + from.str() + " not found at " + v.name);
    *it = to;
  }

  [[nodiscard]] const std::map<Address, Incidence>& edges() const { return edges_; }
  [[nodiscard]] const std::map<Vertex, std::vector<EdgeEnd>>& rotations() const { return rotation_; }
  [[nodiscard]] const std::vector<EdgeEnd>& rotation(const Vertex& v) const { return rotation_.at(v); }

  [[nodiscard]] std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(rotation_.size());
    for (const auto& [v, rot] : rotation_) out.push_back(v);
    return out;
  }
  [[nodiscard]] std::vector<Address> edge_addresses() const {
    std::vector<Address> out;
    out.reserve(edges_.size());
    for (const auto& [a, inc] : edges_) out.push_back(a);
    return out;
  }

  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::size_t vertex_count() const { return rotation_.size(); }
  [[nodiscard]] bool has_edge(const Address& a) const { return edges_.count(a) != 0; }
  [[nodiscard]] bool has_vertex(const Vertex& v) const { return rotation_.count(v) != 0; }

  [[nodiscard]] const Incidence& incidence(const Address& a) const {
    const auto it = edges_.find(a);
    if (it == edges_.end()) throw GraphError("unknown edge " + a.str());
    return it->second;
  }
  [[nodiscard]] const Vertex& source(const Address& a) const { return incidence(a).source; }
  [[nodiscard]] const Vertex& target(const Address& a) const { return incidence(a).target; }
  [[nodiscard]] bool is_loop(const Address& a) const {
    const auto& inc = incidence(a);
    return inc.source == inc.target;
  }
  /// Vertex an end is attached to.
  [[nodiscard]] const Vertex& vertex_of(const EdgeEnd& e) const { return e.head ? target(e.edge) : source(e.edge); }

  [[nodiscard]] std::size_t degree(const Vertex& v) const { return rotation_.at(v).size(); }
  [[nodiscard]] std::size_t out_degree(const Vertex& v) const {
    std::size_t n = 0;
    for (const auto& e : rotation_.at(v)) n += e.head ? 0 : 1;
    return n;
  }
  [[nodiscard]] std::size_t loop_count(const Vertex& v) const {
    std::size_t n = 0;
    for (const auto& e : rotation_.at(v)) n += (!e.head && is_loop(e.edge)) ? 1 : 0;
    return n;
  }

  /// Checks the structural invariants: every edge end appears exactly once in
  /// the rotation of its endpoint, no stray ends, and no isolated vertices.
  void validate() const {
    std::size_t ends = 0;
    for (const auto& [v, rot] : rotation_) {
      if (rot.empty()) throw GraphError("isolated vertex " + v.name);
      for (const auto& e : rot) {
        if (!has_edge(e.edge)) throw GraphError("rotation at " + v.name + " names unknown edge " + e.edge.str());
        if (vertex_of(e) != v) throw GraphError("rotation at " + v.name + " lists foreign end " + e.str());
        if (std::count(rot.begin(), rot.end(), e) != 1) throw GraphError("end " + e.str() + " repeated at " + v.name);
        ++ends;
      }
    }
    if (ends != 2 * edges_.size()) throw GraphError("rotation does not cover every edge end");
  }

  /// Equal edges and incidences, and equal rotations as cyclic orders.
  bool operator==(const AddressedGraph& other) const {
    if (edges_ != other.edges_ || rotation_.size() != other.rotation_.size()) return false;
    for (const auto& [v, rot] : rotation_) {
      const auto it = other.rotation_.find(v);
      if (it == other.rotation_.end() || it->second.size() != rot.size()) return false;
      if (rot.empty()) continue;
      const auto start = std::find(it->second.begin(), it->second.end(), rot.front());
      if (start == it->second.end()) return false;
      std::vector<EdgeEnd> turned(start, it->second.end());
      turned.insert(turned.end(), it->second.begin(), start);
      if (turned != rot) return false;
    }
    return true;
  }

 private:
  std::map<Address, Incidence> edges_;
  std::map<Vertex, std::vector<EdgeEnd>> rotation_;
};

}  // namespace basilica
