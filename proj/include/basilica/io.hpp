#pragma once

// JSON and Graphviz DOT serialization.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "basilica/cube.hpp"
#include "basilica/diagram.hpp"
#include "basilica/graph.hpp"
#include "basilica/homology.hpp"

namespace basilica::io {

using nlohmann::json;

inline json to_json(const AddressedGraph& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices()) vertices.push_back(v.name);
  json edges = json::array();
  for (const auto& [a, inc] : g.edges()) {
    edges.push_back({{"addr", a.str()}, {"src", inc.source.name}, {"dst", inc.target.name}});
  }
  json rotation = json::object();
  for (const auto& [v, rot] : g.rotations()) {
    json ends = json::array();
    for (const auto& e : rot) ends.push_back(e.str());
    rotation[v.name] = std::move(ends);
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"rotation", std::move(rotation)}};
}

inline EdgeEnd parse_end(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos) throw GraphError("bad edge end descriptor " + s);
  const std::string side = s.substr(colon + 1);
  if (side != "head" && side != "tail") throw GraphError("bad edge end descriptor " + s);
  return EdgeEnd{Address::parse(s.substr(0, colon)), side == "head"};
}

inline AddressedGraph graph_from_json(const json& j) {
  AddressedGraph g;
  for (const auto& v : j.at("vertices")) g.add_vertex(Vertex{v.get<std::string>()});
  for (const auto& e : j.at("edges")) {
    g.add_edge_record(Address::parse(e.at("addr").get<std::string>()), Vertex{e.at("src").get<std::string>()},
                      Vertex{e.at("dst").get<std::string>()});
  }
  for (const auto& [name, ends] : j.at("rotation").items()) {
    std::vector<EdgeEnd> rot;
    for (const auto& e : ends) rot.push_back(parse_end(e.get<std::string>()));
    g.set_rotation(Vertex{name}, std::move(rot));
  }
  g.validate();
  return g;
}

inline json to_json(const GraphPairDiagram& f) {
  json phi = json::object();
  for (const auto& [a, b] : f.phi) phi[a.str()] = b.str();
  return {{"base_domain", to_json(f.base_domain)},
          {"base_range", to_json(f.base_range)},
          {"domain", to_json(f.domain)},
          {"range", to_json(f.range)},
          {"phi", std::move(phi)},
          {"rank", rank(f)}};
}

inline GraphPairDiagram diagram_from_json(const json& j) {
  GraphPairDiagram f{graph_from_json(j.at("base_domain")), graph_from_json(j.at("base_range")),
                     graph_from_json(j.at("domain")), graph_from_json(j.at("range")), {}};
  for (const auto& [a, b] : j.at("phi").items()) f.phi[Address::parse(a)] = Address::parse(b.get<std::string>());
  f.validate();
  return f;
}

/// Maximal simplices only; faces are implied.
inline json to_json(const SimplicialComplex& c) {
  json out = json::array();
  for (const auto& s : c.simplices()) {
    bool maximal = true;
    for (const auto& t : c.simplices()) {
      if (t.size() == s.size() + 1 && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return {{"simplices", std::move(out)}};
}

inline SimplicialComplex complex_from_json(const json& j) {
  SimplicialComplex c;
  for (const auto& s : j.at("simplices")) c.add_simplex(s.get<Simplex>());
  return c;
}

inline json to_json(const BettiVector& b) {
  json torsion = json::array();
  for (const auto& t : b.torsion) {
    json row = json::array();
    for (const auto& d : t) row.push_back(d.str());
    torsion.push_back(std::move(row));
  }
  return {{"betti", b.betti}, {"torsion", std::move(torsion)}};
}

inline json to_json(const ExploredGraph& g) {
  json per_rank = json::object();
  for (const auto& [r, count] : g.rank_histogram()) per_rank[std::to_string(r)] = count;
  return {{"vertices", g.vertices.size()},
          {"vertices_per_rank", std::move(per_rank)},
          {"move_edges", g.edges.size()},
          {"exhaustive", g.exhaustive}};
}

namespace detail {
inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void dot_body(std::ostringstream& os, const AddressedGraph& g, const std::string& prefix,
                     const std::string& indent) {
  for (const auto& v : g.vertices()) {
    os << indent << quoted(prefix + v.name) << " [label=" << quoted(v.name) << "];\n";
  }
  for (const auto& [a, inc] : g.edges()) {
    os << indent << quoted(prefix + inc.source.name) << " -> " << quoted(prefix + inc.target.name)
       << " [label=" << quoted(a.str()) << "];\n";
  }
}
}  // namespace detail

inline std::string to_dot(const AddressedGraph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "digraph " << detail::quoted(name) << " {\n";
  detail::dot_body(os, g, "", "  ");
  os << "}\n";
  return os.str();
}

/// Domain and range side by side; edges keep their addresses as labels.
inline std::string to_dot(const GraphPairDiagram& f) {
  std::ostringstream os;
  os << "digraph diagram {\n  compound=true;\n";
  os << "  subgraph cluster_domain {\n    label=\"domain\";\n";
  detail::dot_body(os, f.domain, "D:", "    ");
  os << "  }\n  subgraph cluster_range {\n    label=\"range\";\n";
  detail::dot_body(os, f.range, "R:", "    ");
  os << "  }\n}\n";
  return os.str();
}

inline std::string to_dot(const ExploredGraph& g) {
  std::ostringstream os;
  os << "graph moves {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    os << "  v" << i << " [rank=" << g.vertices[i].rank() << ", label=\"" << g.vertices[i].rank() << "\"];\n";
  }
  for (const auto& [a, b] : g.edges) os << "  v" << a << " -- v" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace basilica::io
