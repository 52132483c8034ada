#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "basilica/graph.hpp"

namespace basilica {

using EdgeMap = std::map<Address, Address>;

namespace detail {

/// Dense view of a multigraph: vertices 0..n-1, count[u][v] = #edges u->v.
struct DenseGraph {
  std::vector<Vertex> names;
  std::vector<std::vector<int>> count;
  std::vector<std::tuple<int, int, int>> invariant;  // (degree, loops, out-degree)

  explicit DenseGraph(const AddressedGraph& g) : names(g.vertices()) {
    const auto n = names.size();
    std::map<Vertex, int> index;
    for (std::size_t i = 0; i < n; ++i) index[names[i]] = static_cast<int>(i);
    count.assign(n, std::vector<int>(n, 0));
    for (const auto& [a, inc] : g.edges()) ++count[index[inc.source]][index[inc.target]];
    for (std::size_t i = 0; i < n; ++i) {
      invariant.emplace_back(static_cast<int>(g.degree(names[i])), static_cast<int>(g.loop_count(names[i])),
                             static_cast<int>(g.out_degree(names[i])));
    }
  }
  [[nodiscard]] std::size_t size() const { return names.size(); }
};

/// Pairs the parallel edges of g and h along a vertex bijection, in address
/// order. `vmap` maps g's vertex names to h's.
inline EdgeMap pair_edges(const AddressedGraph& g, const AddressedGraph& h, const std::map<Vertex, Vertex>& vmap) {
  std::map<std::pair<Vertex, Vertex>, std::vector<Address>> hbuckets;
  for (const auto& [a, inc] : h.edges()) hbuckets[{inc.source, inc.target}].push_back(a);
  std::map<std::pair<Vertex, Vertex>, std::size_t> used;
  EdgeMap out;
  for (const auto& [a, inc] : g.edges()) {
    const std::pair<Vertex, Vertex> key{vmap.at(inc.source), vmap.at(inc.target)};
    out[a] = hbuckets.at(key).at(used[key]++);
  }
  return out;
}

/// Backtracking search for direction-preserving vertex bijections. Calls
/// `visit` for each complete bijection; stops when it returns false.
inline void search_vertex_maps(const DenseGraph& g, const DenseGraph& h,
                               const std::function<bool(const std::vector<int>&)>& visit) {
  const auto n = g.size();
  if (n != h.size()) return;
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  // Most constrained first: order g's vertices by BFS over adjacency so each
  // new vertex has already-mapped neighbours.
  std::vector<int> order;
  std::vector<bool> placed(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (placed[s]) continue;
    std::vector<int> queue{static_cast<int>(s)};
    placed[s] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      order.push_back(u);
      for (std::size_t w = 0; w < n; ++w) {
        if (!placed[w] && (g.count[u][w] || g.count[w][u])) {
          placed[w] = true;
          queue.push_back(static_cast<int>(w));
        }
      }
    }
  }
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == n) {
      if (!visit(map)) stop = true;
      return;
    }
    const int u = order[depth];
    for (std::size_t cand = 0; cand < n && !stop; ++cand) {
      if (used[cand] || g.invariant[u] != h.invariant[cand]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const int w = order[k];
        ok = g.count[u][w] == h.count[cand][map[w]] && g.count[w][u] == h.count[map[w]][cand];
      }
      if (!ok || g.count[u][u] != h.count[cand][cand]) continue;
      map[u] = static_cast<int>(cand);
      used[cand] = true;
      rec(depth + 1);
      used[cand] = false;
      map[u] = -1;
    }
  };
  rec(0);
}

}  // namespace detail

/// A direction-preserving multigraph isomorphism g -> h as an edge bijection,
/// ignoring addresses and rotation; nullopt when none exists.
inline std::optional<EdgeMap> isomorphism(const AddressedGraph& g, const AddressedGraph& h) {
  if (g.edge_count() != h.edge_count() || g.vertex_count() != h.vertex_count()) return std::nullopt;
  const detail::DenseGraph dg(g), dh(h);
  std::optional<EdgeMap> found;
  detail::search_vertex_maps(dg, dh, [&](const std::vector<int>& m) {
    std::map<Vertex, Vertex> vmap;
    for (std::size_t i = 0; i < m.size(); ++i) vmap[dg.names[i]] = dh.names[m[i]];
    found = detail::pair_edges(g, h, vmap);
    return false;
  });
  return found;
}

/// Every isomorphism g -> h, including all permutations of parallel edges.
/// Intended for the small graphs of this library; `limit` caps the output.
inline std::vector<EdgeMap> all_isomorphisms(const AddressedGraph& g, const AddressedGraph& h,
                                             std::size_t limit = 100000) {
  std::vector<EdgeMap> out;
  if (g.edge_count() != h.edge_count() || g.vertex_count() != h.vertex_count()) return out;
  const detail::DenseGraph dg(g), dh(h);
  detail::search_vertex_maps(dg, dh, [&](const std::vector<int>& m) {
    std::map<Vertex, Vertex> vmap;
    for (std::size_t i = 0; i < m.size(); ++i) vmap[dg.names[i]] = dh.names[m[i]];
    // Group g-edges by endpoint pair; enumerate permutations inside each group.
    std::map<std::pair<Vertex, Vertex>, std::vector<Address>> gb, hb;
    for (const auto& [a, inc] : g.edges()) gb[{inc.source, inc.target}].push_back(a);
    for (const auto& [a, inc] : h.edges()) hb[{inc.source, inc.target}].push_back(a);
    std::vector<std::pair<std::vector<Address>, std::vector<Address>>> groups;
    for (const auto& [key, list] : gb) groups.emplace_back(list, hb.at({vmap.at(key.first), vmap.at(key.second)}));
    EdgeMap current;
    std::function<bool(std::size_t)> rec = [&](std::size_t gi) -> bool {
      if (gi == groups.size()) {
        out.push_back(current);
        return out.size() < limit;
      }
      auto targets = groups[gi].second;
      std::sort(targets.begin(), targets.end());
      do {
        for (std::size_t k = 0; k < targets.size(); ++k) current[groups[gi].first[k]] = targets[k];
        if (!rec(gi + 1)) return false;
      } while (std::next_permutation(targets.begin(), targets.end()));
      return true;
    };
    return rec(0);
  });
  return out;
}

/// Checks that `phi` is a direction-preserving isomorphism g -> h.
inline bool is_isomorphism(const AddressedGraph& g, const AddressedGraph& h, const EdgeMap& phi) {
  if (g.edge_count() != h.edge_count() || g.vertex_count() != h.vertex_count() || phi.size() != g.edge_count()) {
    return false;
  }
  std::map<Vertex, Vertex> vmap;
  std::map<Address, Address> inverse;
  auto bind = [&](const Vertex& a, const Vertex& b) {
    auto [it, fresh] = vmap.emplace(a, b);
    return fresh || it->second == b;
  };
  for (const auto& [a, inc] : g.edges()) {
    const auto it = phi.find(a);
    if (it == phi.end() || !h.has_edge(it->second)) return false;
    if (!inverse.emplace(it->second, a).second) return false;
    const auto& hin = h.incidence(it->second);
    if (!bind(inc.source, hin.source) || !bind(inc.target, hin.target)) return false;
  }
  std::map<Vertex, Vertex> back;
  for (const auto& [a, b] : vmap) {
    if (!back.emplace(b, a).second) return false;
  }
  return vmap.size() == g.vertex_count();
}

/// Canonical key of the isomorphism class of g (addresses and rotation are
/// ignored). Computed by colour refinement seeded with (degree, loops,
/// out-degree) and individualisation with full backtracking; the key is the
/// lexicographically smallest adjacency listing over all leaves.
inline std::string canonical_form(const AddressedGraph& g) {
  const detail::DenseGraph dg(g);
  const auto n = dg.size();

  using Colouring = std::vector<int>;
  // Relabels signatures to dense colours in sorted signature order, so the
  // colours depend only on the signatures and never on vertex numbering.
  auto rank_signatures = [](const auto& sig) {
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Colouring c(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
      c[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    }
    return c;
  };
  auto classes = [](const Colouring& c) {
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  };
  auto refine = [&](Colouring c) {
    for (;;) {
      std::vector<std::pair<int, std::vector<std::tuple<int, int, int>>>> sig(n);
      for (std::size_t u = 0; u < n; ++u) {
        sig[u].first = c[u];
        for (std::size_t w = 0; w < n; ++w) {
          if (dg.count[u][w] || dg.count[w][u]) sig[u].second.emplace_back(c[w], dg.count[u][w], dg.count[w][u]);
        }
        std::sort(sig[u].second.begin(), sig[u].second.end());
      }
      Colouring next = rank_signatures(sig);
      if (classes(next) == classes(c)) return next;
      c = std::move(next);
    }
  };

  std::string best;
  bool have_best = false;
  std::function<void(const Colouring&)> search = [&](const Colouring& c) {
    const int k = classes(c);
    if (static_cast<std::size_t>(k) == n) {
      std::vector<int> order(n);
      for (std::size_t u = 0; u < n; ++u) order[c[u]] = static_cast<int>(u);
      std::string cert;
      for (int i : order) {
        for (int j : order) {
          cert += std::to_string(dg.count[i][j]);
          cert += ',';
        }
        cert += ';';
      }
      if (!have_best || cert < best) {
        best = std::move(cert);
        have_best = true;
      }
      return;
    }
    // Target cell: smallest colour among the non-singleton cells.
    std::vector<int> size(k, 0);
    for (int col : c) ++size[col];
    int target = 0;
    while (size[target] == 1) ++target;
    for (std::size_t v = 0; v < n; ++v) {
      if (c[v] != target) continue;
      std::vector<std::pair<int, int>> sig(n);
      for (std::size_t u = 0; u < n; ++u) sig[u] = {c[u], u == v ? 0 : 1};
      search(refine(rank_signatures(sig)));
    }
  };

  std::vector<std::tuple<int, int, int>> seed(dg.invariant.begin(), dg.invariant.end());
  search(refine(rank_signatures(seed)));
  return "V" + std::to_string(n) + "E" + std::to_string(g.edge_count()) + ":" + best;
}

}  // namespace basilica
