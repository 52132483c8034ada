#pragma once

// Graph pair diagrams: the finite form of rearrangements between limit
// spaces X(B-) -> X(B+). A diagram is (domain, range, phi) where the domain
// is an expansion of B-, the range an expansion of B+, and phi a
// direction-preserving isomorphism. On cells it acts by prefix replacement:
// an address ε·s with ε a domain edge goes to phi(ε)·s.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "basilica/graph.hpp"
#include "basilica/isomorphism.hpp"
#include "basilica/rewrite.hpp"

namespace basilica {

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The base edge of `base` lying over `a` (a prefix of a), if any.
inline std::optional<Address> base_prefix(const AddressedGraph& base, const Address& a) {
  for (std::size_t k = 0; k <= a.path.size(); ++k) {
    Address p(a.root, a.path.substr(0, k));
    if (base.has_edge(p)) return p;
  }
  return std::nullopt;
}

/// Builds the expansion of `base` whose edge set is exactly `edges`.
/// Throws if `edges` is not the edge set of an expansion of `base`.
inline AddressedGraph build_expansion(const AddressedGraph& base, const std::set<Address>& edges) {
  AddressedGraph g = base;
  std::vector<Address> todo = g.edge_addresses();
  while (!todo.empty()) {
    const Address a = todo.back();
    todo.pop_back();
    if (edges.count(a)) continue;
    const bool deeper = std::any_of(edges.begin(), edges.end(), [&](const Address& e) {
      return a.is_prefix_of(e) && e != a;
    });
    if (!deeper) throw DiagramError("address set is not an expansion: nothing covers " + a.str());
    g = expand(g, a);
    for (int i = 1; i <= 3; ++i) todo.push_back(a.child(i));
  }
  if (g.edge_count() != edges.size()) throw DiagramError("address set is not an expansion: stray addresses");
  return g;
}

struct GraphPairDiagram {
  AddressedGraph base_domain;
  AddressedGraph base_range;
  AddressedGraph domain;
  AddressedGraph range;
  EdgeMap phi;

  static GraphPairDiagram identity(const AddressedGraph& base) {
    GraphPairDiagram f{base, base, base, base, {}};
    for (const auto& a : base.edge_addresses()) f.phi[a] = a;
    return f;
  }

  [[nodiscard]] Address preimage(const Address& rho) const {
    for (const auto& [e, r] : phi) {
      if (r == rho) return e;
    }
    throw DiagramError("no domain edge maps to " + rho.str());
  }

  /// Checks every structural invariant; throws DiagramError on failure.
  void validate() const {
    for (const AddressedGraph* side : {&domain, &range}) {
      const AddressedGraph& base = side == &domain ? base_domain : base_range;
      for (const auto& [a, inc] : side->edges()) {
        if (!base_prefix(base, a)) throw DiagramError("edge " + a.str() + " lies over no base edge");
      }
      std::set<Address> addrs;
      for (const auto& [a, inc] : side->edges()) addrs.insert(a);
      (void)build_expansion(base, addrs);
    }
    if (!is_isomorphism(domain, range, phi)) throw DiagramError("phi is not a graph isomorphism");
  }

  bool operator==(const GraphPairDiagram&) const = default;
};

/// Rank: number of edges of the target base graph.
inline std::size_t rank(const GraphPairDiagram& f) { return f.base_range.edge_count(); }

/// Diagram from an explicit prefix-replacement table.
inline GraphPairDiagram from_prefix_map(const AddressedGraph& base_domain, const AddressedGraph& base_range,
                                        const std::vector<std::pair<Address, Address>>& pairs) {
  std::set<Address> left, right;
  EdgeMap phi;
  for (const auto& [l, r] : pairs) {
    if (!left.insert(l).second || !right.insert(r).second) throw DiagramError("repeated address in prefix map");
    phi[l] = r;
  }
  GraphPairDiagram f{base_domain, base_range, build_expansion(base_domain, left), build_expansion(base_range, right),
                     std::move(phi)};
  if (!is_isomorphism(f.domain, f.range, f.phi)) throw DiagramError("prefix map does not induce a graph isomorphism");
  return f;
}

class ApplyError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

/// Prefix replacement: the domain edge over `a` is replaced by its image.
inline Address apply(const GraphPairDiagram& f, const Address& a) {
  for (std::size_t k = 0; k <= a.path.size(); ++k) {
    const Address p(a.root, a.path.substr(0, k));
    const auto it = f.phi.find(p);
    if (it != f.phi.end()) return a.rebased(p, it->second);
  }
  throw ApplyError("address " + a.str() + " is above every domain edge");
}

inline GraphPairDiagram invert(const GraphPairDiagram& f) {
  GraphPairDiagram g{f.base_range, f.base_domain, f.range, f.domain, {}};
  for (const auto& [a, b] : f.phi) g.phi[b] = a;
  return g;
}

/// Expands the domain edge ε and its image simultaneously; the diagram
/// still represents the same rearrangement.
inline GraphPairDiagram expand_pair(const GraphPairDiagram& f, const Address& eps) {
  const Address rho = f.phi.at(eps);
  if (f.domain.is_loop(eps) != f.range.is_loop(rho)) throw DiagramError("loop mismatch in expand_pair");
  GraphPairDiagram g{f.base_domain, f.base_range, expand(f.domain, eps), expand(f.range, rho), f.phi};
  g.phi.erase(eps);
  for (int i = 1; i <= 3; ++i) g.phi[eps.child(i)] = rho.child(i);
  return g;
}

namespace detail {

/// Maximal elements (under prefix order) of the union of two tilings.
inline std::set<Address> common_refinement(const AddressedGraph& a, const AddressedGraph& b) {
  std::set<Address> all;
  for (const auto& [e, inc] : a.edges()) all.insert(e);
  for (const auto& [e, inc] : b.edges()) all.insert(e);
  std::set<Address> out = all;
  for (const auto& e : all) {
    for (std::size_t k = 0; k < e.path.size(); ++k) out.erase(Address(e.root, e.path.substr(0, k)));
  }
  return out;
}

inline GraphPairDiagram refine_range_to(GraphPairDiagram f, const std::set<Address>& targets, std::size_t budget) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [rho, inc] : f.range.edges()) {
      if (targets.count(rho)) continue;
      if (rho.depth() >= budget) throw DiagramError("common expansion exceeds depth budget");
      f = expand_pair(f, f.preimage(rho));
      changed = true;
      break;
    }
  }
  return f;
}

}  // namespace detail

inline constexpr std::size_t kDefaultDepthBudget = 16;

/// Diagram for g ∘ f (f first). Requires the target base of f to be the
/// source base of g; both are brought to a common expansion in between.
inline GraphPairDiagram compose(const GraphPairDiagram& g, const GraphPairDiagram& f,
                                std::size_t depth_budget = kDefaultDepthBudget) {
  if (f.base_range.edges() != g.base_domain.edges()) throw DiagramError("compose: incompatible base graphs");
  const auto targets = detail::common_refinement(f.range, g.domain);
  const GraphPairDiagram f2 = detail::refine_range_to(f, targets, depth_budget);
  const GraphPairDiagram g2 = invert(detail::refine_range_to(invert(g), targets, depth_budget));
  GraphPairDiagram h{f2.base_domain, g2.base_range, f2.domain, g2.range, {}};
  for (const auto& [e, mid] : f2.phi) h.phi[e] = g2.phi.at(mid);
  return h;
}

namespace detail {

struct Caret {
  Address domain_parent;
  Address range_parent;
};

/// Sibling triples ε1, ε2, ε3 of the domain mapped role by role onto
/// sibling triples ρ1, ρ2, ρ3 of the range, with ε and ρ not above the bases.
inline std::vector<Caret> cancellable_carets(const GraphPairDiagram& f) {
  std::vector<Caret> out;
  for (const auto& [e1, r1] : f.phi) {
    if (e1.last_symbol() != 1 || r1.last_symbol() != 1) continue;
    const Address ep = e1.parent(), rp = r1.parent();
    bool ok = true;
    for (int i = 2; i <= 3 && ok; ++i) {
      const auto it = f.phi.find(ep.child(i));
      ok = it != f.phi.end() && it->second == rp.child(i);
    }
    if (!ok || !base_prefix(f.base_domain, ep) || !base_prefix(f.base_range, rp)) continue;
    out.push_back(Caret{ep, rp});
  }
  return out;
}

inline GraphPairDiagram cancel(const GraphPairDiagram& f, const Caret& c) {
  GraphPairDiagram g{f.base_domain, f.base_range, collapse(f.domain, c.domain_parent),
                     collapse(f.range, c.range_parent), f.phi};
  for (int i = 1; i <= 3; ++i) g.phi.erase(c.domain_parent.child(i));
  g.phi[c.domain_parent] = c.range_parent;
  return g;
}

}  // namespace detail

/// Cancels matching expansion/contraction pairs until none remain. Carets
/// are cancelled in address order, or in random order when `rng` is given.
inline GraphPairDiagram reduce(GraphPairDiagram f, std::mt19937_64* rng = nullptr) {
  for (;;) {
    auto carets = detail::cancellable_carets(f);
    if (carets.empty()) return f;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, carets.size() - 1)(*rng);
    f = detail::cancel(f, carets[pick]);
  }
}

/// Range equivalence, decided directly: after reduction both diagrams have
/// the same domain and there is a base isomorphism ψ with ψ ∘ f = g.
inline bool range_equivalent(const GraphPairDiagram& f, const GraphPairDiagram& g) {
  if (f.base_domain.edges() != g.base_domain.edges()) return false;
  const GraphPairDiagram rf = reduce(f), rg = reduce(g);
  if (rf.phi.size() != rg.phi.size()) return false;
  EdgeMap psi;
  for (const auto& [e, rho_f] : rf.phi) {
    const auto it = rg.phi.find(e);
    if (it == rg.phi.end()) return false;
    const Address eta_f = *base_prefix(rf.base_range, rho_f);
    const Address eta_g = *base_prefix(rg.base_range, it->second);
    if (eta_f.suffix_of(rho_f) != eta_g.suffix_of(it->second)) return false;
    const auto [pos, fresh] = psi.emplace(eta_f, eta_g);
    if (!fresh && pos->second != eta_g) return false;
  }
  return is_isomorphism(rf.base_range, rg.base_range, psi);
}

/// Canonical key of the range-equivalence class [f]. Each base edge of the
/// target is named by the order in which it first receives a domain edge
/// (domain edges taken in address order), which removes the dependence on
/// target labels.
inline std::string vertex_key(const GraphPairDiagram& f) {
  const GraphPairDiagram r = reduce(f);
  std::string key;
  for (const auto& [a, inc] : r.base_domain.edges()) key += a.str() + ",";
  key += "|";
  std::map<Address, std::size_t> label;
  for (const auto& [e, rho] : r.phi) {
    const Address eta = *base_prefix(r.base_range, rho);
    const auto [it, fresh] = label.emplace(eta, label.size());
    key += e.str() + ">" + std::to_string(it->second) + "." + eta.suffix_of(rho) + ";";
  }
  return key;
}

/// Δ_η ∘ f for an edge η of the target base.
inline GraphPairDiagram expand_range(const GraphPairDiagram& f, const Address& eta) {
  if (!f.base_range.has_edge(eta)) throw DiagramError("expand_range: " + eta.str() + " is not a base edge");
  GraphPairDiagram g = f;
  g.base_range = expand(f.base_range, eta);
  if (f.range.has_edge(eta)) g = expand_pair(g, f.preimage(eta));
  return g;
}

struct RangeContraction {
  GraphPairDiagram diagram;
  Address merged;
};

/// ∇_T ∘ f for an occurrence T of the target base. The merged edge μ gets a
/// fresh token and the range is re-addressed so that it expands the new base:
/// in ↦ μ1, loop ↦ μ2, out ↦ μ3.
inline RangeContraction contract_range(const GraphPairDiagram& f, const Occurrence& t) {
  auto [base, mu] = contract(f.base_range, t);
  const std::vector<std::pair<Address, Address>> moves = {{t.in, mu.child(1)}, {t.loop, mu.child(2)}, {t.out, mu.child(3)}};
  GraphPairDiagram g{f.base_domain, std::move(base), f.domain,
                     rebase_prefixes(f.range, moves, {{t.interior, Vertex::interior_of(mu)}}), {}};
  for (const auto& [e, rho] : f.phi) {
    Address img = rho;
    for (const auto& [from, to] : moves) {
      if (from.is_prefix_of(rho)) img = rho.rebased(from, to);
    }
    g.phi[e] = img;
  }
  return RangeContraction{std::move(g), mu};
}

/// ψ ∘ f for a base isomorphism ψ: base_range -> target.
inline GraphPairDiagram apply_base_iso(const GraphPairDiagram& f, const AddressedGraph& target, const EdgeMap& psi) {
  if (!is_isomorphism(f.base_range, target, psi)) throw DiagramError("apply_base_iso: not an isomorphism");
  std::vector<std::pair<Address, Address>> moves(psi.begin(), psi.end());
  std::vector<std::pair<Vertex, Vertex>> vmoves;
  for (const auto& [a, b] : psi) {
    vmoves.emplace_back(f.base_range.source(a), target.source(b));
    vmoves.emplace_back(f.base_range.target(a), target.target(b));
  }
  GraphPairDiagram g{f.base_domain, target, f.domain, rebase_prefixes(f.range, moves, vmoves), {}};
  for (const auto& [e, rho] : f.phi) {
    const Address eta = *base_prefix(f.base_range, rho);
    g.phi[e] = rho.rebased(eta, psi.at(eta));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Move words

struct ExpandMove {
  Address edge;
};
struct ContractMove {
  Occurrence occurrence;
};
struct BaseIsoMove {
  AddressedGraph target;
  EdgeMap psi;
};
using Move = std::variant<ExpandMove, ContractMove, BaseIsoMove>;
using MoveWord = std::vector<Move>;

inline std::string describe(const Move& m) {
  if (const auto* e = std::get_if<ExpandMove>(&m)) return "expand " + e->edge.str();
  if (const auto* c = std::get_if<ContractMove>(&m)) return "contract " + c->occurrence.str();
  return "base-iso";
}

/// Applies one move on the target side of f.
inline GraphPairDiagram apply_move(const GraphPairDiagram& f, const Move& m) {
  if (const auto* e = std::get_if<ExpandMove>(&m)) return expand_range(f, e->edge);
  if (const auto* c = std::get_if<ContractMove>(&m)) {
    if (auto why = occurrence_defect(f.base_range, c->occurrence)) {
      throw DiagramError("inapplicable contraction " + c->occurrence.str() + ": " + *why);
    }
    return contract_range(f, c->occurrence).diagram;
  }
  const auto& b = std::get<BaseIsoMove>(m);
  return apply_base_iso(f, b.target, b.psi);
}

// ---------------------------------------------------------------------------
// Cells

/// Reduced description of f^{-1} on the cell of a target base edge η: the
/// pairs (domain edge ε, suffix s) with f(ε) = η·s, with sibling triples
/// (ε1 ↦ s1, ε2 ↦ s2, ε3 ↦ s3) merged into (ε ↦ s). Two 1-cubes of the cube
/// complex are parallel exactly when their edges have equal signatures.
using CellSignature = std::vector<std::pair<Address, std::string>>;

inline CellSignature cell_signature(const GraphPairDiagram& f, const Address& eta) {
  if (!f.base_range.has_edge(eta)) throw DiagramError("cell_signature: " + eta.str() + " is not a base edge");
  std::map<Address, std::string> pieces;
  for (const auto& [e, rho] : f.phi) {
    if (eta.is_prefix_of(rho)) pieces[e] = eta.suffix_of(rho);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [e1, s1] : pieces) {
      if (e1.last_symbol() != 1 || s1.empty() || s1.back() != '1') continue;
      const Address p = e1.parent();
      const std::string s = s1.substr(0, s1.size() - 1);
      const auto i2 = pieces.find(p.child(2));
      const auto i3 = pieces.find(p.child(3));
      if (i2 == pieces.end() || i3 == pieces.end() || i2->second != s + "2" || i3->second != s + "3") continue;
      if (!base_prefix(f.base_domain, p)) continue;
      for (int i = 1; i <= 3; ++i) pieces.erase(p.child(i));
      pieces[p] = s;
      changed = true;
      break;
    }
  }
  return CellSignature(pieces.begin(), pieces.end());
}

}  // namespace basilica
