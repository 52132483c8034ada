#pragma once

// Named verification runs over the library, each producing a JSON report
// and a three-way status.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "basilica/certificates.hpp"
#include "basilica/cube.hpp"
#include "basilica/diagram.hpp"
#include "basilica/families.hpp"
#include "basilica/homology.hpp"
#include "basilica/io.hpp"

namespace basilica {

inline constexpr const char* kVersion = "0.1.0";

enum class Status { Certified = 0, Falsified = 1, Inconclusive = 2 };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Certified: return "certified";
    case Status::Falsified: return "falsified";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CampaignConfig {
  std::string campaign;
  std::size_t n = 1;
  std::size_t slack = 2;
  std::size_t budget = 0;  // 0: campaign default
  std::optional<std::size_t> rank_cap;
  std::uint64_t seed = 1;
  std::size_t samples = 0;  // 0: campaign default
};

inline nlohmann::json to_json(const CampaignConfig& c) {
  return {{"campaign", c.campaign},
          {"n", c.n},
          {"slack", c.slack},
          {"budget", c.budget},
          {"rank_cap", c.rank_cap ? nlohmann::json(*c.rank_cap) : nlohmann::json(nullptr)},
          {"seed", c.seed},
          {"samples", c.samples}};
}

struct CampaignReport {
  Status status = Status::Inconclusive;
  nlohmann::json body;
};

inline const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = {"key-lemma", "quarter-spaces", "detour-path",
                                                 "nerve",     "descending-links", "diagram-algebra"};
  return names;
}

// ---------------------------------------------------------------------------

inline CampaignReport run_key_lemma(const CampaignConfig& c) {
  const auto r = verify_key_lemma(c.n, c.slack, c.budget ? c.budget : 1000000);
  CampaignReport out;
  out.body = {{"n", r.n},
              {"slack", r.slack},
              {"edge_cap", r.edge_cap},
              {"classes_visited", r.classes_visited},
              {"min_edges_seen", r.min_edges_seen},
              {"min_edge_bound", min_edge_bound(make_O(c.n))},
              {"collapsible_violations", r.collapsible_violations},
              {"invariant_certified", r.invariant_certified},
              {"search_consistent", r.search_consistent},
              {"certified", r.certified},
              {"exhaustive", r.exhaustive}};
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [d, count] : r.defect_histogram) hist[std::to_string(d)] = count;
  out.body["defect_histogram"] = hist;
  if (!r.invariant_certified || !r.search_consistent) {
    out.status = Status::Falsified;
  } else {
    out.status = r.exhaustive ? Status::Certified : Status::Inconclusive;
  }
  return out;
}

struct QuarterCheck {
  std::vector<QuarterWitness> exact;
  std::vector<QuarterWitness> conservative;
  bool ok = false;
};

inline QuarterCheck check_quarter_spaces(std::size_t n) {
  QuarterCheck q;
  q.exact = quarter_witnesses(n, TrackerPolicy::Exact);
  q.conservative = quarter_witnesses(n, TrackerPolicy::Conservative);
  const std::vector<std::vector<int>> expected = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  q.ok = q.exact.size() == 4;
  for (std::size_t i = 0; i < q.exact.size() && q.ok; ++i) {
    q.ok = q.exact[i].vertex.rank() == 2 * n + 6 && q.exact[i].sides == expected[i] && !q.exact[i].indeterminate &&
           q.conservative[i].sides == expected[i] && !q.conservative[i].indeterminate;
  }
  return q;
}

inline CampaignReport run_quarter_spaces(const CampaignConfig& c) {
  const auto q = check_quarter_spaces(c.n);
  CampaignReport out;
  nlohmann::json ws = nlohmann::json::array();
  for (std::size_t i = 0; i < q.exact.size(); ++i) {
    ws.push_back({{"vertex", q.exact[i].name},
                  {"rank", q.exact[i].vertex.rank()},
                  {"sides", q.exact[i].sides},
                  {"conservative_sides", q.conservative[i].sides},
                  {"indeterminate", q.exact[i].indeterminate || q.conservative[i].indeterminate}});
  }
  out.body = {{"n", c.n}, {"expected_rank", 2 * c.n + 6}, {"witnesses", ws}};
  out.status = q.ok ? Status::Certified : Status::Falsified;
  return out;
}

struct DetourCheck {
  std::vector<DetourResult> results;
  bool ok = false;
};

inline bool detour_ok(const DetourResult& r) {
  const bool low = std::all_of(r.ranks.begin(), r.ranks.end(), [&](std::size_t h) { return h + 1 <= r.rank_x; });
  return low && r.z_wall_crossings == 0 && r.endpoints_ok && r.twisted_differs;
}

inline DetourCheck check_detours(std::size_t count, std::uint64_t seed) {
  DetourCheck d;
  std::vector<DetourConfig> configs{graph_dance_config()};
  for (auto& c : generate_detour_configs(count > 0 ? count - 1 : 0, seed)) configs.push_back(std::move(c));
  d.ok = configs.size() == count;
  for (const auto& c : configs) {
    d.results.push_back(detour_path(c));
    d.ok = d.ok && detour_ok(d.results.back());
  }
  return d;
}

inline CampaignReport run_detour_path(const CampaignConfig& c) {
  const auto d = check_detours(c.samples ? c.samples : 10, c.seed);
  CampaignReport out;
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : d.results) {
    std::vector<std::string> moves;
    for (const auto& m : r.path) moves.push_back(describe(m));
    rs.push_back({{"rank_x", r.rank_x},
                  {"ranks", r.ranks},
                  {"moves", moves},
                  {"z_wall_crossings", r.z_wall_crossings},
                  {"endpoints_ok", r.endpoints_ok},
                  {"twisted_differs", r.twisted_differs},
                  {"conservative_indeterminate", r.conservative_indeterminate}});
  }
  out.body = {{"instances", rs}};
  out.status = d.ok ? Status::Certified : Status::Falsified;
  return out;
}

struct NerveCheck {
  SidedExploration exploration;
  std::vector<std::set<std::string>> cover;  // H1+, H1-, H2+, H2-
  SimplicialComplex nerve;
  BettiVector betti;
  bool ok = false;
};

/// Explores Y_n = K(G0)_{rank_cap} around the four quarter witnesses, labels
/// every vertex with its sides of H1 and H2 and takes the nerve of the
/// half-space cover.
inline NerveCheck check_nerve(std::size_t n, std::size_t rank_cap, std::size_t budget) {
  NerveCheck out;
  const WallPair walls = make_walls(n);
  std::vector<std::pair<GraphPairDiagram, std::vector<int>>> starts;
  for (const auto& w : quarter_witnesses(n)) {
    starts.emplace_back(certify_path_sides(walls.f_n, {}, w.path).trace.back(), w.sides);
  }
  out.exploration = sided_bfs(starts, {walls.h1.signature(), walls.h2.signature()}, rank_cap, budget);
  out.cover.assign(4, {});
  for (std::size_t i = 0; i < out.exploration.graph.vertices.size(); ++i) {
    const auto& key = out.exploration.graph.vertices[i].key;
    const auto& s = out.exploration.sides[i];
    out.cover[s[0] > 0 ? 0 : 1].insert(key);
    out.cover[s[1] > 0 ? 2 : 3].insert(key);
  }
  out.nerve = nerve(out.cover);
  out.betti = betti(out.nerve);
  out.ok = out.exploration.conflicts == 0 && out.nerve.simplices_of_dim(0).size() == 4 &&
           out.nerve.simplices_of_dim(1).size() == 4 && out.nerve.dimension() == 1 && out.betti.b(0) == 1 &&
           out.betti.b(1) == 1;
  return out;
}

inline CampaignReport run_nerve(const CampaignConfig& c) {
  const std::size_t cap = c.rank_cap.value_or(2 * c.n + 9);
  const auto r = check_nerve(c.n, cap, c.budget ? c.budget : 400);
  CampaignReport out;
  out.body = {{"n", c.n},
              {"rank_cap", cap},
              {"explored", io::to_json(r.exploration.graph)},
              {"side_conflicts", r.exploration.conflicts},
              {"cover_sizes", {r.cover[0].size(), r.cover[1].size(), r.cover[2].size(), r.cover[3].size()}},
              {"nerve", io::to_json(r.nerve)},
              {"homology", io::to_json(r.betti)}};
  out.status = r.ok ? Status::Certified : Status::Falsified;
  return out;
}

struct DescendingLinkCheck {
  std::size_t g0_components = 0;
  std::size_t sampled = 0;
  std::size_t large = 0;               // sampled vertices with >= 5 target vertices
  std::size_t large_disconnected = 0;  // of those, descending link not connected
  std::size_t small_disconnected = 0;
  bool exhaustive = false;
  bool ok = false;
};

inline DescendingLinkCheck check_descending_links(std::size_t rank_cap, std::size_t budget) {
  DescendingLinkCheck d;
  d.g0_components = connectivity(descending_link(CubeVertex::of(GraphPairDiagram::identity(make_G0()))));
  const auto g = bfs_sublevel(CubeVertex::of(GraphPairDiagram::identity(make_J(2))), rank_cap, budget);
  d.exhaustive = g.exhaustive;
  for (const auto& v : g.vertices) {
    ++d.sampled;
    const bool connected = connectivity(descending_link(v)) == 1;
    if (v.representative.base_range.vertex_count() >= 5) {
      ++d.large;
      d.large_disconnected += !connected;
    } else {
      d.small_disconnected += !connected;
    }
  }
  d.ok = d.g0_components == 2 && d.large > 0 && d.large_disconnected == 0;
  return d;
}

inline CampaignReport run_descending_links(const CampaignConfig& c) {
  const auto d = check_descending_links(c.rank_cap.value_or(18), c.budget ? c.budget : 1500);
  CampaignReport out;
  out.body = {{"g0_components", d.g0_components},
              {"sampled", d.sampled},
              {"large", d.large},
              {"large_disconnected", d.large_disconnected},
              {"small_disconnected", d.small_disconnected},
              {"exhaustive", d.exhaustive}};
  out.status = d.ok ? Status::Certified : Status::Falsified;
  return out;
}

struct AlgebraCheck {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_notes;
};

namespace detail {

inline Address random_address_below(const AddressedGraph& base, std::size_t depth, std::mt19937_64& rng) {
  const auto edges = base.edge_addresses();
  Address a = edges[rng() % edges.size()];
  while (a.depth() < depth) a = a.child(1 + static_cast<int>(rng() % 3));
  return a;
}

}  // namespace detail

/// Groupoid laws and faithfulness of compose / invert / reduce on random
/// diagrams, with prefix replacement on addresses as the reference.
inline AlgebraCheck check_diagram_algebra(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AlgebraCheck out;
  auto fail = [&](const std::string& what) {
    ++out.failures;
    if (out.failure_notes.size() < 10) out.failure_notes.push_back(what);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    ++out.samples;
    const GraphPairDiagram f = random_rearrangement(make_G0(), 1 + rng() % 5, rng);
    const GraphPairDiagram g = random_rearrangement(f.base_range, 1 + rng() % 4, rng);
    const GraphPairDiagram h = random_rearrangement(g.base_range, 1 + rng() % 3, rng);
    try {
      f.validate();
      const GraphPairDiagram gf = compose(g, f);
      gf.validate();
      const GraphPairDiagram fi = invert(f);
      const GraphPairDiagram left = reduce(compose(fi, f));
      if (left != reduce(GraphPairDiagram::identity(f.base_domain))) fail("f^-1 f is not the identity");
      const GraphPairDiagram right = reduce(compose(f, fi));
      if (right != reduce(GraphPairDiagram::identity(f.base_range))) fail("f f^-1 is not the identity");
      if (reduce(compose(h, gf)) != reduce(compose(compose(h, g), f))) fail("composition is not associative");
      if (reduce(invert(invert(f))) != reduce(f)) fail("double inverse");
      std::mt19937_64 order(rng());
      const GraphPairDiagram r1 = reduce(gf), r2 = reduce(gf, &order);
      if (!range_equivalent(r1, r2) || r1 != r2) fail("reduction order changes the normal form");
      for (int k = 0; k < 8; ++k) {
        const Address a = detail::random_address_below(f.base_domain, 6, rng);
        Address fa, gfa;
        try {
          fa = apply(f, a);
        } catch (const ApplyError&) {
          continue;  // a lies above the domain tiling of f
        }
        try {
          if (apply(g, fa) != apply(gf, a)) fail("apply is not a homomorphism");
          if (apply(fi, fa) != a) fail("inverse does not undo apply");
          if (apply(reduce(f), a) != fa) fail("reduction changes the map");
        } catch (const ApplyError&) {
          continue;
        }
      }
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
  }
  return out;
}

inline CampaignReport run_diagram_algebra(const CampaignConfig& c) {
  const auto a = check_diagram_algebra(c.samples ? c.samples : 1000, c.seed);
  CampaignReport out;
  out.body = {{"samples", a.samples}, {"failures", a.failures}, {"notes", a.failure_notes}};
  out.status = a.failures == 0 ? Status::Certified : Status::Falsified;
  return out;
}

/// Runs one campaign; the report embeds the config and the tool version.
inline CampaignReport run_campaign(const CampaignConfig& c) {
  CampaignReport r;
  if (c.campaign == "key-lemma") {
    r = run_key_lemma(c);
  } else if (c.campaign == "quarter-spaces") {
    r = run_quarter_spaces(c);
  } else if (c.campaign == "detour-path") {
    r = run_detour_path(c);
  } else if (c.campaign == "nerve") {
    r = run_nerve(c);
  } else if (c.campaign == "descending-links") {
    r = run_descending_links(c);
  } else if (c.campaign == "diagram-algebra") {
    r = run_diagram_algebra(c);
  } else {
    throw std::invalid_argument("unknown campaign: " + c.campaign);
  }
  r.body["config"] = to_json(c);
  r.body["version"] = kVersion;
  r.body["status"] = status_name(r.status);
  return r;
}

}  // namespace basilica
