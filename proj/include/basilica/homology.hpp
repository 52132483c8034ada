#pragma once

// Finite simplicial complexes and their integral homology.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace basilica {

using Integer = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Integer>>;
using Simplex = std::vector<int>;

class HomologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vertices 0..n-1; simplices stored as sorted vertex tuples, closed under
/// taking faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(int vertex_count) : vertex_count_(vertex_count) {
    for (int v = 0; v < vertex_count; ++v) simplices_.insert({v});
  }

  /// Adds a simplex and all of its faces.
  void add_simplex(Simplex s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw HomologyError("repeated vertex in simplex");
    if (s.empty()) return;
    if (s.front() < 0) throw HomologyError("negative vertex label");
    vertex_count_ = std::max(vertex_count_, s.back() + 1);
    const std::size_t k = s.size();
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1UL << i)) face.push_back(s[i]);
      }
      simplices_.insert(std::move(face));
    }
  }

  [[nodiscard]] int vertex_count() const { return vertex_count_; }
  [[nodiscard]] const std::set<Simplex>& simplices() const { return simplices_; }
  [[nodiscard]] bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }

  [[nodiscard]] int dimension() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
  }

  /// k-simplices in lexicographic order.
  [[nodiscard]] std::vector<Simplex> simplices_of_dim(int k) const {
    std::vector<Simplex> out;
    for (const auto& s : simplices_) {
      if (static_cast<int>(s.size()) == k + 1) out.push_back(s);
    }
    return out;
  }

  /// Checks closure under faces.
  [[nodiscard]] bool is_closed() const {
    for (const auto& s : simplices_) {
      if (s.size() < 2) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        if (!simplices_.count(f)) return false;
      }
    }
    return true;
  }

 private:
  int vertex_count_ = 0;
  std::set<Simplex> simplices_;
};

/// ∂_k: C_k -> C_{k-1}; rows index (k-1)-simplices, columns k-simplices.
/// The face omitting position i carries sign (-1)^i.
inline IntMatrix boundary_matrix(const SimplicialComplex& c, int k) {
  if (k < 1) throw HomologyError("boundary_matrix: degree must be at least 1");
  const auto rows = c.simplices_of_dim(k - 1);
  const auto cols = c.simplices_of_dim(k);
  std::map<Simplex, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  IntMatrix m(rows.size(), std::vector<Integer>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < cols[j].size(); ++i) {
      Simplex face = cols[j];
      face.erase(face.begin() + static_cast<long>(i));
      m[row_index.at(face)][j] = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

/// Smith normal form diagonal: the non-zero invariant factors d_1 | d_2 | ...
/// (all positive). Works on a copy by unimodular row and column operations.
inline std::vector<Integer> smith_diagonal(IntMatrix a) {
  using boost::multiprecision::abs;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest non-zero absolute value in the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold in any entry the pivot does not divide.
      for (std::size_t i = t + 1; i < rows && clean; ++i) {
        for (std::size_t j = t + 1; j < cols && clean; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            clean = false;
          }
        }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (diag[i] % diag[i - 1] != 0) throw HomologyError("Smith normal form: divisibility violated");
  }
  return diag;
}

struct BettiVector {
  std::vector<std::size_t> betti;            // b_0, b_1, ..., b_dim
  std::vector<std::vector<Integer>> torsion;  // invariant factors > 1 per degree

  [[nodiscard]] std::size_t b(std::size_t k) const { return k < betti.size() ? betti[k] : 0; }
};

inline BettiVector betti(const SimplicialComplex& c) {
  BettiVector out;
  const int dim = c.dimension();
  if (dim < 0) return out;
  std::vector<std::size_t> rank(static_cast<std::size_t>(dim) + 2, 0);  // rank of ∂_k
  std::vector<std::vector<Integer>> factors(static_cast<std::size_t>(dim) + 2);
  for (int k = 1; k <= dim; ++k) {
    factors[k] = smith_diagonal(boundary_matrix(c, k));
    rank[k] = factors[k].size();
  }
  for (int k = 0; k <= dim; ++k) {
    const std::size_t chains = c.simplices_of_dim(k).size();
    out.betti.push_back(chains - rank[k] - rank[k + 1]);
    std::vector<Integer> tors;
    for (const auto& d : factors[k + 1]) {
      if (d > 1) tors.push_back(d);
    }
    out.torsion.push_back(std::move(tors));
  }
  return out;
}

/// Nerve of a finite cover: one vertex per member, one simplex per
/// subfamily with non-empty common intersection. `ambient`, when given,
/// must contain every member.
inline SimplicialComplex nerve(const std::vector<std::set<std::string>>& cover,
                               const std::set<std::string>* ambient = nullptr) {
  const std::size_t m = cover.size();
  if (m >= 20) throw HomologyError("nerve: cover too large");
  if (ambient) {
    for (const auto& member : cover) {
      if (!std::includes(ambient->begin(), ambient->end(), member.begin(), member.end())) {
        throw HomologyError("nerve: cover member leaves the ambient set");
      }
    }
  }
  SimplicialComplex c;
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    std::set<std::string> common;
    bool first = true;
    Simplex s;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (1UL << i))) continue;
      s.push_back(static_cast<int>(i));
      if (first) {
        common = cover[i];
        first = false;
      } else {
        std::set<std::string> both;
        std::set_intersection(common.begin(), common.end(), cover[i].begin(), cover[i].end(),
                              std::inserter(both, both.end()));
        common = std::move(both);
      }
    }
    if (!common.empty()) c.add_simplex(s);
  }
  return c;
}

/// Number of connected components of the graph on vertices 0..n-1.
inline std::size_t connectivity(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const auto& [u, v] : edges) {
    const auto ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components;
}

inline std::size_t connectivity(const SimplicialComplex& c) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<int> used;
  for (const auto& s : c.simplices()) {
    if (s.size() == 1) used.insert(s[0]);
    if (s.size() == 2) edges.emplace_back(s[0], s[1]);
  }
  // Labels not carrying a simplex are not vertices of the complex.
  return connectivity(static_cast<std::size_t>(c.vertex_count()), edges) -
         (static_cast<std::size_t>(c.vertex_count()) - used.size());
}

}  // namespace basilica
