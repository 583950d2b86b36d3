#pragma once

// Finite abstract simplicial complexes on labeled vertices 1..n (n <= 63),
// stored as the full downward-closed family of nonempty vertex subsets
// encoded as bit masks. Small by design: past links and nerve models only
// ever need a handful of vertices.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvspace {

using Simplex = std::uint64_t;  // bit v-1 set <=> vertex v in the simplex

struct SimplicialComplex {
  int n = 0;                   // ambient vertex labels 1..n
  std::set<Simplex> simplices;  // nonempty, downward closed

  bool contains(Simplex s) const { return simplices.count(s) > 0; }
  bool empty() const { return simplices.empty(); }

  /// -1 for the empty complex.
  int dim() const {
    int d = -1;
    for (Simplex s : simplices) d = std::max(d, std::popcount(s) - 1);
    return d;
  }

  /// Number of d-simplices.
  int count(int d) const {
    int c = 0;
    for (Simplex s : simplices)
      if (std::popcount(s) == d + 1) ++c;
    return c;
  }

  std::vector<int> vertices() const {
    std::vector<int> out;
    for (Simplex s : simplices)
      if (std::popcount(s) == 1) out.push_back(std::countr_zero(s) + 1);
    return out;
  }

  /// Inclusion-maximal simplices, ascending as masks.
  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    for (Simplex s : simplices) {
      bool maximal = true;
      for (Simplex t : simplices)
        if (t != s && (t & s) == s) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(s);
    }
    return out;
  }

  /// Inserts a simplex together with all of its nonempty subsets.
  void insert_closed(Simplex s) {
    if (s == 0) return;
    check_range(s);
    // enumerate all nonempty submasks
    for (Simplex sub = s;; sub = (sub - 1) & s) {
      if (sub != 0) simplices.insert(sub);
      if (sub == 0) break;
    }
  }

  bool downward_closed() const {
    for (Simplex s : simplices) {
      if (s == 0) return false;
      for (int v = 0; v < n; ++v) {
        Simplex sub = s & ~(Simplex{1} << v);
        if (sub != 0 && sub != s && !contains(sub)) return false;
      }
    }
    return true;
  }

  void check_range(Simplex s) const {
    if (n < 0 || n > 63) throw std::invalid_argument("vertex count out of range");
    if (s >> n) throw std::invalid_argument("simplex uses a vertex above n");
  }

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;
};

inline SimplicialComplex from_facets(int n, const std::vector<Simplex>& facets) {
  SimplicialComplex L;
  L.n = n;
  for (Simplex f : facets) L.insert_closed(f);
  return L;
}

inline SimplicialComplex full_simplex(int n) {
  SimplicialComplex L;
  L.n = n;
  if (n > 0) L.insert_closed((Simplex{1} << n) - 1);
  return L;
}

/// All nonempty proper subsets of {1..n}.
inline SimplicialComplex boundary_simplex(int n) {
  if (n < 2) throw std::invalid_argument("boundary_simplex needs n >= 2");
  SimplicialComplex L;
  L.n = n;
  Simplex full = (Simplex{1} << n) - 1;
  for (Simplex s = 1; s < full; ++s) L.simplices.insert(s);
  return L;
}

/// The complex whose simplices are exactly the nonempty sets containing no
/// member of `nonfaces`. Singletons in `nonfaces` delete vertices.
inline SimplicialComplex from_minimal_nonfaces(int n, const std::vector<Simplex>& nonfaces) {
  if (n < 0 || n > 24)
    throw std::invalid_argument("from_minimal_nonfaces: vertex count out of supported range");
  for (Simplex a : nonfaces)
    if (a == 0) throw std::invalid_argument("from_minimal_nonfaces: empty forbidden set");
  SimplicialComplex L;
  L.n = n;
  L.check_range(nonfaces.empty() ? 0 : *std::max_element(nonfaces.begin(), nonfaces.end()));
  Simplex full = n == 0 ? 0 : (Simplex{1} << n) - 1;
  for (Simplex s = 1; s <= full && full != 0; ++s) {
    bool ok = true;
    for (Simplex a : nonfaces)
      if ((a & s) == a) {
        ok = false;
        break;
      }
    if (ok) L.simplices.insert(s);
  }
  return L;
}

/// Inclusion-minimal nonempty sets that are not simplices of L.
inline std::vector<Simplex> minimal_nonfaces(const SimplicialComplex& L) {
  if (L.n > 24) throw std::invalid_argument("minimal_nonfaces: vertex count out of supported range");
  std::vector<Simplex> out;
  Simplex full = L.n == 0 ? 0 : (Simplex{1} << L.n) - 1;
  for (Simplex s = 1; s <= full && full != 0; ++s) {
    if (L.contains(s)) continue;
    bool minimal = true;
    for (int v = 0; v < L.n && minimal; ++v) {
      Simplex sub = s & ~(Simplex{1} << v);
      if (sub != 0 && sub != s && !L.contains(sub)) minimal = false;
    }
    if (minimal) out.push_back(s);
  }
  return out;
}

/// A vertex lying in every facet, if any; such a vertex makes the complex
/// a cone and hence contractible. Returns the smallest one.
inline std::optional<int> is_cone(const SimplicialComplex& L) {
  if (L.empty()) return std::nullopt;
  Simplex common = ~Simplex{0};
  for (Simplex f : L.facets()) common &= f;
  if (common == 0) return std::nullopt;
  return std::countr_zero(common) + 1;
}

/// Number of connected components (vertices joined by shared simplices).
inline int component_count(const SimplicialComplex& L) {
  std::vector<int> parent(L.n);
  for (int i = 0; i < L.n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Simplex s : L.simplices) {
    int first = std::countr_zero(s);
    for (Simplex rest = s; rest; rest &= rest - 1)
      parent[find(std::countr_zero(rest))] = find(first);
  }
  std::set<int> roots;
  for (Simplex s : L.simplices)
    if (std::popcount(s) == 1) roots.insert(find(std::countr_zero(s)));
  return static_cast<int>(roots.size());
}

/// Order complex: vertices are the simplices of L, simplices are the
/// chains under strict inclusion (barycentric subdivision of L).
inline SimplicialComplex order_complex(const SimplicialComplex& L) {
  std::vector<Simplex> elems(L.simplices.begin(), L.simplices.end());
  const int N = static_cast<int>(elems.size());
  if (N > 63) throw std::invalid_argument("order_complex: too many simplices");
  SimplicialComplex oc;
  oc.n = N;
  std::vector<std::vector<int>> supersets(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j && (elems[i] & elems[j]) == elems[i]) supersets[i].push_back(j);

  // depth-first enumeration of all chains
  std::vector<std::pair<int, Simplex>> stack;
  for (int i = 0; i < N; ++i) stack.push_back({i, Simplex{1} << i});
  while (!stack.empty()) {
    auto [top, chain] = stack.back();
    stack.pop_back();
    oc.simplices.insert(chain);
    for (int j : supersets[top]) stack.push_back({j, chain | (Simplex{1} << j)});
  }
  return oc;
}

inline std::vector<int> simplex_vertices(Simplex s) {
  std::vector<int> out;
  while (s) {
    int v = std::countr_zero(s);
    out.push_back(v + 1);
    s &= s - 1;
  }
  return out;
}

inline Simplex simplex_of(const std::vector<int>& vertices) {
  Simplex s = 0;
  for (int v : vertices) {
    if (v < 1 || v > 63) throw std::invalid_argument("vertex label out of range");
    s |= Simplex{1} << (v - 1);
  }
  return s;
}

}  // namespace pvspace
