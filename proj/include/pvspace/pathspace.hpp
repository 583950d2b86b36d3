#pragma once

// Models for spaces of directed paths on a cubical complex between two
// grid vertices. The main recursion resolves each vertex by its effective
// past link; when that gets stuck it splits the complex along a
// coordinate-sum hyperplane into independent pieces. A brute-force flip
// oracle over monotone edge paths provides an independent count of path
// components at small scale.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvspace/cubical.hpp"
#include "pvspace/homology.hpp"
#include "pvspace/simplicial.hpp"

namespace pvspace {

struct PathSpaceModel {
  enum class Kind { Empty, Contractible, Complex, Product, DisjointUnion, Unknown };

  Kind kind = Kind::Empty;
  SimplicialComplex complex;           // Kind::Complex
  std::vector<PathSpaceModel> parts;   // Kind::Product / DisjointUnion
  std::string diagnostic;              // Kind::Unknown
  IVec at;                             // Kind::Unknown: vertex where the method failed

  static PathSpaceModel empty() { return PathSpaceModel{}; }
  static PathSpaceModel contractible() {
    PathSpaceModel m;
    m.kind = Kind::Contractible;
    return m;
  }
  static PathSpaceModel from_complex(SimplicialComplex L) {
    PathSpaceModel m;
    m.kind = Kind::Complex;
    m.complex = std::move(L);
    return m;
  }
  static PathSpaceModel unknown(std::string why, const IVec& where) {
    PathSpaceModel m;
    m.kind = Kind::Unknown;
    m.diagnostic = std::move(why);
    m.at = where;
    return m;
  }

  /// Product with simplification: empty factors absorb, contractible
  /// factors drop, nested products flatten.
  static PathSpaceModel product(std::vector<PathSpaceModel> factors) {
    std::vector<PathSpaceModel> flat;
    for (PathSpaceModel& f : factors) {
      if (f.kind == Kind::Empty) return empty();
      if (f.kind == Kind::Contractible) continue;
      if (f.kind == Kind::Product)
        for (PathSpaceModel& g : f.parts) flat.push_back(std::move(g));
      else
        flat.push_back(std::move(f));
    }
    if (flat.empty()) return contractible();
    if (flat.size() == 1) return std::move(flat.front());
    PathSpaceModel m;
    m.kind = Kind::Product;
    m.parts = std::move(flat);
    return m;
  }

  /// Disjoint union with simplification: empty parts drop, nested unions
  /// flatten.
  static PathSpaceModel disjoint_union(std::vector<PathSpaceModel> pieces) {
    std::vector<PathSpaceModel> flat;
    for (PathSpaceModel& p : pieces) {
      if (p.kind == Kind::Empty) continue;
      if (p.kind == Kind::DisjointUnion)
        for (PathSpaceModel& g : p.parts) flat.push_back(std::move(g));
      else
        flat.push_back(std::move(p));
    }
    if (flat.empty()) return empty();
    if (flat.size() == 1) return std::move(flat.front());
    PathSpaceModel m;
    m.kind = Kind::DisjointUnion;
    m.parts = std::move(flat);
    return m;
  }

  bool contains_unknown() const {
    if (kind == Kind::Unknown) return true;
    for (const PathSpaceModel& p : parts)
      if (p.contains_unknown()) return true;
    return false;
  }

  friend bool operator==(const PathSpaceModel&, const PathSpaceModel&) = default;
};

/// Past link of the complex at a vertex: the directions j for which the
/// whole cube [k - j, k] lies in the complex. Downward closed because the
/// complex is face-closed.
inline SimplicialComplex past_link(const EuclideanComplex& K, const IVec& k) {
  if (!K.contains_vertex(k))
    throw std::invalid_argument("past_link: not a vertex of the complex");
  SimplicialComplex L;
  L.n = K.n;
  for (Simplex s = 1; s < (Simplex{1} << K.n); ++s) {
    Cube c{k - direction_of(s, K.n), k};
    if (K.contains(c)) L.simplices.insert(s);
  }
  return L;
}

namespace detail {

inline void check_endpoints(const EuclideanComplex& K, const IVec& a, const IVec& b) {
  if (!a.leq(b)) throw std::invalid_argument("endpoints not ordered");
  if (!K.contains_vertex(a) || !K.contains_vertex(b))
    throw std::invalid_argument("endpoint is not a vertex of the complex");
}

inline std::vector<IVec> vertices_between(const EuclideanComplex& K, const IVec& a,
                                          const IVec& b) {
  std::vector<IVec> out;
  for (const Cube& c : K.cubes)
    if (c.is_vertex() && a.leq(c.lo) && c.lo.leq(b)) out.push_back(c.lo);
  std::sort(out.begin(), out.end(), [](const IVec& u, const IVec& v) {
    return std::make_pair(u.sum(), u) < std::make_pair(v.sum(), v);
  });
  return out;
}

}  // namespace detail

/// Vertex-by-vertex resolution of the path space from a to b inside the
/// complex. Vertices are processed in coordinate-sum order; each one gets
/// the effective past link (directions whose whole cube lies in K within
/// [a, b] and whose start vertex has nonempty path space). A vertex with
/// empty effective past link is unreachable. When every referenced
/// predecessor is contractible, the path space at the vertex is the
/// realization of the effective past link, certified contractible when the
/// link is a cone. Anything else is reported Unknown rather than guessed.
inline PathSpaceModel nerve_model(const EuclideanComplex& K, const IVec& a, const IVec& b) {
  detail::check_endpoints(K, a, b);
  if (a == b) return PathSpaceModel::contractible();

  std::map<IVec, PathSpaceModel> state;
  for (const IVec& v : detail::vertices_between(K, a, b)) {
    if (v == a) {
      state.emplace(v, PathSpaceModel::contractible());
      continue;
    }
    SimplicialComplex link;
    link.n = K.n;
    bool any_unknown = false, any_complex = false;
    const PathSpaceModel* unknown_pred = nullptr;
    for (Simplex s = 1; s < (Simplex{1} << K.n); ++s) {
      IVec pred = v - direction_of(s, K.n);
      if (!a.leq(pred)) continue;
      if (!K.contains(Cube{pred, v})) continue;
      auto it = state.find(pred);
      if (it == state.end())
        throw std::logic_error("nerve_model: predecessor not yet resolved");
      if (it->second.kind == PathSpaceModel::Kind::Empty) continue;
      link.simplices.insert(s);
      if (it->second.kind == PathSpaceModel::Kind::Unknown) {
        any_unknown = true;
        unknown_pred = &it->second;
      } else if (it->second.kind != PathSpaceModel::Kind::Contractible) {
        any_complex = true;
      }
    }
    if (!link.downward_closed())
      throw std::logic_error("nerve_model: effective past link not downward closed");

    if (link.empty()) {
      state.emplace(v, PathSpaceModel::empty());
    } else if (any_unknown) {
      state.emplace(v, PathSpaceModel::unknown(unknown_pred->diagnostic, unknown_pred->at));
    } else if (any_complex) {
      state.emplace(v, PathSpaceModel::unknown(
                           "a predecessor carries a non-contractible path space", v));
    } else if (is_cone(link)) {
      state.emplace(v, PathSpaceModel::contractible());
    } else {
      state.emplace(v, PathSpaceModel::from_complex(std::move(link)));
    }
  }
  auto it = state.find(b);
  return it == state.end() ? PathSpaceModel::empty() : it->second;
}

struct LevelComponent {
  std::vector<Cube> cubes;      // crossing cubes, sorted
  std::vector<IVec> vertices;   // grid vertices of the component at the level
  bool singleton = false;       // exactly one grid vertex at the level
};

struct LevelSection {
  long long level = 0;
  std::vector<LevelComponent> components;  // ordered by smallest vertex
};

/// Section of the complex at the hyperplane of constant coordinate sum.
/// Crossing cubes (cubes whose corner sums straddle the level) are grouped
/// into components; two cubes are adjacent when they share a face that
/// itself touches the level. Monotone paths have non-decreasing coordinate
/// sums, so each path from a to b meets exactly one component.
inline LevelSection level_split(const EuclideanComplex& K, const IVec& a, const IVec& b,
                                long long level) {
  detail::check_endpoints(K, a, b);
  if (!(a.sum() < level && level < b.sum()))
    throw std::invalid_argument("level_split: level out of range");

  std::vector<Cube> crossing;
  for (const Cube& c : K.cubes) {
    if (!(a.leq(c.lo) && c.hi.leq(b))) continue;
    long long lo = c.lo.sum(), hi = c.hi.sum();
    if (lo <= level && level <= hi && lo < hi) crossing.push_back(c);
  }

  std::vector<size_t> parent(crossing.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < crossing.size(); ++i)
    for (size_t j = i + 1; j < crossing.size(); ++j) {
      IVec flo = crossing[i].lo, fhi = crossing[i].hi;
      bool nonempty = true;
      for (int k = 0; k < K.n; ++k) {
        flo[k] = std::max(flo[k], crossing[j].lo[k]);
        fhi[k] = std::min(fhi[k], crossing[j].hi[k]);
        if (flo[k] > fhi[k]) {
          nonempty = false;
          break;
        }
      }
      if (!nonempty) continue;
      if (flo.sum() <= level && level <= fhi.sum()) parent[find(i)] = find(j);
    }

  std::map<size_t, LevelComponent> by_root;
  for (size_t i = 0; i < crossing.size(); ++i) {
    LevelComponent& comp = by_root[find(i)];
    comp.cubes.push_back(crossing[i]);
    for (const IVec& v : cube_corners(crossing[i]))
      if (v.sum() == level) comp.vertices.push_back(v);
  }

  LevelSection section;
  section.level = level;
  for (auto& [root, comp] : by_root) {
    std::sort(comp.cubes.begin(), comp.cubes.end());
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.vertices.erase(std::unique(comp.vertices.begin(), comp.vertices.end()),
                        comp.vertices.end());
    comp.singleton = comp.vertices.size() == 1;
    section.components.push_back(std::move(comp));
  }
  std::sort(section.components.begin(), section.components.end(),
            [](const LevelComponent& x, const LevelComponent& y) {
              return x.vertices.front() < y.vertices.front();
            });
  return section;
}

namespace detail {

/// Vertices weakly below the level that reach the seed set along directed
/// edges, united with vertices weakly above that the seed set reaches.
inline std::set<IVec> reach_envelope(const EuclideanComplex& K, const IVec& a, const IVec& b,
                                     const std::vector<IVec>& seeds) {
  std::set<IVec> down(seeds.begin(), seeds.end());
  std::queue<IVec> q;
  for (const IVec& v : seeds) q.push(v);
  while (!q.empty()) {
    IVec v = q.front();
    q.pop();
    for (int i = 0; i < K.n; ++i) {
      if (v[i] - 1 < a[i]) continue;
      IVec u = v.moved(i, -1);
      if (down.count(u)) continue;
      if (!K.contains(Cube{u, v})) continue;
      down.insert(u);
      q.push(u);
    }
  }
  std::set<IVec> up(seeds.begin(), seeds.end());
  for (const IVec& v : seeds) q.push(v);
  while (!q.empty()) {
    IVec v = q.front();
    q.pop();
    for (int i = 0; i < K.n; ++i) {
      if (v[i] + 1 > b[i]) continue;
      IVec u = v.moved(i, 1);
      if (up.count(u)) continue;
      if (!K.contains(Cube{v, u})) continue;
      up.insert(u);
      q.push(u);
    }
  }
  down.insert(up.begin(), up.end());
  return down;
}

inline PathSpaceModel model_impl(const EuclideanComplex& K, const IVec& a, const IVec& b,
                                 int depth);

/// One split attempt at a fixed level. Returns nothing when the section
/// fails its soundness checks or a piece cannot be resolved.
inline std::optional<PathSpaceModel> try_level(const EuclideanComplex& K, const IVec& a,
                                               const IVec& b, const LevelSection& section,
                                               int depth) {
  const size_t total_cubes = K.cubes.size();
  std::vector<PathSpaceModel> pieces;
  for (const LevelComponent& comp : section.components) {
    if (comp.singleton) {
      const IVec& w = comp.vertices.front();
      PathSpaceModel lower = model_impl(restrict_complex(K, a, w), a, w, depth - 1);
      if (lower.kind == PathSpaceModel::Kind::Unknown) return std::nullopt;
      if (lower.kind == PathSpaceModel::Kind::Empty) continue;
      PathSpaceModel upper = model_impl(restrict_complex(K, w, b), w, b, depth - 1);
      if (upper.kind == PathSpaceModel::Kind::Unknown) return std::nullopt;
      std::vector<PathSpaceModel> fs;
      fs.push_back(std::move(lower));
      fs.push_back(std::move(upper));
      pieces.push_back(PathSpaceModel::product(std::move(fs)));
      continue;
    }
    std::set<IVec> envelope = reach_envelope(K, a, b, comp.vertices);
    if (!envelope.count(a) || !envelope.count(b)) continue;  // no path crosses here
    EuclideanComplex piece_complex;
    piece_complex.n = K.n;
    piece_complex.box = Box{a, b};
    for (const Cube& c : K.cubes) {
      if (!(a.leq(c.lo) && c.hi.leq(b))) continue;
      bool inside = true;
      for (const IVec& v : cube_corners(c))
        if (!envelope.count(v)) {
          inside = false;
          break;
        }
      if (inside) piece_complex.cubes.insert(c);
    }
    if (piece_complex.cubes.size() == total_cubes) return std::nullopt;  // no progress
    // soundness: the piece must not capture crossing cubes of other components
    std::set<Cube> own(comp.cubes.begin(), comp.cubes.end());
    for (const Cube& c : piece_complex.cubes) {
      long long lo = c.lo.sum(), hi = c.hi.sum();
      if (lo <= section.level && section.level <= hi && lo < hi && !own.count(c))
        return std::nullopt;
    }
    PathSpaceModel m = model_impl(piece_complex, a, b, depth - 1);
    if (m.kind == PathSpaceModel::Kind::Unknown) return std::nullopt;
    pieces.push_back(std::move(m));
  }
  return PathSpaceModel::disjoint_union(std::move(pieces));
}

inline PathSpaceModel model_impl(const EuclideanComplex& K, const IVec& a, const IVec& b,
                                 int depth) {
  PathSpaceModel base = nerve_model(K, a, b);
  if (base.kind != PathSpaceModel::Kind::Unknown) return base;
  if (depth <= 0) return PathSpaceModel::unknown("recursion depth exhausted", a);

  EuclideanComplex Kr = restrict_complex(K, a, b);
  std::vector<std::pair<long long, LevelSection>> candidates;
  for (long long level = a.sum() + 1; level < b.sum(); ++level) {
    LevelSection s = level_split(Kr, a, b, level);
    if (s.components.empty()) continue;
    long long singletons = 0;
    for (const LevelComponent& c : s.components) singletons += c.singleton ? 1 : 0;
    candidates.emplace_back(singletons, std::move(s));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (auto& [singletons, section] : candidates)
    if (auto result = try_level(Kr, a, b, section, depth)) return *result;
  return base;
}

}  // namespace detail

/// Full resolution: the past-link recursion first, then hyperplane splits
/// at every level (most point-like sections first) with sound restriction
/// to each component. Unknown is the honest fallback, never a guess.
inline PathSpaceModel model(const EuclideanComplex& K, const IVec& a, const IVec& b,
                            int depth = 24) {
  return detail::model_impl(K, a, b, depth);
}

/// Reachable vertices (other than b) with no outgoing directed edge in the
/// complex below b: the states an execution can reach but not leave.
inline std::vector<IVec> deadlocks(const EuclideanComplex& K, const IVec& a, const IVec& b) {
  if (!a.leq(b)) throw std::invalid_argument("deadlocks: endpoints not ordered");
  std::vector<IVec> result;
  if (!K.contains_vertex(a)) return result;
  std::set<IVec> seen{a};
  std::queue<IVec> q;
  q.push(a);
  while (!q.empty()) {
    IVec v = q.front();
    q.pop();
    bool outgoing = false;
    for (int i = 0; i < K.n; ++i) {
      if (v[i] + 1 > b[i]) continue;
      IVec u = v.moved(i, 1);
      if (!K.contains(Cube{v, u})) continue;
      outgoing = true;
      if (seen.insert(u).second) q.push(u);
    }
    if (!outgoing && v != b) result.push_back(v);
  }
  std::sort(result.begin(), result.end());
  return result;
}

struct FlipClasses {
  long long path_count = 0;
  long long class_count = 0;
  std::vector<std::vector<int>> representatives;  // axis sequences, one per class
};

/// Brute-force oracle for path components: enumerate every monotone edge
/// path from a to b, connect two paths when they differ by exchanging two
/// consecutive orthogonal steps across a 2-cube of the complex, and count
/// connected classes of that flip graph.
inline FlipClasses flip_oracle(const EuclideanComplex& K, const IVec& a, const IVec& b,
                               long long cap = 1000000) {
  detail::check_endpoints(K, a, b);

  // path counts from each vertex to b, saturating at cap + 1
  auto verts = detail::vertices_between(K, a, b);
  std::map<IVec, long long> count;
  for (auto it = verts.rbegin(); it != verts.rend(); ++it) {
    const IVec& v = *it;
    if (v == b) {
      count[v] = 1;
      continue;
    }
    long long total = 0;
    for (int i = 0; i < K.n; ++i) {
      if (v[i] + 1 > b[i]) continue;
      IVec u = v.moved(i, 1);
      if (!K.contains(Cube{v, u})) continue;
      auto cu = count.find(u);
      if (cu != count.end()) total += cu->second;
      if (total > cap) {
        total = cap + 1;
        break;
      }
    }
    count[v] = total;
  }
  long long total_paths = count.count(a) ? count[a] : 0;
  if (total_paths > cap)
    throw std::runtime_error("flip_oracle: path count exceeds cap");

  FlipClasses result;
  result.path_count = total_paths;
  if (total_paths == 0) return result;

  // depth-first enumeration in ascending axis order yields sorted paths
  std::vector<std::vector<int>> paths;
  std::vector<int> current;
  std::function<void(const IVec&)> enumerate = [&](const IVec& v) {
    if (v == b) {
      paths.push_back(current);
      return;
    }
    for (int i = 0; i < K.n; ++i) {
      if (v[i] + 1 > b[i]) continue;
      IVec u = v.moved(i, 1);
      if (!K.contains(Cube{v, u})) continue;
      auto cu = count.find(u);
      if (cu == count.end() || cu->second == 0) continue;  // dead end
      current.push_back(i);
      enumerate(u);
      current.pop_back();
    }
  };
  enumerate(a);

  std::vector<size_t> parent(paths.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t id = 0; id < paths.size(); ++id) {
    IVec v = a;
    const std::vector<int>& p = paths[id];
    for (size_t k = 0; k + 1 < p.size(); ++k) {
      int i = p[k], j = p[k + 1];
      if (i != j) {
        IVec top = v.moved(i, 1).moved(j, 1);
        if (K.contains(Cube{v, top})) {
          std::vector<int> swapped = p;
          std::swap(swapped[k], swapped[k + 1]);
          auto it = std::lower_bound(paths.begin(), paths.end(), swapped);
          if (it == paths.end() || *it != swapped)
            throw std::logic_error("flip_oracle: flipped path not found");
          parent[find(id)] = find(static_cast<size_t>(it - paths.begin()));
        }
      }
      v = v.moved(p[k], 1);
    }
  }

  std::map<size_t, std::vector<int>> reps;
  for (size_t id = 0; id < paths.size(); ++id) {
    size_t root = find(id);
    if (!reps.count(root)) reps[root] = paths[id];  // first = lexicographically least
  }
  for (auto& [root, rep] : reps) result.representatives.push_back(rep);
  std::sort(result.representatives.begin(), result.representatives.end());
  result.class_count = static_cast<long long>(result.representatives.size());
  return result;
}

/// Number of path components of a fully resolved model: components
/// multiply across products and add across disjoint unions. Available for
/// every Unknown-free model, including products whose full homology is
/// out of reach.
inline std::optional<long long> path_component_count(const PathSpaceModel& m) {
  switch (m.kind) {
    case PathSpaceModel::Kind::Empty:
      return 0;
    case PathSpaceModel::Kind::Contractible:
      return 1;
    case PathSpaceModel::Kind::Complex:
      return component_count(m.complex);
    case PathSpaceModel::Kind::Product: {
      long long total = 1;
      for (const PathSpaceModel& p : m.parts) {
        auto sub = path_component_count(p);
        if (!sub) return std::nullopt;
        total *= *sub;
      }
      return total;
    }
    case PathSpaceModel::Kind::DisjointUnion: {
      long long total = 0;
      for (const PathSpaceModel& p : m.parts) {
        auto sub = path_component_count(p);
        if (!sub) return std::nullopt;
        total += *sub;
      }
      return total;
    }
    case PathSpaceModel::Kind::Unknown:
      return std::nullopt;
  }
  return std::nullopt;
}

/// Homology of a fully resolved model. Products are only readable when at
/// most one factor is non-contractible; the constructors already reduce
/// such products, so a surviving Product node has no direct profile.
inline std::optional<HomologyProfile> homology_of_model(const PathSpaceModel& m) {
  switch (m.kind) {
    case PathSpaceModel::Kind::Empty:
      return HomologyProfile{};
    case PathSpaceModel::Kind::Contractible:
      return point_profile();
    case PathSpaceModel::Kind::Complex:
      return homology(m.complex, false);
    case PathSpaceModel::Kind::DisjointUnion: {
      HomologyProfile total;
      for (const PathSpaceModel& p : m.parts) {
        auto sub = homology_of_model(p);
        if (!sub) return std::nullopt;
        total = direct_sum(total, *sub);
      }
      return total;
    }
    case PathSpaceModel::Kind::Product:
    case PathSpaceModel::Kind::Unknown:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace pvspace
