#pragma once

// Euclidean cubical complexes: face-closed sets of axis-aligned unit cubes
// with integer corners inside an explicit analysis window, together with
// the dual representation as the complement of finitely many open integer
// boxes. Includes the state-space extraction for programs with integral
// progressions and the reverse compiler from hole sets to programs.

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvspace/program.hpp"
#include "pvspace/simplicial.hpp"

namespace pvspace {

inline constexpr int kMaxDim = 16;

/// Integer point in dimension n <= kMaxDim. operator<=> is lexicographic
/// and exists for containers only; geometric comparisons go through
/// leq/lt, which are componentwise.
struct IVec {
  int n = 0;
  std::array<int, kMaxDim> c{};

  IVec() = default;
  explicit IVec(int dim, int fill = 0) : n(dim) {
    if (dim < 0 || dim > kMaxDim)
      throw std::invalid_argument("dimension out of supported range");
    for (int i = 0; i < n; ++i) c[i] = fill;
  }
  static IVec of(std::initializer_list<int> xs) {
    IVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (int x : xs) v.c[i++] = x;
    return v;
  }

  int& operator[](int i) { return c[i]; }
  int operator[](int i) const { return c[i]; }

  long long sum() const {
    long long s = 0;
    for (int i = 0; i < n; ++i) s += c[i];
    return s;
  }

  bool leq(const IVec& o) const {
    for (int i = 0; i < n; ++i)
      if (c[i] > o.c[i]) return false;
    return true;
  }
  bool lt(const IVec& o) const {
    for (int i = 0; i < n; ++i)
      if (c[i] >= o.c[i]) return false;
    return true;
  }

  IVec moved(int axis, int delta) const {
    IVec v = *this;
    v.c[axis] += delta;
    return v;
  }

  friend IVec operator+(IVec a, const IVec& b) {
    for (int i = 0; i < a.n; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend IVec operator-(IVec a, const IVec& b) {
    for (int i = 0; i < a.n; ++i) a.c[i] -= b.c[i];
    return a;
  }

  friend auto operator<=>(const IVec&, const IVec&) = default;
};

/// 0/1 direction vector of a simplex mask.
inline IVec direction_of(Simplex s, int n) {
  IVec v(n);
  for (int i = 0; i < n; ++i) v[i] = (s >> i) & 1 ? 1 : 0;
  return v;
}

/// Elementary cube [lo, hi] with hi - lo componentwise in {0,1}.
struct Cube {
  IVec lo, hi;

  int dim() const {
    int d = 0;
    for (int i = 0; i < lo.n; ++i)
      if (hi[i] > lo[i]) ++d;
    return d;
  }
  bool is_vertex() const { return lo == hi; }

  void check() const {
    if (lo.n != hi.n) throw std::invalid_argument("cube corners in different dimensions");
    for (int i = 0; i < lo.n; ++i)
      if (hi[i] - lo[i] != 0 && hi[i] - lo[i] != 1)
        throw std::invalid_argument("cube extents must be 0 or 1");
  }

  friend auto operator<=>(const Cube&, const Cube&) = default;
};

/// Integer box, used both as analysis window ([lo, hi] closed) and as a
/// hole ((lo, hi) open); all predicates say which reading they use.
struct Box {
  IVec lo, hi;

  void check_window() const {
    if (lo.n != hi.n || !lo.leq(hi))
      throw std::invalid_argument("invalid window box");
  }
  bool contains_cube(const Cube& c) const { return lo.leq(c.lo) && c.hi.leq(hi); }

  friend auto operator<=>(const Box&, const Box&) = default;
};

/// Closed cube meets the open box (a, b)?
inline bool cube_meets_open_box(const Cube& c, const Box& b) {
  for (int i = 0; i < c.lo.n; ++i)
    if (!(c.hi[i] > b.lo[i] && c.lo[i] < b.hi[i])) return false;
  return true;
}

/// Finite list of open integer boxes whose complement is the complex.
struct HoleSet {
  int n = 0;
  std::vector<Box> holes;
  std::vector<std::string> labels;  // empty, or one label per hole

  void check() const {
    if (!labels.empty() && labels.size() != holes.size())
      throw std::invalid_argument("hole labels do not match hole count");
    std::set<Box> seen;
    for (const Box& h : holes) {
      if (h.lo.n != n || h.hi.n != n)
        throw std::invalid_argument("hole dimension mismatch");
      if (!h.lo.lt(h.hi))
        throw std::invalid_argument("hole must be a nonempty open box");
      if (!seen.insert(h).second)
        throw std::invalid_argument("duplicate hole");
    }
  }

  Box hull() const {
    if (holes.empty()) return Box{IVec(n, 0), IVec(n, 0)};
    Box out = holes.front();
    for (const Box& h : holes)
      for (int i = 0; i < n; ++i) {
        out.lo[i] = std::min(out.lo[i], h.lo[i]);
        out.hi[i] = std::max(out.hi[i], h.hi[i]);
      }
    return out;
  }
};

/// Membership of a cube in the complement-of-holes complex: the cube
/// survives iff it meets no hole.
inline bool cube_in(const HoleSet& h, const Cube& c) {
  if (c.lo.n != h.n) throw std::invalid_argument("cube_in: dimension mismatch");
  c.check();
  for (const Box& hole : h.holes)
    if (cube_meets_open_box(c, hole)) return false;
  return true;
}

/// Runs fn over every elementary cube contained in the window.
inline void for_each_cube_in_box(const Box& box, const std::function<void(const Cube&)>& fn) {
  box.check_window();
  const int n = box.lo.n;
  Cube c{IVec(n), IVec(n)};
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      fn(c);
      return;
    }
    for (int v = box.lo[i]; v <= box.hi[i]; ++v) {
      c.lo[i] = v;
      c.hi[i] = v;
      rec(i + 1);
      if (v < box.hi[i]) {
        c.hi[i] = v + 1;
        rec(i + 1);
      }
    }
  };
  rec(0);
}

inline void for_each_vertex_in_box(const Box& box, const std::function<void(const IVec&)>& fn) {
  box.check_window();
  const int n = box.lo.n;
  IVec v(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      fn(v);
      return;
    }
    for (int x = box.lo[i]; x <= box.hi[i]; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
}

/// All faces of a cube, the cube itself included.
inline void for_each_face(const Cube& c, const std::function<void(const Cube&)>& fn) {
  std::vector<int> ext;
  for (int i = 0; i < c.lo.n; ++i)
    if (c.hi[i] > c.lo[i]) ext.push_back(i);
  std::vector<int> choice(ext.size(), 0);  // 0 = span, 1 = freeze lo, 2 = freeze hi
  while (true) {
    Cube f = c;
    for (size_t k = 0; k < ext.size(); ++k) {
      if (choice[k] == 1) f.hi[ext[k]] = f.lo[ext[k]];
      if (choice[k] == 2) f.lo[ext[k]] = f.hi[ext[k]];
    }
    fn(f);
    size_t i = 0;
    while (i < choice.size() && ++choice[i] == 3) choice[i++] = 0;
    if (i == choice.size()) break;
  }
}

inline std::vector<IVec> cube_corners(const Cube& c) {
  std::vector<IVec> out;
  std::vector<int> ext;
  for (int i = 0; i < c.lo.n; ++i)
    if (c.hi[i] > c.lo[i]) ext.push_back(i);
  const size_t k = ext.size();
  for (size_t bits = 0; bits < (size_t{1} << k); ++bits) {
    IVec v = c.lo;
    for (size_t t = 0; t < k; ++t)
      if (bits >> t & 1) v[ext[t]] += 1;
    out.push_back(v);
  }
  return out;
}

struct EuclideanComplex {
  int n = 0;
  Box box;
  std::set<Cube> cubes;

  bool contains(const Cube& c) const { return cubes.count(c) > 0; }
  bool contains_vertex(const IVec& v) const { return contains(Cube{v, v}); }

  void insert_with_faces(const Cube& c) {
    c.check();
    if (!box.contains_cube(c))
      throw std::invalid_argument("cube outside the analysis window");
    for_each_face(c, [&](const Cube& f) { cubes.insert(f); });
  }

  bool face_closed() const {
    for (const Cube& c : cubes) {
      bool ok = true;
      for_each_face(c, [&](const Cube& f) {
        if (!contains(f)) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  }

  std::vector<IVec> vertex_list() const {
    std::vector<IVec> out;
    for (const Cube& c : cubes)
      if (c.is_vertex()) out.push_back(c.lo);
    return out;
  }

  std::map<int, long long> counts_by_dim() const {
    std::map<int, long long> out;
    for (const Cube& c : cubes) ++out[c.dim()];
    return out;
  }

  friend bool operator==(const EuclideanComplex&, const EuclideanComplex&) = default;
};

/// Sub-complex of cubes contained in [a, b]; the restriction is the new window.
inline EuclideanComplex restrict_complex(const EuclideanComplex& K, const IVec& a, const IVec& b) {
  EuclideanComplex out;
  out.n = K.n;
  out.box = Box{a, b};
  out.box.check_window();
  for (const Cube& c : K.cubes)
    if (a.leq(c.lo) && c.hi.leq(b)) out.cubes.insert(c);
  return out;
}

/// All cubes of the window that avoid every hole. Face-closed because the
/// membership test is inherited by faces.
inline EuclideanComplex from_holes(const HoleSet& h, const Box& box) {
  h.check();
  box.check_window();
  if (box.lo.n != h.n) throw std::invalid_argument("from_holes: dimension mismatch");
  for (const Box& hole : h.holes)
    if (!(box.lo.leq(hole.lo) && hole.hi.leq(box.hi)))
      throw std::invalid_argument("from_holes: window does not contain every hole");
  EuclideanComplex K;
  K.n = h.n;
  K.box = box;
  for_each_cube_in_box(box, [&](const Cube& c) {
    if (cube_in(h, c)) K.cubes.insert(c);
  });
  return K;
}

inline bool on_shell(const Cube& c, const Box& box) {
  for (int i = 0; i < c.lo.n; ++i)
    if (c.lo[i] == c.hi[i] && (c.lo[i] == box.lo[i] || c.lo[i] == box.hi[i])) return true;
  return false;
}

namespace detail {

inline bool open_box_outside(const EuclideanComplex& K, const Box& b) {
  for (const Cube& c : K.cubes)
    if (cube_meets_open_box(c, b)) return false;
  return true;
}

/// Greedy pass merging hole boxes along one axis at a time; a merge is
/// kept only when the merged open box still avoids the complex entirely.
inline void merge_holes(std::vector<Box>& holes, const EuclideanComplex& K) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int d = 0; d < K.n && !changed; ++d) {
      for (size_t i = 0; i < holes.size() && !changed; ++i) {
        for (size_t j = i + 1; j < holes.size() && !changed; ++j) {
          const Box& a = holes[i];
          const Box& b = holes[j];
          bool aligned = true;
          for (int k = 0; k < K.n; ++k)
            if (k != d && (a.lo[k] != b.lo[k] || a.hi[k] != b.hi[k])) {
              aligned = false;
              break;
            }
          if (!aligned) continue;
          if (a.hi[d] < b.lo[d] || b.hi[d] < a.lo[d]) continue;  // gap
          Box merged = a;
          merged.lo[d] = std::min(a.lo[d], b.lo[d]);
          merged.hi[d] = std::max(a.hi[d], b.hi[d]);
          if (!open_box_outside(K, merged)) continue;
          holes[i] = merged;
          holes.erase(holes.begin() + j);
          changed = true;
        }
      }
    }
  }
}

}  // namespace detail

/// Recovers a hole description of a complex whose complement is bounded
/// inside the window (the whole window shell must be present). Missing
/// cells become unit holes, holes merge greedily into maximal open boxes,
/// and any missing lower-dimensional cube still uncovered gets the open
/// box spanned around its midpoint. The result reproduces the complex
/// exactly; the merged representation is not claimed to be canonical.
inline HoleSet holes_of(const EuclideanComplex& K) {
  bool shell_ok = true;
  for_each_cube_in_box(K.box, [&](const Cube& c) {
    if (on_shell(c, K.box) && !K.contains(c)) shell_ok = false;
  });
  if (!shell_ok)
    throw std::invalid_argument("holes_of: window shell not fully present");

  std::vector<Box> holes;
  for_each_cube_in_box(K.box, [&](const Cube& c) {
    if (c.dim() == K.n && !K.contains(c)) holes.push_back(Box{c.lo, c.hi});
  });
  detail::merge_holes(holes, K);

  bool added = false;
  for_each_cube_in_box(K.box, [&](const Cube& c) {
    if (K.contains(c)) return;
    for (const Box& h : holes)
      if (cube_meets_open_box(c, h)) return;
    // open box around the cube midpoint: (v-1, v+1) on frozen axes,
    // (v, v+1) on spanned ones; disjoint from the complex by face closure
    Box b{c.lo, c.hi};
    for (int i = 0; i < K.n; ++i)
      if (c.lo[i] == c.hi[i]) {
        b.lo[i] -= 1;
        b.hi[i] += 1;
      }
    holes.push_back(b);
    added = true;
  });
  if (added) detail::merge_holes(holes, K);

  std::sort(holes.begin(), holes.end());
  holes.erase(std::unique(holes.begin(), holes.end()), holes.end());
  std::vector<Box> kept;
  for (size_t i = 0; i < holes.size(); ++i) {
    bool subsumed = false;
    for (size_t j = 0; j < holes.size() && !subsumed; ++j)
      if (i != j && holes[j].lo.leq(holes[i].lo) && holes[i].hi.leq(holes[j].hi) &&
          holes[i] != holes[j])
        subsumed = true;
    if (!subsumed) kept.push_back(holes[i]);
  }

  HoleSet result{K.n, kept, {}};
  if (!(from_holes(result, K.box) == K))
    throw std::logic_error("holes_of: reconstruction does not match the complex");
  return result;
}

inline Box default_window(const PVProgram& q) {
  auto bot = q.start_corner();
  auto top = q.finish_corner();
  const int n = q.process_count();
  Box b{IVec(n), IVec(n)};
  for (int j = 0; j < n; ++j) {
    b.lo[j] = static_cast<int>(bot[j]) - 1;
    b.hi[j] = static_cast<int>(top[j]) + 1;
  }
  return b;
}

/// State space of a program with integral progressions, as the set of
/// window cubes on which every resource stays within capacity. The program
/// potential is a sum of per-coordinate step functions, so the maximum
/// over a cube is the sum of per-coordinate maxima, each read off at the
/// endpoints and the midpoint of the coordinate interval.
inline EuclideanComplex state_space(const PVProgram& q, const Box& box) {
  const int n = q.process_count();
  if (n < 1) throw std::invalid_argument("state_space: program has no processes");
  if (n > kMaxDim) throw std::invalid_argument("state_space: too many processes");
  box.check_window();
  if (box.lo.n != n) throw std::invalid_argument("state_space: window dimension mismatch");
  for (const PVProcess& p : q.processes) {
    p.check_progression();
    if (p.ops.empty()) throw std::invalid_argument("state_space: empty process");
  }
  auto bot = q.start_corner();
  auto top = q.finish_corner();
  for (int j = 0; j < n; ++j)
    if (box.lo[j] > bot[j] - 1 || box.hi[j] < top[j] + 1)
      throw std::invalid_argument(
          "state_space: window must contain the progression range with a margin of 1");

  const int nres = q.resources.size();
  struct Table {
    std::vector<long long> vertex;    // value at grid point lo + idx
    std::vector<long long> interval;  // max over [lo + idx, lo + idx + 1]
  };
  std::vector<std::vector<Table>> tab(nres, std::vector<Table>(n));
  for (int r = 0; r < nres; ++r)
    for (int j = 0; j < n; ++j) {
      const int width = box.hi[j] - box.lo[j];
      Table& t = tab[r][j];
      t.vertex.resize(width + 1);
      t.interval.resize(width);
      for (int idx = 0; idx <= width; ++idx)
        t.vertex[idx] = potential_process(q.processes[j], r, Rat(box.lo[j] + idx));
      for (int idx = 0; idx < width; ++idx) {
        long long mid = potential_process(q.processes[j], r,
                                          Rat(2 * (box.lo[j] + idx) + 1, 2));
        t.interval[idx] = std::max({t.vertex[idx], mid, t.vertex[idx + 1]});
      }
    }

  EuclideanComplex K;
  K.n = n;
  K.box = box;
  for_each_cube_in_box(box, [&](const Cube& c) {
    for (int r = 0; r < nres; ++r) {
      long long total = 0;
      for (int j = 0; j < n; ++j) {
        const int idx = c.lo[j] - box.lo[j];
        total += c.lo[j] == c.hi[j] ? tab[r][j].vertex[idx] : tab[r][j].interval[idx];
      }
      if (total > q.resources.capacities[r]) return;
    }
    K.cubes.insert(c);
  });
  return K;
}

/// Program whose state space is the complement of the given holes: one
/// resource of capacity n-1 per hole; process j acquires resource r when
/// its coordinate enters the open interval of hole r and releases it when
/// it leaves. An empty hole list yields a program of empty operations.
inline PVProgram compile_program(const HoleSet& h) {
  if (h.n < 2)
    throw std::invalid_argument("compile_program: dimension must be at least 2");
  h.check();
  PVProgram q;
  if (h.holes.empty()) {
    for (int j = 0; j < h.n; ++j) {
      PVProcess p;
      p.ops.push_back(PVOperation{});
      p.progression = std::vector<long long>{0};
      q.processes.push_back(p);
    }
    return q;
  }
  for (size_t k = 0; k < h.holes.size(); ++k) {
    std::string name = h.labels.empty() ? "h" + std::to_string(k) : h.labels[k];
    q.resources.add(name, h.n - 1);
  }
  Box span = h.hull();
  for (int j = 0; j < h.n; ++j) {
    PVProcess p;
    std::vector<long long> prog;
    for (int t = span.lo[j]; t <= span.hi[j]; ++t) {
      PVOperation op;
      for (size_t k = 0; k < h.holes.size(); ++k) {
        if (h.holes[k].lo[j] == t) op.add_acquire(static_cast<int>(k), 1);
        if (h.holes[k].hi[j] == t) op.add_release(static_cast<int>(k), 1);
      }
      p.ops.push_back(op);
      prog.push_back(t);
    }
    p.progression = prog;
    q.processes.push_back(p);
  }
  return q;
}

enum class ConeDir { Future, Past };

/// Cone over a simplicial complex: the union of the cubes from the apex
/// along each simplex direction (forward or backward), plus the apex
/// itself.
inline EuclideanComplex cone(const IVec& apex, const SimplicialComplex& M, ConeDir dir) {
  const int n = M.n;
  if (apex.n != n) throw std::invalid_argument("cone: apex dimension mismatch");
  if (n > kMaxDim) throw std::invalid_argument("cone: dimension out of range");
  EuclideanComplex K;
  K.n = n;
  K.box = dir == ConeDir::Future ? Box{apex, apex + IVec(n, 1)}
                                 : Box{apex - IVec(n, 1), apex};
  K.cubes.insert(Cube{apex, apex});
  for (Simplex s : M.simplices) {
    IVec d = direction_of(s, n);
    Cube c = dir == ConeDir::Future ? Cube{apex, apex + d} : Cube{apex - d, apex};
    K.insert_with_faces(c);
  }
  return K;
}

/// The complex in [0,1]^n whose directed paths from 0 to 1 model |L|:
/// future cone of the boundary simplex at 0 united with the past cone of L
/// at 1.
inline EuclideanComplex build_CL(const SimplicialComplex& L) {
  const int n = L.n;
  if (n < 2) throw std::invalid_argument("build_CL: needs at least 2 vertices");
  EuclideanComplex K;
  K.n = n;
  K.box = Box{IVec(n, 0), IVec(n, 1)};
  for (const Cube& c : cone(IVec(n, 0), boundary_simplex(n), ConeDir::Future).cubes)
    K.cubes.insert(c);
  for (const Cube& c : cone(IVec(n, 1), L, ConeDir::Past).cubes)
    K.cubes.insert(c);
  return K;
}

/// Hole description of K_L over [0,2]^n: one guard box per ordered pair
/// (i, j) of distinct coordinates, cutting everything that is past 1 in
/// coordinate i while before 1 in coordinate j, plus one box per minimal
/// nonface A reaching up to 1 on A and 2 elsewhere.
inline HoleSet ul_holes(const SimplicialComplex& L) {
  const int n = L.n;
  HoleSet h;
  h.n = n;
  auto nonfaces = minimal_nonfaces(L);
  for (size_t k = 0; k < nonfaces.size(); ++k) {
    Box b{IVec(n, 0), IVec(n)};
    for (int m = 0; m < n; ++m) b.hi[m] = (nonfaces[k] >> m) & 1 ? 1 : 2;
    h.holes.push_back(b);
    h.labels.push_back("r" + std::to_string(k + 1));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Box b{IVec(n), IVec(n)};
      for (int m = 0; m < n; ++m) {
        b.lo[m] = m == i - 1 ? 1 : 0;
        b.hi[m] = m == j - 1 ? 1 : 2;
      }
      h.holes.push_back(b);
      h.labels.push_back("g_" + std::to_string(i) + "_" + std::to_string(j));
    }
  return h;
}

struct KLComplex {
  EuclideanComplex complex;
  HoleSet holes;
};

/// K_L over [0,2]^n, built twice: directly as C_L united with the top cube
/// and the window shell, and as the complement of the ul_holes boxes. The
/// two must agree cube for cube.
inline KLComplex build_KL(const SimplicialComplex& L) {
  const int n = L.n;
  if (n < 2) throw std::invalid_argument("build_KL: needs at least 2 vertices");
  Box window{IVec(n, 0), IVec(n, 2)};
  EuclideanComplex direct;
  direct.n = n;
  direct.box = window;
  for (const Cube& c : build_CL(L).cubes) direct.cubes.insert(c);
  direct.insert_with_faces(Cube{IVec(n, 1), IVec(n, 2)});
  for_each_cube_in_box(window, [&](const Cube& c) {
    if (on_shell(c, window)) direct.cubes.insert(c);
  });

  HoleSet h = ul_holes(L);
  EuclideanComplex dual = from_holes(h, window);
  if (!(dual == direct))
    throw std::logic_error("build_KL: hole description disagrees with the direct construction");
  return {direct, h};
}

/// Program realizing K_L as its state space: the hole compiler applied to
/// ul_holes. Every process has operations at times 0, 1, 2 and every
/// resource has capacity n-1.
inline PVProgram build_QL(const SimplicialComplex& L) {
  if (L.n < 2) throw std::invalid_argument("build_QL: needs at least 2 vertices");
  return compile_program(ul_holes(L));
}

/// All cubes of [0,2]^n having some coordinate frozen at 0 or 2.
inline EuclideanComplex boundary_box(int n) {
  if (n < 2) throw std::invalid_argument("boundary_box: needs n >= 2");
  if (n > kMaxDim) throw std::invalid_argument("boundary_box: dimension out of range");
  EuclideanComplex K;
  K.n = n;
  K.box = Box{IVec(n, 0), IVec(n, 2)};
  for_each_cube_in_box(K.box, [&](const Cube& c) {
    if (on_shell(c, K.box)) K.cubes.insert(c);
  });
  return K;
}

}  // namespace pvspace
