#pragma once

// Integer simplicial homology via Smith normal form. Boundary matrices use
// the orientation induced by vertex label order; all arithmetic is exact
// arbitrary precision so torsion coefficients come out uncorrupted.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "pvspace/simplicial.hpp"

namespace pvspace {

struct HomologyGroup {
  long long betti = 0;
  std::vector<long long> torsion;  // elementary divisors > 1, ascending

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyProfile {
  std::vector<HomologyGroup> groups;  // index = degree

  HomologyGroup group(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(groups.size())) return {};
    return groups[degree];
  }
  long long betti(int degree) const { return group(degree).betti; }

  /// Equality up to trailing trivial groups.
  bool same_as(const HomologyProfile& other) const {
    size_t m = std::max(groups.size(), other.groups.size());
    for (size_t d = 0; d < m; ++d)
      if (group(static_cast<int>(d)) != other.group(static_cast<int>(d))) return false;
    return true;
  }
};

inline HomologyProfile point_profile() {
  HomologyProfile p;
  p.groups.push_back({1, {}});
  return p;
}

inline HomologyProfile direct_sum(const HomologyProfile& a, const HomologyProfile& b) {
  HomologyProfile out;
  size_t m = std::max(a.groups.size(), b.groups.size());
  for (size_t d = 0; d < m; ++d) {
    HomologyGroup g = a.group(static_cast<int>(d));
    HomologyGroup h = b.group(static_cast<int>(d));
    g.betti += h.betti;
    g.torsion.insert(g.torsion.end(), h.torsion.begin(), h.torsion.end());
    std::sort(g.torsion.begin(), g.torsion.end());
    out.groups.push_back(g);
  }
  return out;
}

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct SmithResult {
  int rank = 0;
  std::vector<mpz_class> divisors;  // nonzero diagonal, each dividing the next
};

/// Smith normal form by pivoting on the smallest nonzero entry. The matrix
/// is destroyed. Row/column counts are small here, so the classic
/// algorithm with a divisibility fix-up pass is plenty.
inline SmithResult smith_normal_form(IntMatrix m) {
  SmithResult result;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  int t = 0;
  while (true) {
    // locate a nonzero entry of minimal absolute value in the submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 &&
            (pi < 0 || mpz_cmpabs(m[i][j].get_mpz_t(), m[pi][pj].get_mpz_t()) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(m[t], m[pi]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (int i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);  // strictly smaller remainder becomes pivot
          settled = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          settled = false;
        }
      }
      if (!settled) continue;
      // enforce the divisibility chain d_t | every remaining entry
      for (int i = t + 1; i < rows && settled; ++i)
        for (int j = t + 1; j < cols && settled; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (int k = t; k < cols; ++k) m[t][k] += m[i][k];
            settled = false;
          }
    }
    result.divisors.push_back(abs(m[t][t]));
    ++t;
  }
  result.rank = t;
  return result;
}

namespace detail {

inline std::vector<std::vector<Simplex>> simplices_by_degree(const SimplicialComplex& L) {
  std::vector<std::vector<Simplex>> by_deg(std::max(L.dim() + 1, 0));
  for (Simplex s : L.simplices) by_deg[std::popcount(s) - 1].push_back(s);
  // std::set iteration is ascending, so each list is already sorted
  return by_deg;
}

/// Boundary of a d-simplex: alternating sum of its facets in vertex label
/// order. Rows are (d-1)-simplices, columns are d-simplices.
inline IntMatrix boundary_matrix(const std::vector<Simplex>& rows,
                                 const std::vector<Simplex>& cols) {
  std::map<Simplex, int> row_index;
  for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = static_cast<int>(i);
  IntMatrix m(rows.size(), std::vector<mpz_class>(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j) {
    Simplex s = cols[j];
    int k = 0;
    for (Simplex rest = s; rest; rest &= rest - 1, ++k) {
      Simplex face = s & ~(rest & -rest);
      if (face == 0) continue;
      auto it = row_index.find(face);
      if (it == row_index.end()) throw std::logic_error("boundary face missing from complex");
      m[it->second][j] = (k % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

}  // namespace detail

/// Integer homology of L. With `reduced` set, the augmentation is
/// subtracted in degree 0 (the empty complex is returned as all zeros).
inline HomologyProfile homology(const SimplicialComplex& L, bool reduced = false) {
  HomologyProfile profile;
  if (L.empty()) return profile;
  auto by_deg = detail::simplices_by_degree(L);
  const int dim = static_cast<int>(by_deg.size()) - 1;

  std::vector<SmithResult> snf(dim + 2);  // snf[d] for boundary_d, d >= 1
  for (int d = 1; d <= dim; ++d)
    snf[d] = smith_normal_form(detail::boundary_matrix(by_deg[d - 1], by_deg[d]));

  long long euler_cells = 0, euler_betti = 0;
  for (int d = 0; d <= dim; ++d) {
    long long nd = static_cast<long long>(by_deg[d].size());
    long long rank_d = d >= 1 ? snf[d].rank : 0;
    long long rank_up = d + 1 <= dim ? snf[d + 1].rank : 0;
    HomologyGroup g;
    g.betti = nd - rank_d - rank_up;
    if (d + 1 <= dim)
      for (const mpz_class& e : snf[d + 1].divisors)
        if (e > 1) {
          if (!e.fits_slong_p()) throw std::overflow_error("torsion coefficient out of range");
          g.torsion.push_back(e.get_si());
        }
    std::sort(g.torsion.begin(), g.torsion.end());
    profile.groups.push_back(g);
    long long sign = (d % 2 == 0) ? 1 : -1;
    euler_cells += sign * nd;
    euler_betti += sign * g.betti;
  }
  if (euler_cells != euler_betti)
    throw std::logic_error("homology: Euler characteristic mismatch");

  if (reduced && !profile.groups.empty()) profile.groups[0].betti -= 1;
  return profile;
}

}  // namespace pvspace
