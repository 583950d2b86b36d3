#pragma once

// Core data model for PV programs: resources with capacities, operations
// that release and acquire multisets of resources, processes with integral
// progressions, and the step-function potentials that drive validity
// checking and state-space construction.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace pvspace {

/// Exact time coordinate. Every evaluation point the library uses is a
/// breakpoint (integer) or a midpoint (half-integer); the semantics mix
/// strict and non-strict thresholds, so comparisons must be exact.
using Rat = boost::rational<long long>;

inline std::string rat_to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Finite set of named resources, each with a capacity >= 1.
/// The stored order is the canonical resource order used everywhere
/// (deterministic expansion, serialization, reports).
struct ResourceSet {
  std::vector<std::string> names;
  std::vector<long long> capacities;

  int size() const { return static_cast<int>(names.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return -1;
  }

  int add(const std::string& name, long long capacity) {
    if (capacity < 1)
      throw std::invalid_argument("resource capacity must be >= 1: " + name);
    if (index_of(name) >= 0)
      throw std::invalid_argument("duplicate resource name: " + name);
    names.push_back(name);
    capacities.push_back(capacity);
    return size() - 1;
  }

  /// Same resources with the same capacities, order ignored.
  bool same_set(const ResourceSet& other) const {
    if (size() != other.size()) return false;
    for (int i = 0; i < size(); ++i) {
      int j = other.index_of(names[i]);
      if (j < 0 || other.capacities[j] != capacities[i]) return false;
    }
    return true;
  }

  friend bool operator==(const ResourceSet&, const ResourceSet&) = default;
};

/// One operation of a process. `release` is applied before `acquire`.
/// Both maps hold strictly positive multiplicities; resources are indices
/// into the ambient ResourceSet.
struct PVOperation {
  std::map<int, long long> acquire;  // q_P
  std::map<int, long long> release;  // q_V

  static PVOperation p(int r, long long m = 1) {
    PVOperation q;
    q.add_acquire(r, m);
    return q;
  }
  static PVOperation v(int r, long long m = 1) {
    PVOperation q;
    q.add_release(r, m);
    return q;
  }

  bool is_empty() const { return acquire.empty() && release.empty(); }

  bool is_elementary_acquisition() const {
    return release.empty() && acquire.size() == 1 && acquire.begin()->second == 1;
  }
  bool is_elementary_release() const {
    return acquire.empty() && release.size() == 1 && release.begin()->second == 1;
  }
  bool is_elementary() const {
    return is_elementary_acquisition() || is_elementary_release();
  }

  void add_acquire(int r, long long m) {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    if (m > 0) acquire[r] += m;
  }
  void add_release(int r, long long m) {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    if (m > 0) release[r] += m;
  }

  long long acquires(int r) const {
    auto it = acquire.find(r);
    return it == acquire.end() ? 0 : it->second;
  }
  long long releases(int r) const {
    auto it = release.find(r);
    return it == release.end() ? 0 : it->second;
  }

  PVOperation& operator+=(const PVOperation& o) {
    for (auto& [r, m] : o.acquire) add_acquire(r, m);
    for (auto& [r, m] : o.release) add_release(r, m);
    return *this;
  }
  friend PVOperation operator+(PVOperation a, const PVOperation& b) {
    a += b;
    return a;
  }

  friend bool operator==(const PVOperation&, const PVOperation&) = default;
};

/// A sequence of operations, optionally with a strictly increasing integral
/// progression assigning a time to each operation.
struct PVProcess {
  std::vector<PVOperation> ops;
  std::optional<std::vector<long long>> progression;

  int length() const { return static_cast<int>(ops.size()); }

  bool is_elementary() const {
    return std::all_of(ops.begin(), ops.end(),
                       [](const PVOperation& q) { return q.is_elementary(); });
  }

  bool has_progression() const { return progression.has_value(); }

  void check_progression() const {
    if (!progression) throw std::invalid_argument("process has no progression");
    if (progression->size() != ops.size())
      throw std::invalid_argument("progression length does not match operation count");
    for (size_t i = 1; i < progression->size(); ++i)
      if ((*progression)[i - 1] >= (*progression)[i])
        throw std::invalid_argument("progression is not strictly increasing");
  }

  friend bool operator==(const PVProcess&, const PVProcess&) = default;
};

struct PVProgram {
  ResourceSet resources;
  std::vector<PVProcess> processes;

  int process_count() const { return static_cast<int>(processes.size()); }

  bool all_progressions() const {
    return std::all_of(processes.begin(), processes.end(),
                       [](const PVProcess& p) { return p.has_progression(); });
  }

  /// Start corner: first progression value of every process.
  std::vector<long long> start_corner() const {
    return corner(/*first=*/true);
  }
  /// Finish corner: last progression value of every process.
  std::vector<long long> finish_corner() const {
    return corner(/*first=*/false);
  }

 private:
  std::vector<long long> corner(bool first) const {
    std::vector<long long> out;
    for (const PVProcess& p : processes) {
      p.check_progression();
      if (p.ops.empty())
        throw std::invalid_argument("corner undefined: empty process");
      out.push_back(first ? p.progression->front() : p.progression->back());
    }
    return out;
  }
};

/// Returns the process with the canonical progression 0,1,...,l-1.
inline PVProcess canonical_progression(PVProcess p) {
  std::vector<long long> prog(p.ops.size());
  std::iota(prog.begin(), prog.end(), 0);
  p.progression = std::move(prog);
  return p;
}

/// Number of holds of `resource` at time `t`: acquisitions strictly before
/// t count, releases at or before t count. The resulting step function is
/// constant on the open intervals between progression values.
inline long long potential_process(const PVProcess& p, int resource, const Rat& t) {
  p.check_progression();
  long long total = 0;
  for (size_t i = 0; i < p.ops.size(); ++i) {
    Rat ti((*p.progression)[i]);
    if (ti < t) total += p.ops[i].acquires(resource);
    if (ti <= t) total -= p.ops[i].releases(resource);
  }
  return total;
}

/// Program potential at a point: sum of the per-process potentials.
/// Returns one value per resource, indexed like the ResourceSet.
inline std::vector<long long> potential_program(const PVProgram& q,
                                                const std::vector<Rat>& x) {
  if (x.size() != q.processes.size())
    throw std::invalid_argument("potential_program: dimension mismatch");
  std::vector<long long> out(q.resources.size(), 0);
  for (int r = 0; r < q.resources.size(); ++r)
    for (size_t j = 0; j < q.processes.size(); ++j)
      out[r] += potential_process(q.processes[j], r, x[j]);
  return out;
}

enum class ViolationKind {
  NegativePotential,   // a_r < 0 somewhere: released before acquired
  UnreleasedResource,  // a_r != 0 beyond the last operation
  NotZeroOne,          // a_r takes a value outside {0,1}
};

struct Violation {
  int resource = -1;
  Rat at{0};
  long long value = 0;
  ViolationKind kind = ViolationKind::NegativePotential;
};

struct ProcessValidity {
  bool valid = true;
  bool elementary = false;
  bool elementary_valid = false;
  std::vector<Violation> violations;
};

struct ValidityReport {
  std::vector<ProcessValidity> processes;

  bool valid() const {
    return std::all_of(processes.begin(), processes.end(),
                       [](const ProcessValidity& p) { return p.valid; });
  }
  bool elementary() const {
    return std::all_of(processes.begin(), processes.end(),
                       [](const ProcessValidity& p) { return p.elementary; });
  }
  bool elementary_valid() const {
    return std::all_of(processes.begin(), processes.end(),
                       [](const ProcessValidity& p) { return p.elementary_valid; });
  }
};

/// Validity of one process. Potentials are step functions that only change
/// at progression values, so checking every breakpoint and every midpoint
/// after a breakpoint covers the whole line; the value on the final open
/// ray is the limit at +infinity.
inline ProcessValidity validate(const PVProcess& p, int resource_count) {
  p.check_progression();
  ProcessValidity result;
  result.elementary = p.is_elementary();

  std::vector<Rat> checkpoints;
  for (long long t : *p.progression) {
    checkpoints.emplace_back(t);
    checkpoints.emplace_back(2 * t + 1, 2);
  }

  bool zero_one = true;
  for (int r = 0; r < resource_count; ++r) {
    bool reported = false;
    bool r_negative = false;
    std::optional<Violation> zero_one_witness;
    for (const Rat& t : checkpoints) {
      long long v = potential_process(p, r, t);
      if (v < 0) {
        result.valid = false;
        r_negative = true;
        if (!reported) {
          result.violations.push_back({r, t, v, ViolationKind::NegativePotential});
          reported = true;
        }
      }
      if (v != 0 && v != 1) {
        zero_one = false;
        if (!zero_one_witness) zero_one_witness = Violation{r, t, v, ViolationKind::NotZeroOne};
      }
    }
    if (!p.ops.empty()) {
      Rat tail(2 * p.progression->back() + 1, 2);
      long long v = potential_process(p, r, tail);
      if (v > 0) {
        result.valid = false;
        if (!reported) {
          result.violations.push_back({r, tail, v, ViolationKind::UnreleasedResource});
          reported = true;
        }
      }
    }
    if (result.elementary && !r_negative && !reported && zero_one_witness)
      result.violations.push_back(*zero_one_witness);
  }

  result.elementary_valid = result.elementary && result.valid && zero_one;
  return result;
}

inline ValidityReport validate(const PVProgram& q) {
  ValidityReport report;
  for (const PVProcess& p : q.processes)
    report.processes.push_back(validate(p, q.resources.size()));
  return report;
}

struct CapacityProfile {
  long long max = 0;
  std::vector<long long> per_resource;
};

/// Capacities per resource and their maximum (0 for a program without
/// resources). The maximum bounds the capacity class of the program.
inline CapacityProfile capacity_profile(const PVProgram& q) {
  CapacityProfile profile;
  profile.per_resource = q.resources.capacities;
  for (long long c : profile.per_resource) profile.max = std::max(profile.max, c);
  return profile;
}

}  // namespace pvspace
