#pragma once

// Execution-equivalence rewriting on processes. Three primitive rewrites
// generate the equivalence:
//   (E) drop or insert an empty operation,
//   (V) an elementary release merges into the operation after it,
//   (P) an elementary acquisition merges into the operation before it.
// Every process is equivalent to an elementary one (split everything) and
// to a unique normal form obtained by summing maximal release-run /
// acquire-run blocks of the elementary expansion.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "pvspace/program.hpp"

namespace pvspace {

enum class RewriteRule { E, V, P };
enum class RewriteDir { Merge, Split };

struct RewriteStep {
  RewriteRule rule = RewriteRule::E;
  RewriteDir dir = RewriteDir::Merge;
  size_t pos = 0;
  int resource = -1;  // unused for rule E

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

/// Applies one rewrite step in place. Throws std::logic_error if the step
/// does not match the process at the given position.
inline void apply_step(PVProcess& p, const RewriteStep& s) {
  auto& ops = p.ops;
  p.progression.reset();  // rewrites change the operation count
  switch (s.rule) {
    case RewriteRule::E:
      if (s.dir == RewriteDir::Merge) {
        if (s.pos >= ops.size() || !ops[s.pos].is_empty())
          throw std::logic_error("rewrite (E): no empty operation at position");
        ops.erase(ops.begin() + s.pos);
      } else {
        if (s.pos > ops.size())
          throw std::logic_error("rewrite (E): position out of range");
        ops.insert(ops.begin() + s.pos, PVOperation{});
      }
      return;
    case RewriteRule::V:
      if (s.dir == RewriteDir::Merge) {
        // (..., Vr, q, ...) -> (..., Vr + q, ...)
        if (s.pos + 1 >= ops.size() || ops[s.pos] != PVOperation::v(s.resource))
          throw std::logic_error("rewrite (V): no mergeable release at position");
        ops[s.pos + 1] += PVOperation::v(s.resource);
        ops.erase(ops.begin() + s.pos);
      } else {
        // (..., q, ...) -> (..., Vr, q - Vr, ...)
        if (s.pos >= ops.size() || ops[s.pos].releases(s.resource) < 1)
          throw std::logic_error("rewrite (V): operation does not release the resource");
        auto& q = ops[s.pos];
        if (--q.release[s.resource] == 0) q.release.erase(s.resource);
        ops.insert(ops.begin() + s.pos, PVOperation::v(s.resource));
      }
      return;
    case RewriteRule::P:
      if (s.dir == RewriteDir::Merge) {
        // (..., q, Pr, ...) -> (..., q + Pr, ...)
        if (s.pos == 0 || s.pos >= ops.size() || ops[s.pos] != PVOperation::p(s.resource))
          throw std::logic_error("rewrite (P): no mergeable acquisition at position");
        ops[s.pos - 1] += PVOperation::p(s.resource);
        ops.erase(ops.begin() + s.pos);
      } else {
        // (..., q, ...) -> (..., q - Pr, Pr, ...)
        if (s.pos >= ops.size() || ops[s.pos].acquires(s.resource) < 1)
          throw std::logic_error("rewrite (P): operation does not acquire the resource");
        auto& q = ops[s.pos];
        if (--q.acquire[s.resource] == 0) q.acquire.erase(s.resource);
        ops.insert(ops.begin() + s.pos + 1, PVOperation::p(s.resource));
      }
      return;
  }
  throw std::logic_error("unreachable");
}

inline PVProcess replay(PVProcess p, const RewriteTrace& trace) {
  for (const RewriteStep& s : trace.steps) apply_step(p, s);
  return p;
}

/// All rewrite steps applicable to the process, in a deterministic order.
inline std::vector<RewriteStep> applicable_steps(const PVProcess& p) {
  std::vector<RewriteStep> out;
  const auto& ops = p.ops;
  for (size_t i = 0; i <= ops.size(); ++i)
    out.push_back({RewriteRule::E, RewriteDir::Split, i, -1});
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].is_empty()) out.push_back({RewriteRule::E, RewriteDir::Merge, i, -1});
    if (i + 1 < ops.size() && ops[i].is_elementary_release())
      out.push_back({RewriteRule::V, RewriteDir::Merge, i, ops[i].release.begin()->first});
    if (i > 0 && ops[i].is_elementary_acquisition())
      out.push_back({RewriteRule::P, RewriteDir::Merge, i, ops[i].acquire.begin()->first});
    for (const auto& [r, m] : ops[i].release)
      out.push_back({RewriteRule::V, RewriteDir::Split, i, r});
    for (const auto& [r, m] : ops[i].acquire)
      out.push_back({RewriteRule::P, RewriteDir::Split, i, r});
  }
  return out;
}

/// Expands every operation into elementary ones: all releases in resource
/// order, then all acquisitions in resource order, each repeated with its
/// multiplicity. Empty operations are dropped. Replaying the returned
/// trace on the input yields exactly the returned process.
inline std::pair<PVProcess, RewriteTrace> elementarize(const PVProcess& p) {
  PVProcess work = p;
  work.progression.reset();
  RewriteTrace trace;
  auto emit = [&](const RewriteStep& s) {
    apply_step(work, s);
    trace.steps.push_back(s);
  };

  size_t i = 0;
  while (i < work.ops.size()) {
    const PVOperation op = work.ops[i];
    if (op.is_empty()) {
      emit({RewriteRule::E, RewriteDir::Merge, i, -1});
      continue;
    }
    if (op.is_elementary()) {
      ++i;
      continue;
    }
    size_t cur = i;
    for (const auto& [r, m] : op.release)
      for (long long k = 0; k < m; ++k) emit({RewriteRule::V, RewriteDir::Split, cur++, r});
    // Splitting an acquisition inserts it after the remainder, so walking
    // the resources in descending order leaves them ascending in the result.
    for (auto it = op.acquire.rbegin(); it != op.acquire.rend(); ++it)
      for (long long k = 0; k < it->second; ++k)
        emit({RewriteRule::P, RewriteDir::Split, cur, it->first});
    emit({RewriteRule::E, RewriteDir::Merge, cur, -1});
    i = cur;
  }
  return {work, trace};
}

/// Unique normal form: elementarize, then sum each maximal block of
/// releases followed by acquisitions into a single operation. In the
/// result every operation before the last acquires something and every
/// operation after the first releases something.
inline PVProcess reduce(const PVProcess& p) {
  PVProcess el = elementarize(p).first;
  PVProcess out;
  size_t i = 0;
  const size_t n = el.ops.size();
  while (i < n) {
    PVOperation block;
    while (i < n && el.ops[i].is_elementary_release()) block += el.ops[i++];
    while (i < n && el.ops[i].is_elementary_acquisition()) block += el.ops[i++];
    out.ops.push_back(block);
  }
  return out;
}

/// Shape of the block normal form: every non-last operation acquires
/// something and every non-first operation releases something.
inline bool is_reduced(const PVProcess& p) {
  for (size_t i = 0; i < p.ops.size(); ++i) {
    if (i + 1 < p.ops.size() && p.ops[i].acquire.empty()) return false;
    if (i > 0 && p.ops[i].release.empty()) return false;
  }
  return true;
}

inline bool equivalent_processes(const PVProcess& p, const PVProcess& q) {
  return reduce(p).ops == reduce(q).ops;
}

namespace detail {

/// Name-level encoding of a reduced process, comparable across programs
/// with differently ordered resource sets.
inline std::string encode_reduced(const PVProcess& p, const ResourceSet& rs) {
  std::string out;
  for (const PVOperation& q : p.ops) {
    auto part = [&](const std::map<int, long long>& m) {
      std::vector<std::pair<std::string, long long>> named;
      for (const auto& [r, k] : m) named.emplace_back(rs.names[r], k);
      std::sort(named.begin(), named.end());
      std::string s;
      for (const auto& [name, k] : named)
        s += name + ":" + std::to_string(k) + ",";
      return s;
    };
    out += "V[" + part(q.release) + "]P[" + part(q.acquire) + "];";
  }
  return out;
}

}  // namespace detail

/// Programs are equivalent when some bijection matches their processes up
/// to execution equivalence; with unique normal forms this is multiset
/// equality of the reduced processes.
inline bool equivalent_programs(const PVProgram& a, const PVProgram& b) {
  if (!a.resources.same_set(b.resources))
    throw std::invalid_argument("equivalent_programs: resource sets differ");
  if (a.processes.size() != b.processes.size()) return false;
  std::vector<std::string> ea, eb;
  for (const PVProcess& p : a.processes)
    ea.push_back(detail::encode_reduced(reduce(p), a.resources));
  for (const PVProcess& p : b.processes)
    eb.push_back(detail::encode_reduced(reduce(p), b.resources));
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

}  // namespace pvspace
