#include <gtest/gtest.h>

#include <random>

#include "pvspace/program.hpp"

using namespace pvspace;

namespace {

ResourceSet two_resources() {
  ResourceSet rs;
  rs.add("a", 1);
  rs.add("b", 1);
  return rs;
}

PVProcess proc(std::vector<PVOperation> ops) {
  PVProcess p;
  p.ops = std::move(ops);
  return canonical_progression(std::move(p));
}

PVProcess random_process(std::mt19937& rng, int max_ops = 8, int resources = 3) {
  std::uniform_int_distribution<int> len(0, max_ops);
  std::uniform_int_distribution<int> mult(0, 2);
  PVProcess p;
  int l = len(rng);
  for (int i = 0; i < l; ++i) {
    PVOperation op;
    for (int r = 0; r < resources; ++r) {
      op.add_acquire(r, mult(rng) == 2 ? 1 + rng() % 2 : 0);
      op.add_release(r, mult(rng) == 2 ? 1 + rng() % 2 : 0);
    }
    p.ops.push_back(op);
  }
  return canonical_progression(std::move(p));
}

// Valid by construction: each acquire is inserted before its matching release.
PVProcess random_valid_process(std::mt19937& rng, int pairs = 4, int resources = 3) {
  std::vector<PVOperation> ops;
  std::uniform_int_distribution<int> res(0, resources - 1);
  for (int k = 0; k < pairs; ++k) {
    int r = res(rng);
    size_t i = ops.empty() ? 0 : rng() % (ops.size() + 1);
    ops.insert(ops.begin() + i, PVOperation::p(r));
    size_t j = i + 1 + rng() % (ops.size() - i);
    ops.insert(ops.begin() + j, PVOperation::v(r));
  }
  PVProcess p;
  p.ops = std::move(ops);
  return canonical_progression(std::move(p));
}

}  // namespace

TEST(CanonicalProgression, LockUnlock) {
  PVProcess p;
  p.ops = {PVOperation::p(0), PVOperation::v(0)};
  PVProcess q = canonical_progression(p);
  EXPECT_EQ(*q.progression, (std::vector<long long>{0, 1}));
}

TEST(CanonicalProgression, EmptyProcess) {
  PVProcess p;
  PVProcess q = canonical_progression(p);
  EXPECT_TRUE(q.progression->empty());
}

TEST(CanonicalProgression, OverwritesExisting) {
  PVProcess p;
  p.ops = {PVOperation::p(0), PVOperation::p(1), PVOperation::v(1), PVOperation::v(0)};
  p.progression = std::vector<long long>{2, 5, 7, 9};
  PVProcess q = canonical_progression(p);
  EXPECT_EQ(*q.progression, (std::vector<long long>{0, 1, 2, 3}));
}

TEST(Potential, LockUnlockAtHalf) {
  PVProcess p = proc({PVOperation::p(0), PVOperation::v(0)});
  EXPECT_EQ(potential_process(p, 0, Rat(1, 2)), 1);
  EXPECT_EQ(potential_process(p, 0, Rat(0)), 0);
  EXPECT_EQ(potential_process(p, 0, Rat(1)), 0);
}

TEST(Potential, RequiresProgression) {
  PVProcess p;
  p.ops = {PVOperation::p(0)};
  EXPECT_THROW(potential_process(p, 0, Rat(0)), std::invalid_argument);
}

TEST(Potential, ProgramSumsProcesses) {
  PVProgram q;
  q.resources.add("a", 1);
  q.processes = {proc({PVOperation::p(0), PVOperation::v(0)}),
                 proc({PVOperation::p(0), PVOperation::v(0)})};
  EXPECT_EQ(potential_program(q, {Rat(1, 2), Rat(1, 2)}), (std::vector<long long>{2}));
  EXPECT_EQ(potential_program(q, {Rat(0), Rat(0)}), (std::vector<long long>{0}));
  EXPECT_THROW(potential_program(q, {Rat(0)}), std::invalid_argument);
}

// Symmetric lock-order pair: at (3/2, 3/2) both processes hold both counts.
TEST(Potential, MixedLockOrderProgram) {
  PVProgram q;
  q.resources = two_resources();
  q.processes = {
      proc({PVOperation::p(0), PVOperation::p(1), PVOperation::v(1), PVOperation::v(0)}),
      proc({PVOperation::p(1), PVOperation::p(0), PVOperation::v(0), PVOperation::v(1)})};
  auto vals = potential_program(q, {Rat(3, 2), Rat(3, 2)});
  EXPECT_EQ(vals, (std::vector<long long>{2, 2}));
}

TEST(Validate, LockUnlockIsElementaryValid) {
  PVProcess p = proc({PVOperation::p(0), PVOperation::v(0)});
  ProcessValidity v = validate(p, 1);
  EXPECT_TRUE(v.valid);
  EXPECT_TRUE(v.elementary);
  EXPECT_TRUE(v.elementary_valid);
  EXPECT_TRUE(v.violations.empty());
}

TEST(Validate, ReleaseBeforeAcquire) {
  PVProcess p = proc({PVOperation::v(0), PVOperation::p(0)});
  ProcessValidity v = validate(p, 1);
  EXPECT_FALSE(v.valid);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_EQ(v.violations[0].kind, ViolationKind::NegativePotential);
  EXPECT_EQ(v.violations[0].at, Rat(0));
  EXPECT_EQ(v.violations[0].value, -1);
}

TEST(Validate, DoubleAcquireNotElementaryValid) {
  PVProcess p = proc({PVOperation::p(0), PVOperation::p(0), PVOperation::v(0), PVOperation::v(0)});
  ProcessValidity v = validate(p, 1);
  EXPECT_TRUE(v.valid);
  EXPECT_TRUE(v.elementary);
  EXPECT_FALSE(v.elementary_valid);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_EQ(v.violations[0].kind, ViolationKind::NotZeroOne);
  EXPECT_EQ(v.violations[0].value, 2);
}

TEST(Validate, UnreleasedResource) {
  PVProcess p = proc({PVOperation::p(0)});
  ProcessValidity v = validate(p, 1);
  EXPECT_FALSE(v.valid);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_EQ(v.violations[0].kind, ViolationKind::UnreleasedResource);
}

TEST(Validate, EmptyProcess) {
  PVProcess p = proc({});
  ProcessValidity v = validate(p, 2);
  EXPECT_TRUE(v.valid);
  EXPECT_TRUE(v.elementary_valid);
}

TEST(CapacityProfile, SingleMutex) {
  PVProgram q;
  q.resources.add("m", 1);
  q.processes = {proc({PVOperation::p(0), PVOperation::v(0)})};
  EXPECT_EQ(capacity_profile(q).max, 1);
}

TEST(CapacityProfile, NoResources) {
  PVProgram q;
  q.processes = {proc({PVOperation{}})};
  EXPECT_EQ(capacity_profile(q).max, 0);
}

TEST(ResourceSet, RejectsDuplicatesAndBadCapacity) {
  ResourceSet rs;
  rs.add("a", 2);
  EXPECT_THROW(rs.add("a", 1), std::invalid_argument);
  EXPECT_THROW(rs.add("b", 0), std::invalid_argument);
}

// Potentials are constant on the open intervals between progression values.
TEST(PotentialProperty, StepConstancyBetweenBreakpoints) {
  std::mt19937 rng(20240101);
  for (int trial = 0; trial < 200; ++trial) {
    PVProcess p = random_process(rng);
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < p.length(); ++i) {
        long long t = (*p.progression)[i];
        long long q1 = potential_process(p, r, Rat(4 * t + 1, 4));
        long long q2 = potential_process(p, r, Rat(2 * t + 1, 2));
        long long q3 = potential_process(p, r, Rat(4 * t + 3, 4));
        EXPECT_EQ(q1, q2);
        EXPECT_EQ(q2, q3);
      }
  }
}

// The sequences of potential values at breakpoints and midpoints do not
// depend on which strictly increasing integral progression is used.
TEST(PotentialProperty, ReprogressionInvariance) {
  std::mt19937 rng(20240102);
  for (int trial = 0; trial < 200; ++trial) {
    PVProcess p = random_process(rng);
    PVProcess stretched = p;
    std::vector<long long> prog;
    long long t = -3;
    for (int i = 0; i < p.length(); ++i) {
      t += 1 + rng() % 4;
      prog.push_back(t);
    }
    stretched.progression = prog;
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < p.length(); ++i) {
        long long a = (*p.progression)[i];
        long long b = prog[i];
        EXPECT_EQ(potential_process(p, r, Rat(a)), potential_process(stretched, r, Rat(b)));
        EXPECT_EQ(potential_process(p, r, Rat(2 * a + 1, 2)),
                  potential_process(stretched, r, Rat(2 * b + 1, 2)));
      }
  }
}

// Every reported witness must actually violate the condition it names,
// re-checkable by evaluating the potential at the recorded point.
TEST(Validate, WitnessesRecheck) {
  std::mt19937 rng(20240104);
  for (int trial = 0; trial < 300; ++trial) {
    PVProcess p = random_process(rng);
    ProcessValidity v = validate(p, 3);
    for (const Violation& w : v.violations) {
      long long value = potential_process(p, w.resource, w.at);
      EXPECT_EQ(value, w.value);
      switch (w.kind) {
        case ViolationKind::NegativePotential:
          EXPECT_LT(value, 0);
          break;
        case ViolationKind::UnreleasedResource:
          EXPECT_GT(value, 0);
          EXPECT_GT(w.at, Rat(p.progression->back()));
          break;
        case ViolationKind::NotZeroOne:
          EXPECT_TRUE(value != 0 && value != 1);
          break;
      }
    }
    if (!v.valid) EXPECT_FALSE(v.violations.empty());
  }
}

TEST(PotentialProperty, ValidImpliesZeroAfterLastOperation) {
  std::mt19937 rng(20240103);
  for (int trial = 0; trial < 200; ++trial) {
    PVProcess p = random_valid_process(rng);
    ProcessValidity v = validate(p, 3);
    ASSERT_TRUE(v.valid);
    for (int r = 0; r < 3; ++r)
      EXPECT_EQ(potential_process(p, r, Rat(p.progression->back() + 1)), 0);
  }
}
