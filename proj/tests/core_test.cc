// Copyright 2026 The Confset Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include "confset/error.h"
#include "confset/lp.h"
#include "confset/normal.h"
#include "confset/rng.h"
#include "doctest.h"

namespace confset {
namespace {

TEST_CASE("normal cdf and quantile") {
  CHECK(NormalCdf(0.0) == 0.5);
  CHECK(NormalCdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(NormalQuantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(NormalQuantile(0.5) == doctest::Approx(0.0).scale(1).epsilon(1e-15));
  CHECK(NormalQuantile(0.0) == -std::numeric_limits<double>::infinity());
  CHECK(NormalQuantile(1.0) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(NormalQuantile(-0.1), InputError);
  CHECK_THROWS_AS(NormalQuantile(1.1), InputError);

  for (int i = 1; i < 2000; ++i) {
    const double p = i / 2000.0;
    const double x = NormalQuantile(p);
    CHECK(std::abs(NormalCdf(x) - p) < 1e-12);
    CHECK(std::abs(x + NormalQuantile(1.0 - p)) < 1e-9);
  }
  for (double p : {1e-12, 1e-8, 1e-4, 0.02, 0.03}) {
    CHECK(std::abs(NormalCdf(NormalQuantile(p)) - p) < 1e-9 * p);
  }
}

TEST_CASE("replication seeds") {
  static_assert(DeriveReplicationSeed(1, 0) != DeriveReplicationSeed(1, 1));
  RngStream first(DeriveReplicationSeed(42, 0));
  RngStream again(DeriveReplicationSeed(42, 0));
  RngStream second(DeriveReplicationSeed(42, 1));
  int differing = 0;
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t x = first.NextU64();
    CHECK(x == again.NextU64());
    differing += x != second.NextU64();
  }
  CHECK(differing > 0);
}

TEST_CASE("uniform and normal draws") {
  RngStream rng(5);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double u = rng.Uniform();
    CHECK_UNARY(u > 0.0);
    CHECK_UNARY(u < 1.0);
    const double z = rng.Normal(1.0, 2.0);
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  CHECK(std::abs(mean - 1.0) < 5 * 2.0 / std::sqrt(count));
  CHECK(std::abs(var - 4.0) < 0.1);
}

TEST_CASE("linear programs") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
  LinearProgram lp(2);
  lp.objective = {1.0, 1.0};
  lp.AddRow({1.0, 2.0}, LinearProgram::Sense::kLessEqual, 4.0);
  lp.AddRow({3.0, 1.0}, LinearProgram::Sense::kLessEqual, 6.0);
  LpSolution sol = SolveLp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.8));
  CHECK(sol.x[0] == doctest::Approx(1.6));
  CHECK(sol.x[1] == doctest::Approx(1.2));

  // Equality and >= rows with a negative right-hand side.
  LinearProgram eq(3);
  eq.objective = {-1.0, -2.0, 0.0};
  eq.AddRow({1.0, 1.0, 1.0}, LinearProgram::Sense::kEqual, 1.0);
  eq.AddRow({-1.0, 0.0, 0.0}, LinearProgram::Sense::kLessEqual, -0.25);
  eq.AddRow({0.0, 1.0, -1.0}, LinearProgram::Sense::kGreaterEqual, -0.5);
  sol = SolveLp(eq);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(-0.5));
  CHECK(sol.x[1] == doctest::Approx(0.125));

  LinearProgram infeasible(1);
  infeasible.objective = {1.0};
  infeasible.AddRow({1.0}, LinearProgram::Sense::kLessEqual, 1.0);
  infeasible.AddRow({1.0}, LinearProgram::Sense::kGreaterEqual, 2.0);
  CHECK(SolveLp(infeasible).status == LpStatus::kInfeasible);

  LinearProgram unbounded(2);
  unbounded.objective = {1.0, 0.0};
  unbounded.AddRow({1.0, -1.0}, LinearProgram::Sense::kLessEqual, 1.0);
  CHECK(SolveLp(unbounded).status == LpStatus::kUnbounded);

  // Degenerate vertex: redundant constraints through the optimum.
  LinearProgram degenerate(2);
  degenerate.objective = {1.0, 1.0};
  degenerate.AddRow({1.0, 0.0}, LinearProgram::Sense::kLessEqual, 1.0);
  degenerate.AddRow({0.0, 1.0}, LinearProgram::Sense::kLessEqual, 1.0);
  degenerate.AddRow({1.0, 1.0}, LinearProgram::Sense::kLessEqual, 2.0);
  degenerate.AddRow({2.0, 1.0}, LinearProgram::Sense::kLessEqual, 3.0);
  sol = SolveLp(degenerate);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.0));
}

}  // namespace
}  // namespace confset
