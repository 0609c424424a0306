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

#include "confset/error.h"
#include "confset/measures.h"
#include "confset/rng.h"
#include "doctest.h"
#include "oracles.h"

namespace confset {
namespace {

const ParameterBox kUnitSquare({0.0, 0.0}, {1.0, 1.0});
const ParameterBox kWideBox({-3.0, -3.0}, {3.0, 3.0});

TEST_CASE("sup distance") {
  const ParameterPoint x({0.0, 0.0});
  CHECK(SupDistance(x, x) == 0.0);
  CHECK(SupDistance(x, ParameterPoint({0.3, -0.5})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(SupDistance(x, ParameterPoint(1.0)), InputError);

  RngStream rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back(rng.Uniform(-5, 5));
      b.push_back(rng.Uniform(-5, 5));
    }
    double expected = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (std::abs(a[k] - b[k]) > expected) expected = std::abs(a[k] - b[k]);
    }
    CHECK(SupDistance(ParameterPoint(a), ParameterPoint(b)) == expected);
    CHECK(SupDistance(ParameterPoint(a), ParameterPoint(b)) ==
          SupDistance(ParameterPoint(b), ParameterPoint(a)));
  }
}

TEST_CASE("belief construction") {
  CHECK_THROWS_AS(ParameterBox({1.0}, {0.0}), InputError);
  CHECK_THROWS_AS(ParameterBox({}, {}), InputError);
  CHECK(kWideBox.Diameter() == 6.0);

  // Atoms closer than 1e-12 merge.
  const Belief merged(kUnitSquare, {{ParameterPoint({0.5, 0.5}), 0.25},
                                    {ParameterPoint({0.5, 0.5 + 1e-13}), 0.75}});
  CHECK(merged.size() == 1);
  CHECK(merged.atoms()[0].weight == doctest::Approx(1.0));

  CHECK_THROWS_AS(Belief(kUnitSquare, {{ParameterPoint({0.1, 0.1}), 0.5}}),
                  InputError);
  CHECK_THROWS_AS(
      Belief(kUnitSquare, {{ParameterPoint({2.0, 0.1}), 1.0}}), InputError);
  CHECK_THROWS_AS(Belief(kUnitSquare, {{ParameterPoint({0.1, 0.1}), 1.5},
                                       {ParameterPoint({0.2, 0.1}), -0.5}}),
                  InputError);
  CHECK_THROWS_AS(BeliefSet({}), InputError);
}

TEST_CASE("prokhorov distance examples") {
  RngStream rng(3);
  const Belief a = testing::RandomBelief(rng, kUnitSquare, 3);
  CHECK(ProkhorovDistance(a, a) == 0.0);

  // Point masses: the only coupling is the product coupling.
  const auto line = ParameterBox::Interval(-5.0, 5.0);
  for (double s : {0.0, 0.05, 0.37, 0.999, 1.0, 1.7, 4.0}) {
    const Belief dx = Belief::PointMass(line, ParameterPoint(0.0));
    const Belief dy = Belief::PointMass(line, ParameterPoint(s));
    CHECK(std::abs(testing::ProkhorovBySubsets(dx, dy) - std::min(s, 1.0)) <
          1e-12);
    CHECK(std::abs(ProkhorovDistance(dx, dy) - std::min(s, 1.0)) < 1e-8);
  }

  // Half mass displaced by 2: every subset check gives 1/2.
  const Belief half(line, {{ParameterPoint(0.0), 0.5}, {ParameterPoint(2.0), 0.5}});
  const Belief at_x = Belief::PointMass(line, ParameterPoint(0.0));
  CHECK(testing::ProkhorovBySubsets(half, at_x) == doctest::Approx(0.5));
  CHECK(std::abs(ProkhorovDistance(half, at_x) - 0.5) < 1e-8);
  CHECK(std::abs(ProkhorovDistance(at_x, half) - 0.5) < 1e-8);

  CHECK_THROWS_AS(ProkhorovDistance(half, Belief::PointMass(
                                              ParameterBox::Interval(-1, 1),
                                              ParameterPoint(0.0))),
                  InputError);
}

TEST_CASE("wasserstein distance examples") {
  const auto line = ParameterBox::Interval(-5.0, 5.0);
  const Belief dx = Belief::PointMass(line, ParameterPoint(-1.0));
  const Belief dy = Belief::PointMass(line, ParameterPoint(2.5));
  CHECK(WassersteinDistance(dx, dx) == doctest::Approx(0.0));
  CHECK(WassersteinDistance(dx, dy) == doctest::Approx(3.5));
  CHECK_THROWS_AS(WassersteinDistance(dx, Belief::PointMass(
                                              ParameterBox::Interval(-1, 1),
                                              ParameterPoint(0.0))),
                  InputError);
}

TEST_CASE("metrics match brute-force oracles on small instances") {
  RngStream rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const ParameterBox& box = trial % 2 == 0 ? kUnitSquare : kWideBox;
    const Belief a = testing::RandomBelief(rng, box, 3);
    const Belief b = testing::RandomBelief(rng, box, 3);
    CHECK(std::abs(ProkhorovDistance(a, b) - testing::ProkhorovBySubsets(a, b)) <
          1e-6);
    CHECK(std::abs(WassersteinDistance(a, b) -
                   testing::WassersteinByVertices(a, b)) < 1e-6);
  }
}

TEST_CASE("metric axioms") {
  RngStream rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Belief a = testing::RandomBelief(rng, kWideBox, 4);
    const Belief b = testing::RandomBelief(rng, kWideBox, 4);
    const Belief c = testing::RandomBelief(rng, kWideBox, 4);
    const double pab = ProkhorovDistance(a, b);
    CHECK(pab <= 1.0);
    CHECK(std::abs(pab - ProkhorovDistance(b, a)) < 1e-9);
    CHECK(ProkhorovDistance(a, c) <=
          pab + ProkhorovDistance(b, c) + 1e-9 + 2e-9);
    const double wab = WassersteinDistance(a, b);
    CHECK(std::abs(wab - WassersteinDistance(b, a)) < 1e-9);
    CHECK(WassersteinDistance(a, c) <= wab + WassersteinDistance(b, c) + 1e-9);
    CHECK(WassersteinDistance(a, a) < 1e-9);
  }
}

TEST_CASE("wasserstein is bounded by (1 + diameter) times prokhorov") {
  RngStream rng(17);
  for (double width : {0.5, 1.0, 3.0, 10.0}) {
    const ParameterBox box({0.0, 0.0}, {width, width});
    for (int trial = 0; trial < 50; ++trial) {
      const Belief a = testing::RandomBelief(rng, box, 4);
      const Belief b = testing::RandomBelief(rng, box, 4);
      CHECK(WassersteinDistance(a, b) <=
            (1.0 + box.Diameter()) * ProkhorovDistance(a, b) + 1e-9);
    }
  }
}

TEST_CASE("diameter times prokhorov does not bound wasserstein in general") {
  // A point mass against a mixture that moves most mass a short distance and
  // a little mass across the whole box.
  const auto line = ParameterBox::Interval(0.0, 4.0);
  const double eps = 0.1;
  const Belief a = Belief::PointMass(line, ParameterPoint(0.0));
  const Belief b(line, {{ParameterPoint(eps), 1.0 - eps},
                        {ParameterPoint(4.0), eps}});
  CHECK(std::abs(ProkhorovDistance(a, b) - eps) < 1e-8);
  CHECK(WassersteinDistance(a, b) ==
        doctest::Approx(eps * (1.0 - eps) + 4.0 * eps));
  CHECK(WassersteinDistance(a, b) > line.Diameter() * ProkhorovDistance(a, b));
}

TEST_CASE("strassen coupling mass") {
  const auto line = ParameterBox::Interval(0.0, 10.0);
  const Belief a(line, {{ParameterPoint(1.0), 0.5}, {ParameterPoint(5.0), 0.5}});
  const Belief b(line, {{ParameterPoint(1.2), 0.3}, {ParameterPoint(9.0), 0.7}});
  CHECK(MaxCloseCouplingMass(a, b, 0.1) == doctest::Approx(0.0));
  CHECK(MaxCloseCouplingMass(a, b, 0.2) == doctest::Approx(0.3));
  CHECK(MaxCloseCouplingMass(a, b, 4.0) == doctest::Approx(0.8));
  CHECK(MaxCloseCouplingMass(a, b, 8.0) == doctest::Approx(1.0));
}

}  // namespace
}  // namespace confset
