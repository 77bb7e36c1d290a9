// Copyright 2026 The QPN Engine Authors
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

#include "doctest.h"
#include "qpn/error.hpp"
#include "support.hpp"

using namespace qpn;
using test::levels;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("validation rejects malformed tables") {
  CHECK_NOTHROW(validate(table1_fixture()));
  CHECK(kind_of([] { validate(JointTable({levels("A", 2)}, {0.5, 0.6})); }) ==
        ErrorKind::MassNotOne);
  CHECK(kind_of([] { validate(JointTable({levels("A", 2)}, {1.1, -0.1})); }) ==
        ErrorKind::NegativeMass);
  CHECK(kind_of([] { validate(JointTable({levels("A", 2)}, {1.0})); }) ==
        ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { validate(JointTable({levels("A", 2), levels("A", 2)}, {0.25, 0.25, 0.25, 0.25})); }) ==
        ErrorKind::DuplicateVariable);
  CHECK(kind_of([] { validate(VariableSpec{"A", {1.0, 1.0}}); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { validate(VariableSpec{"A", {2.0}}); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { validate(JointTable({VariableSpec{"A", {0.0}}}, {1.0})); }) ==
        ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { validate(JointTable({levels("A", 2)}, {0.5, 0.4})); }) ==
        ErrorKind::MassNotOne);
}

TEST_CASE("table 1 margins") {
  const auto t = table1_fixture();
  const auto x = marginalize(t, {"X"});
  CHECK(x[0] == doctest::Approx(0.325));
  CHECK(x[1] == doctest::Approx(0.4));
  CHECK(x[2] == doctest::Approx(0.275));
  const auto y = cdf_of(t, "Y");
  CHECK(y.cumulative[0] == doctest::Approx(0.425));
  CHECK(y.cumulative[1] == doctest::Approx(0.725));
  CHECK(y.cumulative[2] == doctest::Approx(1.0));
}

TEST_CASE("conditioning renormalizes and checks evidence") {
  const auto t = table1_fixture();
  const auto row = condition(t, {{"X", 2.0}});
  CHECK(row[0] == doctest::Approx(0.375));
  CHECK(row[1] == doctest::Approx(0.375));
  CHECK(row[2] == doctest::Approx(0.25));
  const auto col = condition(t, {{"Y", 1.0}});
  CHECK(col[0] == doctest::Approx(0.2 / 0.425));
  CHECK(col[2] == doctest::Approx(0.075 / 0.425));
  const auto c_row = cdf_of(row, "Y");
  CHECK(c_row.cumulative[1] == doctest::Approx(0.75));
  const auto c = condition(t, {{"Y", 2.0}});
  CHECK(c.rank() == 1);
  CHECK(c[0] == doctest::Approx(0.05 / 0.3));
  CHECK(c[1] == doctest::Approx(0.5));
  CHECK(kind_of([&] { condition(t, {{"Y", 7.0}}); }) == ErrorKind::UnknownLevel);
  CHECK(kind_of([&] { condition(t, {{"Z", 1.0}}); }) == ErrorKind::UnknownVariable);
  const JointTable degenerate({levels("A", 2), levels("B", 2)}, {0.5, 0.5, 0.0, 0.0});
  CHECK(kind_of([&] { condition(degenerate, {{"A", 1.0}}); }) ==
        ErrorKind::ZeroProbabilityEvidence);
}

TEST_CASE("permute round trip") {
  Rng rng = stream_rng(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = test::random_table(rng, {levels("A", 2), levels("B", 3), levels("C", 4)});
    const auto p = permute(t, {"C", "A", "B"});
    CHECK(p.variables()[0].name == "C");
    const auto back = permute(p, {"A", "B", "C"});
    REQUIRE(back.cell_count() == t.cell_count());
    for (std::size_t k = 0; k < t.cell_count(); ++k) CHECK(back[k] == t[k]);
    const std::size_t idx[] = {1, 2, 3};
    const std::size_t pidx[] = {3, 1, 2};
    CHECK(t.at(idx) == p.at(pidx));
  }
}

TEST_CASE("marginalization preserves mass and commutes") {
  Rng rng = stream_rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = test::random_table(rng, {levels("A", 3), levels("B", 2), levels("C", 3)});
    CHECK_NOTHROW(validate(marginalize(t, {"A", "C"})));
    const auto direct = marginalize(t, {"A"});
    const auto staged = marginalize(marginalize(t, {"A", "B"}), {"A"});
    for (std::size_t k = 0; k < direct.cell_count(); ++k)
      CHECK(direct[k] == doctest::Approx(staged[k]).epsilon(1e-12));
  }
}

TEST_CASE("first-order stochastic dominance") {
  const std::vector<double> s = {0, 1, 2};
  const auto f = cdf_from_pmf(s, std::vector<double>{0.2, 0.3, 0.5});
  const auto g = cdf_from_pmf(s, std::vector<double>{0.5, 0.3, 0.2});
  const auto h = cdf_from_pmf(s, std::vector<double>{0.3, 0.0, 0.7});
  CHECK(fsd_compare(f, g) == DominanceOrder::Dominates);
  CHECK(fsd_compare(g, f) == DominanceOrder::DominatedBy);
  CHECK(fsd_compare(f, f) == DominanceOrder::Equal);
  CHECK(fsd_compare(f, h) == DominanceOrder::Incomparable);
  const auto other = cdf_from_pmf({0, 1, 3}, std::vector<double>{0.2, 0.3, 0.5});
  CHECK(kind_of([&] { fsd_compare(f, other); }) == ErrorKind::SupportMismatch);
}

TEST_CASE("fsd is antisymmetric on random pairs") {
  Rng rng = stream_rng(3, 1);
  const std::vector<double> s = {0, 1, 2, 3};
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = cdf_from_pmf(s, sample_simplex(rng, 4));
    const auto g = cdf_from_pmf(s, sample_simplex(rng, 4));
    const auto fg = fsd_compare(f, g);
    const auto gf = fsd_compare(g, f);
    if (fg == DominanceOrder::Dominates) CHECK(gf == DominanceOrder::DominatedBy);
    if (fg == DominanceOrder::Incomparable) CHECK(gf == DominanceOrder::Incomparable);
    // dominance implies a larger mean
    double mf = 0, mg = 0;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      mf += 1.0 - f.cumulative[k];
      mg += 1.0 - g.cumulative[k];
    }
    if (fg == DominanceOrder::Dominates) CHECK(mf >= mg - 1e-9);
  }
}

TEST_CASE("odometer") {
  std::vector<std::size_t> idx(2, 0);
  const std::vector<std::size_t> shape = {2, 3};
  int steps = 1;
  while (next_index(idx, shape)) ++steps;
  CHECK(steps == 6);
  CHECK(idx == std::vector<std::size_t>{0, 0});
}
