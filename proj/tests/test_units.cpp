// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <limits>

#include "jtcomp/units.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace jtcomp;

TEST_CASE("dbm_to_watt known points") {
  CHECK_THAT(dbm_to_watt({30.0}).value, WithinRel(1.0, 1e-15));
  CHECK_THAT(dbm_to_watt({0.0}).value, WithinRel(1.0e-3, 1e-15));
  // 10^1.6 W, checked against a high-precision evaluation
  CHECK_THAT(dbm_to_watt({46.0}).value, WithinRel(39.810717055349734, 1e-14));
}

TEST_CASE("watt_to_dbm known points") {
  CHECK_THAT(watt_to_dbm({1.0}).value, WithinAbs(30.0, 1e-12));
  CHECK_THAT(watt_to_dbm({1.0e-3}).value, WithinAbs(0.0, 1e-12));
  CHECK_THAT(watt_to_dbm({39.8107}).value, WithinAbs(46.0, 1e-4));
}

TEST_CASE("dbm round-trip across the dynamic range") {
  for (double x = -200.0; x <= 200.0; x += 0.5) {
    CHECK_THAT(watt_to_dbm(dbm_to_watt({x})).value, WithinAbs(x, 1e-10));
  }
}

TEST_CASE("unit conversion rejects bad input") {
  CHECK_THROWS_AS(dbm_to_watt({std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  CHECK_THROWS_AS(dbm_to_watt({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  CHECK_THROWS_AS(watt_to_dbm({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(watt_to_dbm({-1.0}), std::invalid_argument);
}

TEST_CASE("noise power over a bandwidth") {
  // Table-style values: -174 dBm/Hz over 10 MHz is -104 dBm
  CHECK_THAT(noise_power(-174.0, 10.0e6).value,
             WithinRel(dbm_to_watt({-104.0}).value, 1e-12));
  CHECK_THAT(noise_power(-174.0, 10.0e6).value, WithinRel(3.9810717055349725e-14, 1e-12));
  CHECK_THAT(noise_power(-174.0, 1.0).value, WithinRel(dbm_to_watt({-174.0}).value, 1e-15));
  CHECK_THROWS_AS(noise_power(-174.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(noise_power(-174.0, -5.0), std::invalid_argument);
}

TEST_CASE("noise power is strictly increasing in bandwidth and PSD") {
  double prev = 0.0;
  for (double w : {1.0, 10.0, 1.0e3, 1.0e6, 10.0e6, 20.0e6}) {
    const double p = noise_power(-174.0, w).value;
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double n0 : {-180.0, -174.0, -160.0, -120.0}) {
    const double p = noise_power(n0, 10.0e6).value;
    CHECK(p > prev);
    prev = p;
  }
}
