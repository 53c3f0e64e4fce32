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

#pragma once

#include <cmath>
#include <stdexcept>

namespace jtcomp {

// Linear power in watts. Everything downstream of the config boundary
// computes in watts; dB/dBm appear only here and in reports.
struct PowerWatts {
  double value = 0.0;
};

// Logarithmic power in dBm.
struct PowerDbm {
  double value = 0.0;
};

inline PowerWatts dbm_to_watt(PowerDbm x) {
  if (!std::isfinite(x.value)) {
    throw std::invalid_argument("dbm_to_watt: non-finite input");
  }
  return PowerWatts{std::pow(10.0, (x.value - 30.0) / 10.0)};
}

inline PowerDbm watt_to_dbm(PowerWatts x) {
  if (!(x.value > 0.0) || !std::isfinite(x.value)) {
    throw std::invalid_argument("watt_to_dbm: input must be a positive finite power");
  }
  return PowerDbm{10.0 * std::log10(x.value) + 30.0};
}

/// Thermal (plus any flat) noise power over a bandwidth: N0 [dBm/Hz] * W [Hz].
inline PowerWatts noise_power(double noise_psd_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("noise_power: bandwidth must be positive");
  }
  if (!std::isfinite(noise_psd_dbm_hz)) {
    throw std::invalid_argument("noise_power: non-finite PSD");
  }
  return dbm_to_watt(PowerDbm{noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz)});
}

}  // namespace jtcomp
