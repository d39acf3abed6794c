// ebfsim - link-level simulator for hybrid energy beamforming over Rician channels
// Copyright (C) 2026 the ebfsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EBFSIM_RNG_HPP
#define EBFSIM_RNG_HPP

#include <complex>
#include <cstdint>

namespace ebfsim {

// Purpose tags for substream addressing. Each random quantity drawn inside a
// Monte Carlo trial gets its own substream so results do not depend on the
// order in which quantities are consumed.
enum RngPurpose : std::uint32_t {
    kRngApi = 1,
    kRngChannel = 2,
    kRngNoise = 3,
    kRngApiPrecoder = 4,
    kRngMisc = 5,
};

// Counter-based generator (Philox 4x32-10). A stream is addressed by
// (master_seed, stream_id, purpose); trials indexed by stream_id draw from
// independent substreams no matter how work is scheduled across threads.
class Philox {
  public:
    Philox(std::uint64_t master_seed, std::uint64_t stream_id, std::uint32_t purpose);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double next_double();
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller; one spare value is cached.
    double normal();

    // Circularly symmetric complex normal with the given total variance
    // (real and imaginary parts each carry half of it).
    std::complex<double> complex_normal(double total_variance);

  private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t counter_[4];
    std::uint32_t block_[4];
    int out_pos_;
    bool have_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

} // namespace ebfsim

#endif
