// SPDX-License-Identifier: Apache-2.0
//
// indoor-backscatter: statistical monostatic clutter and target simulator
// Copyright (C) 2026 The indoor-backscatter authors
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

#ifndef BACKSCATTER_RANDOM_FIELDS_HPP
#define BACKSCATTER_RANDOM_FIELDS_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace backscatter
{

// Reproducible random sub-stream identified by (master seed, label path).
//
// The engine is a 64-bit Mersenne twister seeded from a SplitMix64 mix of the master seed and an
// FNV-1a hash of the label, so the same pair always produces the same sequence and different
// labels give unrelated sequences. Normal deviates use a Box-Muller transform written here, not
// std::normal_distribution, whose output is library-specific.
//
// A stream is a stateful value: copy it to fork, pass by reference to consume.
class RandomStream
{
public:
    RandomStream(std::uint64_t master_seed, std::string label);

    std::uint64_t master_seed() const { return master_seed_; }
    const std::string &label() const { return label_; }

    // Independent stream labelled "<label>/<name>"
    RandomStream child(std::string_view name) const;
    RandomStream child(std::string_view name, std::size_t index) const;

    std::uint64_t next_u64() { return engine_(); }
    double uniform();                   // [0, 1), 53-bit resolution
    double normal();                    // N(0, 1)
    std::complex<double> complex_normal(); // CN(0, 1): E|z|^2 = 1

private:
    std::uint64_t master_seed_;
    std::string label_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

RandomStream derive_stream(std::uint64_t master_seed, std::string_view label);

// Uniform azimuth grid covering [0, 360) deg. Bin i sits at i * delta_phi_deg.
class AzimuthGrid
{
public:
    explicit AzimuthGrid(std::size_t n_bins = 1800);

    // Grid whose spacing divides 360 deg; throws ConfigurationError otherwise
    static AzimuthGrid with_spacing(double delta_phi_deg);

    std::size_t size() const { return n_bins_; }
    double delta_phi_deg() const { return 360.0 / static_cast<double>(n_bins_); }
    double delta_phi_rad() const;
    double angle_deg(std::size_t i) const { return static_cast<double>(i) * delta_phi_deg(); }

    // Signed offset of bin i from bin 0, wrapped to (-180, 180]; exact negation for bins i and n - i
    double signed_offset_deg(std::size_t i) const;

    bool operator==(const AzimuthGrid &) const = default;

private:
    std::size_t n_bins_;
};

// Gaussian dB field parameters. mu_db is derived so that the linear field has unit mean.
struct LognormalFieldParams
{
    double sigma_db = 7.0;
    double phi_rms_deg = 1.0; // Gaussian correlation scale
    double mu_db() const;
};

// Mean mu (dB) of N(mu, sigma^2) such that E[10^(P/10)] = 1
double lognormal_mean_offset(double sigma_db);

// Unit-energy sampled Gaussian kernel of RMS width sigma_samples, taps at -half..half
std::vector<double> gaussian_kernel(double sigma_samples, std::size_t half_width);

// Circularly wrapped Gaussian dB field on the grid with mean mu_db, standard deviation sigma_db and
// normalized autocorrelation exp(-dphi^2 / (2 phi_rms^2)). White noise is circularly convolved with
// a unit-energy Gaussian kernel of RMS width phi_rms / sqrt(2).
// Throws ConfigurationError if the grid spacing exceeds phi_rms.
std::vector<double> correlated_lognormal_db(const AzimuthGrid &grid, const LognormalFieldParams &params,
                                            RandomStream &stream);

// Zero-mean circular complex Gaussian series with E|xi|^2 = 1 and autocorrelation
// exp(-dt^2 / (2 Tc^2)), Tc = coherence_time_s. Built by linear convolution of white CN(0,1) noise
// with a unit-energy Gaussian kernel of RMS width Tc / sqrt(2), with warm-up samples discarded.
// Throws ConfigurationError when Tc < 2 / sample_rate, DomainError on non-positive inputs.
std::vector<std::complex<double>> complex_gaussian_series(double duration_s, double sample_rate_hz,
                                                          double coherence_time_s, RandomStream &stream);

} // namespace backscatter

#endif
