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

#include "backscatter/random_fields.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"

#include <cmath>

namespace backscatter
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Kernel taps beyond 5 RMS widths are below 4e-6 of the peak
constexpr double kernel_support_sigmas = 5.0;

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::string label)
    : master_seed_(master_seed), label_(std::move(label))
{
    const std::uint64_t a = splitmix64(master_seed_);
    const std::uint64_t b = splitmix64(a ^ fnv1a64(label_));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
}

RandomStream RandomStream::child(std::string_view name) const
{
    return RandomStream(master_seed_, label_ + "/" + std::string(name));
}

RandomStream RandomStream::child(std::string_view name, std::size_t index) const
{
    return RandomStream(master_seed_, label_ + "/" + std::string(name) + "/" + std::to_string(index));
}

double RandomStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = two_pi * u2;
    spare_normal_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> RandomStream::complex_normal()
{
    constexpr double s = 0.70710678118654752440; // 1/sqrt(2)
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

RandomStream derive_stream(std::uint64_t master_seed, std::string_view label)
{
    return RandomStream(master_seed, std::string(label));
}

AzimuthGrid::AzimuthGrid(std::size_t n_bins) : n_bins_(n_bins)
{
    if (n_bins_ < 2)
        throw ConfigurationError("Azimuth grid needs at least 2 bins.");
}

AzimuthGrid AzimuthGrid::with_spacing(double delta_phi_deg)
{
    if (!(delta_phi_deg > 0.0) || delta_phi_deg > 180.0)
        throw ConfigurationError("Azimuth spacing must be in (0, 180] deg.");
    const double n = 360.0 / delta_phi_deg;
    const double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-9 * n)
        throw ConfigurationError("Azimuth spacing must divide 360 deg.");
    return AzimuthGrid(static_cast<std::size_t>(rounded));
}

double AzimuthGrid::delta_phi_rad() const
{
    return two_pi / static_cast<double>(n_bins_);
}

double AzimuthGrid::signed_offset_deg(std::size_t i) const
{
    const auto n = static_cast<long long>(n_bins_);
    auto k = static_cast<long long>(i % n_bins_);
    if (2 * k > n)
        k -= n;
    return static_cast<double>(k) * delta_phi_deg();
}

double lognormal_mean_offset(double sigma_db)
{
    if (!(sigma_db >= 0.0))
        throw DomainError("Standard deviation (dB) must be non-negative.");
    const double s = 0.1 * std::log(10.0) * sigma_db;
    return -10.0 * std::log10(std::exp(0.5 * s * s));
}

double LognormalFieldParams::mu_db() const
{
    return lognormal_mean_offset(sigma_db);
}

std::vector<double> gaussian_kernel(double sigma_samples, std::size_t half_width)
{
    std::vector<double> k(2 * half_width + 1);
    double energy = 0.0;
    for (std::size_t t = 0; t < k.size(); ++t)
    {
        const double x = static_cast<double>(t) - static_cast<double>(half_width);
        k[t] = std::exp(-x * x / (2.0 * sigma_samples * sigma_samples));
        energy += k[t] * k[t];
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (double &v : k)
        v *= scale;
    return k;
}

std::vector<double> correlated_lognormal_db(const AzimuthGrid &grid, const LognormalFieldParams &params,
                                            RandomStream &stream)
{
    if (!(params.phi_rms_deg > 0.0))
        throw DomainError("Correlation scale phi_rms must be positive.");
    if (!(params.sigma_db >= 0.0))
        throw DomainError("Standard deviation (dB) must be non-negative.");
    if (grid.delta_phi_deg() > params.phi_rms_deg)
        throw ConfigurationError("Azimuth spacing exceeds phi_rms: field is unresolvable on this grid.");

    const std::size_t n = grid.size();
    const double mu = params.mu_db();
    std::vector<double> white(n);
    for (double &w : white)
        w = stream.normal();

    std::vector<double> out(n, mu);
    if (params.sigma_db == 0.0)
        return out;

    const double sigma_k = params.phi_rms_deg / std::sqrt(2.0) / grid.delta_phi_deg();
    const auto half = static_cast<std::size_t>(std::ceil(kernel_support_sigmas * sigma_k));
    const std::vector<double> kernel = gaussian_kernel(sigma_k, half);

    // Fold taps that wrap more than once so the circular filter keeps unit energy
    std::vector<double> folded(n, 0.0);
    for (std::size_t t = 0; t < kernel.size(); ++t)
    {
        const long long shift = static_cast<long long>(t) - static_cast<long long>(half);
        const auto idx = static_cast<std::size_t>(((shift % static_cast<long long>(n)) + static_cast<long long>(n)) %
                                                  static_cast<long long>(n));
        folded[idx] += kernel[t];
    }
    double energy = 0.0;
    for (double v : folded)
        energy += v * v;
    const double renorm = 1.0 / std::sqrt(energy);

    std::vector<std::pair<std::size_t, double>> taps;
    for (std::size_t s = 0; s < n; ++s)
        if (folded[s] != 0.0)
            taps.emplace_back(s, folded[s] * renorm);

    for (std::size_t i = 0; i < n; ++i)
    {
        double acc = 0.0;
        for (const auto &[s, w] : taps)
        {
            std::size_t j = i + s;
            if (j >= n)
                j -= n;
            acc += w * white[j];
        }
        out[i] = mu + params.sigma_db * acc;
    }
    return out;
}

std::vector<std::complex<double>> complex_gaussian_series(double duration_s, double sample_rate_hz,
                                                          double coherence_time_s, RandomStream &stream)
{
    if (!(duration_s > 0.0) || !(sample_rate_hz > 0.0) || !(coherence_time_s > 0.0))
        throw DomainError("Duration, sample rate and coherence time must be positive.");
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    if (n < 2)
        throw DomainError("Series needs at least two samples (duration * sample_rate >= 2).");
    if (coherence_time_s < 2.0 / sample_rate_hz)
        throw ConfigurationError("Coherence time is under-resolved: need at least 2 samples per coherence time.");

    const double sigma_k = coherence_time_s * sample_rate_hz / std::sqrt(2.0);
    const auto half = static_cast<std::size_t>(std::ceil(kernel_support_sigmas * sigma_k));
    const std::vector<double> kernel = gaussian_kernel(sigma_k, half);

    const std::size_t n_white = n + 2 * half;
    std::vector<double> re(n_white), im(n_white);
    for (std::size_t i = 0; i < n_white; ++i)
    {
        const auto z = stream.complex_normal();
        re[i] = z.real();
        im[i] = z.imag();
    }

    std::vector<std::complex<double>> out(n);
    const std::size_t taps = kernel.size();
    for (std::size_t j = 0; j < n; ++j)
    {
        double ar = 0.0, ai = 0.0;
        const double *pr = re.data() + j;
        const double *pi_ = im.data() + j;
        for (std::size_t t = 0; t < taps; ++t)
        {
            ar += kernel[t] * pr[t];
            ai += kernel[t] * pi_[t];
        }
        out[j] = {ar, ai};
    }
    return out;
}

} // namespace backscatter
