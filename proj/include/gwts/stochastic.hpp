#pragma once

#include <cstdint>
#include <vector>

#include "gwts/error.hpp"

namespace gwts::stochastic {

/// ARFIMA(p, d, q) simulation spec with fractional differencing order d.
struct ArfimaSpec {
    std::vector<double> phi;     // AR coefficients, length p
    double d = 0.0;              // fractional differencing order, |d| < 0.5
    std::vector<double> theta;   // MA coefficients, length q
    double sigma = 1.0;          // innovation standard deviation
    int burnin = 500;            // initial values discarded
};

/// True when the AR polynomial 1 - sum(phi_i B^i) has all roots outside the
/// unit circle. Uses the stationarity triangle for p <= 2 and the companion
/// matrix spectral radius for larger p.
bool is_stationary_ar(const std::vector<double>& phi);

/// Throws InputError when the spec cannot be simulated (non-stationary AR
/// part, |d| >= 0.5, sigma < 0 or burnin < 0).
void check_spec(const ArfimaSpec& spec);

/// Binomial expansion coefficients of (1 - B)^d, pi_0..pi_n:
/// pi_0 = 1, pi_k = pi_{k-1} * (k - 1 - d) / k.
std::vector<double> fracdiff_coeffs(double d, int n);

/// Truncation window for the fractional-integration convolution. Coefficient
/// magnitudes fall below 1e-4 well inside this window for |d| <= 0.45.
inline constexpr int kFracdiffWindow = 1000;

/// Simulates n values of the ARFIMA process, deterministic given the seed.
/// Pipeline: Gaussian white noise -> MA filter -> AR recursion -> fractional
/// integration by truncated convolution with fracdiff_coeffs(-d); the first
/// `burnin` values are discarded so exactly n values are returned.
std::vector<double> simulate_arfima(const ArfimaSpec& spec, int n, std::uint64_t seed);

}  // namespace gwts::stochastic
