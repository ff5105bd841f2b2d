#include "gwts/stochastic.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gwts/rng.hpp"

namespace gwts::stochastic {

bool is_stationary_ar(const std::vector<double>& phi) {
    const std::size_t p = phi.size();
    if (p == 0) return true;
    if (p == 1) return std::abs(phi[0]) < 1.0;
    if (p == 2) {
        // Stationarity triangle for AR(2).
        return std::abs(phi[1]) < 1.0 && phi[1] + phi[0] < 1.0 && phi[1] - phi[0] < 1.0;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                      static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) companion(0, static_cast<Eigen::Index>(i)) = phi[i];
    for (std::size_t i = 1; i < p; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    return companion.eigenvalues().cwiseAbs().maxCoeff() < 1.0;
}

void check_spec(const ArfimaSpec& spec) {
    if (!is_stationary_ar(spec.phi)) throw InputError("non-stationary AR coefficients");
    if (std::abs(spec.d) >= 0.5) throw InputError("fractional d must satisfy |d| < 0.5");
    if (spec.sigma < 0) throw InputError("sigma must be nonnegative");
    if (spec.burnin < 0) throw InputError("burnin must be nonnegative");
}

std::vector<double> fracdiff_coeffs(double d, int n) {
    if (n < 0) throw InputError("coefficient count must be nonnegative");
    std::vector<double> pi(static_cast<std::size_t>(n) + 1);
    pi[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        pi[static_cast<std::size_t>(k)] =
            pi[static_cast<std::size_t>(k - 1)] * (static_cast<double>(k) - 1.0 - d) / static_cast<double>(k);
    }
    return pi;
}

std::vector<double> simulate_arfima(const ArfimaSpec& spec, int n, std::uint64_t seed) {
    check_spec(spec);
    if (n < 1) throw InputError("simulation length must be >= 1");

    const std::size_t total = static_cast<std::size_t>(n) + static_cast<std::size_t>(spec.burnin);
    const std::size_t p = spec.phi.size();
    const std::size_t q = spec.theta.size();

    Rng rng(seed);
    std::vector<double> eps(total);
    for (auto& e : eps) e = rng.normal(0.0, spec.sigma);

    // MA filter: u_t = eps_t + sum theta_i eps_{t-i}, pre-sample eps = 0.
    std::vector<double> u(total);
    for (std::size_t t = 0; t < total; ++t) {
        double acc = eps[t];
        for (std::size_t i = 0; i < q && i < t; ++i) acc += spec.theta[i] * eps[t - i - 1];
        u[t] = acc;
    }

    // AR recursion: v_t = sum phi_i v_{t-i} + u_t, pre-sample v = 0.
    std::vector<double> v(total);
    for (std::size_t t = 0; t < total; ++t) {
        double acc = u[t];
        for (std::size_t i = 0; i < p && i < t; ++i) acc += spec.phi[i] * v[t - i - 1];
        v[t] = acc;
    }

    if (spec.d == 0.0) {
        return std::vector<double>(v.begin() + spec.burnin, v.end());
    }

    // Fractional integration: convolve with the MA(inf) weights of (1-B)^{-d},
    // truncated at kFracdiffWindow.
    const auto w = fracdiff_coeffs(-spec.d, kFracdiffWindow);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (std::size_t t = static_cast<std::size_t>(spec.burnin); t < total; ++t) {
        double acc = 0.0;
        const std::size_t kmax = std::min<std::size_t>(t, static_cast<std::size_t>(kFracdiffWindow));
        for (std::size_t k = 0; k <= kmax; ++k) acc += w[k] * v[t - k];
        y[t - static_cast<std::size_t>(spec.burnin)] = acc;
    }
    return y;
}

}  // namespace gwts::stochastic
