#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gwts/error.hpp"

namespace gwts::arima {

/// ARIMA(p, d, q) error structure; d is restricted to 0, 1 or 2.
struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;

    friend bool operator==(const ArimaOrder&, const ArimaOrder&) = default;
};

/// Parameters of a regression with ARIMA errors:
///   y_t = intercept + beta . x_t + eta_t,  phi(B) (1-B)^d eta_t = theta(B) eps_t.
/// With d > 0 the regression is estimated on the differenced scale (the
/// regressors are differenced identically).
struct DynRegModel {
    ArimaOrder order;
    Eigen::VectorXd beta;
    double intercept = 0.0;
    std::vector<double> phi;
    std::vector<double> theta;
    double sigma2 = 0.0;
    double loglik = 0.0;  // Gaussian conditional log-likelihood over n_eff terms
    double aic = 0.0;     // -2 loglik + 2 (p + q + len(beta) + 2)
    int n_eff = 0;        // number of conditional-sum-of-squares terms

    // State needed to forecast past the training sample.
    std::vector<double> eta_tail;        // last p differenced-scale errors, most recent last
    std::vector<double> eps_tail;        // last q innovations, most recent last
    std::vector<double> y_tail;          // last d undifferenced target values, most recent last
    Eigen::MatrixXd x_tail;              // last d undifferenced regressor rows

    int n_params() const { return order.p + order.q + static_cast<int>(beta.size()) + 2; }
};

/// Forecast means with 80% and 95% prediction intervals.
struct Forecast {
    std::vector<double> mean;
    std::vector<double> lower80, upper80;
    std::vector<double> lower95, upper95;
};

inline constexpr double kZ80 = 1.2815515655;
inline constexpr double kZ95 = 1.9599639845;

/// Applies (1 - B)^d, d in {0, 1, 2}; output has len(y) - d entries.
std::vector<double> difference(const std::vector<double>& y, int d);
Eigen::VectorXd difference(const Eigen::VectorXd& y, int d);
Eigen::MatrixXd difference_rows(const Eigen::MatrixXd& x, int d);

/// Free parameters evaluated by the conditional-sum-of-squares objective.
struct DynRegParams {
    double intercept = 0.0;
    Eigen::VectorXd beta;
    std::vector<double> phi;
    std::vector<double> theta;
};

/// Conditional sum of squares: eta_t = y_t - intercept - beta . x_t on the
/// d-differenced scale, eps_t from the ARMA recursion with pre-sample eps set
/// to zero, summed over t = max(p, q) .. n-1 (0-based).
double css_objective(const DynRegParams& params, const Eigen::VectorXd& y,
                     const Eigen::MatrixXd& x, const ArimaOrder& order);

struct FitOptions {
    /// Conditioning span override: number of leading differenced-scale
    /// observations excluded from the sum of squares. Defaults to max(p, q).
    /// Candidate models are only AIC-comparable when fitted with a common
    /// value, so select_order passes max(p_max, q_max) here.
    std::optional<int> n_cond;
};

/// Fits the model by minimizing the conditional sum of squares. The AR/MA
/// coefficients are optimized by a deterministic Nelder-Mead search in a
/// partial-autocorrelation/tanh transformed space (which enforces
/// stationarity and invertibility); the regression coefficients are profiled
/// out exactly by least squares at every candidate point, starting from the
/// OLS solution with phi = theta = 0. Deterministic: identical inputs yield
/// bitwise-identical models.
DynRegModel fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, const ArimaOrder& order,
                const FitOptions& opts = {});

/// Fits every (p, q) in [0, p_max] x [0, q_max] at the given d and returns
/// the minimum-AIC model, ties broken by smaller p+q then smaller p. All
/// candidates are fitted on a common conditioning span so their AICs are
/// comparable; the winner is refitted on its natural span.
std::pair<ArimaOrder, DynRegModel> select_order(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                                int p_max, int q_max, int d);

/// Forecasts h steps ahead given future regressor rows (undifferenced).
/// Interval half-widths are z * sigma * sqrt(sum psi_j^2) with the psi
/// weights from polynomial long division of theta(B) / phi(B); with d > 0 the
/// differenced-scale forecast is cumulatively summed and the division uses
/// phi(B) (1-B)^d.
Forecast forecast(const DynRegModel& model, const Eigen::MatrixXd& x_future, int h);

/// One-step-ahead in-sample-style predictions on new data (d = 0 only):
/// yhat_t = intercept + beta . x_t + ARMA prediction of eta_t from previous
/// observed errors. The first max(p, q) predictions use zero pre-sample
/// errors.
Eigen::VectorXd predict_one_step(const DynRegModel& model, const Eigen::VectorXd& y,
                                 const Eigen::MatrixXd& x);

/// Equivalent lagged-regression coefficients of a regression with AR(1)
/// errors: returns ((1-phi) b0, b1, phi, -phi b1) so that
///   Y_t = (1-phi) b0 + b1 X_t + phi Y_{t-1} - phi b1 X_{t-1} + eps_t.
std::array<double, 4> ar1_equivalent_coeffs(double beta0, double beta1, double phi);

/// JSON document round trip (field names: order, beta, intercept, phi, theta,
/// sigma2, aic, plus loglik/n_eff and the forecasting state).
std::string to_json(const DynRegModel& model);
DynRegModel model_from_json(const std::string& text);

}  // namespace gwts::arima
