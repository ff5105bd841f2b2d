#include "gwts/arima.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace gwts::arima {

namespace {

constexpr double kHuge = 1e300;

/// Maps unconstrained values to a stationary (invertible) coefficient vector
/// through tanh'd partial autocorrelations (Monahan's transform).
std::vector<double> partrans(const std::vector<double>& raw) {
    const std::size_t p = raw.size();
    std::vector<double> out(p);
    for (std::size_t i = 0; i < p; ++i) out[i] = std::tanh(raw[i]);
    std::vector<double> work(out);
    for (std::size_t j = 1; j < p; ++j) {
        for (std::size_t k = 0; k < j; ++k) work[k] -= out[j] * out[j - k - 1];
        std::copy(work.begin(), work.begin() + j, out.begin());
    }
    return out;
}

/// ARMA whitening filter with the conditional-sum-of-squares convention:
/// w_t = 0 for t < ncond, and for t >= ncond
///   w_t = z_t - sum_i phi_i z_{t-i} - sum_j theta_j w_{t-j}.
void css_filter(const double* z, double* w, std::size_t n, const std::vector<double>& phi,
                const std::vector<double>& theta, std::size_t ncond) {
    for (std::size_t t = 0; t < std::min(ncond, n); ++t) w[t] = 0.0;
    for (std::size_t t = ncond; t < n; ++t) {
        double acc = z[t];
        for (std::size_t i = 0; i < phi.size(); ++i) acc -= phi[i] * z[t - i - 1];
        for (std::size_t j = 0; j < theta.size(); ++j) acc -= theta[j] * w[t - j - 1];
        w[t] = acc;
    }
}

struct ProfileResult {
    double css = kHuge;
    double intercept = 0.0;
    Eigen::VectorXd beta;
};

/// Exact least-squares profile of (intercept, beta) at fixed (phi, theta):
/// the filter is linear, so eps(c, beta) = F(y) - c F(1) - sum beta_j F(x_j)
/// and the conditional sum of squares is quadratic in (c, beta).
class CssProfiler {
public:
    CssProfiler(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, std::size_t ncond)
        : y_(y), ncond_(ncond) {
        const Eigen::Index n = y.rows();
        design_.resize(n, x.cols() + 1);
        design_.col(0).setOnes();
        if (x.cols() > 0) design_.rightCols(x.cols()) = x;
        fy_.resize(n);
        fdesign_.resize(n, design_.cols());
    }

    /// Rank check on the raw design; returns the first dependent column index
    /// (0 = intercept, j >= 1 = regressor j-1) or -1 when full rank.
    Eigen::Index dependent_column() const {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design_.bottomRows(rows_used()));
        if (qr.rank() == design_.cols()) return -1;
        return qr.colsPermutation().indices()(qr.rank());
    }

    Eigen::Index rows_used() const { return y_.rows() - static_cast<Eigen::Index>(ncond_); }

    ProfileResult evaluate(const std::vector<double>& phi, const std::vector<double>& theta) {
        const auto n = static_cast<std::size_t>(y_.rows());
        css_filter(y_.data(), fy_.data(), n, phi, theta, ncond_);
        for (Eigen::Index c = 0; c < design_.cols(); ++c) {
            css_filter(design_.col(c).data(), fdesign_.col(c).data(), n, phi, theta, ncond_);
        }
        const Eigen::Index m = rows_used();
        const auto f = fdesign_.bottomRows(m);
        const auto g = fy_.tail(m);

        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(design_.cols(), design_.cols());
        gram.selfadjointView<Eigen::Lower>().rankUpdate(f.transpose());
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram.selfadjointView<Eigen::Lower>());
        ProfileResult res;
        if (ldlt.info() != Eigen::Success) return res;
        const Eigen::VectorXd gamma = ldlt.solve(f.transpose() * g);
        const double css = (g - f * gamma).squaredNorm();
        if (!std::isfinite(css)) return res;
        res.css = css;
        res.intercept = gamma(0);
        res.beta = gamma.tail(gamma.size() - 1);
        return res;
    }

private:
    const Eigen::VectorXd& y_;
    std::size_t ncond_;
    Eigen::MatrixXd design_;   // [1 | x]
    Eigen::VectorXd fy_;
    Eigen::MatrixXd fdesign_;
};

/// Deterministic Nelder-Mead minimization. Two passes: a wide simplex from
/// the start point, then a restart with a tight simplex around the best
/// vertex to polish.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd x0) {
    const int m = static_cast<int>(x0.size());
    if (m == 0) return x0;

    const auto run = [&](Eigen::VectorXd start, double step) {
        const int nv = m + 1;
        std::vector<Eigen::VectorXd> xs(nv, start);
        std::vector<double> fs(nv);
        for (int i = 1; i < nv; ++i) xs[static_cast<std::size_t>(i)](i - 1) += step;
        for (int i = 0; i < nv; ++i) fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);

        std::vector<int> ord(nv);
        const int max_iter = 400 * m;
        for (int iter = 0; iter < max_iter; ++iter) {
            std::iota(ord.begin(), ord.end(), 0);
            std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
                return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)];
            });
            const int best = ord[0], worst = ord[static_cast<std::size_t>(nv - 1)],
                      second = ord[static_cast<std::size_t>(nv - 2)];
            if (fs[static_cast<std::size_t>(worst)] - fs[static_cast<std::size_t>(best)] <=
                1e-10 * (std::abs(fs[static_cast<std::size_t>(best)]) + 1e-10)) {
                break;
            }

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(m);
            for (int i = 0; i < nv; ++i) {
                if (i != worst) centroid += xs[static_cast<std::size_t>(i)];
            }
            centroid /= static_cast<double>(m);

            const Eigen::VectorXd xr = centroid + (centroid - xs[static_cast<std::size_t>(worst)]);
            const double fr = f(xr);
            if (fr < fs[static_cast<std::size_t>(best)]) {
                const Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs[static_cast<std::size_t>(worst)]);
                const double fe = f(xe);
                if (fe < fr) {
                    xs[static_cast<std::size_t>(worst)] = xe;
                    fs[static_cast<std::size_t>(worst)] = fe;
                } else {
                    xs[static_cast<std::size_t>(worst)] = xr;
                    fs[static_cast<std::size_t>(worst)] = fr;
                }
            } else if (fr < fs[static_cast<std::size_t>(second)]) {
                xs[static_cast<std::size_t>(worst)] = xr;
                fs[static_cast<std::size_t>(worst)] = fr;
            } else {
                const bool outside = fr < fs[static_cast<std::size_t>(worst)];
                const Eigen::VectorXd xc =
                    centroid + 0.5 * ((outside ? xr : xs[static_cast<std::size_t>(worst)]) - centroid);
                const double fc = f(xc);
                if (fc < std::min(fr, fs[static_cast<std::size_t>(worst)])) {
                    xs[static_cast<std::size_t>(worst)] = xc;
                    fs[static_cast<std::size_t>(worst)] = fc;
                } else {
                    for (int i = 0; i < nv; ++i) {
                        if (i == best) continue;
                        xs[static_cast<std::size_t>(i)] =
                            xs[static_cast<std::size_t>(best)] +
                            0.5 * (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(best)]);
                        fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
                    }
                }
            }
        }
        int best = 0;
        for (int i = 1; i < nv; ++i) {
            if (fs[static_cast<std::size_t>(i)] < fs[static_cast<std::size_t>(best)]) best = i;
        }
        return xs[static_cast<std::size_t>(best)];
    };

    Eigen::VectorXd u = run(std::move(x0), 0.5);
    return run(std::move(u), 0.05);
}

void split_params(const Eigen::VectorXd& u, int p, int q, std::vector<double>& phi,
                  std::vector<double>& theta) {
    std::vector<double> raw_phi(static_cast<std::size_t>(p)), raw_theta(static_cast<std::size_t>(q));
    for (int i = 0; i < p; ++i) raw_phi[static_cast<std::size_t>(i)] = u(i);
    for (int j = 0; j < q; ++j) raw_theta[static_cast<std::size_t>(j)] = u(p + j);
    phi = partrans(raw_phi);
    theta = partrans(raw_theta);
}

/// MA(infinity) weights psi_0..psi_{h-1} of theta(B) / arpoly(B).
std::vector<double> psi_weights(const std::vector<double>& arpoly, const std::vector<double>& theta,
                                int h) {
    std::vector<double> psi(static_cast<std::size_t>(h), 0.0);
    if (h == 0) return psi;
    psi[0] = 1.0;
    for (int j = 1; j < h; ++j) {
        double acc = j <= static_cast<int>(theta.size()) ? theta[static_cast<std::size_t>(j - 1)] : 0.0;
        for (int i = 1; i <= std::min<int>(j, static_cast<int>(arpoly.size())); ++i) {
            acc += arpoly[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        }
        psi[static_cast<std::size_t>(j)] = acc;
    }
    return psi;
}

/// Expands phi(B) (1-B)^d into an AR-style coefficient vector (sign
/// convention: polynomial is 1 - sum a_i B^i).
std::vector<double> expand_with_differencing(const std::vector<double>& phi, int d) {
    // Work with full polynomial coefficients c_0=1, c_i = -a_i.
    std::vector<double> c(phi.size() + 1, 0.0);
    c[0] = 1.0;
    for (std::size_t i = 0; i < phi.size(); ++i) c[i + 1] = -phi[i];
    for (int k = 0; k < d; ++k) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i];
        }
        c = std::move(next);
    }
    std::vector<double> a(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) a[i - 1] = -c[i];
    return a;
}

void validate_order(const ArimaOrder& order) {
    if (order.p < 0 || order.q < 0) throw InputError("AR and MA orders must be nonnegative");
    if (order.d < 0 || order.d > 2) throw InputError("differencing order must be 0, 1 or 2");
}

}  // namespace

std::vector<double> difference(const std::vector<double>& y, int d) {
    if (d < 0 || d > 2) throw InputError("differencing order must be 0, 1 or 2");
    if (static_cast<int>(y.size()) <= d) throw InputError("series too short to difference");
    std::vector<double> out = y;
    for (int k = 0; k < d; ++k) {
        for (std::size_t i = out.size() - 1; i > 0; --i) out[i] -= out[i - 1];
        out.erase(out.begin());
    }
    return out;
}

Eigen::VectorXd difference(const Eigen::VectorXd& y, int d) {
    std::vector<double> v(y.data(), y.data() + y.size());
    const auto out = difference(v, d);
    return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Eigen::MatrixXd difference_rows(const Eigen::MatrixXd& x, int d) {
    if (d < 0 || d > 2) throw InputError("differencing order must be 0, 1 or 2");
    if (x.rows() <= d) throw InputError("matrix too short to difference");
    Eigen::MatrixXd out = x;
    for (int k = 0; k < d; ++k) {
        out = (out.bottomRows(out.rows() - 1) - out.topRows(out.rows() - 1)).eval();
    }
    return out;
}

double css_objective(const DynRegParams& params, const Eigen::VectorXd& y,
                     const Eigen::MatrixXd& x, const ArimaOrder& order) {
    validate_order(order);
    if (x.rows() != 0 && x.rows() != y.rows()) throw InputError("y/x row mismatch");
    if (params.beta.size() != x.cols()) throw InputError("beta/x column mismatch");
    if (!std::isfinite(params.intercept)) throw InputError("non-finite parameter");
    for (double v : params.phi) {
        if (!std::isfinite(v)) throw InputError("non-finite parameter");
    }
    for (double v : params.theta) {
        if (!std::isfinite(v)) throw InputError("non-finite parameter");
    }

    const Eigen::VectorXd yd = difference(y, order.d);
    Eigen::VectorXd eta = yd.array() - params.intercept;
    if (x.cols() > 0) {
        const Eigen::MatrixXd xd = difference_rows(x, order.d);
        eta -= xd * params.beta;
    }

    const auto n = static_cast<std::size_t>(eta.size());
    const std::size_t ncond = static_cast<std::size_t>(std::max(order.p, order.q));
    std::vector<double> eps(n);
    css_filter(eta.data(), eps.data(), n, params.phi, params.theta, ncond);
    double acc = 0.0;
    for (std::size_t t = ncond; t < n; ++t) acc += eps[t] * eps[t];
    return acc;
}

DynRegModel fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, const ArimaOrder& order,
                const FitOptions& opts) {
    validate_order(order);
    if (x.rows() != 0 && x.rows() != y.rows()) throw InputError("y/x row mismatch");

    const int k = static_cast<int>(x.cols());
    const Eigen::VectorXd yd = difference(y, order.d);
    const Eigen::MatrixXd xd = k > 0 ? difference_rows(x, order.d) : Eigen::MatrixXd(yd.size(), 0);
    const int nd = static_cast<int>(yd.size());
    const int natural_ncond = std::max(order.p, order.q);
    const int ncond = opts.n_cond.value_or(natural_ncond);
    if (ncond < natural_ncond) throw InputError("conditioning span below max(p, q)");
    const int free_params = order.p + order.q + k + 1;
    if (nd - ncond <= free_params) throw InputError("insufficient data for the requested order");

    CssProfiler profiler(yd, xd, static_cast<std::size_t>(ncond));
    const Eigen::Index bad = profiler.dependent_column();
    if (bad >= 0) {
        if (bad == 0) throw InputError("singular design: intercept column is linearly dependent");
        throw InputError("singular design: regressor column " + std::to_string(bad - 1) +
                         " is collinear with earlier columns");
    }

    std::vector<double> phi, theta;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(order.p + order.q);
    if (order.p + order.q > 0) {
        const auto objective = [&](const Eigen::VectorXd& v) {
            std::vector<double> ph, th;
            split_params(v, order.p, order.q, ph, th);
            return profiler.evaluate(ph, th).css;
        };
        u = nelder_mead(objective, std::move(u));
    }
    split_params(u, order.p, order.q, phi, theta);
    const ProfileResult best = profiler.evaluate(phi, theta);
    if (best.css >= kHuge) throw NumericError("conditional sum of squares did not evaluate to a finite value");

    DynRegModel model;
    model.order = order;
    model.intercept = best.intercept;
    model.beta = best.beta;
    model.phi = phi;
    model.theta = theta;
    model.n_eff = nd - ncond;
    model.sigma2 = best.css / static_cast<double>(model.n_eff);
    model.loglik = -0.5 * static_cast<double>(model.n_eff) *
                   (std::log(2.0 * M_PI * model.sigma2) + 1.0);
    model.aic = -2.0 * model.loglik + 2.0 * static_cast<double>(model.n_params());

    // Forecasting state: differenced-scale errors and innovations, plus the
    // last d undifferenced rows for re-integration.
    Eigen::VectorXd eta = yd.array() - model.intercept;
    if (k > 0) eta -= xd * model.beta;
    const auto n = static_cast<std::size_t>(eta.size());
    std::vector<double> eps(n);
    css_filter(eta.data(), eps.data(), n, model.phi, model.theta,
               static_cast<std::size_t>(natural_ncond));
    for (int i = order.p; i >= 1; --i) model.eta_tail.push_back(eta(static_cast<Eigen::Index>(n) - i));
    for (int j = order.q; j >= 1; --j) model.eps_tail.push_back(eps[n - static_cast<std::size_t>(j)]);
    for (int i = order.d; i >= 1; --i) model.y_tail.push_back(y(y.size() - i));
    model.x_tail = order.d > 0 && k > 0 ? x.bottomRows(order.d) : Eigen::MatrixXd(0, k);
    return model;
}

std::pair<ArimaOrder, DynRegModel> select_order(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                                int p_max, int q_max, int d) {
    if (p_max < 0 || q_max < 0 || p_max > 5 || q_max > 5) {
        throw InputError("order grid limits must lie in [0, 5]");
    }
    // Candidates are compared on a common conditioning span; AIC values from
    // different spans are not comparable.
    FitOptions common;
    common.n_cond = std::max(p_max, q_max);

    bool found = false;
    ArimaOrder best_order;
    double best_aic = std::numeric_limits<double>::infinity();
    std::string last_error = "no candidates";
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            const ArimaOrder order{p, d, q};
            double aic;
            try {
                aic = fit(y, x, order, common).aic;
            } catch (const Error& e) {
                last_error = e.what();
                continue;
            }
            const bool better =
                !found || aic < best_aic - 1e-12 ||
                (std::abs(aic - best_aic) <= 1e-12 &&
                 (p + q < best_order.p + best_order.q ||
                  (p + q == best_order.p + best_order.q && p < best_order.p)));
            if (better) {
                found = true;
                best_aic = aic;
                best_order = order;
            }
        }
    }
    if (!found) throw NumericError("every candidate order failed to fit: " + last_error);
    return {best_order, fit(y, x, best_order)};
}

Forecast forecast(const DynRegModel& model, const Eigen::MatrixXd& x_future, int h) {
    if (h < 1) throw InputError("forecast horizon must be >= 1");
    const int k = static_cast<int>(model.beta.size());
    if (k > 0 && (x_future.rows() != h || x_future.cols() != k)) {
        throw InputError("future regressors must have h rows and match the training design columns");
    }

    // Regression term on the differenced scale.
    Eigen::VectorXd reg = Eigen::VectorXd::Constant(h, model.intercept);
    if (k > 0) {
        Eigen::MatrixXd xall(model.x_tail.rows() + h, k);
        if (model.x_tail.rows() > 0) xall.topRows(model.x_tail.rows()) = model.x_tail;
        xall.bottomRows(h) = x_future;
        const Eigen::MatrixXd xdiff = difference_rows(xall, model.order.d);
        reg += xdiff.bottomRows(h) * model.beta;
    }

    // ARMA error forecast with future innovations set to zero.
    const int p = model.order.p, q = model.order.q;
    std::vector<double> eta(model.eta_tail);
    for (int j = 0; j < h; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= p; ++i) {
            acc += model.phi[static_cast<std::size_t>(i - 1)] * eta[eta.size() - static_cast<std::size_t>(i)];
        }
        const int t = j + 1;  // steps ahead
        for (int l = t; l <= q; ++l) {
            acc += model.theta[static_cast<std::size_t>(l - 1)] *
                   model.eps_tail[model.eps_tail.size() - static_cast<std::size_t>(l - t) - 1];
        }
        eta.push_back(acc);
    }

    Forecast out;
    out.mean.resize(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j) {
        out.mean[static_cast<std::size_t>(j)] = reg(j) + eta[model.eta_tail.size() + static_cast<std::size_t>(j)];
    }

    // Integrate back to the level scale.
    if (model.order.d >= 1) {
        std::vector<double> level(out.mean);
        if (model.order.d == 2) {
            double diff_prev = model.y_tail[1] - model.y_tail[0];
            for (auto& v : level) {
                diff_prev += v;
                v = diff_prev;
            }
        }
        double prev = model.y_tail.back();
        for (auto& v : level) {
            prev += v;
            v = prev;
        }
        out.mean = level;
    }

    const auto arpoly = expand_with_differencing(model.phi, model.order.d);
    const auto psi = psi_weights(arpoly, model.theta, h);
    const double sigma = std::sqrt(model.sigma2);
    double cum = 0.0;
    out.lower80.resize(static_cast<std::size_t>(h));
    out.upper80.resize(static_cast<std::size_t>(h));
    out.lower95.resize(static_cast<std::size_t>(h));
    out.upper95.resize(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j) {
        cum += psi[static_cast<std::size_t>(j)] * psi[static_cast<std::size_t>(j)];
        const double se = sigma * std::sqrt(cum);
        const double m = out.mean[static_cast<std::size_t>(j)];
        out.lower80[static_cast<std::size_t>(j)] = m - kZ80 * se;
        out.upper80[static_cast<std::size_t>(j)] = m + kZ80 * se;
        out.lower95[static_cast<std::size_t>(j)] = m - kZ95 * se;
        out.upper95[static_cast<std::size_t>(j)] = m + kZ95 * se;
    }
    return out;
}

Eigen::VectorXd predict_one_step(const DynRegModel& model, const Eigen::VectorXd& y,
                                 const Eigen::MatrixXd& x) {
    if (model.order.d != 0) throw InputError("one-step predictions require d = 0");
    const int k = static_cast<int>(model.beta.size());
    if (k > 0 && (x.rows() != y.rows() || x.cols() != k)) throw InputError("y/x shape mismatch");

    const auto n = static_cast<std::size_t>(y.size());
    Eigen::VectorXd eta = y.array() - model.intercept;
    if (k > 0) eta -= x * model.beta;

    const int p = model.order.p, q = model.order.q;
    std::vector<double> eps(n, 0.0);
    Eigen::VectorXd yhat(y.size());
    for (std::size_t t = 0; t < n; ++t) {
        double pred_eta = 0.0;
        for (int i = 1; i <= p; ++i) {
            if (t >= static_cast<std::size_t>(i)) {
                pred_eta += model.phi[static_cast<std::size_t>(i - 1)] * eta(static_cast<Eigen::Index>(t) - i);
            }
        }
        for (int j = 1; j <= q; ++j) {
            if (t >= static_cast<std::size_t>(j)) {
                pred_eta += model.theta[static_cast<std::size_t>(j - 1)] * eps[t - static_cast<std::size_t>(j)];
            }
        }
        eps[t] = eta(static_cast<Eigen::Index>(t)) - pred_eta;
        yhat(static_cast<Eigen::Index>(t)) = y(static_cast<Eigen::Index>(t)) - eps[t];
    }
    return yhat;
}

std::array<double, 4> ar1_equivalent_coeffs(double beta0, double beta1, double phi) {
    return {(1.0 - phi) * beta0, beta1, phi, -phi * beta1};
}

std::string to_json(const DynRegModel& m) {
    nlohmann::json j;
    j["order"] = {{"p", m.order.p}, {"d", m.order.d}, {"q", m.order.q}};
    j["beta"] = std::vector<double>(m.beta.data(), m.beta.data() + m.beta.size());
    j["intercept"] = m.intercept;
    j["phi"] = m.phi;
    j["theta"] = m.theta;
    j["sigma2"] = m.sigma2;
    j["aic"] = m.aic;
    j["loglik"] = m.loglik;
    j["n_eff"] = m.n_eff;
    nlohmann::json state;
    state["eta_tail"] = m.eta_tail;
    state["eps_tail"] = m.eps_tail;
    state["y_tail"] = m.y_tail;
    std::vector<std::vector<double>> xt;
    for (Eigen::Index i = 0; i < m.x_tail.rows(); ++i) {
        xt.emplace_back(m.x_tail.row(i).begin(), m.x_tail.row(i).end());
    }
    state["x_tail"] = xt;
    state["x_cols"] = m.x_tail.cols();
    j["state"] = state;
    return j.dump(2);
}

DynRegModel model_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DynRegModel m;
    m.order.p = j.at("order").at("p").get<int>();
    m.order.d = j.at("order").at("d").get<int>();
    m.order.q = j.at("order").at("q").get<int>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    m.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    m.intercept = j.at("intercept").get<double>();
    m.phi = j.at("phi").get<std::vector<double>>();
    m.theta = j.at("theta").get<std::vector<double>>();
    m.sigma2 = j.at("sigma2").get<double>();
    m.aic = j.at("aic").get<double>();
    m.loglik = j.value("loglik", 0.0);
    m.n_eff = j.value("n_eff", 0);
    const auto& state = j.at("state");
    m.eta_tail = state.at("eta_tail").get<std::vector<double>>();
    m.eps_tail = state.at("eps_tail").get<std::vector<double>>();
    m.y_tail = state.at("y_tail").get<std::vector<double>>();
    const auto xt = state.at("x_tail").get<std::vector<std::vector<double>>>();
    const auto x_cols = state.value("x_cols", static_cast<Eigen::Index>(m.beta.size()));
    m.x_tail.resize(static_cast<Eigen::Index>(xt.size()), x_cols);
    for (std::size_t i = 0; i < xt.size(); ++i) {
        for (std::size_t c = 0; c < xt[i].size(); ++c) {
            m.x_tail(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = xt[i][c];
        }
    }
    return m;
}

}  // namespace gwts::arima
