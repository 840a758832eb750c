#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "invctl/baseline_forecast.hpp"
#include "invctl/errors.hpp"

namespace invctl {

namespace {

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size() - 1);
}

std::vector<double> difference(std::span<const double> x, int d) {
    std::vector<double> out(x.begin(), x.end());
    for (int k = 0; k < d; ++k) {
        for (std::size_t i = out.size() - 1; i > 0; --i) out[i] -= out[i - 1];
        out.erase(out.begin());
    }
    return out;
}

// Roots of 1 + s*c1 z + ... + s*cp z^p all outside the closed unit disk
// <=> companion matrix eigenvalues strictly inside it.
bool roots_outside_unit_disk(std::span<const double> c, double sign) {
    const auto p = static_cast<Eigen::Index>(c.size());
    if (p == 0) return true;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = -sign * c[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd eig = companion.eigenvalues();
    for (Eigen::Index i = 0; i < p; ++i) {
        if (std::abs(eig(i)) >= 1.0 - 1e-9) return false;
    }
    return true;
}

struct LeastSquares {
    Eigen::VectorXd beta;
    double rss = 0.0;
    bool ok = false;
};

LeastSquares solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    LeastSquares out;
    if (X.rows() <= X.cols()) return out;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) return out;
    out.beta = qr.solve(y);
    out.rss = (y - X * out.beta).squaredNorm();
    out.ok = std::isfinite(out.rss);
    return out;
}

// Innovation proxies from a long autoregression of order m; zero before index m.
std::vector<double> long_ar_residuals(std::span<const double> w, int m) {
    const auto n = static_cast<Eigen::Index>(w.size());
    std::vector<double> e(w.size(), 0.0);
    const Eigen::Index rows = n - m;
    Eigen::MatrixXd X(rows, m + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = r + m;
        y(r) = w[static_cast<std::size_t>(t)];
        X(r, 0) = 1.0;
        for (int i = 1; i <= m; ++i) X(r, i) = w[static_cast<std::size_t>(t - i)];
    }
    const LeastSquares fit = solve(X, y);
    if (!fit.ok) return e;
    const Eigen::VectorXd resid = y - X * fit.beta;
    for (Eigen::Index r = 0; r < rows; ++r) e[static_cast<std::size_t>(r + m)] = resid(r);
    return e;
}

// Residuals of the fitted ARMA recursion over w, starting from zero innovations.
std::vector<double> arma_residuals(const ArimaModel& model, std::span<const double> w) {
    std::vector<double> e(w.size(), 0.0);
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t < static_cast<std::size_t>(model.p)) continue;
        double fitted = model.intercept;
        for (int i = 1; i <= model.p; ++i) fitted += model.ar_coeffs[i - 1] * w[t - i];
        for (int j = 1; j <= model.q && static_cast<std::size_t>(j) <= t; ++j) {
            fitted += model.ma_coeffs[j - 1] * e[t - j];
        }
        e[t] = w[t] - fitted;
    }
    return e;
}

ArimaModel mean_model(std::span<const double> w, int d) {
    ArimaModel m;
    m.d = d;
    m.fallback = true;
    double sum = 0.0;
    for (double v : w) sum += v;
    m.intercept = w.empty() ? 0.0 : sum / static_cast<double>(w.size());
    return m;
}

}  // namespace

int select_differencing(std::span<const double> series, std::span<const int> d_set) {
    if (d_set.empty()) throw ParameterError("d_set must not be empty");
    for (int d : d_set) {
        if (d != 0 && d != 1) throw ParameterError("differencing order must be 0 or 1");
    }
    const bool allow0 = std::find(d_set.begin(), d_set.end(), 0) != d_set.end();
    const bool allow1 = std::find(d_set.begin(), d_set.end(), 1) != d_set.end();
    if (!allow1) return 0;
    if (!allow0) return 1;
    const auto diffed = difference(series, 1);
    return sample_variance(diffed) < sample_variance(series) ? 1 : 0;
}

bool ar_is_stationary(std::span<const double> ar) {
    return roots_outside_unit_disk(ar, -1.0);
}

ArimaModel fit_arima(std::span<const double> series, const ArimaSearch& search) {
    if (search.p_max < 0 || search.q_max < 0) throw ParameterError("p_max, q_max must be >= 0");
    const int max_lag = std::max(search.p_max, search.q_max);
    if (series.size() < static_cast<std::size_t>(max_lag) + 3) {
        throw InsufficientData("series too short for the requested ARIMA orders");
    }
    for (double v : series) {
        if (!std::isfinite(v)) throw ParameterError("series contains non-finite values");
    }
    const int d = select_differencing(series, search.d_set);
    const std::vector<double> w = difference(series, d);
    const auto n = static_cast<int>(w.size());
    if (sample_variance(w) == 0.0) return mean_model(w, d);

    // Long-AR order for the innovation proxies, kept well inside the sample.
    int m = 0;
    if (search.q_max > 0) {
        m = std::max(max_lag + 1, static_cast<int>(std::floor(10.0 * std::log10(n))));
        m = std::min(m, std::max(1, (n - 1) / 3));
    }
    const std::vector<double> innov = m > 0 ? long_ar_residuals(w, m) : std::vector<double>(w.size());
    const int t0 = std::max(search.p_max, m + search.q_max);
    const int rows = n - t0;

    ArimaModel best = mean_model(w, d);
    double best_aic = std::numeric_limits<double>::infinity();
    bool have_best = false;
    const double rss_floor = 1e-12 * std::max(1.0, sample_variance(w)) * std::max(rows, 1);

    // Order of visiting implements the tie-break: smaller p+q first, then smaller p.
    for (int order = 0; order <= search.p_max + search.q_max; ++order) {
        for (int p = 0; p <= std::min(order, search.p_max); ++p) {
            const int q = order - p;
            if (q > search.q_max) continue;
            const int cols = 1 + p + q;
            if (rows <= cols) continue;
            Eigen::MatrixXd X(rows, cols);
            Eigen::VectorXd y(rows);
            for (int r = 0; r < rows; ++r) {
                const int t = r + t0;
                y(r) = w[t];
                X(r, 0) = 1.0;
                for (int i = 1; i <= p; ++i) X(r, i) = w[t - i];
                for (int j = 1; j <= q; ++j) X(r, p + j) = innov[t - j];
            }
            const LeastSquares fit = solve(X, y);
            if (!fit.ok) continue;
            ArimaModel cand;
            cand.p = p;
            cand.d = d;
            cand.q = q;
            cand.intercept = fit.beta(0);
            for (int i = 1; i <= p; ++i) cand.ar_coeffs.push_back(fit.beta(i));
            for (int j = 1; j <= q; ++j) cand.ma_coeffs.push_back(fit.beta(p + j));
            if (!ar_is_stationary(cand.ar_coeffs)) continue;
            if (!roots_outside_unit_disk(cand.ma_coeffs, 1.0)) continue;
            const double rss = std::max(fit.rss, rss_floor);
            cand.aic = rows * std::log(rss / rows) + 2.0 * cols;
            if (!have_best || cand.aic < best_aic - 1e-9) {
                best = cand;
                best_aic = cand.aic;
                have_best = true;
            }
        }
    }
    return best;
}

double forecast_next(const ArimaModel& model, std::span<const double> series) {
    if (series.empty()) throw InsufficientData("cannot forecast from an empty series");
    const std::vector<double> w = difference(series, model.d);
    if (w.empty()) return series.back();
    const std::vector<double> e = arma_residuals(model, w);
    const std::size_t n = w.size();
    double next = model.intercept;
    for (int i = 1; i <= model.p; ++i) {
        if (static_cast<std::size_t>(i) <= n) next += model.ar_coeffs[i - 1] * w[n - i];
    }
    for (int j = 1; j <= model.q; ++j) {
        if (static_cast<std::size_t>(j) <= n) next += model.ma_coeffs[j - 1] * e[n - j];
    }
    return model.d == 1 ? series.back() + next : next;
}

}  // namespace invctl
