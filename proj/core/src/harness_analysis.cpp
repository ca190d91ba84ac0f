#include "xps/harness/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace xps::harness {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

ConvergenceResult convergence_study(const std::function<Vec(double)>& runner,
                                    const Vec& reference, const std::vector<double>& hs,
                                    double floor) {
    if (hs.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 step sizes");

    double ref_norm = 0.0;
    for (double v : reference) ref_norm += v * v;
    ref_norm = std::sqrt(ref_norm);
    if (floor <= 0.0)
        floor = 100.0 * std::numeric_limits<double>::epsilon() * (1.0 + ref_norm);

    ConvergenceResult res;
    for (double h : hs) {
        const Vec end = runner(h);
        if (end.size() != reference.size())
            throw std::invalid_argument("convergence_study: endpoint dimension mismatch");
        double err = 0.0;
        for (std::size_t i = 0; i < end.size(); ++i) {
            const double d = end[i] - reference[i];
            err += d * d;
        }
        err = std::sqrt(err);
        res.points.push_back({h, err, err > floor});
    }

    std::vector<double> lx, ly;
    for (const auto& p : res.points) {
        if (p.used) {
            lx.push_back(std::log(p.h));
            ly.push_back(std::log(p.error));
        }
    }
    res.n_used = static_cast<int>(lx.size());
    if (res.n_used < 2)
        throw std::runtime_error("convergence_study: too few error points above round-off floor");
    res.slope = fit_slope(lx, ly);
    return res;
}

namespace {

// Vertex abscissa of the parabola through three points.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = x0 - x1, d02 = x0 - x2, d12 = x1 - x2;
    const double denom = y0 * d12 - y1 * d02 + y2 * d01;
    if (denom == 0.0) return x1;
    const double num = y0 * (x1 * x1 - x2 * x2) - y1 * (x0 * x0 - x2 * x2) +
                       y2 * (x0 * x0 - x1 * x1);
    return 0.5 * num / denom;
}

double quadratic_interp(double x0, double y0, double x1, double y1, double x2, double y2,
                        double x) {
    const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    return y0 * l0 + y1 * l1 + y2 * l2;
}

}  // namespace

PrecessionResult precession_study(const Trajectory& traj) {
    if (traj.state_labels.size() < 3)
        throw std::invalid_argument("precession_study: trajectory lacks (t, r, phi) columns");
    const auto& rows = traj.rows;

    std::vector<double> peri_phi;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const double rm = rows[i - 1].state[1], r0 = rows[i].state[1], rp = rows[i + 1].state[1];
        if (r0 < rm && r0 <= rp) {
            const double tau_star = parabola_vertex(rows[i - 1].tau, rm, rows[i].tau, r0,
                                                    rows[i + 1].tau, rp);
            const double phi_star =
                quadratic_interp(rows[i - 1].tau, rows[i - 1].state[2], rows[i].tau,
                                 rows[i].state[2], rows[i + 1].tau, rows[i + 1].state[2],
                                 tau_star);
            peri_phi.push_back(phi_star);
        }
    }

    PrecessionResult res;
    res.n_pericenters = static_cast<int>(peri_phi.size());
    if (res.n_pericenters < 3)
        throw std::runtime_error("precession_study: fewer than three pericenter passages");

    for (std::size_t i = 1; i < peri_phi.size(); ++i)
        res.passages.push_back(peri_phi[i] - peri_phi[i - 1] - 2.0 * std::numbers::pi);

    double mean = 0.0;
    for (double d : res.passages) mean += d;
    mean /= static_cast<double>(res.passages.size());
    double var = 0.0;
    for (double d : res.passages) var += (d - mean) * (d - mean);
    var /= static_cast<double>(res.passages.size());
    res.mean_delta_omega = mean;
    res.std_delta_omega = std::sqrt(var);
    return res;
}

DriftResult drift_study(const std::vector<double>& step_index,
                        const std::vector<double>& series) {
    if (step_index.size() != series.size())
        throw std::invalid_argument("drift_study: mismatched series lengths");
    if (series.size() < 100) throw std::invalid_argument("drift_study: need at least 100 samples");

    DriftResult res;
    res.envelope.resize(series.size());
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < series.size(); ++i) {
        running = std::max(running, series[i]);
        res.envelope[i] = running;
    }

    const std::size_t half = series.size() / 2;
    std::vector<double> xs(step_index.begin() + static_cast<long>(half), step_index.end());
    std::vector<double> ys(res.envelope.begin() + static_cast<long>(half), res.envelope.end());
    res.slope_per_step = fit_slope(xs, ys);

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    res.loglog_exponent = (lx.size() >= 2) ? fit_slope(lx, ly) : 0.0;

    const double mid = res.envelope[half];
    const double end = res.envelope.back();
    res.growth_ratio = (mid > 0.0) ? end / mid : (end > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    return res;
}

std::vector<double> abs_invariant_error(const Trajectory& traj, double h_ref) {
    std::vector<double> out;
    out.reserve(traj.rows.size());
    for (const auto& row : traj.rows) out.push_back(std::abs(row.invariant - h_ref));
    return out;
}

}  // namespace xps::harness
