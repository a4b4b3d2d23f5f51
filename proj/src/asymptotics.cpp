#include "bergman/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Ordinary least squares with unit-norm column scaling; returns coefficients
// and the scaled condition number.
struct LsqResult {
    Eigen::VectorXd coef;
    double rms;
    double condition;
};

LsqResult scaled_lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Eigen::VectorXd scale = X.colwise().norm();
    for (int j = 0; j < scale.size(); ++j) {
        if (scale(j) == 0.0) scale(j) = 1.0;
    }
    Eigen::MatrixXd Xs = X.array().rowwise() / scale.transpose().array();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        Xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double cond = svd.singularValues()(0) /
                  std::max(svd.singularValues()(svd.singularValues().size() - 1),
                           1e-300);
    if (cond > 1e14) {
        throw ConditioningError("regressor matrix is rank deficient", cond);
    }
    Eigen::VectorXd c = svd.solve(y).cwiseQuotient(scale);
    double rms = std::sqrt((y - X * c).squaredNorm() / y.size());
    return {c, rms, cond};
}

}  // namespace

void validate_ray(const DomainKernel& kernel, const BoundaryRay& ray,
                  double boundary_tol) {
    if (!(ray.t_min > 0.0) || !(ray.t_max > ray.t_min)) {
        throw ValidationError("ray: need 0 < t_min < t_max");
    }
    double rho = kernel.defining(ray.xi);
    if (std::abs(rho) > boundary_tol) {
        std::ostringstream os;
        os << "ray: base point off the boundary (defining = " << rho << ")";
        throw ValidationError(os.str());
    }
    Real4 g = kernel.defining_gradient(ray.xi);
    double gn = norm(g);
    double vn = norm(ray.direction);
    if (vn == 0.0) throw ValidationError("ray: zero direction");
    double dd = dot(g, ray.direction);
    if (gn == 0.0 || std::abs(dd) <= 1e-8 * gn * vn) {
        throw ValidationError("ray: direction tangential to the boundary");
    }
    if (dd < 0.0) {
        throw ValidationError("ray: direction points outward");
    }
}

KernelRaySamples sample_along_ray(const DomainKernel& kernel,
                                  const BoundaryRay& ray, int n_points) {
    if (n_points < 8) throw ValidationError("sample_along_ray: n_points >= 8");
    validate_ray(kernel, ray);
    KernelRaySamples out;
    out.ray = ray;
    out.t_values.reserve(n_points);
    out.k_values.reserve(n_points);
    double log_ratio = std::log(ray.t_min / ray.t_max) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        double t = ray.t_max * std::exp(i * log_ratio);
        CPoint2 p = advance(ray.xi, ray.direction, t);
        if (kernel.defining(p) <= 0.0) {
            throw ValidationError("sample_along_ray: ray leaves the domain");
        }
        out.t_values.push_back(t);
        out.k_values.push_back(kernel.value(p));
    }
    return out;
}

ExponentFit fit_blowup_exponent(const KernelRaySamples& samples) {
    const auto& ts = samples.t_values;
    const auto& ks = samples.k_values;
    int n = static_cast<int>(ts.size());
    if (n < 8) throw ValidationError("exponent fit: need >= 8 samples");
    if (ts.front() / ts.back() < 10.0) {
        throw ValidationError("exponent fit: need at least one decade in t");
    }
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = std::log(ts[i]);
        y(i) = std::log(ks[i]);
    }
    auto fit = scaled_lsq(X, y);
    double m = fit.coef(1);
    if (m >= -2.0) {
        std::ostringstream os;
        os << "exponent fit: slope " << m << " >= -2, no admissible type";
        throw FitInconsistencyError(os.str());
    }
    return {m, -2.0 / (m + 2.0), fit.rms, std::exp(fit.coef(0))};
}

ExponentFit fit_blowup_exponent_refined(const KernelRaySamples& samples) {
    const auto& ts = samples.t_values;
    const auto& ks = samples.k_values;
    int n = static_cast<int>(ts.size());
    ExponentFit raw = fit_blowup_exponent(samples);

    Eigen::VectorXd logt(n), logk(n);
    for (int i = 0; i < n; ++i) {
        logt(i) = std::log(ts[i]);
        logk(i) = std::log(ks[i]);
    }
    auto rss_at = [&](double m) {
        double r = -2.0 / (m + 2.0);
        if (!(r > 0.0)) return 1e300;
        double g = std::min(1.0 / r, 1.0);
        Eigen::MatrixXd X(n, 3);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            X(i, 0) = 1.0;
            X(i, 1) = std::pow(ts[i], g);
            X(i, 2) = ts[i];
            y(i) = logk(i) - m * logt(i);
        }
        Eigen::VectorXd c =
            X.colPivHouseholderQr().solve(y);
        return (y - X * c).squaredNorm();
    };
    // Golden-section over the slope around the raw estimate, kept below -2.
    double lo = raw.slope - 0.4;
    double hi = std::min(raw.slope + 0.4, -2.0 - 1e-7);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = rss_at(c), fd = rss_at(d);
    for (int it = 0; it < 100; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a);
            fc = rss_at(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a);
            fd = rss_at(d);
        }
    }
    double m = 0.5 * (a + b);
    ExponentFit out = raw;
    out.slope = m;
    out.r_estimate = -2.0 / (m + 2.0);
    return out;
}

PuiseuxFit fractional_power_fit(const std::vector<double>& t,
                                const std::vector<double>& values, int r, int J,
                                bool include_log, double log_exponent) {
    int n = static_cast<int>(t.size());
    if (r < 1) throw ValidationError("puiseux fit: r >= 1");
    if (J < 0 || J >= n - 2) throw ValidationError("puiseux fit: J < n - 2");
    int ncol = J + 1 + (include_log ? 1 : 0);
    Eigen::MatrixXd X(n, ncol);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= J; ++j) {
            X(i, j) = std::pow(t[i], static_cast<double>(j) / r);
        }
        if (include_log) {
            X(i, J + 1) = std::pow(t[i], log_exponent) * std::log(t[i]);
        }
        y(i) = values[i];
    }
    auto fit = scaled_lsq(X, y);
    PuiseuxFit out;
    out.r = r;
    out.coefficients.assign(fit.coef.data(), fit.coef.data() + J + 1);
    if (include_log) out.b_log = fit.coef(J + 1);
    out.residual = fit.rms;
    out.condition = fit.condition;
    return out;
}

PuiseuxFit puiseux_fit(const KernelRaySamples& samples, int r, int J,
                       bool include_log) {
    const auto& ts = samples.t_values;
    const auto& ks = samples.k_values;
    double e = 2.0 + 2.0 / r;
    std::vector<double> scaled(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        scaled[i] = ks[i] * std::pow(ts[i], e);
    }
    return fractional_power_fit(ts, scaled, r, J, include_log, e);
}

TypeEstimate estimate_type(const DomainKernel& kernel, const CPoint2& xi,
                           const std::vector<Real4>& directions,
                           const TypeEstimateConfig& config) {
    if (directions.empty()) {
        throw ValidationError("estimate_type: need at least one direction");
    }
    TypeEstimate out;
    out.r = 0;
    for (const auto& v : directions) {
        BoundaryRay ray{xi, v, config.t_min, config.t_max};
        auto samples = sample_along_ray(kernel, ray, config.n_points);
        DirectionFit df;
        df.direction = v;
        df.raw = fit_blowup_exponent(samples);
        df.refined = fit_blowup_exponent_refined(samples);
        double r_est = df.refined.r_estimate;
        double rounded = std::round(r_est);
        if (rounded >= 1.0 && std::abs(r_est - rounded) < config.snap_tol) {
            df.snapped = static_cast<int>(rounded);
        }
        out.per_direction.push_back(df);
    }
    std::optional<int> agreed;
    for (const auto& df : out.per_direction) {
        if (!df.snapped) {
            std::ostringstream os;
            os << "estimate_type: r estimate " << df.refined.r_estimate
               << " does not snap to an integer within " << config.snap_tol;
            throw AmbiguityError(os.str());
        }
        if (agreed && *agreed != *df.snapped) {
            std::ostringstream os;
            os << "estimate_type: directions disagree (" << *agreed << " vs "
               << *df.snapped << ")";
            throw AmbiguityError(os.str());
        }
        if (!agreed) agreed = df.snapped;
        out.r = std::max(out.r, *df.snapped);
    }
    return out;
}

}  // namespace bergman
