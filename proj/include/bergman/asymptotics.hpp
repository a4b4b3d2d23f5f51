#ifndef BERGMAN_ASYMPTOTICS_HPP
#define BERGMAN_ASYMPTOTICS_HPP

#include <optional>
#include <vector>

#include "bergman/egg.hpp"
#include "bergman/point.hpp"

namespace bergman {

// A real segment xi + t v, t in (t_min, t_max], entering the domain through
// the boundary point xi transversally.
struct BoundaryRay {
    CPoint2 xi;
    Real4 direction{};
    double t_min = 1e-4;
    double t_max = 1e-1;
};

// Validates the ray invariants against a domain: xi on the boundary within
// boundary_tol, direction transversal, interior along the t-range.
void validate_ray(const DomainKernel& kernel, const BoundaryRay& ray,
                  double boundary_tol = 1e-12);

struct KernelRaySamples {
    BoundaryRay ray;
    std::vector<double> t_values;  // strictly decreasing toward t_min
    std::vector<double> k_values;  // positive, increasing as t decreases
};

// Geometric t-grid with n_points between t_max and t_min (inclusive),
// kernel evaluated with the closed form behind `kernel`.
KernelRaySamples sample_along_ray(const DomainKernel& kernel,
                                  const BoundaryRay& ray, int n_points);

struct ExponentFit {
    double slope;        // m of the log-log line
    double r_estimate;   // -2/(m+2)
    double residual;     // RMS residual of the log-log fit
    double c0_estimate;  // exp(intercept)
};

// Least-squares line through (log t, log K).  Throws FitInconsistencyError
// when the slope is >= -2 (no admissible type).
ExponentFit fit_blowup_exponent(const KernelRaySamples& samples);

// Slope estimate with smooth-factor corrections modeled out: minimizes over
// m the residual of fitting log K - m log t against {1, t^{1/r(m)}, t}.
// Much tighter r when the leading exponent carries O(t) corrections.
ExponentFit fit_blowup_exponent_refined(const KernelRaySamples& samples);

struct PuiseuxFit {
    int r;
    std::vector<double> coefficients;  // a_0 .. a_J
    std::optional<double> b_log;       // coefficient of t^{2+2/r} log t
    double residual;                   // RMS of the linear fit
    double condition;                  // column-scaled condition number
};

// Linear least squares of K t^{2+2/r} against {t^{j/r}}_{j=0..J}, plus the
// t^{2+2/r} log t regressor when include_log.
PuiseuxFit puiseux_fit(const KernelRaySamples& samples, int r, int J,
                       bool include_log = false);

// Fits values against {t^{j/r}}_{j=0..J} (+ optional t^{2+2/r} log t).
// Shared by puiseux_fit and the synthetic fractional-power recovery tests.
PuiseuxFit fractional_power_fit(const std::vector<double>& t,
                                const std::vector<double>& values, int r, int J,
                                bool include_log = false,
                                double log_exponent = 0.0);

struct TypeEstimateConfig {
    double t_min = 1e-4;
    double t_max = 1e-1;
    int n_points = 32;
    double snap_tol = 0.1;
    double boundary_tol = 1e-12;
};

struct DirectionFit {
    Real4 direction{};
    ExponentFit raw;
    ExponentFit refined;
    std::optional<int> snapped;
};

struct TypeEstimate {
    int r;
    std::vector<DirectionFit> per_direction;
};

// Estimates the boundary type at xi from kernel blow-up along the given
// transversal directions.  Each refined r must snap to the same positive
// integer within snap_tol, else AmbiguityError.
TypeEstimate estimate_type(const DomainKernel& kernel, const CPoint2& xi,
                           const std::vector<Real4>& directions,
                           const TypeEstimateConfig& config = {});

}  // namespace bergman

#endif
