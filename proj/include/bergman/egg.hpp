#ifndef BERGMAN_EGG_HPP
#define BERGMAN_EGG_HPP

#include <cstdint>
#include <functional>

#include "bergman/point.hpp"

namespace bergman {

// Closed-form kernel coefficients of the egg family: c0 = 0,
// c1 = (s-1)/(s pi^2), c2 = 2/(s pi^2).
struct EggKernelCoefficients {
    double c0;
    double c1;
    double c2;
};

// The egg domain E_s = { |z|^2 + |w|^{2s} < 1 } in C^2.  s = 1 is the unit
// ball.  Real s > 0 is allowed here; the finite-type module insists on
// integer s where smoothness of the boundary is used.
class EggDomain {
public:
    explicit EggDomain(double s);

    double s() const { return s_; }
    EggKernelCoefficients coefficients() const;

    // Defining polynomial f(z,w) = 1 - |z|^2 - |w|^{2s}; positive inside.
    double defining(const CPoint2& p) const;
    // Gradient of the defining function in (Re z, Im z, Re w, Im w).
    Real4 defining_gradient(const CPoint2& p) const;

    bool contains(const CPoint2& p) const { return defining(p) > 0.0; }
    bool contains_xy(double x, double y) const;
    bool on_boundary(const CPoint2& p, double tol = 1e-12) const;

private:
    double s_;
};

// Diagonal Bergman kernel of E_s via D'Angelo's closed form, evaluated in
// the reduced coordinates x = |z|^2, y = |w|^2.
double egg_kernel_closed_xy(const EggDomain& dom, double x, double y);
double egg_kernel_closed(const EggDomain& dom, const CPoint2& p);

// L^2 norm of the monomial z^a w^b over E_s:
//   pi^2 / (s (a+1)) * B((b+1)/s, a+2).
double monomial_norm_sq(const EggDomain& dom, int a, int b);

struct SeriesResult {
    double value;        // partial sum (lower bound of the true kernel)
    double tail_bound;   // certified bound on everything not summed
    std::int64_t terms;  // number of terms accumulated
};

struct SeriesBudget {
    std::int64_t max_rows = 200000;
    std::int64_t max_terms = 20000000;
};

// Diagonal kernel as the monomial series sum_{a,b} x^a y^b / ||z^a w^b||^2.
// Independent evaluation route used as an oracle against the closed form.
// Guarantees |value - K| <= rel_tol * value, else throws
// SeriesTruncationError with the partial sum and bound.
SeriesResult egg_kernel_series_xy(const EggDomain& dom, double x, double y,
                                  double rel_tol,
                                  const SeriesBudget& budget = {});
SeriesResult egg_kernel_series(const EggDomain& dom, const CPoint2& p,
                               double rel_tol, const SeriesBudget& budget = {});

// Ball kernel n!/pi^n (1-|p|^2)^{-(n+1)} for p in B^n; |p|^2 passed directly.
double ball_kernel_abs2(int n, double abs2);
double ball_kernel(int n, const std::vector<double>& re_im_coords);

// A diagonal-kernel evaluator bundled with the defining function of its
// domain.  The asymptotics module consumes this.
struct DomainKernel {
    std::function<double(const CPoint2&)> value;
    std::function<double(const CPoint2&)> defining;
    std::function<Real4(const CPoint2&)> defining_gradient;
};

DomainKernel make_egg_domain_kernel(const EggDomain& dom);

}  // namespace bergman

#endif
