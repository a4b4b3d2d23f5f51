#ifndef BERGMAN_FINITE_TYPE_HPP
#define BERGMAN_FINITE_TYPE_HPP

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/egg.hpp"
#include "bergman/quadric.hpp"

namespace bergman {

// Exact boundary type of the egg E_s at xi: 2s on {w = 0}, 2 elsewhere.
// Requires integer s >= 1 and xi on the boundary within tol.
int egg_type(int s, const CPoint2& xi, double boundary_tol = 1e-12);

// Nonconstant polynomial curve gamma(t) = (gamma1, gamma2) through
// gamma(0); coefficients indexed by power of t.
struct HolomorphicCurve {
    std::vector<Complex> gamma1;  // gamma1[k] multiplies t^k
    std::vector<Complex> gamma2;

    int vanishing_order() const;  // ord(gamma - gamma(0)), >= 1
};

// A real-valued polynomial in (z, zbar, w, wbar) given as terms
// c * z^{p1} zbar^{q1} w^{p2} wbar^{q2}.
struct RealAnalyticPoly {
    struct Term {
        Complex c;
        int p1, q1, p2, q2;
    };
    std::vector<Term> terms;

    static RealAnalyticPoly egg_defining(int s);          // 1 - z zbar - (w wbar)^s
    static RealAnalyticPoly from_quadric(const RealQuadric& q);
    double eval(const CPoint2& p) const;
};

struct ContactOrder {
    int num = 0;  // ord_0(rho o gamma)
    int den = 1;  // ord_0(gamma)
    double value() const { return static_cast<double>(num) / den; }
    HolomorphicCurve witness;
};

struct ContactSearchBudget {
    int max_curve_degree = 6;
    // coefficient grid is {0, +-1, +-i, +-1+-i}
};

// Maximizes ord_0(rho o gamma)/ord_0(gamma) over monomial-direction curves
// gamma(t) = xi + (u t^p, v t^q) with gridded coefficients.  Vanishing
// orders come from exact composition of rho(gamma(t), conj(gamma)(tbar)).
// The result certifies only a lower bound for the D'Angelo type.
// Throws on rho(xi) != 0; a curve inside the zero set raises the
// infinite-type flag.
struct ContactSearchResult {
    ContactOrder best;
    bool infinite_type_flag = false;
};
ContactSearchResult contact_order_lower_bound(const RealAnalyticPoly& rho,
                                              const CPoint2& xi,
                                              const ContactSearchBudget& budget = {});

// Smallest eigenvalue of the Levi form of -rho restricted to the complex
// tangent at xi (C^2 only: the tangent is one-dimensional).  Positive means
// strongly pseudoconvex at xi.
double levi_min_eigenvalue(const RealAnalyticPoly& rho, const CPoint2& xi);

enum class TypeMethod { ExactRule, CurveSearch, LeviForm };

struct TypePoint {
    CPoint2 xi;
    int r;
    TypeMethod method;
};

struct TypeReportSummary {
    std::vector<TypePoint> per_point;
    int max_type = 0;
};

// Domain descriptor for type reports: an egg (integer s) or an ellipsoid.
struct EggFamily {
    int s;
};
using TypeDomain = std::variant<EggFamily, EllipsoidParams>;

// Exact rule for eggs, Levi definiteness plus curve search for ellipsoids.
TypeReportSummary type_report(const TypeDomain& domain,
                              const std::vector<CPoint2>& probes);

}  // namespace bergman

#endif
