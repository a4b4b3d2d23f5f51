#ifndef BERGMAN_MINPOLY_HPP
#define BERGMAN_MINPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "bergman/grid.hpp"

namespace bergman {

// One term c * t^alpha * Y^j of a polynomial relation P(t, Y).
struct MonomialTerm {
    std::vector<int> alpha;  // exponents of the sampled coordinates
    int j = 0;               // power of Y
    double c = 0.0;
};

struct MinimalPolynomialCandidate {
    bool accepted = false;
    std::string reject_reason;  // empty when accepted
    int dY = 0;                 // degree in Y of the accepted relation
    int dt = 0;                 // max degree of the coefficient polynomials
    CoordSystem coords = CoordSystem::ReducedXY;
    std::vector<MonomialTerm> coeffs;  // cleaned, unit-norm coefficient vector
    int total_degree = 0;              // real-coordinate convention
    std::optional<int> rational_degree;
    double residual = 0.0;       // max |P|/max(1,|f|^dY) over holdout
    double residual_rms = 0.0;
    double residual_rel = 0.0;   // max |P| / row-norm over holdout
    double condition = 0.0;      // sigma_min / sigma_{min+1} of the design
    bool conditioning_warning = false;
    double transect_exponent = 0.0;  // measured blow-up exponent (0 if none)
    int ramification = 1;            // denominator of the snapped exponent
};

struct DetectionConfig {
    int dY_max = 3;
    int dt_max = 8;
    double tol = 1e-7;
    double exponent_snap_tol = 0.02;
    double cleanup_rel = 1e-9;  // zero coefficients below this times max
};

// Scans dY = 1..dY_max ascending.  Levels below the ramification forced by
// the measured transect exponent are excluded outright (a degree-d algebraic
// function cannot branch with denominator > d).  At admissible levels the
// column-scaled, row-equilibrated design matrix is decomposed by SVD; the
// smallest singular vector is accepted when both holdout residuals pass
// `tol`, and the minimal dt is then located by bisection.
MinimalPolynomialCandidate detect_min_polynomial(const SampleGrid& grid,
                                                 const DetectionConfig& config);

// max(deg p, deg q) for dY = 1 relations q Y - p (real-coordinate degrees);
// absent when dY > 1.
std::optional<int> rational_degree(const MinimalPolynomialCandidate& cand);

struct RelationResidualReport {
    double max_residual = 0.0;  // spec scaling: |P| / max(1, |f|^dY)
    double rms_residual = 0.0;
    double max_relative = 0.0;  // |P| / term-vector norm
    bool accepted = false;
};

// Evaluates a candidate relation on a fresh grid (its holdout set).
RelationResidualReport verify_relation(const MinimalPolynomialCandidate& cand,
                                       const SampleGrid& holdout,
                                       double tol = 1e-7);

struct TypeReportSummary;  // from finite_type.hpp

struct DegreeReport {
    int d = 0;
    int total_degree = 0;
    int type_max = 0;
    bool inequality_holds = false;  // max r <= 2d
    bool equality = false;
};

// Theorem check max_xi r(xi) <= 2d; throws TheoremViolation on failure.
DegreeReport check_type_degree_inequality(int d, int total_degree,
                                          int max_type);

}  // namespace bergman

#endif
