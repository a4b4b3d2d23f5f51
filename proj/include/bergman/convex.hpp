#ifndef BERGMAN_CONVEX_HPP
#define BERGMAN_CONVEX_HPP

#include <cstdint>

#include "bergman/quadric.hpp"

namespace bergman {

// Affine image of a real ellipsoid (the ball is A = 0, M = I), carried as
// the transported inverse quadratic form plus the real center, which gives
// the support function in closed form.
class ConvexBody {
public:
    ConvexBody(const EllipsoidParams& params, const AffineMap& map);

    int real_dim() const { return static_cast<int>(center_.size()); }
    const RVector& center() const { return center_; }

    // h(u) = sqrt(u^T Qinv u) + <center, u> for |u| = 1.
    double support(const RVector& u) const;
    bool contains(const RVector& p) const;
    // Length of the longest segment in the given direction inside the body.
    double longest_chord(const RVector& direction) const;

    const RMatrix& transported_inverse_form() const { return q_inv_; }

private:
    RMatrix q_inv_;   // R(M) Q0^{-1} R(M)^T
    RMatrix q_back_;  // Q0-form pulled back for membership tests
    RVector center_;
};

ConvexBody make_ellipsoid_body(const EllipsoidParams& params,
                               const AffineMap& map);

struct HausdorffEstimate {
    double value;     // sup over directions of |h(u) - 1| after refinement
    double mesh_gap;  // crude bound on what sampling may have missed
    int n_dirs;
};

// d_H(body, unit ball) via the support-function identity, sampled on
// quasi-uniform directions and sharpened by projected-gradient ascent.
HausdorffEstimate hausdorff_to_ball(const ConvexBody& body, int n_dirs = 512,
                                    int refine_steps = 60,
                                    std::uint64_t seed = 2);

struct HausdorffBoundReport {
    double epsilon;
    double bound;   // eps / (1 + eps^2)
    double max_A;
    double slack;   // bound - max_A
};

// Checks A_j <= eps/(1+eps^2) for the ellipsoid image; TheoremViolation on
// failure.  Requires eps < 1/2.
HausdorffBoundReport check_hausdorff_bound(const EllipsoidParams& params,
                                           const AffineMap& map,
                                           int n_dirs = 512);

// Checks B_{1-eps} subset body subset B_{1+eps} by support-function
// domination plus interior point sampling.  TheoremViolation on failure.
void check_containment(const ConvexBody& body, double eps, int n_dirs = 512,
                       std::uint64_t seed = 3);

}  // namespace bergman

#endif
