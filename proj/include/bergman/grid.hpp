#ifndef BERGMAN_GRID_HPP
#define BERGMAN_GRID_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bergman/egg.hpp"

namespace bergman {

enum class CoordSystem {
    Real4,      // (Re z, Im z, Re w, Im w)
    ReducedXY,  // (x, y) = (|z|^2, |w|^2)
};

// Samples of a kernel (or any positive real-analytic function) on interior
// points, in either coordinate system.  `transect` optionally carries samples
// along a path approaching the boundary, parametrized by the distance-like
// variable delta, used for the ramification certificate in detection.
struct SampleGrid {
    CoordSystem coords = CoordSystem::ReducedXY;
    std::vector<std::vector<double>> points;   // training points
    std::vector<double> values;                // f at training points
    std::vector<std::vector<double>> holdout_points;
    std::vector<double> holdout_values;
    std::vector<double> transect_delta;  // decreasing toward 0; may be empty
    std::vector<double> transect_values;

    int n_vars() const { return coords == CoordSystem::Real4 ? 4 : 2; }
    void validate() const;  // interior/positivity/finiteness invariants
};

struct GridConfig {
    std::size_t n_train = 0;     // 0: sized from the detection budget by caller
    std::size_t n_holdout = 300;
    std::uint64_t seed = 1;
    double box_cap = 0.8;        // training box x + y^s <= box_cap
    double shell_lo = 0.85;      // holdout shell band
    double shell_hi = 0.95;
    double corner_lo = 1e-3;     // 1-x range of the near-branch family
    double corner_hi = 0.3;
    std::size_t n_corner = 0;    // 0: n_train/3
    std::size_t n_transect = 24;
    double transect_lo = 1e-5;
    double transect_hi = 1e-2;
};

// Egg kernel sampled in reduced coordinates on {x + y^s <= box_cap}, plus a
// near-branch corner family toward (1,0), shell holdout, and the y = 0
// transect x = 1 - delta.
SampleGrid egg_reduced_grid(const EggDomain& dom, std::size_t n_train,
                            const GridConfig& config = {});

// Same sampling skeleton for an arbitrary function of (x,y); used by the
// property suites (scaled kernels, synthetic functions).
SampleGrid function_reduced_grid(const std::function<double(double, double)>& f,
                                 double s_shape, std::size_t n_train,
                                 const GridConfig& config = {});

// Ball kernel in 4 real coordinates on {|z|^2+|w|^2 <= box_cap}, corner
// family along the radius toward (1,0,0,0), shell holdout and radial
// transect.
SampleGrid ball_real4_grid(std::size_t n_train, const GridConfig& config = {});

// Ball kernel in reduced coordinates (s = 1 egg).
SampleGrid ball_reduced_grid(std::size_t n_train, const GridConfig& config = {});

}  // namespace bergman

#endif
