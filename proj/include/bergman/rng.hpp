#ifndef BERGMAN_RNG_HPP
#define BERGMAN_RNG_HPP

#include <cstdint>
#include <vector>

namespace bergman {

// Halton low-discrepancy sequence.  `seed` applies a deterministic
// Cranley-Patterson rotation so distinct seeds give distinct point sets
// while staying reproducible.
class Halton {
public:
    explicit Halton(int dim, std::uint64_t seed = 0, std::uint64_t skip = 0);

    // Next point in [0,1)^dim.
    std::vector<double> next();

    // n points as rows.
    std::vector<std::vector<double>> take(std::size_t n);

private:
    int dim_;
    std::uint64_t index_;
    std::vector<double> shift_;
};

// Quasi-uniform unit directions on S^{dim-1}: Box-Muller applied to Halton
// pairs, then normalized.  Deterministic for a fixed seed.
std::vector<std::vector<double>> sphere_directions(int dim, int n,
                                                   std::uint64_t seed = 0);

}  // namespace bergman

#endif
