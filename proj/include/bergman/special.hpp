#ifndef BERGMAN_SPECIAL_HPP
#define BERGMAN_SPECIAL_HPP

#include <cmath>

namespace bergman {

// log Beta(a,b) via lgamma; arguments must be positive.
inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

// Kahan compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace bergman

#endif
