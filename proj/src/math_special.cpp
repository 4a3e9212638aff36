#include "etmrs/math_special.hpp"

#include <cassert>
#include <cmath>

namespace etmrs {
namespace {

constexpr int kMaxIter = 600;
constexpr double kEps = 1.0e-16;
constexpr double kTiny = 1.0e-300;

double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the regularized upper gamma Q(a, x), modified
// Lentz iteration.
double upper_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
    assert(a > 0.0 && x >= 0.0);
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double regularized_upper_gamma(double a, double x) {
    assert(a > 0.0 && x >= 0.0);
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

double gamma_series_cdf(int k, double x) {
    assert(k >= 1);
    if (x <= 0.0) return 0.0;
    // exp(-x) underflows: the true tail is below representable precision.
    if (x > 700.0) return 1.0;
    double term = 1.0;
    double sum = 1.0;
    for (int i = 1; i < k; ++i) {
        term *= x / i;
        sum += term;
    }
    const double p = 1.0 - std::exp(-x) * sum;
    return p < 0.0 ? 0.0 : p;
}

}  // namespace etmrs
