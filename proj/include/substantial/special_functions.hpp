#pragma once

#include <cmath>
#include <stdexcept>

namespace substantial {

// ln Gamma(x) for x > 0.
//
// Lanczos approximation (g = 7, 9 coefficients), with one downward recurrence
// step for x < 0.5 so the series is only ever evaluated in its accurate range.
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5)
        return log_gamma(x + 1.0) - std::log(x);

    static constexpr double kG = 7.0;
    static constexpr double kCoeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    static constexpr double kHalfLogTwoPi = 0.91893853320467274178;

    const double z = x - 1.0;
    double series = kCoeff[0];
    for (int k = 1; k < 9; ++k)
        series += kCoeff[k] / (z + k);
    const double t = z + kG + 0.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(series);
}

struct SignedLogGamma {
    double log_abs;
    double sign;  // +1 or -1
};

// ln|Gamma(x)| with sign, for x > 0 or x in (-1, 0).
//
// The negative strip is reached through Gamma(x) = Gamma(x+1)/x, where
// Gamma(x+1) > 0 and x < 0, so Gamma is negative on all of (-1, 0).
inline SignedLogGamma signed_log_gamma(double x) {
    if (x > 0.0)
        return {log_gamma(x), 1.0};
    if (x > -1.0 && x < 0.0)
        return {log_gamma(x + 1.0) - std::log(-x), -1.0};
    throw std::domain_error("signed_log_gamma: argument must lie in (-1,0) or (0,inf)");
}

// Gamma(a)/Gamma(b) evaluated in log space to avoid overflow of the
// individual factors.  Arguments may lie in (-1, 0); the sign of the
// continued Gamma is carried into the result.  b = 0 sits on a pole of
// Gamma, where the reciprocal vanishes: the ratio is 0 there.
inline double gamma_ratio(double a, double b) {
    if (b == 0.0)
        return 0.0;
    const SignedLogGamma la = signed_log_gamma(a);
    const SignedLogGamma lb = signed_log_gamma(b);
    return la.sign * lb.sign * std::exp(la.log_abs - lb.log_abs);
}

// B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0.
inline double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta: arguments must be positive");
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

}  // namespace substantial
