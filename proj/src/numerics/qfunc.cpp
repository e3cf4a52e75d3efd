#include "advt/numerics/qfunc.hpp"

#include <cmath>

namespace advt {

namespace {

// Rational Chebyshev coefficients after W. J. Cody, "Rational Chebyshev
// approximation for the error function", Math. Comp. 23 (1969), 631-637.
// Three-interval scheme: |x| <= 0.46875 evaluates erf directly, the other
// two intervals evaluate erfc with the exp(-x^2) factor split so the
// argument reduction stays accurate.
constexpr double kA[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                          3.77485237685302021e+02, 3.20937758913846947e+03,
                          1.85777706184603153e-01};
constexpr double kB[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                          1.28261652607737228e+03, 2.84423683343917062e+03};
constexpr double kC[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                          6.61191906371416295e+01, 2.98635138197400131e+02,
                          8.81952221241769090e+02, 1.71204761263407058e+03,
                          2.05107837782607147e+03, 1.23033935479799725e+03,
                          2.15311535474403846e-08};
constexpr double kD[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                          5.37181101862009858e+02, 1.62138957456669019e+03,
                          3.29079923573345963e+03, 4.36261909014324716e+03,
                          3.43936767414372164e+03, 1.23033935480374942e+03};
constexpr double kP[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                          1.25781726111229246e-01, 1.60837851487422766e-02,
                          6.58749161529837803e-04, 1.63153871373020978e-02};
constexpr double kQ[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                          5.27905102951428412e-01, 6.05183413124413191e-02,
                          2.33520497626869185e-03};

constexpr double kSqrtPiInv = 5.6418958354775628695e-01;  // 1/sqrt(pi)
constexpr double kThresh = 0.46875;
constexpr double kXBig = 26.543;    // erfc underflows past this
constexpr double kXSmall = 1.11e-16;

// exp(-x*x) with the argument split into a 1/16-grid part and remainder,
// which keeps the product exp(-hi^2)*exp(-lo*(hi+x)) accurate for large x.
inline double exp_neg_sq(double x) noexcept {
    const double hi = std::trunc(x * 16.0) / 16.0;
    const double del = (x - hi) * (x + hi);
    return std::exp(-hi * hi) * std::exp(-del);
}

}  // namespace

double erfc_cody(double x) noexcept {
    const double y = std::fabs(x);
    double result;
    if (y <= kThresh) {
        const double ysq = y > kXSmall ? y * y : 0.0;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        return 1.0 - x * (num + kA[3]) / (den + kB[3]);
    }
    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        result = exp_neg_sq(y) * (num + kC[7]) / (den + kD[7]);
    } else if (y < kXBig) {
        const double ysq = 1.0 / (y * y);
        double num = kP[5] * ysq;
        double den = ysq;
        for (int i = 0; i < 4; ++i) {
            num = (num + kP[i]) * ysq;
            den = (den + kQ[i]) * ysq;
        }
        double r = ysq * (num + kP[4]) / (den + kQ[4]);
        result = exp_neg_sq(y) * (kSqrtPiInv - r) / y;
    } else {
        result = 0.0;
    }
    return x < 0.0 ? 2.0 - result : result;
}

double q_function(double x) noexcept {
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    return 0.5 * erfc_cody(x * kInvSqrt2);
}

}  // namespace advt
