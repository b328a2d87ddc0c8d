#pragma once

#include <stdexcept>

namespace fraccount {

// A scalar special-function result together with an absolute error bound
// (series tail + floating-point summation floor, or the quadrature bound
// of the contour evaluator) and the number of terms / nodes consumed.
struct SpecialValue {
    double value = 0.0;
    double err_bound = 0.0;
    int terms_used = 0;
};

// Parameter bundle for the Mittag-Leffler family.  alpha, beta, gamma must
// be strictly positive; gamma defaults to 1 (two-parameter function).
struct MlParams {
    double alpha;
    double beta;
    double gamma = 1.0;
    double z = 0.0;

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
            throw std::domain_error("MlParams: alpha, beta, gamma must be > 0");
    }
};

// Thrown when an argument exceeds the evaluation cap or the requested
// tolerance cannot be met in double precision.
class argument_range_error : public std::range_error {
public:
    using std::range_error::range_error;
};

inline constexpr double kMlArgumentCap = 50.0;
inline constexpr double kWrightArgumentCap = 50.0;
inline constexpr double kDefaultTol = 1e-12;

// Gamma function, Lanczos approximation (g = 7, 9 coefficients) with
// reflection for x < 0.5.  Relative error below 1e-13 on [0.1, 50].
double gamma_fn(double x);

// log |Gamma(x)| for x > 0.
double log_gamma_fn(double x);

// 1/Gamma(x), entire; returns 0 at nonpositive integers.
double reciprocal_gamma(double x);

// Pochhammer symbol (g)_r by the recurrence (g)_0 = 1, (g)_{r+1} = (g)_r (g+r).
double pochhammer(double g, int r);

// Two-parameter Mittag-Leffler E_{alpha,beta}(z).
SpecialValue mittag_leffler(double alpha, double beta, double z,
                            double tol = kDefaultTol);

// Generalized (Prabhakar) Mittag-Leffler E^gamma_{alpha,beta}(z).
SpecialValue mittag_leffler_gen(double alpha, double beta, double gamma,
                                double z, double tol = kDefaultTol);

// Wright function W_{alpha,beta}(x), alpha > -1, beta > 0.
SpecialValue wright(double alpha, double beta, double x,
                    double tol = kDefaultTol);

// x^pow * E^gamma_{alpha,beta}(-x) for x >= 0, alpha in (0,1].  This is the
// form every probability formula of the package reduces to; it stays fully
// accurate where the plain function value underflows against the power
// prefactor (waiting-time CDFs of high order, pmf terms).
SpecialValue prabhakar_scaled(double alpha, double beta, double gamma,
                              double x, double pow, double tol = kDefaultTol);

// Wright M-density form W_{-nu, 1-nu}(-u) for u >= 0, nu in (0,1).
SpecialValue wright_m(double nu, double u, double tol = kDefaultTol);

}  // namespace fraccount
