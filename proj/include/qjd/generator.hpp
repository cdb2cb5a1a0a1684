#pragma once

#include <functional>
#include <string>

namespace qjd {

/// Scalar generator f with analytic first and second derivatives on (0,inf)
/// and the continuous extension f(0). Evaluators must be re-entrant.
struct GeneratorFunction {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> f1;
    std::function<double(double)> f2;
    double f_at_zero = 0.0;
    /// True when f is defined only on the open half-axis for derivatives
    /// (e.g. x log x); apply_function still admits a zero eigenvalue via
    /// f_at_zero.
    bool singular_at_zero = false;
};

/// First divided difference g^[1][x,y]: (g(x)-g(y))/(x-y) when the gap is
/// resolvable, g'((x+y)/2) when |x-y| <= tau * (1 + max(|x|,|y|)).
double divided_difference(const std::function<double(double)>& g,
                          const std::function<double(double)>& g1, double x, double y,
                          double tau = 1e-7);

/// Divided difference of f itself (kernel of Df[A]).
double divided_difference_f(const GeneratorFunction& g, double x, double y);

/// Divided difference of f' (kernel of Df'[A]); needs f''.
double divided_difference_f1(const GeneratorFunction& g, double x, double y);

}  // namespace qjd
