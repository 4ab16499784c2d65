#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace elrod {

// Thrown when an argument is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Thrown when an iteration fails to converge or a solve has no root in range.
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace numeric {

inline constexpr double kPi = 3.14159265358979323846;

// Adaptive Simpson quadrature. Integrands here are smooth, so plain
// recursive bisection with the Richardson error estimate is adequate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

// Bisection on a bracketing interval [a,b] with f(a)*f(b) <= 0, refined by
// secant steps when they stay inside the bracket. Returns x with
// |f(x)| <= ftol or interval width below xtol.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double ftol = 1e-13, double xtol = 1e-15);

}  // namespace numeric
}  // namespace elrod
