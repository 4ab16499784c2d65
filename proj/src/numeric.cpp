#include "elrod/numeric.hpp"

#include <cmath>

namespace elrod::numeric {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double fm, double whole, double tol,
                int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, flm);
  double right = simpson(f, m, fm, b, fb, frm);
  double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return adaptive(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(f, a, fa, b, fb, fm);
  return adaptive(f, a, fa, b, fb, fm, whole, tol, 48);
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double ftol, double xtol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) {
    throw SolveError("find_root: interval does not bracket a root");
  }
  // Illinois-damped regula falsi: the retained endpoint's value is halved
  // when the same side wins twice, which prevents one-sided stagnation.
  double x = a, fx = fa;
  int side = 0;
  for (int it = 0; it < 500; ++it) {
    double xs = (fb != fa) ? (a * fb - b * fa) / (fb - fa) : 0.5 * (a + b);
    x = (xs > std::min(a, b) && xs < std::max(a, b)) ? xs : 0.5 * (a + b);
    fx = f(x);
    if (std::abs(fx) <= ftol || std::abs(b - a) <= xtol) return x;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  return x;
}

}  // namespace elrod::numeric
