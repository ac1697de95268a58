#include "coatplan/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace coatplan::quad {

namespace {

struct Panel {
  double a, b, fa, fm, fb, simpson;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, const Panel& p,
               double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double err = left + right - p.simpson;
  if (depth <= 0 || std::fabs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  const Panel pl{p.a, m, p.fa, flm, p.fm, left};
  const Panel pr{m, p.b, p.fm, frm, p.fb, right};
  return recurse(f, pl, tol / 2.0, depth - 1) +
         recurse(f, pr, tol / 2.0, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_depth) {
  if (!(lo <= hi)) throw std::invalid_argument("integrate: requires lo <= hi");
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: requires abs_tol > 0");
  }
  if (lo == hi) return 0.0;
  const double fa = f(lo);
  const double fm = f(0.5 * (lo + hi));
  const double fb = f(hi);
  const Panel root{lo, hi, fa, fm, fb, simpson(lo, hi, fa, fm, fb)};
  return recurse(f, root, abs_tol, max_depth);
}

}  // namespace coatplan::quad
