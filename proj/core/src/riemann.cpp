#include "fks/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fks {

namespace {

struct WaveFn {
  // f_K(p) and its derivative for one side of the problem: the velocity jump
  // carried by the acoustic wave when the star pressure is p.
  double rho, p, c, A, B;

  WaveFn(const EulerState& s, double g)
      : rho(s.rho),
        p(s.p),
        c(std::sqrt(g * s.p / s.rho)),
        A(2.0 / ((g + 1.0) * s.rho)),
        B((g - 1.0) / (g + 1.0) * s.p) {}

  double value(double ps, double g) const {
    if (ps > p)  // shock branch
      return (ps - p) * std::sqrt(A / (ps + B));
    return 2.0 * c / (g - 1.0) *
           (std::pow(ps / p, (g - 1.0) / (2.0 * g)) - 1.0);
  }

  double slope(double ps, double g) const {
    if (ps > p) {
      const double root = std::sqrt(A / (ps + B));
      return root * (1.0 - 0.5 * (ps - p) / (ps + B));
    }
    return 1.0 / (rho * c) * std::pow(ps / p, -(g + 1.0) / (2.0 * g));
  }
};

void checkState(const EulerState& s, const char* side) {
  if (!(s.rho > 0.0) || !(s.p > 0.0) || !std::isfinite(s.u))
    throw std::invalid_argument(std::string("riemann: non-physical ") + side +
                                " state");
}

}  // namespace

RiemannStar riemannStar(const EulerState& left, const EulerState& right,
                        double gamma) {
  checkState(left, "left");
  checkState(right, "right");
  if (!(gamma > 1.0))
    throw std::invalid_argument("riemann: gamma must exceed 1");

  const WaveFn fl(left, gamma), fr(right, gamma);
  const double du = right.u - left.u;
  if (2.0 * (fl.c + fr.c) / (gamma - 1.0) <= du)
    throw std::runtime_error("vacuum: Riemann data open a vacuum region");

  const auto phi = [&](double p) {
    return fl.value(p, gamma) + fr.value(p, gamma) + du;
  };

  // phi is monotone increasing; bracket the root, then take guarded Newton
  // steps that fall back to bisection whenever they leave the bracket.
  double lo = 1e-300;
  double hi = std::max(left.p, right.p);
  while (phi(hi) < 0.0) hi *= 8.0;

  double ps = std::clamp(0.5 * (left.p + right.p) -
                             0.125 * du * (left.rho + right.rho) * (fl.c + fr.c),
                         1e-300, hi);
  for (int it = 0; it < 200; ++it) {
    const double v = phi(ps);
    if (v > 0.0)
      hi = ps;
    else
      lo = ps;
    const double dv = fl.slope(ps, gamma) + fr.slope(ps, gamma);
    double next = ps - v / dv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - ps);
    ps = next;
    if (change <= 1e-15 * ps) break;
  }

  RiemannStar st;
  st.p = ps;
  st.u = 0.5 * (left.u + right.u) +
         0.5 * (fr.value(ps, gamma) - fl.value(ps, gamma));
  return st;
}

RiemannSolution::RiemannSolution(const EulerState& left,
                                 const EulerState& right, double gamma)
    : left_(left), right_(right), g_(gamma) {
  star_ = riemannStar(left, right, gamma);
  cl_ = std::sqrt(gamma * left.p / left.rho);
  cr_ = std::sqrt(gamma * right.p / right.rho);
}

EulerState RiemannSolution::operator()(double xi) const {
  const double g = g_;
  const double gm1 = g - 1.0, gp1 = g + 1.0;

  if (xi <= star_.u) {
    const double pr = star_.p / left_.p;
    if (star_.p > left_.p) {
      const double sl =
          left_.u - cl_ * std::sqrt(gp1 / (2.0 * g) * pr + gm1 / (2.0 * g));
      if (xi <= sl) return left_;
      const double b = gm1 / gp1;
      return {left_.rho * (pr + b) / (b * pr + 1.0), star_.u, star_.p};
    }
    const double head = left_.u - cl_;
    if (xi <= head) return left_;
    const double cs = cl_ * std::pow(pr, gm1 / (2.0 * g));
    if (xi >= star_.u - cs)
      return {left_.rho * std::pow(pr, 1.0 / g), star_.u, star_.p};
    const double fac = 2.0 / gp1 + gm1 / (gp1 * cl_) * (left_.u - xi);
    return {left_.rho * std::pow(fac, 2.0 / gm1),
            2.0 / gp1 * (cl_ + 0.5 * gm1 * left_.u + xi),
            left_.p * std::pow(fac, 2.0 * g / gm1)};
  }

  const double pr = star_.p / right_.p;
  if (star_.p > right_.p) {
    const double sr =
        right_.u + cr_ * std::sqrt(gp1 / (2.0 * g) * pr + gm1 / (2.0 * g));
    if (xi >= sr) return right_;
    const double b = gm1 / gp1;
    return {right_.rho * (pr + b) / (b * pr + 1.0), star_.u, star_.p};
  }
  const double head = right_.u + cr_;
  if (xi >= head) return right_;
  const double cs = cr_ * std::pow(pr, gm1 / (2.0 * g));
  if (xi <= star_.u + cs)
    return {right_.rho * std::pow(pr, 1.0 / g), star_.u, star_.p};
  const double fac = 2.0 / gp1 - gm1 / (gp1 * cr_) * (right_.u - xi);
  return {right_.rho * std::pow(fac, 2.0 / gm1),
          2.0 / gp1 * (-cr_ + 0.5 * gm1 * right_.u + xi),
          right_.p * std::pow(fac, 2.0 * g / gm1)};
}

}  // namespace fks
