#ifndef QSF_QRESUM_HPP
#define QSF_QRESUM_HPP

#include "qsf/base.hpp"

namespace qsf {

// Discrete q-spiral [lambda; q^level] = {lambda q^{level k} : k in Z} used as
// the support of the first-kind q-Laplace transform. lambda must stay off
// [1; q^level] so the theta denominators are generically nonzero.
class Spiral {
public:
    Spiral(Complex lambda, int level, Base base);

    Complex lambda() const { return lambda_; }
    int level() const { return level_; }
    const Base& base() const { return base_; }

    Complex point(long long n) const; // lambda * q^{level n}
    // relative distance of z to the spiral through `anchor`
    double distance(Complex z, Complex anchor) const;

private:
    Complex lambda_;
    int level_;
    Base base_;
};

struct Contour {
    double radius = 1.0;
    int points = 256; // >= 64; doubled adaptively up to 2^16
};

// First-kind q-Laplace transform over the spiral:
//   sum_{n in Z} phi(lambda q^{sn}) / theta_{q^s}(lambda q^{sn} / x).
// The bilateral sum starts at |n| <= initial_window and each end grows by 8
// until its contribution drops below 1e-13 relative; TailError if a tail has
// not settled by |n| = 200. SpiralPoleError when x lies on [-lambda; q^s].
Complex qlaplace_spiral(const Evaluator& phi, const Spiral& spiral, Complex x,
                        int initial_window = 24);

// Second-kind q-Laplace transform: (1/2 pi i) oint g(xi) theta_q(x/xi) dxi/xi
// by the equispaced trapezoid rule on |xi| = radius (spectrally accurate for
// periodic analytic integrands), doubling the point count until the value
// moves by less than 1e-10 relative. QuadratureError past 2^16 points.
Complex qlaplace_contour(const Evaluator& g, const Base& base, Complex x, Contour contour);

// Residue route for the q-Airy Borel kernel g(tau) =
// 1/((q^2 tau;q)_inf (-q^2 tau;q)_inf): minus the residue sum
// of g(tau) theta_q(t/tau)/tau over tau = +-q^{-2-k}, using the closed
// per-pole forms. kmax < 0 selects it adaptively (last pair below 1e-14 of
// the sum).
Complex residue_laplace_qairy(const Base& base, Complex t, int kmax = -1);

// Resummation 2f0(0,0;-;q,lambda,-x/q) of the divergent series
// 2phi0(0,0;-;q,-x/q): spiral Laplace of phi(xi) = e_q(xi/q) over
// [lambda; q]. The second formal solution of the Ramanujan equation becomes
// u2~(x, lambda) = theta_q(x) * resum_2f0(lambda, x).
Complex resum_2f0(const Base& base, Complex lambda, Complex x);

// Level r-1 resummation of rphi0(0,...,0;-;q,x): spiral Laplace at level r-1
// of the Borel transform e_q((-1)^{r-1} xi). At r = 2 this coincides with
// resum_2f0 under (lambda, x) -> (-lambda, -x/q).
Complex resum_rf0(int r, const Base& base, Complex lambda, Complex x);

} // namespace qsf

#endif
