#ifndef QSF_QCORE_HPP
#define QSF_QCORE_HPP

#include <vector>

#include "qsf/base.hpp"

namespace qsf {

// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), empty product for n = 0.
Complex qpochhammer_finite(Complex a, const Base& base, int n);

// (a;q)_infty, truncated once |a q^k| stays below cfg.tol for cfg.tail_window
// consecutive k. Magnitudes beyond ~1e150 switch to a log-magnitude tally so
// the value saturates to inf (and its reciprocal to 0) without NaN.
Complex qpochhammer_infinite(Complex a, const Base& base, const EvalConfig& cfg = {});

// Jacobi theta  theta_q(x) = sum_{n in Z} q^{n(n-1)/2} x^n = (q, -x, -q/x; q)_inf.
// Evaluated from the triple product at a reduced argument u = x q^{-k} in the
// annulus |q|^{1/2} <= |u| < |q|^{-1/2}, rescaled through the functional
// equation. The bilateral sum at u is kept as a cross-check; disagreement
// beyond 1e-8 relative raises ConsistencyError.
Complex theta(const Base& base, Complex x, const EvalConfig& cfg = {});

// 1 / theta_q(x) computed so that extreme arguments underflow to 0 instead of
// overflowing. This is what the spiral Laplace sums use for their tails.
Complex theta_reciprocal(const Base& base, Complex x, const EvalConfig& cfg = {});

// Parameters of a basic hypergeometric series rphi_s.
class HyperSpec {
public:
    HyperSpec(std::vector<Complex> upper, std::vector<Complex> lower, Base base);

    const std::vector<Complex>& upper() const { return upper_; }
    const std::vector<Complex>& lower() const { return lower_; }
    const Base& base() const { return base_; }

    // r - s: < 1 entire, = 1 radius 1, > 1 divergent (radius 0)
    int convergence_exponent() const {
        return static_cast<int>(upper_.size()) - static_cast<int>(lower_.size());
    }

private:
    std::vector<Complex> upper_;
    std::vector<Complex> lower_;
    Base base_;
};

// rphi_s(a1..ar; b1..bs; q, x)
//   = sum_n [(a1..ar;q)_n / ((b1..bs;q)_n (q;q)_n)] {(-1)^n q^{n(n-1)/2}}^{1+s-r} x^n.
// Throws DivergentSeriesError when r-s > 1 and x != 0, ConvergenceRadiusError
// when r-s = 1 and |x| >= 1.
Complex phi(const HyperSpec& spec, Complex x, const EvalConfig& cfg = {});

// e_q(x) = 1/(x;q)_inf, the global meromorphic continuation of
// 1phi0(0;-;q,x). Poles at x = q^{-m}; proximity below 1e-12 relative raises
// PoleError. The resummation pipelines rely on this continuation.
Complex eq_small(const Base& base, Complex x, const EvalConfig& cfg = {});

// E_q(x) = (-x;q)_inf, entire.
Complex Eq_big(const Base& base, Complex x, const EvalConfig& cfg = {});

// Ramanujan function A_q(x) = sum_n q^{n^2} (-x)^n / (q;q)_n, entire,
// solves q x u(q^2 x) - u(q x) + u(x) = 0.
Complex ramanujan_Aq(const Base& base, Complex x, const EvalConfig& cfg = {});

// q-Airy function Ai_q(x) = 1phi1(0;-q;q,-x), entire,
// solves u(q^2 x) + x u(q x) - u(x) = 0.
Complex qairy_Aiq(const Base& base, Complex x, const EvalConfig& cfg = {});

namespace detail {
// (q;q)_inf for the base itself; shorthand used all over the identity code.
inline Complex qq_infinity(const Base& base, const EvalConfig& cfg = {}) {
    return qpochhammer_infinite(base.q(), base, cfg);
}

// Precomputed frame for evaluating 1/theta_q(q^n z0) across many integer
// shifts n with one argument reduction: z0 = q^{k0} u0 with u0 in the
// fundamental annulus. The spiral Laplace sums use this so their tails
// underflow to zero instead of overflowing.
struct ShiftedThetaFrame {
    Complex q;
    long long k0 = 0;
    Complex u0;
    Complex theta_u0;
};

ShiftedThetaFrame make_shifted_theta_frame(const Base& base, Complex z0,
                                           const EvalConfig& cfg = {});
Complex theta_reciprocal_shift(const ShiftedThetaFrame& frame, long long n);
} // namespace detail

} // namespace qsf

#endif
