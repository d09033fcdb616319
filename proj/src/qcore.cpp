#include "qsf/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qsf {

namespace {

constexpr double kHugeMagnitude = 1e150;

// nearest integer k with z approximately anchor * q^{level*k}; returns the
// relative distance for the best k in a small window around the estimate.
double spiral_distance_impl(Complex z, Complex anchor, const Base& base, int level) {
    if (z == Complex{0.0, 0.0} || anchor == Complex{0.0, 0.0})
        return std::numeric_limits<double>::infinity();
    Complex step = cpow_int(base.q(), level);
    double la = std::log(std::abs(z / anchor)) / std::log(std::abs(step));
    long long k0 = std::llround(la);
    double best = std::numeric_limits<double>::infinity();
    for (long long k = k0 - 2; k <= k0 + 2; ++k) {
        Complex p = anchor * cpow_int(step, k);
        double d = std::abs(z - p) / std::max(std::abs(z), std::abs(p));
        best = std::min(best, d);
    }
    return best;
}

} // namespace

double spiral_distance(Complex z, Complex anchor, const Base& base, int level) {
    return spiral_distance_impl(z, anchor, base, level);
}

Complex qpochhammer_finite(Complex a, const Base& base, int n) {
    if (n < 0) throw DomainError("qpochhammer_finite: n must be >= 0");
    Complex p{1.0, 0.0};
    Complex f = a;
    for (int k = 0; k < n; ++k) {
        p *= (Complex{1.0, 0.0} - f);
        f *= base.q();
    }
    return p;
}

Complex qpochhammer_infinite(Complex a, const Base& base, const EvalConfig& cfg) {
    Complex p{1.0, 0.0};
    Complex f = a;
    int quiet = 0;
    double log_excess = 0.0; // log10 magnitude peeled off to avoid overflow
    for (int k = 0; k < cfg.max_terms; ++k) {
        Complex factor = Complex{1.0, 0.0} - f;
        // a within tolerance of the zero set {q^{-m}}: the product is 0
        if (std::abs(factor) < cfg.tol) return {0.0, 0.0};
        p *= factor;
        f *= base.q();
        if (std::abs(f) < cfg.tol) {
            if (++quiet >= cfg.tail_window) {
                if (log_excess == 0.0) return p;
                double total = log_excess + std::log10(std::abs(p));
                if (total > 300.0)
                    return Complex{std::numeric_limits<double>::infinity(), 0.0};
                return p * std::pow(10.0, log_excess);
            }
        } else {
            quiet = 0;
        }
        double ap = std::abs(p);
        if (ap > kHugeMagnitude) {
            log_excess += std::log10(ap);
            p /= ap;
        }
    }
    throw NonConvergenceError("qpochhammer_infinite: tail criterion not met within max_terms");
}

namespace {

struct ThetaReduction {
    long long k = 0; // x = q^k * u
    Complex u;       // |q|^{1/2} <= |u| < |q|^{-1/2}
};

ThetaReduction reduce_theta_argument(const Base& base, Complex x) {
    ThetaReduction r;
    double t = std::log(std::abs(x)) / base.log_abs_q();
    r.k = std::llround(t);
    r.u = x * cpow_int(base.q(), -r.k);
    double lo = std::sqrt(base.abs_q());
    double hi = 1.0 / lo;
    while (std::abs(r.u) >= hi) { r.u *= base.q(); r.k -= 1; }
    while (std::abs(r.u) < lo) { r.u /= base.q(); r.k += 1; }
    return r;
}

Complex theta_product_fundamental(const Base& base, Complex u, const EvalConfig& cfg) {
    return qpochhammer_infinite(base.q(), base, cfg) *
           qpochhammer_infinite(-u, base, cfg) *
           qpochhammer_infinite(-base.q() / u, base, cfg);
}

Complex theta_bilateral_fundamental(const Base& base, Complex u, const EvalConfig& cfg) {
    // sum_{n in Z} q^{n(n-1)/2} u^n at a reduced argument; both tails decay
    // like |q|^{n^2/2}.
    Complex sum{1.0, 0.0};
    Complex qn_pos{1.0, 0.0};  // q^{n(n-1)/2} for n >= 1, updated by *q^{n-1}
    Complex up{1.0, 0.0};
    Complex qn_neg{1.0, 0.0};  // q^{n(n+1)/2} for n <= -1 via positive m = -n
    Complex um{1.0, 0.0};
    Complex qpow{1.0, 0.0};
    for (int n = 1; n < cfg.max_terms; ++n) {
        // positive side: exponent n(n-1)/2 gains (n-1) each step
        qn_pos *= qpow;            // q^{(n-1)} accumulated lazily below
        up *= u;
        Complex tp = qn_pos * up;
        // negative side: n -> -n term is q^{n(n+1)/2} u^{-n}
        qn_neg *= qpow * base.q(); // q^{n}
        um /= u;
        Complex tm = qn_neg * um;
        sum += tp + tm;
        qpow *= base.q();
        double scale = std::max(std::abs(sum), 1.0); // |sum| -> 0 at theta zeros
        if (std::abs(tp) < cfg.tol * scale && std::abs(tm) < cfg.tol * scale && n > 4)
            return sum;
    }
    throw NonConvergenceError("theta: bilateral sum did not converge");
}

} // namespace

Complex theta(const Base& base, Complex x, const EvalConfig& cfg) {
    if (x == Complex{0.0, 0.0}) throw DomainError("theta: x must be nonzero");
    ThetaReduction r = reduce_theta_argument(base, x);
    Complex prod = theta_product_fundamental(base, r.u, cfg);
    Complex bila = theta_bilateral_fundamental(base, r.u, cfg);
    // Agreement is expected near 1e-12 away from the zeros; the deviation is
    // measured against the working scale so that near-zero values (where both
    // routes lose relative accuracy harmlessly) do not trip the guard.
    double dev = std::abs(prod - bila) / std::max({std::abs(prod), std::abs(bila), 1.0});
    if (dev > 1e-8)
        throw ConsistencyError("theta: product and bilateral sum disagree, rel err " +
                               std::to_string(dev));
    Complex scale = cpow_int(base.q(), -r.k * (r.k - 1) / 2) * cpow_int(r.u, -r.k);
    return scale * prod;
}

Complex theta_reciprocal(const Base& base, Complex x, const EvalConfig& cfg) {
    if (x == Complex{0.0, 0.0}) throw DomainError("theta_reciprocal: x must be nonzero");
    ThetaReduction r = reduce_theta_argument(base, x);
    Complex prod = theta_product_fundamental(base, r.u, cfg);
    // the q factor underflows first at extreme arguments; then the u power is
    // never formed, so the tail degrades to an exact 0 without overflow
    Complex qpart = cpow_int(base.q(), r.k * (r.k - 1) / 2);
    if (std::abs(qpart) == 0.0) return {0.0, 0.0};
    return qpart * cpow_int(r.u, r.k) / prod;
}

namespace detail {

ShiftedThetaFrame make_shifted_theta_frame(const Base& base, Complex z0,
                                           const EvalConfig& cfg) {
    if (z0 == Complex{0.0, 0.0})
        throw DomainError("shifted theta frame: base point must be nonzero");
    ThetaReduction r = reduce_theta_argument(base, z0);
    ShiftedThetaFrame f;
    f.q = base.q();
    f.k0 = r.k;
    f.u0 = r.u;
    f.theta_u0 = theta_product_fundamental(base, r.u, cfg);
    return f;
}

Complex theta_reciprocal_shift(const ShiftedThetaFrame& frame, long long n) {
    const long long k = frame.k0 + n;
    Complex qpart = cpow_int(frame.q, k * (k - 1) / 2);
    if (std::abs(qpart) == 0.0) return {0.0, 0.0};
    return qpart * cpow_int(frame.u0, k) / frame.theta_u0;
}

} // namespace detail

HyperSpec::HyperSpec(std::vector<Complex> upper, std::vector<Complex> lower, Base base)
    : upper_(std::move(upper)), lower_(std::move(lower)), base_(base) {
    for (const Complex& b : lower_) {
        // (b;q)_n vanishes for some n iff b = q^{-m}, m >= 0
        if (std::abs(b) < 1.0 - 1e-12) continue;
        double m = -std::log(std::abs(b)) / base_.log_abs_q();
        long long m0 = std::llround(m);
        for (long long mm = std::max(0ll, m0 - 1); mm <= m0 + 1; ++mm) {
            Complex p = cpow_int(base_.q(), -mm);
            if (std::abs(b - p) <= 1e-12 * std::abs(p)) {
                std::ostringstream os;
                os << "HyperSpec: lower parameter (" << b.real() << "," << b.imag()
                   << ") coincides with q^{-" << mm << "}";
                throw PoleError(os.str());
            }
        }
    }
}

Complex phi(const HyperSpec& spec, Complex x, const EvalConfig& cfg) {
    const int e = 1 + static_cast<int>(spec.lower().size()) -
                  static_cast<int>(spec.upper().size());
    const int conv = spec.convergence_exponent();
    if (conv > 1 && x != Complex{0.0, 0.0})
        throw DivergentSeriesError("phi: series with r-s > 1 has radius 0; "
                                   "use the resummation pipeline (qresum)");
    if (conv == 1 && std::abs(x) >= 1.0)
        throw ConvergenceRadiusError("phi: series with r-s = 1 requires |x| < 1");

    const Base& b = spec.base();
    Complex sum{0.0, 0.0};
    Complex term{1.0, 0.0};   // full term at current n
    Complex qn{1.0, 0.0};     // q^{n-1} while stepping n-1 -> n
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        if (n > 0) {
            Complex ratio{1.0, 0.0};
            for (const Complex& a : spec.upper()) ratio *= (Complex{1.0, 0.0} - a * qn);
            for (const Complex& lo : spec.lower()) ratio /= (Complex{1.0, 0.0} - lo * qn);
            ratio /= (Complex{1.0, 0.0} - qn * b.q());
            // {(-1)^n q^{n(n-1)/2}}^e gains a factor (-q^{n-1})^e per step
            ratio *= cpow_int(-qn, e);
            ratio *= x;
            term *= ratio;
            qn *= b.q();
        }
        sum += term;
        double scale = std::max(1.0, std::abs(sum));
        if (std::abs(term) < cfg.tol * scale) {
            if (++quiet >= cfg.tail_window) return sum;
        } else {
            quiet = 0;
        }
    }
    throw NonConvergenceError("phi: series did not reach the tail criterion");
}

Complex eq_small(const Base& base, Complex x, const EvalConfig& cfg) {
    if (x != Complex{0.0, 0.0} && std::abs(x) > 1.0 - 1e-9) {
        double m = -std::log(std::abs(x)) / base.log_abs_q();
        long long m0 = std::llround(m);
        for (long long mm = std::max(0ll, m0 - 1); mm <= m0 + 1; ++mm) {
            Complex p = cpow_int(base.q(), -mm);
            if (std::abs(x - p) <= 1e-12 * std::abs(p)) {
                std::ostringstream os;
                os << "eq_small: x within 1e-12 of the pole q^{-" << mm << "}";
                throw PoleError(os.str());
            }
        }
    }
    Complex denom = qpochhammer_infinite(x, base, cfg);
    if (std::isinf(std::abs(denom))) return {0.0, 0.0}; // value below double range
    return Complex{1.0, 0.0} / denom;
}

Complex Eq_big(const Base& base, Complex x, const EvalConfig& cfg) {
    return qpochhammer_infinite(-x, base, cfg);
}

Complex ramanujan_Aq(const Base& base, Complex x, const EvalConfig& cfg) {
    // term ratio t_{n+1}/t_n = q^{2n+1} (-x) / (1 - q^{n+1})
    Complex sum{0.0, 0.0};
    Complex term{1.0, 0.0};
    Complex q2n1 = base.q();        // q^{2n+1}
    Complex qn1 = base.q();         // q^{n+1}
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        sum += term;
        double scale = std::max(1.0, std::abs(sum));
        if (std::abs(term) < cfg.tol * scale) {
            if (++quiet >= cfg.tail_window) return sum;
        } else {
            quiet = 0;
        }
        term *= q2n1 * (-x) / (Complex{1.0, 0.0} - qn1);
        q2n1 *= base.q() * base.q();
        qn1 *= base.q();
    }
    throw NonConvergenceError("ramanujan_Aq: series did not converge");
}

Complex qairy_Aiq(const Base& base, Complex x, const EvalConfig& cfg) {
    // Ai_q(x) = sum_n (-1)^n q^{n(n-1)/2} (-x)^n / ((-q;q)_n (q;q)_n);
    // term ratio t_{n+1}/t_n = q^n x / (1 - q^{2n+2})
    Complex sum{0.0, 0.0};
    Complex term{1.0, 0.0};
    Complex qn{1.0, 0.0};           // q^n
    Complex q2n2 = base.q() * base.q(); // q^{2n+2}
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        sum += term;
        double scale = std::max(1.0, std::abs(sum));
        if (std::abs(term) < cfg.tol * scale) {
            if (++quiet >= cfg.tail_window) return sum;
        } else {
            quiet = 0;
        }
        term *= qn * x / (Complex{1.0, 0.0} - q2n2);
        qn *= base.q();
        q2n2 *= base.q() * base.q();
    }
    throw NonConvergenceError("qairy_Aiq: series did not converge");
}

} // namespace qsf
