#include "qsf/qresum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qsf/qcore.hpp"

namespace qsf {

namespace {

constexpr int kWindowGrowth = 8;
constexpr int kWindowMax = 200;
constexpr double kTailRel = 1e-13;

} // namespace

Spiral::Spiral(Complex lambda, int level, Base base)
    : lambda_(lambda), level_(level), base_(base) {
    if (lambda_ == Complex{0.0, 0.0}) throw DomainError("Spiral: lambda must be nonzero");
    if (level_ < 1) throw DomainError("Spiral: level must be >= 1");
    if (spiral_distance(lambda_, {1.0, 0.0}, base_, level_) < 1e-10)
        throw SpiralPoleError("Spiral: lambda lies on [1; q^level]");
}

Complex Spiral::point(long long n) const {
    return lambda_ * cpow_int(base_.q(), static_cast<long long>(level_) * n);
}

double Spiral::distance(Complex z, Complex anchor) const {
    return spiral_distance(z, anchor, base_, level_);
}

Complex qlaplace_spiral(const Evaluator& phi, const Spiral& spiral, Complex x,
                        int initial_window) {
    if (x == Complex{0.0, 0.0})
        throw DomainError("qlaplace_spiral: x must be nonzero (theta argument)");
    if (spiral.distance(x, -spiral.lambda()) < 1e-10)
        throw SpiralPoleError("qlaplace_spiral: x lies on the excluded spiral "
                              "[-lambda; q^level]");

    const Base level_base = spiral.base().power_base(spiral.level());
    // one argument reduction serves every spiral point: the term n denominator
    // is theta_{q^s}((q^s)^n lambda/x)
    const detail::ShiftedThetaFrame frame =
        detail::make_shifted_theta_frame(level_base, spiral.lambda() / x);
    auto term = [&](long long n) {
        Complex r = detail::theta_reciprocal_shift(frame, n);
        // a zero reciprocal means the term is below double range; skipping the
        // evaluator keeps overflowing phi tails from polluting the sum
        if (r == Complex{0.0, 0.0}) return Complex{0.0, 0.0};
        return phi(spiral.point(n)) * r;
    };

    Complex sum{0.0, 0.0};
    int w = std::max(1, initial_window);
    for (long long n = -w; n <= w; ++n) sum += term(n);

    int lo = w, hi = w;
    bool lo_done = false, hi_done = false;
    while (!(lo_done && hi_done)) {
        if (!hi_done) {
            Complex chunk{0.0, 0.0};
            for (long long n = hi + 1; n <= hi + kWindowGrowth; ++n) chunk += term(n);
            hi += kWindowGrowth;
            sum += chunk;
            if (std::abs(chunk) <= kTailRel * std::abs(sum)) hi_done = true;
            if (hi >= kWindowMax && !hi_done)
                throw TailError("qlaplace_spiral: positive tail not settled by n = 200");
        }
        if (!lo_done) {
            Complex chunk{0.0, 0.0};
            for (long long n = lo + 1; n <= lo + kWindowGrowth; ++n) chunk += term(-n);
            lo += kWindowGrowth;
            sum += chunk;
            if (std::abs(chunk) <= kTailRel * std::abs(sum)) lo_done = true;
            if (lo >= kWindowMax && !lo_done)
                throw TailError("qlaplace_spiral: negative tail not settled by n = -200");
        }
    }
    return sum;
}

Complex qlaplace_contour(const Evaluator& g, const Base& base, Complex x, Contour contour) {
    if (x == Complex{0.0, 0.0})
        throw DomainError("qlaplace_contour: x must be nonzero");
    if (!(contour.radius > 0.0))
        throw DomainError("qlaplace_contour: radius must be positive");
    int m = std::max(64, contour.points);

    auto evaluate = [&](int points) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < points; ++j) {
            double ang = 2.0 * std::numbers::pi * j / points;
            Complex xi = contour.radius * Complex{std::cos(ang), std::sin(ang)};
            acc += g(xi) * theta(base, x / xi);
        }
        return acc / static_cast<double>(points);
    };

    Complex prev = evaluate(m);
    while (m < (1 << 16)) {
        m *= 2;
        Complex next = evaluate(m);
        if (rel_err(prev, next) < 1e-10) return next;
        prev = next;
    }
    throw QuadratureError("qlaplace_contour: not converged at 2^16 points");
}

Complex residue_laplace_qairy(const Base& base, Complex t, int kmax) {
    if (t == Complex{0.0, 0.0})
        throw DomainError("residue_laplace_qairy: t must be nonzero");
    const Complex q = base.q();
    const Complex cm1 = qpochhammer_infinite({-1.0, 0.0}, base);
    const Complex cq = detail::qq_infinity(base);

    // -Res at tau = +-q^{-2-k} of g(tau) theta(t/tau)/tau:
    //   (-1)^k q^{k(k+1)} theta_q(q^{2+k} (+-t)) / ((-1;q)_inf (-q;q)_k (q;q)_k (q;q)_inf)
    Complex sum{0.0, 0.0};
    Complex mq_poch{1.0, 0.0}; // (-q;q)_k
    Complex q_poch{1.0, 0.0};  // (q;q)_k
    const int limit = kmax >= 0 ? kmax : 256;
    for (int k = 0; k <= limit; ++k) {
        if (k > 0) {
            mq_poch *= (Complex{1.0, 0.0} + cpow_int(q, k));
            q_poch *= (Complex{1.0, 0.0} - cpow_int(q, k));
        }
        Complex common = cpow_int({-1.0, 0.0}, k) *
                         cpow_int(q, static_cast<long long>(k) * (k + 1)) /
                         (cm1 * mq_poch * q_poch * cq);
        Complex pair = common * (theta(base, cpow_int(q, 2 + k) * t) +
                                 theta(base, -cpow_int(q, 2 + k) * t));
        sum += pair;
        if (kmax < 0 && k > 2 && std::abs(pair) < 1e-14 * std::abs(sum)) break;
    }
    return sum;
}

Complex resum_2f0(const Base& base, Complex lambda, Complex x) {
    if (x == Complex{0.0, 0.0})
        throw DomainError("resum_2f0: x = 0 is outside the domain of the spiral Laplace "
                          "transform");
    // spiral points on q^Z would hit the poles of e_q(xi/q)
    if (spiral_distance(lambda, {1.0, 0.0}, base, 1) < 1e-8)
        throw SpiralPoleError("resum_2f0: lambda spiral hits the poles of e_q(xi/q)");
    Spiral spiral(lambda, 1, base);
    Evaluator borel = [base](Complex xi) { return eq_small(base, xi / base.q()); };
    return qlaplace_spiral(borel, spiral, x);
}

Complex resum_rf0(int r, const Base& base, Complex lambda, Complex x) {
    if (r < 2) throw DomainError("resum_rf0: r must be >= 2");
    if (x == Complex{0.0, 0.0}) throw DomainError("resum_rf0: x must be nonzero");
    const int level = r - 1;
    const double eps = (r % 2 == 0) ? -1.0 : 1.0; // (-1)^{r-1}
    // Spiral points must avoid the poles of e_q(eps xi) at eps xi = q^{-m},
    // i.e. lambda off eps * q^Z.
    if (spiral_distance(lambda, {eps, 0.0}, base, 1) < 1e-8)
        throw SpiralPoleError("resum_rf0: lambda spiral hits the poles of the Borel "
                              "transform e_q");
    Spiral spiral(lambda, level, base);
    Evaluator borel = [base, eps](Complex xi) { return eq_small(base, eps * xi); };
    return qlaplace_spiral(borel, spiral, x);
}

} // namespace qsf
