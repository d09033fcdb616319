#include "qsf/qformal.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "qsf/qcore.hpp"

namespace qsf {

FormalPowerSeries::FormalPowerSeries(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("FormalPowerSeries: empty coefficient list");
}

FormalPowerSeries FormalPowerSeries::zero(int order) {
    if (order < 0) throw DomainError("FormalPowerSeries: negative order");
    return FormalPowerSeries(std::vector<Complex>(static_cast<size_t>(order) + 1));
}

FormalPowerSeries FormalPowerSeries::add(const FormalPowerSeries& other) const {
    size_t n = std::min(coeffs_.size(), other.coeffs_.size());
    std::vector<Complex> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = coeffs_[i] + other.coeffs_[i];
    return FormalPowerSeries(std::move(out));
}

FormalPowerSeries FormalPowerSeries::scale(Complex c) const {
    std::vector<Complex> out = coeffs_;
    for (Complex& a : out) a *= c;
    return FormalPowerSeries(std::move(out));
}

FormalPowerSeries FormalPowerSeries::multiply(const FormalPowerSeries& other) const {
    std::vector<Complex> out(coeffs_.size());
    for (size_t n = 0; n < out.size(); ++n) {
        Complex s{0.0, 0.0};
        for (size_t k = 0; k <= n && k < coeffs_.size(); ++k) {
            if (n - k < other.coeffs_.size()) s += coeffs_[k] * other.coeffs_[n - k];
        }
        out[n] = s;
    }
    return FormalPowerSeries(std::move(out));
}

Complex FormalPowerSeries::evaluate(Complex x) const {
    Complex acc{0.0, 0.0};
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

QDiffOperator::QDiffOperator(std::vector<QDiffTerm> terms) : terms_(std::move(terms)) {
    for (const QDiffTerm& t : terms_) {
        if (t.x_power < 0) throw DomainError("QDiffOperator: negative x power");
        if (t.sigma_power < 0) throw DomainError("QDiffOperator: negative sigma power");
    }
}

QDiffOperator QDiffOperator::ramanujan(const Base& base) {
    return QDiffOperator({{1, 2, base.q()}, {0, 1, {-1.0, 0.0}}, {0, 0, {1.0, 0.0}}});
}

QDiffOperator QDiffOperator::qairy() {
    return QDiffOperator({{0, 2, {1.0, 0.0}}, {1, 1, {1.0, 0.0}}, {0, 0, {-1.0, 0.0}}});
}

QDiffOperator QDiffOperator::covering_form(Complex K, int x_power) {
    return QDiffOperator({{x_power, 2, K}, {0, 1, {-1.0, 0.0}}, {0, 0, {1.0, 0.0}}});
}

FormalPowerSeries apply_operator(const QDiffOperator& op, const FormalPowerSeries& f,
                                 const Base& base) {
    const int N = f.order();
    FormalPowerSeries out = FormalPowerSeries::zero(N);
    std::vector<Complex> acc(static_cast<size_t>(N) + 1);
    for (const QDiffTerm& t : op.terms()) {
        for (int n = t.x_power; n <= N; ++n) {
            int src = n - t.x_power;
            acc[static_cast<size_t>(n)] +=
                t.coeff * f.coeff(src) *
                cpow_int(base.q(), static_cast<long long>(t.sigma_power) * src);
        }
    }
    return FormalPowerSeries(std::move(acc));
}

namespace {

FormalPowerSeries borel_scale(const FormalPowerSeries& f, const Base& base, int level,
                              int sign) {
    if (level < 1) throw DomainError("qborel: level must be >= 1");
    std::vector<Complex> out(f.coeffs());
    for (int n = 0; n <= f.order(); ++n) {
        long long e = static_cast<long long>(level) * n * (n - 1) / 2;
        out[static_cast<size_t>(n)] *= cpow_int(base.q(), sign * e);
    }
    return FormalPowerSeries(std::move(out));
}

} // namespace

FormalPowerSeries qborel_plus(const FormalPowerSeries& f, const Base& base, int level) {
    return borel_scale(f, base, level, +1);
}

FormalPowerSeries qborel_plus_inverse(const FormalPowerSeries& f, const Base& base,
                                      int level) {
    return borel_scale(f, base, level, -1);
}

FormalPowerSeries qborel_minus(const FormalPowerSeries& f, const Base& base) {
    return borel_scale(f, base, 1, -1);
}

VerificationReport check_operational_identity(int m, int l, const FormalPowerSeries& f,
                                              const Base& base) {
    if (m < 0 || l < 0) throw DomainError("check_operational_identity: m, l must be >= 0");
    if (l < m)
        throw DomainError("check_operational_identity: l < m would require a negative "
                          "sigma power, which the operational relation leaves undefined");
    // LHS: B^- (t^m sigma^l f)
    FormalPowerSeries lhs =
        qborel_minus(apply_operator(QDiffOperator({{m, l, {1.0, 0.0}}}), f, base), base);
    // RHS: q^{-m(m-1)/2} tau^m sigma^{l-m} B^- f
    FormalPowerSeries rhs = apply_operator(
        QDiffOperator({{m, l - m,
                        cpow_int(base.q(), -static_cast<long long>(m) * (m - 1) / 2)}}),
        qborel_minus(f, base), base);

    double worst = 0.0;
    for (int n = 0; n <= f.order(); ++n) {
        Complex a = lhs.coeff(n);
        Complex b = rhs.coeff(n);
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        worst = std::max(worst, std::abs(a - b) / scale);
    }
    VerificationReport r = VerificationReport::make(
        "operational_identity", base.q(), std::nullopt, {0.0, 0.0}, {worst, 0.0},
        {0.0, 0.0}, 1e-13);
    std::ostringstream os;
    os << "m=" << m << ",l=" << l << ",order=" << f.order();
    r.metadata["params"] = os.str();
    r.metadata["deviation"] = "max over coefficients, relative above magnitude 1";
    r.abs_err = worst;
    r.rel_err = worst;
    r.pass = worst <= r.tol;
    return r;
}

Evaluator covering_transform(Evaluator u) {
    return [u = std::move(u)](Complex t) { return u(t * t); };
}

FormalPowerSeries u2_divergent_series(const Base& base, int order) {
    std::vector<Complex> c(static_cast<size_t>(order) + 1);
    Complex qq{1.0, 0.0}; // (q;q)_n
    for (int n = 0; n <= order; ++n) {
        if (n > 0) qq *= (Complex{1.0, 0.0} - cpow_int(base.q(), n));
        c[static_cast<size_t>(n)] =
            cpow_int(base.q(), -static_cast<long long>(n) * (n - 1) / 2 - n) / qq;
    }
    return FormalPowerSeries(std::move(c));
}

FormalPowerSeries ramanujan_Aq_series(const Base& base, int order) {
    std::vector<Complex> c(static_cast<size_t>(order) + 1);
    Complex qq{1.0, 0.0};
    for (int n = 0; n <= order; ++n) {
        if (n > 0) qq *= (Complex{1.0, 0.0} - cpow_int(base.q(), n));
        c[static_cast<size_t>(n)] =
            cpow_int(base.q(), static_cast<long long>(n) * n) * cpow_int({-1.0, 0.0}, n) / qq;
    }
    return FormalPowerSeries(std::move(c));
}

FormalPowerSeries eq_shifted_series(const Base& base, int order) {
    std::vector<Complex> c(static_cast<size_t>(order) + 1);
    Complex qq{1.0, 0.0};
    for (int n = 0; n <= order; ++n) {
        if (n > 0) qq *= (Complex{1.0, 0.0} - cpow_int(base.q(), n));
        c[static_cast<size_t>(n)] = cpow_int(base.q(), -n) / qq;
    }
    return FormalPowerSeries(std::move(c));
}

} // namespace qsf
