#ifndef QSF_QFORMAL_HPP
#define QSF_QFORMAL_HPP

#include <vector>

#include "qsf/base.hpp"
#include "qsf/report.hpp"

namespace qsf {

// Truncated formal power series a_0 + a_1 x + ... + a_N x^N. Arithmetic is
// exact on coefficients up to the (common) order.
class FormalPowerSeries {
public:
    explicit FormalPowerSeries(std::vector<Complex> coeffs);
    static FormalPowerSeries zero(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex coeff(int n) const { return coeffs_.at(static_cast<size_t>(n)); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    FormalPowerSeries add(const FormalPowerSeries& other) const;
    FormalPowerSeries scale(Complex c) const;
    // Cauchy product truncated to this->order()
    FormalPowerSeries multiply(const FormalPowerSeries& other) const;

    Complex evaluate(Complex x) const; // Horner on the truncation

private:
    std::vector<Complex> coeffs_;
};

// One term c * x^m * sigma_q^l of a q-difference operator.
struct QDiffTerm {
    int x_power = 0;
    int sigma_power = 0;
    Complex coeff{1.0, 0.0};
};

// Sparse operator sum_i c_i x^{m_i} sigma_q^{l_i}; every operator this
// library works with has at most three terms.
class QDiffOperator {
public:
    QDiffOperator() = default;
    explicit QDiffOperator(std::vector<QDiffTerm> terms);

    const std::vector<QDiffTerm>& terms() const { return terms_; }

    // q x sigma^2 - sigma + 1  (the Ramanujan operator; K x sigma^2 - sigma + 1
    // with K = q)
    static QDiffOperator ramanujan(const Base& base);
    // sigma^2 + x sigma - 1  (the q-Airy operator)
    static QDiffOperator qairy();
    // K x^m sigma^2 - sigma + 1 generalization used by the covering transform
    static QDiffOperator covering_form(Complex K, int x_power);

private:
    std::vector<QDiffTerm> terms_;
};

// (x^m sigma_q^l f) has coefficient a_{n-m} q^{l(n-m)} at x^n; the result is
// truncated to f's order.
FormalPowerSeries apply_operator(const QDiffOperator& op, const FormalPowerSeries& f,
                                 const Base& base);

// q-Borel transform of level s >= 1: a_n -> a_n (q^s)^{n(n-1)/2}. Level 1 is
// the first-kind transform B_q^+.
FormalPowerSeries qborel_plus(const FormalPowerSeries& f, const Base& base, int level = 1);

// Coefficientwise inverse of qborel_plus at the same level.
FormalPowerSeries qborel_plus_inverse(const FormalPowerSeries& f, const Base& base,
                                      int level = 1);

// Second-kind q-Borel transform: a_n -> a_n q^{-n(n-1)/2}.
FormalPowerSeries qborel_minus(const FormalPowerSeries& f, const Base& base);

// Checks B_q^-(t^m sigma_q^l) = q^{-m(m-1)/2} tau^m sigma_q^{l-m} B_q^- on f,
// reporting the worst per-coefficient deviation (relative for coefficients of
// magnitude above 1). Requires l >= m: the relation is usually stated for all
// l, m >= 0, but a negative shift power has no meaning here, so l < m is
// rejected.
VerificationReport check_operational_identity(int m, int l, const FormalPowerSeries& f,
                                              const Base& base);

// Covering transformation t^2 = x: maps an evaluator u to v(t) = u(t^2).
// If u solves (K x sigma_q^2 - sigma_q + 1) u = 0 then v solves
// (K t^2 sigma_p^2 - sigma_p + 1) v = 0 with p a fixed square root of q.
Evaluator covering_transform(Evaluator u);

// Coefficients of the divergent factor 2phi0(0,0;-;q,-x/q) of the second
// formal solution at the origin: a_n = q^{-n(n-1)/2} q^{-n} / (q;q)_n.
FormalPowerSeries u2_divergent_series(const Base& base, int order);

// Coefficients of A_q (as a series in x) up to the given order.
FormalPowerSeries ramanujan_Aq_series(const Base& base, int order);

// Coefficients of e_q(x/q) up to the given order.
FormalPowerSeries eq_shifted_series(const Base& base, int order);

} // namespace qsf

#endif
