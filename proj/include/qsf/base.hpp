#ifndef QSF_BASE_HPP
#define QSF_BASE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace qsf {

using Complex = std::complex<double>;
using Evaluator = std::function<Complex(Complex)>;

// Error taxonomy. DomainError and its children signal bad inputs (CLI exit 2),
// the remaining types signal numerical failure of an otherwise valid request.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class SpiralPoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroProximityError : public DomainError {
public:
    using DomainError::DomainError;
};

class DivergentSeriesError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConvergenceRadiusError : public DomainError {
public:
    using DomainError::DomainError;
};

class NonConvergenceError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class TailError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

// Integer power by binary exponentiation. Underflow to 0 and overflow to inf
// are the correct limits for the extreme exponents the theta scalings produce.
inline Complex cpow_int(Complex z, long long n) {
    if (n == 0) return {1.0, 0.0};
    bool invert = n < 0;
    unsigned long long m = invert ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                                  : static_cast<unsigned long long>(n);
    Complex acc{1.0, 0.0};
    Complex b = z;
    while (m) {
        if (m & 1ull) acc *= b;
        b *= b;
        m >>= 1;
    }
    return invert ? Complex{1.0, 0.0} / acc : acc;
}

// The deformation base q, 0 < |q| < 1.
class Base {
public:
    explicit Base(Complex q) : q_(q), abs_q_(std::abs(q)) {
        if (!(abs_q_ > 0.0) || !(abs_q_ < 1.0) || !std::isfinite(abs_q_))
            throw DomainError("base q must satisfy 0 < |q| < 1, got |q| = " +
                              std::to_string(abs_q_));
    }

    Complex q() const { return q_; }
    double abs_q() const { return abs_q_; }
    double log_abs_q() const { return std::log(abs_q_); }

    Complex pow(long long k) const { return cpow_int(q_, k); }

    // base q^m as a new Base (m >= 1)
    Base power_base(int m) const { return Base(cpow_int(q_, m)); }

private:
    Complex q_;
    double abs_q_;
};

// Series / product truncation policy.
struct EvalConfig {
    double tol = 1e-16;     // term-magnitude stopping threshold
    int max_terms = 10000;
    int tail_window = 3;    // consecutive sub-tol terms required to stop
};

inline double rel_err(Complex a, Complex b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Relative distance of z to the discrete spiral {anchor * step^k : k in Z},
// step = q^level. Used for pole/exclusion checks on q-spirals.
double spiral_distance(Complex z, Complex anchor, const Base& base, int level = 1);

} // namespace qsf

#endif
