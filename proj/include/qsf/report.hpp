#ifndef QSF_REPORT_HPP
#define QSF_REPORT_HPP

#include <map>
#include <optional>
#include <string>

#include "qsf/base.hpp"

namespace qsf {

// Outcome of checking one identity at one point. pass is defined as
// rel_err <= tol, or abs_err <= tol when both sides are already below tol.
struct VerificationReport {
    std::string identity_id;
    Complex q{};
    std::optional<Complex> lambda;
    Complex x{};
    Complex lhs{};
    Complex rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::map<std::string, std::string> metadata;

    static VerificationReport make(std::string id, Complex q, std::optional<Complex> lambda,
                                   Complex x, Complex lhs, Complex rhs, double tol) {
        VerificationReport r;
        r.identity_id = std::move(id);
        r.q = q;
        r.lambda = lambda;
        r.x = x;
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_err = std::abs(lhs - rhs);
        double scale = std::max(std::abs(lhs), std::abs(rhs));
        r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
        r.tol = tol;
        r.pass = (r.rel_err <= tol) ||
                 (std::abs(lhs) < tol && std::abs(rhs) < tol && r.abs_err <= tol);
        return r;
    }
};

// JSON line per the report schema: identity_id, q, lambda, x, lhs, rhs as
// [re, im] pairs plus abs_err/rel_err/tol/pass/metadata.
std::string to_json(const VerificationReport& report);

} // namespace qsf

#endif
