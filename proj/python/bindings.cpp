#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsf/qconnect.hpp"
#include "qsf/qcore.hpp"
#include "qsf/qformal.hpp"
#include "qsf/qresum.hpp"

namespace py = pybind11;
using namespace qsf;

namespace {

py::object complex_or_none(const std::optional<Complex>& z) {
    if (!z) return py::none();
    return py::cast(*z);
}

py::dict report_to_dict(const VerificationReport& r) {
    py::dict d;
    d["identity_id"] = r.identity_id;
    d["q"] = r.q;
    d["lambda"] = complex_or_none(r.lambda);
    d["x"] = r.x;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["abs_err"] = r.abs_err;
    d["rel_err"] = r.rel_err;
    d["tol"] = r.tol;
    d["pass"] = r.pass;
    py::dict meta;
    for (const auto& [k, v] : r.metadata) meta[py::str(k)] = v;
    d["metadata"] = meta;
    return d;
}

py::dict audit_to_dict(const AuditReport& r) {
    py::dict d;
    d["identity_id"] = r.identity_id;
    d["q"] = r.q;
    d["lambda"] = r.lambda;
    d["match_count"] = r.match_count;
    d["match_tol"] = r.match_tol;
    auto cand = [](const AuditCandidate& c) {
        py::dict cd;
        cd["form"] = c.form;
        cd["k"] = py::make_tuple(c.k1, c.k2);
        cd["j"] = py::make_tuple(c.j1, c.j2);
        cd["sign"] = py::make_tuple(c.sign1, c.sign2);
        cd["max_rel_err"] = c.max_rel_err;
        cd["matched"] = c.matched;
        return cd;
    };
    py::list cands;
    for (const auto& c : r.candidates) cands.append(cand(c));
    d["candidates"] = cands;
    d["best"] = r.best ? py::object(cand(*r.best)) : py::object(py::none());
    return d;
}

} // namespace

PYBIND11_MODULE(_qsf, m) {
    m.doc() = "q-special functions, q-Borel-Laplace resummation and connection "
              "formula verification";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def(
        "qpochhammer",
        [](Complex a, Complex q, int n) { return qpochhammer_finite(a, Base(q), n); },
        py::arg("a"), py::arg("q"), py::arg("n"), "(a;q)_n finite product");
    m.def(
        "qpochhammer_inf",
        [](Complex a, Complex q) { return qpochhammer_infinite(a, Base(q)); },
        py::arg("a"), py::arg("q"), "(a;q)_infinity");
    m.def(
        "theta", [](Complex q, Complex x) { return theta(Base(q), x); }, py::arg("q"),
        py::arg("x"), "Jacobi theta, triple product with bilateral-sum cross-check");
    m.def(
        "phi",
        [](std::vector<Complex> upper, std::vector<Complex> lower, Complex q, Complex x) {
            return phi(HyperSpec(std::move(upper), std::move(lower), Base(q)), x);
        },
        py::arg("upper"), py::arg("lower"), py::arg("q"), py::arg("x"),
        "basic hypergeometric series rphi_s");
    m.def(
        "eq", [](Complex q, Complex x) { return eq_small(Base(q), x); }, py::arg("q"),
        py::arg("x"), "e_q(x) = 1/(x;q)_inf, global product continuation");
    m.def(
        "Eq", [](Complex q, Complex x) { return Eq_big(Base(q), x); }, py::arg("q"),
        py::arg("x"), "E_q(x) = (-x;q)_inf");
    m.def(
        "Aq", [](Complex q, Complex x) { return ramanujan_Aq(Base(q), x); }, py::arg("q"),
        py::arg("x"), "Ramanujan function A_q(x)");
    m.def(
        "Aiq", [](Complex q, Complex x) { return qairy_Aiq(Base(q), x); }, py::arg("q"),
        py::arg("x"), "q-Airy function Ai_q(x)");
    m.def(
        "eval_solution",
        [](const std::string& name, Complex q, Complex x, std::optional<Complex> lam) {
            return eval_solution(solution_id_from_string(name), Base(q), x, lam);
        },
        py::arg("name"), py::arg("q"), py::arg("x"), py::arg("lam") = py::none(),
        "evaluate a named local solution (u1, u2_resummed, v1, v2, Aq, Aiq, "
        "Aiq_mirror, eq, Eq)");
    m.def(
        "resum_2f0",
        [](Complex q, Complex lam, Complex x) { return resum_2f0(Base(q), lam, x); },
        py::arg("q"), py::arg("lam"), py::arg("x"),
        "first-kind Borel-Laplace resummation of 2phi0(0,0;-;q,-x/q)");
    m.def(
        "resum_rf0",
        [](int r, Complex q, Complex lam, Complex x) {
            return resum_rf0(r, Base(q), lam, x);
        },
        py::arg("r"), py::arg("q"), py::arg("lam"), py::arg("x"),
        "level r-1 resummation of rphi0(0,...,0;-;q,x)");
    m.def(
        "residue_laplace_qairy",
        [](Complex q, Complex t, int kmax) { return residue_laplace_qairy(Base(q), t, kmax); },
        py::arg("q"), py::arg("t"), py::arg("kmax") = -1,
        "residue route for the q-Airy Borel kernel Laplace integral");
    m.def(
        "verify_identity",
        [](const std::string& id, Complex q, Complex x, std::optional<Complex> lam, int r,
           std::optional<double> tol) {
            IdentityParams p;
            p.x = x;
            p.lambda = lam;
            p.r = r;
            p.tol = tol;
            return report_to_dict(verify_identity(id, Base(q), p));
        },
        py::arg("identity_id"), py::arg("q"), py::arg("x"), py::arg("lam") = py::none(),
        py::arg("r") = 2, py::arg("tol") = py::none(),
        "verify one identity at one point; returns the report as a dict");
    m.def(
        "audit_normalization",
        [](const std::string& id, Complex q, Complex lam, std::vector<Complex> xs, int r) {
            return audit_to_dict(audit_normalization(id, Base(q), lam, xs, r));
        },
        py::arg("identity_id"), py::arg("q"), py::arg("lam"), py::arg("sample"),
        py::arg("r") = 2);
    m.def(
        "ellipticity_check",
        [](const std::string& coeff, Complex q, Complex x) {
            return report_to_dict(ellipticity_check(coeff, Base(q), x));
        },
        py::arg("coefficient"), py::arg("q"), py::arg("x"));
    m.def(
        "sample_points",
        [](const std::string& id, Complex q, std::optional<Complex> lam, int count,
           unsigned long long seed) {
            return sample_points(id, Base(q), lam, count, seed);
        },
        py::arg("identity_id"), py::arg("q"), py::arg("lam") = py::none(),
        py::arg("count") = 20, py::arg("seed") = 20240901ull);
    m.def("known_identities", &known_identities);

#ifdef QSF_VERSION
    m.attr("__version__") = QSF_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
