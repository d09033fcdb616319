// Acceptance battery: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here and nowhere else.
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qsf/qconnect.hpp"
#include "qsf/qcore.hpp"
#include "qsf/qformal.hpp"
#include "qsf/qresum.hpp"

using namespace qsf;

namespace {

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> run;
};

Complex theta_sum_direct(Complex q, Complex x, int N = 64) {
    Complex s{0.0, 0.0};
    for (int n = -N; n <= N; ++n)
        s += cpow_int(q, static_cast<long long>(n) * (n - 1) / 2) * cpow_int(x, n);
    return s;
}

bool worst_update(double& worst, double value) {
    worst = std::max(worst, value);
    return true;
}

const std::vector<Complex> kBases = {
    {0.3, 0.0}, {0.5, 0.0}, {0.7, 0.0}, {0.45048443395120975, 0.21694186955877903}};
// last entry is 0.5 e^{i pi/7}

bool criterion1(std::string& detail) {
    double worst = 0.0;
    for (Complex q : kBases) {
        Base b(q);
        auto pts = sample_points("qexp_pair", b, std::nullopt, 50, 11881);
        for (Complex x : pts) {
            worst_update(worst, rel_err(theta(b, x), theta_sum_direct(q, x)));
            for (int k = -3; k <= 3; ++k) {
                Complex lhs = theta(b, cpow_int(q, k) * x);
                Complex rhs = cpow_int(q, -static_cast<long long>(k) * (k - 1) / 2) *
                              cpow_int(x, -k) * theta(b, x);
                worst_update(worst, rel_err(lhs, rhs));
            }
            worst_update(worst, rel_err(theta(b, 1.0 / x), theta(b, x) / x));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst rel err %.2e", worst);
    detail = buf;
    return worst < 1e-10;
}

bool criterion2(std::string& detail) {
    double worst = 0.0;
    std::mt19937_64 rng(22);
    auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (Complex q : {Complex{0.3, 0.0}, Complex{0.5, 0.0}, Complex{0.7, 0.0}}) {
        Base b(q);
        int done = 0;
        while (done < 20) { // e_q(x) E_q(-x) = 1 inside the unit disc
            double mag = 0.1 + 0.8 * uni();
            double ang = 2.0 * std::numbers::pi * uni();
            Complex x = mag * Complex{std::cos(ang), std::sin(ang)};
            auto rep = verify_identity("qexp_pair", b, {.x = x});
            worst_update(worst, rep.rel_err);
            ++done;
        }
        for (Complex x : sample_points("qexp_pair", b, std::nullopt, 20, 333)) {
            auto rep = verify_identity("qexp_inv", b, {.x = x});
            worst_update(worst, rep.rel_err);
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst rel err %.2e", worst);
    detail = buf;
    return worst < 1e-10;
}

bool criterion3(std::string& detail) {
    double worst = 0.0;
    double worst_internal = 0.0;
    for (Complex q : {Complex{0.3, 0.0}, Complex{0.5, 0.0}, Complex{0.7, 0.0}}) {
        Base b(q);
        auto pts = sample_points("eq_vs_Eq", b, std::nullopt, 20, 515);
        for (Complex x : pts) {
            worst_update(worst, verify_identity("eq_vs_Eq", b, {.x = x}).rel_err);
            worst_update(worst, verify_identity("eq_alternate", b, {.x = x}).rel_err);
            for (int r : {2, 3, 4})
                worst_update(worst,
                             verify_identity("eq_rsplit", b, {.x = x, .r = r}).rel_err);
        }
        // internal consistency of the two split forms, checked at
        // condition-bounded points: |x| >= 0.8 keeps the 0phi1 arguments
        // q^5/x^2, q^7/x^2 inside the fast-decay regime so the 1e-12
        // comparison measures the algebra, not double-precision conditioning
        for (Complex x : pts) {
            if (std::abs(x) < 0.8) continue;
            auto alt = verify_identity("eq_alternate", b, {.x = x});
            auto spl = verify_identity("eq_rsplit", b, {.x = x / q, .r = 2});
            worst_update(worst_internal, rel_err(alt.rhs, spl.rhs));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst rel err %.2e, rsplit(2) vs alternate %.2e",
                  worst, worst_internal);
    detail = buf;
    return worst < 1e-9 && worst_internal < 1e-12;
}

bool criterion4(std::string& detail) {
    double worst = 0.0;
    std::mt19937_64 rng(44);
    auto uni = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
    // q <= 0.6: the inversion lemmas are exact and the 1e-12 bound is about
    // implementation fidelity; closer to |q| = 1 the bilateral sums decay too
    // slowly for double precision to hold 12 digits on degree-10 input
    for (Complex q : {Complex{0.5, 0.0}, Complex{0.6, 0.0}}) {
        Base b(q);
        std::vector<Complex> coeffs(11);
        for (auto& c : coeffs) c = {uni(), uni()};
        FormalPowerSeries f{coeffs};
        for (int level : {1, 2, 3}) {
            FormalPowerSeries borel = qborel_plus(f, b, level);
            Spiral s({1.3, 0.0}, level, b);
            Evaluator pe = [&borel](Complex xi) { return borel.evaluate(xi); };
            for (Complex x : {Complex{0.4, 0.0}, Complex{1.3, 0.6}, Complex{-0.8, 0.5}})
                worst_update(worst, rel_err(qlaplace_spiral(pe, s, x), f.evaluate(x)));
        }
        FormalPowerSeries g = qborel_minus(f, b);
        Evaluator ge = [&g](Complex xi) { return g.evaluate(xi); };
        // radius balancing the B^- coefficient growth against the theta kernel
        double radius = std::pow(b.abs_q(), 4.5);
        for (Complex x : {Complex{0.5, 0.0}, Complex{0.8, 0.4}})
            worst_update(worst, rel_err(qlaplace_contour(ge, b, x, {radius, 256}),
                                        f.evaluate(x)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst rel err %.2e", worst);
    detail = buf;
    return worst < 1e-12;
}

bool criterion5(std::string& detail) {
    double worst = 0.0;
    std::mt19937_64 rng(55);
    auto uni = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
    for (Complex q : {Complex{0.5, 0.0}, Complex{0.3, 0.0}}) {
        Base b(q);
        std::vector<Complex> coeffs(13);
        for (auto& c : coeffs) c = {uni(), uni()};
        FormalPowerSeries f{coeffs};
        for (int l = 0; l <= 4; ++l)
            for (int m = 0; m <= l; ++m)
                worst_update(worst, check_operational_identity(m, l, f, b).rel_err);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst coefficient deviation %.2e", worst);
    detail = buf;
    return worst < 1e-13;
}

bool criterion6(std::string& detail) {
    double worst_resid = 0.0;
    double worst_reindex = 0.0;
    for (Complex q : {Complex{0.3, 0.0}, Complex{0.5, 0.0}}) {
        Base b(q);
        for (Complex lambda : {Complex{0.9, 0.0}, Complex{0.0, 1.3}}) {
            auto pts = sample_points("two_f_zero", b, lambda, 20, 616);
            for (Complex x : pts) {
                auto u2 = [&](Complex y) { return theta(b, y) * resum_2f0(b, lambda, y); };
                Complex t2 = q * x * u2(q * q * x);
                Complex t1 = u2(q * x);
                Complex t0 = u2(x);
                double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
                worst_update(worst_resid, std::abs(t2 - t1 + t0) / scale);
            }
            worst_update(worst_reindex, rel_err(resum_2f0(b, lambda, pts[0]),
                                                resum_2f0(b, lambda * q, pts[0])));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst residual %.2e, reindexing %.2e", worst_resid,
                  worst_reindex);
    detail = buf;
    return worst_resid < 1e-9 && worst_reindex < 1e-12;
}

bool criterion7(std::string& detail) {
    bool unique_everywhere = true;
    double worst_match = 0.0;
    std::string winner;
    for (Complex q : {Complex{0.3, 0.0}, Complex{0.5, 0.0}, Complex{0.7, 0.0}}) {
        Base b(q);
        Complex lambda{0.9, 0.0};
        auto pts = sample_points("two_f_zero", b, lambda, 8, 717);
        auto rep = audit_normalization("two_f_zero", b, lambda, pts);
        if (rep.match_count != 1 || !rep.best || !rep.best->matched)
            unique_everywhere = false;
        else {
            worst_match = std::max(worst_match, rep.best->max_rel_err);
            std::string tag = rep.best->form + "(" + std::to_string(rep.best->k1) + "," +
                              std::to_string(rep.best->j1) + ")";
            if (winner.empty()) winner = tag;
            else if (winner != tag) unique_everywhere = false;
        }
    }
    // fresh points with the resolved normalization
    double worst_fresh = 0.0;
    for (Complex q : {Complex{0.4, 0.0}}) {
        Base b(q);
        Complex lambda{0.9, 0.0};
        for (Complex x : sample_points("two_f_zero", b, lambda, 20, 718)) {
            worst_update(worst_fresh,
                         verify_identity("two_f_zero", b, {.x = x, .lambda = lambda})
                             .rel_err);
            worst_update(worst_fresh,
                         verify_identity("main_matrix_row2", b, {.x = x, .lambda = lambda})
                             .rel_err);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "winner %s, audit err %.2e, fresh-point err %.2e", winner.c_str(),
                  worst_match, worst_fresh);
    detail = buf;
    return unique_everywhere && worst_match < 1e-8 && worst_fresh < 1e-8;
}

bool criterion8(std::string& detail) {
    double worst_iz = 0.0;
    double worst_row1 = 0.0;
    double worst_ell = 0.0;
    int row1_pass = 0;
    for (Complex q : {Complex{0.4, 0.0}}) {
        Base b(q);
        auto pts = sample_points("ismail_zhang", b, std::nullopt, 20, 818);
        for (Complex x : pts) {
            worst_update(worst_iz, verify_identity("ismail_zhang", b, {.x = x}).rel_err);
            auto row1 = verify_identity("main_matrix_row1", b, {.x = x});
            worst_update(worst_row1, row1.rel_err);
            if (row1.pass) ++row1_pass;
        }
        int done = 0;
        for (Complex x : sample_points("ismail_zhang", b, std::nullopt, 40, 819)) {
            if (done >= 10) break;
            try {
                worst_update(worst_ell, ellipticity_check("C11", b, x).rel_err);
                worst_update(worst_ell, ellipticity_check("C12", b, x).rel_err);
                ++done;
            } catch (const ZeroProximityError&) {
            }
        }
    }
    bool iz_ok = worst_iz < 1e-9;
    bool row1_ok = row1_pass == 20 && worst_row1 < 1e-9;
    bool ell_ok = worst_ell < 1e-10;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "ismail_zhang %.2e (%s); main_matrix_row1 as printed %.2e (%s: known "
                  "misprint, sign-corrected form passes, see audit); ellipticity %.2e (%s)",
                  worst_iz, iz_ok ? "ok" : "FAIL", worst_row1, row1_ok ? "ok" : "FAIL",
                  worst_ell, ell_ok ? "ok" : "FAIL");
    detail = buf;
    return iz_ok && row1_ok && ell_ok;
}

bool criterion9(std::string& detail) {
    double worst_mutual = 0.0;
    double worst_identity = 0.0;
    for (Complex q : {Complex{0.4, 0.0}, Complex{0.5, 0.0}}) {
        Base b(q);
        Evaluator g = [&](Complex xi) {
            return 1.0 / (qpochhammer_infinite(-q * q * xi, b) *
                          qpochhammer_infinite(q * q * xi, b));
        };
        double radius = std::min(1.0, 0.5 / (b.abs_q() * b.abs_q()));
        std::mt19937_64 rng(99);
        auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        for (int i = 0; i < 5; ++i) {
            double mag = 0.5 * std::pow(4.0, uni());
            double ang = 2.0 * std::numbers::pi * uni();
            Complex t = mag * Complex{std::cos(ang), std::sin(ang)};
            Complex by_contour = qlaplace_contour(g, b, t, {radius, 256});
            Complex by_res = residue_laplace_qairy(b, t);
            Complex norm =
                qpochhammer_infinite(q, b) * qpochhammer_infinite({-1.0, 0.0}, b);
            Complex closed = (theta(b, q * q * t) * qairy_Aiq(b, -1.0 / t) +
                              theta(b, -q * q * t) * qairy_Aiq(b, 1.0 / t)) /
                             norm;
            worst_update(worst_mutual, rel_err(by_contour, by_res));
            worst_update(worst_mutual, rel_err(by_res, closed));
        }
    }
    Base b({0.4, 0.0});
    for (Complex x : sample_points("ram_qairy", b, std::nullopt, 20, 929))
        worst_update(worst_identity, verify_identity("ram_qairy", b, {.x = x}).rel_err);
    char buf[128];
    std::snprintf(buf, sizeof buf, "mutual %.2e, identity %.2e", worst_mutual,
                  worst_identity);
    detail = buf;
    return worst_mutual < 1e-8 && worst_identity < 1e-9;
}

bool criterion10(std::string& detail) {
    Base b({0.5, 0.0});
    Complex lambda{1.1, 0.0};
    Complex x{0.6, 0.0};
    double worst_window = 0.0;
    for (int r : {2, 3, 4}) {
        const double eps = (r % 2 == 0) ? -1.0 : 1.0;
        Spiral s(lambda, r - 1, b);
        Evaluator borel = [&](Complex xi) { return eq_small(b, eps * xi); };
        Complex w_small = qlaplace_spiral(borel, s, x, 24);
        Complex w_large = qlaplace_spiral(borel, s, x, 28);
        worst_update(worst_window, rel_err(w_small, w_large));
    }
    // r = 2 coincidence with the 2f0 pipeline via (lambda,x) -> (-lambda,-x/q)
    Base b4({0.4, 0.0});
    Complex lam{0.9, 0.0};
    double worst_r2 = 0.0;
    for (Complex xx : {Complex{0.7, 0.2}, Complex{1.4, -0.3}})
        worst_update(worst_r2, rel_err(resum_rf0(2, b4, -lam, -xx / b4.q()),
                                       resum_2f0(b4, lam, xx)));
    // audit outcome: corrected reading matches, printed does not
    bool audit_ok = true;
    auto pts = sample_points("level_r", Base({0.3, 0.0}), Complex{1.1, 0.0}, 8, 1010);
    for (int r : {2, 3, 4}) {
        auto rep = audit_normalization("level_r", Base({0.3, 0.0}), {1.1, 0.0}, pts, r);
        bool corrected = rep.best && rep.best->matched &&
                         rep.best->form == "corrected_reading";
        bool printed_matched = false;
        for (const auto& c : rep.candidates)
            if (c.form == "printed_reading" && c.matched) printed_matched = true;
        if (!corrected || printed_matched) audit_ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "window stability %.2e, r=2 vs 2f0 %.2e, audit: corrected reading "
                  "matches, printed no-match",
                  worst_window, worst_r2);
    detail = buf;
    return worst_window < 1e-11 && worst_r2 < 1e-12 && audit_ok;
}

bool criterion11(std::string& detail) {
    Base b({0.5, 0.0});
    Complex x{0.7, 0.0};
    Complex a = resum_2f0(b, {0.9, 0.0}, x);
    Complex c = resum_2f0(b, {1.3, 0.0}, x);
    double diff = rel_err(a, c);
    char buf[96];
    std::snprintf(buf, sizeof buf, "lambda 0.9 vs 1.3 at q=0.5, x=0.7: rel diff %.2e",
                  diff);
    detail = buf;
    return diff > 1e-6;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "theta consistency (product vs sum, functional equation, inversion)",
         criterion1},
        {2, "q-exponential relations e_q E_q and e_{q^-1} = E_q(-qx)", criterion2},
        {3, "e_q <-> E_q connection and its 2- and r-term splits (r in {2,3,4})",
         criterion3},
        {4, "Borel-Laplace inversion lemmas, both kinds, levels 1..3", criterion4},
        {5, "operational lemma for all 0 <= m <= l <= 4", criterion5},
        {6, "resummation ground truth: u2~ solves the Ramanujan equation", criterion6},
        {7, "connection-formula audit resolves exactly one normalization", criterion7},
        {8, "Ismail-Zhang and main-matrix row 1 as printed, plus ellipticity", criterion8},
        {9, "Ramanujan <-> q-Airy: contour, residues, closed form", criterion9},
        {10, "level r-1 resummation: convergence, r=2 coincidence, audit", criterion10},
        {11, "Stokes witness: distinct spirals give distinct resummations", criterion11},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (auto& c : criteria) {
        if (only && c.id != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), detail.c_str());
        if (!ok) ++failures;
    }
    if (failures)
        std::printf("%d criterion(s) failed. Criterion 8 fails on the printed "
                    "main-matrix row-1 coefficients, a documented misprint (see the "
                    "README and `qsf audit --id main_matrix`); all other checks are "
                    "expected green.\n",
                    failures);
    return failures == 0 ? 0 : 1;
}
