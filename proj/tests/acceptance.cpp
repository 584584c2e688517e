// Acceptance suite: one pass/fail line per criterion, each at its stated
// tolerance.  Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "solenoid/solenoid.hpp"

using namespace solenoid;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name << " ("
              << detail << ") [" << std::fixed << std::setprecision(1) << seconds << "s]\n"
              << std::defaultfloat;
    if (!pass) ++failures;
}

GroupElement elem(std::int64_t p, std::vector<std::pair<std::int64_t, int>> coords) {
    std::vector<PadicRational> c;
    for (auto [num, exp] : coords) c.emplace_back(num, exp, p);
    return GroupElement(std::move(c), p);
}

GroupElement random_element(Rng& rng, std::int64_t p, int d, int max_level) {
    std::vector<PadicRational> coords;
    for (int j = 0; j < d; ++j)
        coords.emplace_back(static_cast<std::int64_t>(rng.index(201)) - 100,
                            static_cast<int>(rng.index(static_cast<std::size_t>(max_level) + 1)),
                            p);
    return GroupElement(std::move(coords), p);
}

StateSpec random_vector_state(const CocycleSpec& spec, const BallTable& tbl, int fiber_dim,
                              Rng& rng) {
    std::map<GroupElement, Vector> xi;
    for (int pick = 0; pick < 3; ++pick) {
        Vector v(fiber_dim);
        for (int q = 0; q < fiber_dim; ++q) v[q] = cplx(rng.normal(), rng.normal());
        xi[tbl.element(rng.index(tbl.size()))] = v;
    }
    return StateSpec::vector_state(spec, std::move(xi));
}

// 1. Clifford: d in 1..6, structural deviations < 1e-12 and the square
//    identity for 100 random vectors per d; under 5 s.
void criterion_1() {
    Timer timer;
    bool pass = true;
    std::ostringstream detail;
    for (int d = 1; d <= 6 && pass; ++d) {
        auto set = build_gammas(d);
        auto rep = verify_clifford(set, 1e-12);
        pass = pass && rep.pass;
        Matrix id = Matrix::Identity(set.dim, set.dim);
        Rng rng(1000 + static_cast<std::uint64_t>(d));
        for (int trial = 0; trial < 100 && pass; ++trial) {
            Matrix sum = Matrix::Zero(set.dim, set.dim);
            double norm_sq = 0.0;
            for (int i = 0; i <= d; ++i) {
                double v = rng.normal();
                norm_sq += v * v;
                sum += v * set.gamma(i);
            }
            pass = pass && (sum * sum - norm_sq * id).cwiseAbs().maxCoeff() < 1e-12;
        }
    }
    double s = timer.seconds();
    pass = pass && s < 5.0;
    detail << "d=1..6, tol 1e-12, 100 vectors each, runtime cap 5s";
    report(1, "Clifford suite", pass, s, detail.str());
}

// 2. Length/level: 1e4 random pairs per (p,d) in {2,3,5}x{1,2,3} for the
//    length axioms of L and sqrt(L); the F-difference bound exhaustively on
//    ball(2, 8) for p=2, d=2; fdiff_sup closed form vs brute force; under 30 s.
void criterion_2() {
    Timer timer;
    bool pass = true;

    for (std::int64_t p : {2, 3, 5}) {
        for (int d : {1, 2, 3}) {
            Rng rng(static_cast<std::uint64_t>(100 * p + d));
            for (int i = 0; i < 10000 && pass; ++i) {
                auto g = random_element(rng, p, d, 3);
                auto h = random_element(rng, p, d, 3);
                pass = pass && length(-g) == length(g);
                pass = pass && length(g + h) <= length(g) + length(h) + 1e-12;
                pass = pass && std::sqrt(length(-g)) == std::sqrt(length(g));
                pass = pass &&
                       std::sqrt(length(g + h)) <=
                           std::sqrt(length(g)) + std::sqrt(length(h)) + 1e-12;
            }
        }
    }

    // |F(h) - F(h-g)| <= F(g) over every pair of ball(2, 8), p = 2, d = 2
    {
        auto tbl = ball(2, 2, 2, 8.0);
        std::vector<std::int64_t> f_of(tbl.size());
        for (std::size_t i = 0; i < tbl.size(); ++i) f_of[i] = f_weight(tbl.element(i));
        for (std::size_t i = 0; i < tbl.size() && pass; ++i) {
            const auto& h = tbl.element(i);
            for (std::size_t j = 0; j < tbl.size(); ++j) {
                if (std::llabs(f_of[i] - f_weight(h - tbl.element(j))) > f_of[j]) {
                    pass = false;
                    break;
                }
            }
        }
    }

    // closed form equals the brute-force sup for every g in exhaustive sets
    {
        auto brute = [](const BallTable& hs, const GroupElement& g) {
            std::int64_t sup = 0;
            for (const auto& h : hs.elements())
                sup = std::max<std::int64_t>(sup, std::llabs(f_weight(h) - f_weight(h - g)));
            return sup;
        };
        auto gs2 = ball(2, 2, 2, 5.0);
        auto hs2 = ball(2, 2, 2, 10.0);
        for (const auto& g : gs2.elements()) pass = pass && fdiff_sup(g, 2) == brute(hs2, g);
        auto gs3 = ball(3, 2, 1, 4.0);
        auto hs3 = ball(3, 2, 1, 9.0);
        for (const auto& g : gs3.elements()) pass = pass && fdiff_sup(g, 1) == brute(hs3, g);
    }

    double s = timer.seconds();
    pass = pass && s < 30.0;
    report(2, "length/level suite", pass, s,
           "10^4 pairs per (p,d), exact symmetry, subadditivity 1e-12, runtime cap 30s");
}

// 3. Spectrum oracle: assembled Dirac eigenvalues match {+-L(g)} with
//    multiplicity dim E / 2, deviation < 1e-9; under 60 s.
void criterion_3() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    struct Case {
        std::int64_t p;
        int n;
    };
    for (auto [p, n] : {Case{2, 0}, Case{2, 1}, Case{3, 1}}) {
        auto spec = CocycleSpec::planar(p, 0.3);
        Truncation t(spec, n, 4.0);
        auto eigs = dirac_spectrum(t);
        auto expected = dirac_spectrum_expected(t);
        if (eigs.size() != expected.size()) {
            pass = false;
            break;
        }
        for (std::size_t i = 0; i < eigs.size(); ++i)
            worst = std::max(worst, std::abs(eigs[i] - expected[i]));
    }
    // dense eigensolve of the full assembly for the smallest case
    {
        Truncation t(CocycleSpec::planar(2, 0.3), 0, 4.0);
        Eigen::SelfAdjointEigenSolver<Matrix> es(dirac_matrix(t).dense(),
                                                 Eigen::EigenvaluesOnly);
        auto expected = dirac_spectrum_expected(t);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            worst = std::max(worst,
                             std::abs(es.eigenvalues()[i] -
                                      expected[static_cast<std::size_t>(i)]));
    }
    pass = pass && worst < 1e-9;
    double s = timer.seconds();
    pass = pass && s < 60.0;
    std::ostringstream detail;
    detail << "(2,2,0,4),(2,2,1,4),(3,2,1,4), max dev " << std::scientific
           << std::setprecision(1) << worst << ", tol 1e-9, runtime cap 60s";
    report(3, "spectrum oracle", pass, s, detail.str());
}

// 4. Lip generator convergence: 10 generators across levels 0..2, monotone in
//    R, within 1e-6 of the closed form at the largest R, theta-independent
//    to 1e-9.
void criterion_4() {
    Timer timer;
    bool pass = true;
    std::vector<GroupElement> gens = {
        elem(2, {{1, 0}, {0, 0}}),  elem(2, {{0, 0}, {1, 0}}),  elem(2, {{1, 0}, {1, 0}}),
        elem(2, {{2, 0}, {1, 0}}),  elem(2, {{1, 1}, {0, 0}}),  elem(2, {{1, 1}, {1, 0}}),
        elem(2, {{1, 1}, {1, 1}}),  elem(2, {{1, 2}, {0, 0}}),  elem(2, {{1, 2}, {1, 1}}),
        elem(2, {{3, 2}, {1, 2}}),
    };
    const std::vector<double> radii = {2.0, 3.0, 3.5, 4.25};
    auto spec = CocycleSpec::planar(2, 0.3);
    std::vector<Truncation> truncations;
    for (double r : radii) truncations.emplace_back(spec, 2, r);

    double worst_final = 0.0;
    for (const auto& g : gens) {
        double exact = lip_exact_generator(g, 2);
        double prev = 0.0, last = 0.0;
        for (const auto& t : truncations) {
            last = lip(FourierPolynomial::delta(spec, g), t);
            pass = pass && last >= prev - 1e-12;  // monotone in R
            prev = last;
        }
        worst_final = std::max(worst_final, std::abs(last - exact));
        pass = pass && std::abs(last - exact) <= 1e-6;
    }

    // theta independence at the largest radius
    Truncation t0(CocycleSpec::planar(2, 0.0), 2, 4.25);
    Truncation t2(CocycleSpec::planar(2, 1.0 / std::sqrt(2.0)), 2, 4.25);
    for (const auto& g : gens) {
        double v1 = lip(FourierPolynomial::delta(t0.algebra, g), t0);
        double v2 = lip(FourierPolynomial::delta(spec, g), truncations.back());
        double v3 = lip(FourierPolynomial::delta(t2.algebra, g), t2);
        pass = pass && std::abs(v1 - v2) <= 1e-9 && std::abs(v2 - v3) <= 1e-9;
    }

    std::ostringstream detail;
    detail << "10 generators, R up to 4.25, |lip - exact| max " << std::scientific
           << std::setprecision(1) << worst_final << " (tol 1e-6), theta set {0,0.3,1/sqrt2}";
    report(4, "Lip generator convergence", pass, timer.seconds(), detail.str());
}

// 5. Coset-block equality: 50 random self-adjoint f in C_c(G_0), proxy levels
//    m in {1,2}: full norm = k0 norm within 1e-9 and every nonzero-coset
//    block norm <= k0 + 1e-9.  The radius sits in the window-embedding regime
//    where the finite analogue is exact.
void criterion_5() {
    Timer timer;
    bool pass = true;
    auto spec = CocycleSpec::planar(2, 0.3);
    auto support = ball(2, 2, 0, 2.0);
    Rng rng(2025);
    for (int trial = 0; trial < 50 && pass; ++trial) {
        FourierPolynomial f = random_self_adjoint(spec, support, rng);
        for (int m : {1, 2}) {
            auto rep = lip_equality_check(f, 0, m, 2.5, 1e-9);
            pass = pass && rep.pass && rep.k0_norm > 1e-3;
        }
    }
    report(5, "coset-block seminorm equality", pass, timer.seconds(),
           "50 random f, m in {1,2}, R=2.5, tol 1e-9");
}

// 6. Fejer suite: exact coefficientwise contraction, Lip contraction within
//    1e-6 on 50 random f, and eps(N) nonincreasing over {2,4,8,16}.
void criterion_6() {
    Timer timer;
    bool pass = true;
    auto spec = CocycleSpec::planar(2, 0.3);
    Truncation t(spec, 1, 4.0);
    auto support = ball(2, 2, 1, 2.5);
    Rng rng(3030);
    const int orders[4] = {2, 4, 8, 16};
    for (int trial = 0; trial < 50 && pass; ++trial) {
        FourierPolynomial f = random_self_adjoint(spec, support, rng);
        FejerSpec fj(0, orders[trial % 4]);
        auto smoothed = fejer_smooth(f, fj);
        for (const auto& [g, c] : f.support())
            pass = pass && std::abs(smoothed.at(g)) <= std::abs(c);
        auto rep = fejer_lip_contraction_check(f, fj, t, 1e-6);
        pass = pass && rep.pass;
    }

    double prev = std::numeric_limits<double>::infinity();
    double eps_final = 0.0;
    for (int N : orders) {
        auto rep = bridge_builder_epsilon(0, FejerSpec(0, N), t, 2.5, 16, 42);
        pass = pass && rep.eps_max <= prev + 1e-12;
        prev = rep.eps_max;
        eps_final = rep.eps_max;
    }
    std::ostringstream detail;
    detail << "50 random f, Lip tol 1e-6, eps(16)=" << std::setprecision(3) << eps_final
           << " nonincreasing over N in {2,4,8,16}, seed 42";
    report(6, "Fejer suite", pass, timer.seconds(), detail.str());
}

// 7. Connes distance: identity and symmetry at 1e-9, triangle inequality on
//    20 sampled triples within 2x solver tolerance, certified <= compressed
//    + tolerance everywhere, and the tiny-instance grid oracle at 1e-4.
void criterion_7() {
    Timer timer;
    bool pass = true;
    auto spec = CocycleSpec::planar(2, 0.3);
    Truncation t(spec, 0, 3.0);
    auto tbl = ball(2, 2, 0, 2.0);
    Rng rng(4040);

    DistanceOptions compressed;
    compressed.mode = DistanceMode::compressed;
    compressed.max_iter = 3000;
    compressed.tol = 1e-4;
    const double slack = 2.0 * compressed.tol;

    // identity and symmetry
    {
        auto tr = StateSpec::trace_state(spec);
        pass = pass && connes_distance(tr, tr, t, 2.0).value == 0.0;
        auto a = random_vector_state(spec, tbl, 2, rng);
        auto b = random_vector_state(spec, tbl, 2, rng);
        auto ab = connes_distance(a, b, t, 2.0);
        auto ba = connes_distance(b, a, t, 2.0);
        pass = pass && std::abs(ab.value - ba.value) <= 1e-9;
        pass = pass && connes_distance(a, a, t, 2.0).value <= 1e-9;
    }

    for (int trial = 0; trial < 20 && pass; ++trial) {
        auto a = random_vector_state(spec, tbl, 2, rng);
        auto b = random_vector_state(spec, tbl, 2, rng);
        auto c = random_vector_state(spec, tbl, 2, rng);
        // certified mode: closed form, triangle exact
        double ab_cl = connes_distance(a, b, t, 2.0).value;
        double ac_cl = connes_distance(a, c, t, 2.0).value;
        double cb_cl = connes_distance(c, b, t, 2.0).value;
        pass = pass && ab_cl <= ac_cl + cb_cl + 1e-12;
        // compressed mode: triangle within 2x solver tolerance, and the
        // certified value never exceeds it by more than the tolerance
        auto ab = connes_distance(a, b, t, 2.0, compressed);
        auto ac = connes_distance(a, c, t, 2.0, compressed);
        auto cb = connes_distance(c, b, t, 2.0, compressed);
        pass = pass && ab.value <= ac.value + cb.value + slack * std::max(1.0, ab.value);
        pass = pass && ab_cl <= ab.value + compressed.tol;
        pass = pass && ac_cl <= ac.value + compressed.tol;
        pass = pass && cb_cl <= cb.value + compressed.tol;
    }

    // tiny instance against a dense grid search over the two-real-parameter
    // coefficient space
    {
        auto triv = CocycleSpec::planar(2, 0.0);
        Truncation tt(triv, 0, 3.0);
        auto zero = GroupElement::zero(2, 2);
        auto g1 = elem(2, {{1, 0}, {0, 0}});
        std::map<GroupElement, Vector> xv;
        Vector e0 = Vector::Zero(2);
        e0[0] = cplx(1.0, 0.0);
        xv[zero] = e0;
        xv[g1] = cplx(0.6, 0.5) * e0;
        auto phi = StateSpec::vector_state(triv, std::move(xv));
        auto tr = StateSpec::trace_state(triv);

        DistanceOptions opts = compressed;
        opts.max_iter = 6000;
        opts.tol = 1e-7;
        auto rep = connes_distance(phi, tr, tt, 1.5, opts);

        cplx delta = phi.phi(g1);
        Matrix dp = commutator_matrix(FourierPolynomial::delta(triv, g1), tt).dense() +
                    commutator_matrix(FourierPolynomial::delta(triv, -g1), tt).dense();
        Matrix dm =
            cplx(0.0, 1.0) * commutator_matrix(FourierPolynomial::delta(triv, g1), tt).dense() -
            cplx(0.0, 1.0) * commutator_matrix(FourierPolynomial::delta(triv, -g1), tt).dense();
        auto ratio = [&](double angle) {
            Matrix m = std::cos(angle) * dp + std::sin(angle) * dm;
            double obj = 2.0 * (std::cos(angle) * delta.real() - std::sin(angle) * delta.imag());
            double h = spectral_norm_dense(m);
            return h > 0.0 ? obj / h : 0.0;
        };
        double best = 0.0, best_angle = 0.0;
        for (int k = 0; k < 720; ++k) {
            double v = ratio(2.0 * M_PI * k / 720.0);
            if (v > best) {
                best = v;
                best_angle = 2.0 * M_PI * k / 720.0;
            }
        }
        double lo = best_angle - 2.0 * M_PI / 720.0, hi = best_angle + 2.0 * M_PI / 720.0;
        for (int iter = 0; iter < 60; ++iter) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (ratio(m1) < ratio(m2))
                lo = m1;
            else
                hi = m2;
        }
        best = std::max(best, ratio(0.5 * (lo + hi)));
        pass = pass && std::abs(rep.value - best) <= 1e-4;
    }

    report(7, "Connes distance", pass, timer.seconds(),
           "20 triples, symmetry 1e-9, triangle 2x solver tol, grid oracle 1e-4");
}

// 8. Determinism: identical config+seed give byte-identical JSON across runs.
void criterion_8() {
    Timer timer;
    bool pass = true;
    const std::string cli = SOLENOID_CLI_PATH;
    auto read_file = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    auto run_twice = [&](const std::string& args, const std::string& tag) {
        std::string out1 = "/tmp/solenoid_accept_" + tag + "_1.json";
        std::string out2 = "/tmp/solenoid_accept_" + tag + "_2.json";
        std::string cmd1 = cli + " " + args + " --out " + out1 + " >/dev/null 2>&1";
        std::string cmd2 = cli + " " + args + " --out " + out2 + " >/dev/null 2>&1";
        if (std::system(cmd1.c_str()) != 0) return false;
        if (std::system(cmd2.c_str()) != 0) return false;
        std::string a = read_file(out1), b = read_file(out2);
        std::remove(out1.c_str());
        std::remove(out2.c_str());
        return !a.empty() && a == b;
    };
    pass = pass && run_twice("ball --p 2 --d 2 --n 1 --r 3", "ball");
    pass = pass &&
           run_twice("converge --n 0 --m 1 --r 4 --sweep-N 2,4 --samples 6 --seed 7 "
                     "--support-radius 2.5 --theta 0.3",
                     "converge");
    pass = pass &&
           run_twice("distance --phi rand:1 --psi rand:2 --mode compressed --n 0 --r 3 "
                     "--support-radius 2 --seed 11 --theta 0.3",
                     "distance");
    report(8, "determinism", pass, timer.seconds(),
           "byte-identical JSON for ball, converge, distance reruns");
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures;
}
