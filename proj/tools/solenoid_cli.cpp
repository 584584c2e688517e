// Command-line front end: every operation of the library behind flags or a
// JSON config file, with machine-readable JSON/CSV output.
//
// Exit codes: 0 ok, 1 config error, 2 resource cap, 3 assertion/oracle
// mismatch, 4 solver non-convergence.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "solenoid/solenoid.hpp"

namespace {

using namespace solenoid;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitResource = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitSolver = 4;

struct Config {
    std::int64_t p = 2;
    int d = 2;
    std::vector<double> theta;  // row-major d x d, or a single planar value
    int n = 0;
    int m = 1;
    double r = 4.0;
    int N = 4;
    double support_radius = 2.0;
    double tol = 1e-9;
    std::string mode = "certified_lower";
    std::size_t max_iter = 4000;
    double solver_tol = 1e-6;
    std::uint64_t seed = 42;
    std::size_t cap = kDefaultBallCap;
    std::string format = "json";
    std::string out;
};

void validate_common(const Config& cfg) {
    if (cfg.p < 2) throw std::invalid_argument("p must be >= 2");
    if (cfg.d < 1) throw std::invalid_argument("d must be >= 1");
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument("format must be json or csv");
}

Eigen::MatrixXd theta_matrix(const Config& cfg) {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(cfg.d, cfg.d);
    if (cfg.theta.empty()) return theta;
    if (cfg.theta.size() == 1 && cfg.d == 2) {
        theta(0, 1) = cfg.theta[0];
        theta(1, 0) = -cfg.theta[0];
        return theta;
    }
    if (cfg.theta.size() != static_cast<std::size_t>(cfg.d) * static_cast<std::size_t>(cfg.d))
        throw std::invalid_argument("theta needs d*d row-major entries (or one value for d=2)");
    for (int i = 0; i < cfg.d; ++i)
        for (int j = 0; j < cfg.d; ++j)
            theta(i, j) = cfg.theta[static_cast<std::size_t>(i * cfg.d + j)];
    return theta;
}

CocycleSpec algebra(const Config& cfg) { return CocycleSpec(cfg.p, cfg.d, theta_matrix(cfg)); }

// One coordinate: "a", "a/b" with b a power of p, or a decimal exactly
// representable at some level; anything else is rejected, never rounded.
PadicRational parse_coordinate(const std::string& text, std::int64_t p) {
    auto parse_int = [](const std::string& s) {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
        return static_cast<std::int64_t>(v);
    };
    std::int64_t num, den = 1;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = parse_int(text.substr(0, slash));
        den = parse_int(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator must be positive: " + text);
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        num = parse_int(digits);
        for (std::size_t i = dot + 1; i < text.size(); ++i) den = checked_mul(den, 10);
    } else {
        num = parse_int(text);
    }
    std::int64_t g = std::gcd(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    int exp = 0;
    while (den > 1 && den % p == 0) {
        den /= p;
        ++exp;
    }
    if (den != 1)
        throw std::invalid_argument("coordinate " + text + " is not representable in Z[1/" +
                                    std::to_string(p) + "]");
    return PadicRational(num, exp, p);
}

GroupElement parse_element(const std::string& text, std::int64_t p, int d) {
    std::vector<PadicRational> coords;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(parse_coordinate(tok, p));
    if (coords.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("element needs exactly d coordinates");
    return GroupElement(std::move(coords), p);
}

StateSpec parse_state(const std::string& text, const Config& cfg, const CocycleSpec& alg,
                      int fiber_dim) {
    if (text == "trace") return StateSpec::trace_state(alg);
    if (text.rfind("point:", 0) == 0)
        return StateSpec::point_state(alg, parse_element(text.substr(6), cfg.p, cfg.d),
                                      fiber_dim);
    if (text.rfind("rand:", 0) == 0) {
        auto k = static_cast<std::uint64_t>(std::stoull(text.substr(5)));
        Rng rng(derived_seed(cfg.seed, k));
        auto tbl = ball(cfg.p, cfg.d, cfg.n, cfg.support_radius, cfg.cap);
        std::map<GroupElement, Vector> xi;
        for (int pick = 0; pick < 3; ++pick) {
            Vector v(fiber_dim);
            for (int q = 0; q < fiber_dim; ++q) v[q] = cplx(rng.normal(), rng.normal());
            xi[tbl.element(rng.index(tbl.size()))] = v;
        }
        return StateSpec::vector_state(alg, std::move(xi));
    }
    throw std::invalid_argument("state must be trace, point:<element> or rand:<k>");
}

FourierPolynomial load_poly(const std::string& path, const CocycleSpec& alg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open polynomial file " + path);
    Json j = Json::parse(in);
    return fourier_from_json(j, alg);
}

FourierPolynomial random_poly(const Config& cfg, const CocycleSpec& alg, int level) {
    auto support = ball(cfg.p, cfg.d, level, cfg.support_radius, cfg.cap);
    Rng rng(cfg.seed);
    return random_self_adjoint(alg, support, rng);
}

// All output goes through here: the full string is built first, so failures
// never leave partial files behind.
void emit(const Config& cfg, const std::string& content) {
    if (cfg.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open output file " + cfg.out);
    out << content;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

Json config_echo(const Config& cfg) {
    Json j;
    j["p"] = cfg.p;
    j["d"] = cfg.d;
    Json th = Json::array();
    Eigen::MatrixXd theta = theta_matrix(cfg);
    for (int i = 0; i < cfg.d; ++i)
        for (int k = 0; k < cfg.d; ++k) th.push_back(theta(i, k));
    j["theta"] = std::move(th);
    j["seed"] = cfg.seed;
    return j;
}

// ── subcommands ───────────────────────────────────────────────────────────────

int cmd_ball(const Config& cfg) {
    validate_common(cfg);
    auto tbl = ball(cfg.p, cfg.d, cfg.n, cfg.r, cfg.cap);
    auto big = ball(cfg.p, cfg.d, cfg.n, 2.0 * cfg.r, cfg.cap);
    if (cfg.format == "csv") {
        std::ostringstream os;
        for (int j = 0; j < cfg.d; ++j) os << (j ? "," : "") << "num_" << j << ",exp_" << j;
        os << ",length\n";
        for (const auto& g : tbl.elements()) {
            for (int j = 0; j < cfg.d; ++j)
                os << (j ? "," : "") << g.coord(j).num() << "," << g.coord(j).exp();
            os << "," << num(length(g)) << "\n";
        }
        emit(cfg, os.str());
        return kExitOk;
    }
    Json j;
    j["schema"] = kSchemaVersion;
    j["ball"] = to_json(tbl);
    j["count"] = tbl.size();
    Json doubling;
    doubling["r"] = cfg.r;
    doubling["count_r"] = tbl.size();
    doubling["count_2r"] = big.size();
    doubling["ratio"] = static_cast<double>(big.size()) / static_cast<double>(tbl.size());
    j["doubling"] = std::move(doubling);
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_gammas(const Config& cfg) {
    validate_common(cfg);
    auto set = build_gammas(cfg.d);
    auto rep = verify_clifford(set, 1e-12);
    Json j;
    j["schema"] = kSchemaVersion;
    j["gammas"] = to_json(set);
    Json verify;
    verify["max_anticommutation_dev"] = rep.max_anticommutation_dev;
    verify["max_hermiticity_dev"] = rep.max_hermiticity_dev;
    verify["max_unitarity_dev"] = rep.max_unitarity_dev;
    verify["tol"] = rep.tol;
    verify["pass"] = rep.pass;
    j["verify"] = std::move(verify);
    emit(cfg, j.dump(2) + "\n");
    return rep.pass ? kExitOk : kExitMismatch;
}

int cmd_spectrum(const Config& cfg) {
    validate_common(cfg);
    Truncation t(algebra(cfg), cfg.n, cfg.r, cfg.cap);
    auto eigs = dirac_spectrum(t);
    auto expected = dirac_spectrum_expected(t);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < eigs.size(); ++i)
        max_dev = std::max(max_dev, std::abs(eigs[i] - expected[i]));
    bool pass = max_dev <= cfg.tol;

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "eigenvalue,expected,match\n";
        for (std::size_t i = 0; i < eigs.size(); ++i)
            os << num(eigs[i]) << "," << num(expected[i]) << ","
               << (std::abs(eigs[i] - expected[i]) <= cfg.tol ? 1 : 0) << "\n";
        emit(cfg, os.str());
    } else {
        Json j;
        j["schema"] = kSchemaVersion;
        j["config"] = config_echo(cfg);
        j["n"] = cfg.n;
        j["r"] = cfg.r;
        j["hilbert_dim"] = t.hilbert_dim();
        j["max_deviation"] = max_dev;
        j["tol"] = cfg.tol;
        j["pass"] = pass;
        Json rows = Json::array();
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            Json row;
            row["value"] = eigs[i];
            row["expected"] = expected[i];
            rows.push_back(std::move(row));
        }
        j["eigenvalues"] = std::move(rows);
        emit(cfg, j.dump(2) + "\n");
    }
    return pass ? kExitOk : kExitMismatch;
}

int cmd_lip(const Config& cfg, const std::string& generator, const std::string& poly_path,
            const std::vector<double>& sweep_r, bool check_equality) {
    validate_common(cfg);
    auto alg = algebra(cfg);

    FourierPolynomial f(alg);
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_echo(cfg);
    if (!generator.empty()) {
        auto g = parse_element(generator, cfg.p, cfg.d);
        f = FourierPolynomial::delta(alg, g);
        j["generator"] = to_json(g);
    } else if (!poly_path.empty()) {
        f = load_poly(poly_path, alg);
        j["poly"] = to_json(f);
    } else {
        throw std::invalid_argument("lip needs --generator or --poly");
    }
    // the working level is the smallest one containing the support, or --n
    // when that is higher
    int level_n = std::max(cfg.n, f.support_level());
    if (!generator.empty())
        j["exact"] = lip_exact_generator(parse_element(generator, cfg.p, cfg.d), level_n);
    j["n"] = level_n;
    j["upper_bound"] = lip_upper_bound(f);

    if (check_equality) {
        auto rep = lip_equality_check(f, cfg.n, cfg.m, cfg.r, cfg.tol, cfg.cap);
        j["equality_check"] = to_json(rep);
        emit(cfg, j.dump(2) + "\n");
        return rep.pass ? kExitOk : kExitMismatch;
    }

    std::vector<double> radii = sweep_r;
    if (radii.empty())
        for (double radius : {cfg.r - 2.0, cfg.r - 1.0, cfg.r})
            if (radius >= 1.0) radii.push_back(radius);
    Json trace = Json::array();
    double last = 0.0;
    for (double radius : radii) {
        Truncation t(alg, level_n, radius, cfg.cap);
        last = lip(f, t);
        Json row;
        row["R"] = radius;
        row["lip"] = last;
        trace.push_back(std::move(row));
    }
    j["trace"] = std::move(trace);
    j["value"] = last;
    if (j.contains("exact"))
        j["converged"] = std::abs(last - j["exact"].get<double>()) <= 1e-6;
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_distance(const Config& cfg, const std::string& phi_text, const std::string& psi_text) {
    validate_common(cfg);
    auto alg = algebra(cfg);
    Truncation t(alg, cfg.n, cfg.r, cfg.cap);
    auto phi = parse_state(phi_text, cfg, alg, t.fiber_dim());
    auto psi = parse_state(psi_text, cfg, alg, t.fiber_dim());

    DistanceOptions opts;
    if (cfg.mode == "certified_lower")
        opts.mode = DistanceMode::certified_lower;
    else if (cfg.mode == "compressed")
        opts.mode = DistanceMode::compressed;
    else
        throw std::invalid_argument("mode must be certified_lower or compressed");
    opts.max_iter = cfg.max_iter;
    opts.tol = cfg.solver_tol;

    auto rep = connes_distance(phi, psi, t, cfg.support_radius, opts);
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_echo(cfg);
    j["mode"] = cfg.mode;
    j["phi"] = phi_text;
    j["psi"] = psi_text;
    j["support_radius"] = cfg.support_radius;
    j["value"] = rep.value;
    j["degenerate"] = rep.degenerate;
    j["residual"] = rep.residual;
    j["iterations"] = rep.iterations;
    j["lower_bracket"] = rep.lower_bracket;
    j["upper_bracket"] = rep.upper_bracket;
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_fejer(const Config& cfg, const std::string& poly_path) {
    validate_common(cfg);
    auto alg = algebra(cfg);
    Truncation t(alg, cfg.m, cfg.r, cfg.cap);
    FourierPolynomial f =
        poly_path.empty() ? random_poly(cfg, alg, cfg.m) : load_poly(poly_path, alg);

    FejerSpec spec(cfg.n, cfg.N);
    auto smoothed = fejer_smooth(f, spec);
    bool coeff_ok = true;
    for (const auto& [g, c] : f.support())
        if (std::abs(smoothed.at(g)) > std::abs(c)) coeff_ok = false;
    auto rep = fejer_lip_contraction_check(f, spec, t, 1e-6);

    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_echo(cfg);
    j["n"] = cfg.n;
    j["N"] = cfg.N;
    j["lip_before"] = rep.lip_before;
    j["lip_after"] = rep.lip_after;
    j["contraction_pass"] = rep.pass;
    j["coefficient_contraction_pass"] = coeff_ok;
    j["smoothed"] = to_json(smoothed);
    emit(cfg, j.dump(2) + "\n");
    return (rep.pass && coeff_ok) ? kExitOk : kExitMismatch;
}

int cmd_converge(const Config& cfg, const std::vector<int>& sweep_n,
                 const std::vector<double>& sweep_window, std::size_t samples) {
    validate_common(cfg);
    auto alg = algebra(cfg);
    Truncation t(alg, cfg.m, cfg.r, cfg.cap);

    std::vector<int> orders = sweep_n.empty() ? std::vector<int>{2, 4, 8, 16} : sweep_n;
    // The whole sweep shares one base seed so every N sees the same sample
    // set; sample streams inside derive from (seed, sample index).
    auto reports = parallel_map(orders, [&](const int& N) {
        return bridge_builder_epsilon(cfg.n, FejerSpec(cfg.n, N), t, cfg.support_radius,
                                      samples, cfg.seed);
    });

    std::vector<std::pair<double, double>> spectral;
    if (!sweep_window.empty()) {
        Truncation coarse(alg, cfg.n, cfg.r, cfg.cap);
        for (double w : sweep_window)
            spectral.emplace_back(w, spectral_compare(coarse, t, w));
    }

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "N,eps_max,eps_mean\n";
        for (const auto& rep : reports)
            os << rep.N << "," << num(rep.eps_max) << "," << num(rep.eps_mean) << "\n";
        if (!spectral.empty()) {
            os << "\nwindow,hausdorff\n";
            for (auto [w, h] : spectral) os << num(w) << "," << num(h) << "\n";
        }
        emit(cfg, os.str());
        return kExitOk;
    }
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_echo(cfg);
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["r"] = cfg.r;
    j["samples"] = samples;
    Json sweep = Json::array();
    for (const auto& rep : reports) sweep.push_back(to_json(rep));
    j["bridge"] = std::move(sweep);
    Json sp = Json::array();
    for (auto [w, h] : spectral) {
        Json row;
        row["window"] = w;
        row["hausdorff"] = h;
        sp.push_back(std::move(row));
    }
    j["spectral"] = std::move(sp);
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

// Fill config defaults from a JSON file; explicit flags override afterwards.
void load_config_file(Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    Json j = Json::parse(in);
    if (j.contains("p")) cfg.p = j["p"].get<std::int64_t>();
    if (j.contains("d")) cfg.d = j["d"].get<int>();
    if (j.contains("theta")) cfg.theta = j["theta"].get<std::vector<double>>();
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("m")) cfg.m = j["m"].get<int>();
    if (j.contains("r")) cfg.r = j["r"].get<double>();
    if (j.contains("N")) cfg.N = j["N"].get<int>();
    if (j.contains("support_radius")) cfg.support_radius = j["support_radius"].get<double>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
    if (j.contains("max_iter")) cfg.max_iter = j["max_iter"].get<std::size_t>();
    if (j.contains("solver_tol")) cfg.solver_tol = j["solver_tol"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("cap")) cfg.cap = j["cap"].get<std::size_t>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;

    // two-phase parse: --config first, then flags override
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(cfg, argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitConfig;
            }
        }
    }

    CLI::App app{"numerical laboratory for spectral triples on noncommutative solenoids"};
    app.require_subcommand(1);
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "base p >= 2");
        sub->add_option("--d", cfg.d, "dimension d >= 1");
        sub->add_option("--theta", cfg.theta,
                        "antisymmetric theta, row-major d*d (or one value for d=2)")
            ->delimiter(',');
        sub->add_option("--n", cfg.n, "level n");
        sub->add_option("--m", cfg.m, "proxy level m");
        sub->add_option("--r", cfg.r, "truncation radius");
        sub->add_option("--N", cfg.N, "Fejer order");
        sub->add_option("--support-radius", cfg.support_radius, "support radius");
        sub->add_option("--tol", cfg.tol, "report tolerance");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--cap", cfg.cap, "ball element cap");
        sub->add_option("--format", cfg.format, "json or csv");
        sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
        sub->add_option("--config", config_path, "JSON config file (flags override)");
    };

    auto* ball_cmd = app.add_subcommand("ball", "enumerate a ball and its doubling ratio");
    add_common(ball_cmd);

    auto* gammas_cmd = app.add_subcommand("gammas", "build and verify the Clifford generators");
    add_common(gammas_cmd);

    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "truncated Dirac spectrum against the exact lengths");
    add_common(spectrum_cmd);

    std::string generator, poly_path;
    std::vector<double> sweep_r;
    bool check_equality = false;
    auto* lip_cmd = app.add_subcommand("lip", "Lipschitz seminorm of a generator or polynomial");
    add_common(lip_cmd);
    lip_cmd->add_option("--generator", generator, "group element, e.g. 1/2,0");
    lip_cmd->add_option("--poly", poly_path, "polynomial JSON file");
    lip_cmd->add_option("--sweep-r", sweep_r, "radii for the convergence trace")->delimiter(',');
    lip_cmd->add_flag("--check-equality", check_equality,
                      "coset-block seminorm comparison between levels n and m");

    std::string phi_text = "trace", psi_text = "trace";
    auto* distance_cmd = app.add_subcommand("distance", "Connes distance between two states");
    add_common(distance_cmd);
    distance_cmd->add_option("--phi", phi_text, "trace | point:<element> | rand:<k>");
    distance_cmd->add_option("--psi", psi_text, "trace | point:<element> | rand:<k>");
    distance_cmd->add_option("--mode", cfg.mode, "certified_lower | compressed");
    distance_cmd->add_option("--max-iter", cfg.max_iter, "solver iteration cap");
    distance_cmd->add_option("--solver-tol", cfg.solver_tol, "solver stationarity target");

    std::string fejer_poly;
    auto* fejer_cmd = app.add_subcommand("fejer", "Fejer smoothing and Lip contraction check");
    add_common(fejer_cmd);
    fejer_cmd->add_option("--poly", fejer_poly, "polynomial JSON file (random when omitted)");

    std::vector<int> sweep_n;
    std::vector<double> sweep_window;
    std::size_t samples = 16;
    auto* converge_cmd =
        app.add_subcommand("converge", "bridge-builder epsilon sweep and spectral comparison");
    add_common(converge_cmd);
    converge_cmd->add_option("--sweep-N", sweep_n, "Fejer orders")->delimiter(',');
    converge_cmd->add_option("--sweep-window", sweep_window, "spectral windows")->delimiter(',');
    converge_cmd->add_option("--samples", samples, "Monte Carlo samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*ball_cmd) return cmd_ball(cfg);
        if (*gammas_cmd) return cmd_gammas(cfg);
        if (*spectrum_cmd) return cmd_spectrum(cfg);
        if (*lip_cmd) return cmd_lip(cfg, generator, poly_path, sweep_r, check_equality);
        if (*distance_cmd) return cmd_distance(cfg, phi_text, psi_text);
        if (*fejer_cmd) return cmd_fejer(cfg, fejer_poly);
        if (*converge_cmd) return cmd_converge(cfg, sweep_n, sweep_window, samples);
    } catch (const resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResource;
    } catch (const solver_error& e) {
        std::cerr << "solver did not converge (residual " << e.residual() << "): " << e.what()
                  << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
