#pragma once

#include <json.hpp>

#include "solenoid/convergence.hpp"
#include "solenoid/distance.hpp"

namespace solenoid {

// All machine-readable output is schema-versioned ordered JSON (insertion
// order is preserved, so byte-identical reruns come for free) or CSV.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(const GroupElement& g) {
    Json coords = Json::array();
    for (const auto& c : g.coords()) coords.push_back(Json::array({c.num(), c.exp()}));
    return coords;
}

inline GroupElement group_element_from_json(const Json& j, std::int64_t p) {
    std::vector<PadicRational> coords;
    for (const auto& c : j)
        coords.emplace_back(c.at(0).get<std::int64_t>(), c.at(1).get<int>(), p);
    return GroupElement(std::move(coords), p);
}

inline Json to_json(const BallTable& tbl) {
    Json j;
    j["p"] = tbl.p();
    j["d"] = tbl.d();
    j["n"] = tbl.level();
    j["r"] = tbl.radius();
    Json elems = Json::array();
    for (const auto& g : tbl.elements()) elems.push_back(to_json(g));
    j["elements"] = std::move(elems);
    return j;
}

inline Json to_json(const FourierPolynomial& f) {
    Json support = Json::array();
    for (const auto& [g, c] : f.support()) {
        Json entry;
        entry["g"] = to_json(g);
        entry["re"] = c.real();
        entry["im"] = c.imag();
        support.push_back(std::move(entry));
    }
    Json j;
    j["support"] = std::move(support);
    return j;
}

inline FourierPolynomial fourier_from_json(const Json& j, const CocycleSpec& ambient) {
    FourierPolynomial f(ambient);
    for (const auto& entry : j.at("support")) {
        GroupElement g = group_element_from_json(entry.at("g"), ambient.p);
        f.add(g, cplx(entry.at("re").get<double>(), entry.at("im").get<double>()));
    }
    return f;
}

inline Json to_json(const GammaSet& set) {
    Json gammas = Json::array();
    for (const auto& m : set.gammas) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
            rows.push_back(std::move(row));
        }
        gammas.push_back(std::move(rows));
    }
    Json j;
    j["d"] = set.d;
    j["dim"] = set.dim;
    j["gammas"] = std::move(gammas);
    return j;
}

inline Json to_json(const LipEqualityReport& rep) {
    Json j;
    j["k0_norm"] = rep.k0_norm;
    j["max_coset_norm"] = rep.max_coset_norm;
    j["full_norm"] = rep.full_norm;
    j["tol"] = rep.tol;
    j["pass"] = rep.pass;
    return j;
}

inline Json to_json(const BridgeBuilderReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["N"] = rep.N;
    j["samples"] = rep.samples;
    j["eps_max"] = rep.eps_max;
    j["eps_mean"] = rep.eps_mean;
    j["seed"] = rep.seed;
    j["support_radius"] = rep.support_radius;
    return j;
}

// Sparse matrix rows as CSV lines "row,col,re,im" for external inspection.
inline std::string to_csv(const SpMat& m) {
    std::ostringstream os;
    os << "row,col,re,im\n";
    os.precision(17);
    for (const auto& e : m.entries)
        os << e.row << "," << e.col << "," << e.value.real() << "," << e.value.imag() << "\n";
    return os.str();
}

}  // namespace solenoid
