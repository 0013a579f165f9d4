#pragma once

#include <json.hpp>

#include "leafmass/egh.hpp"
#include "leafmass/eo.hpp"
#include "leafmass/gauss.hpp"
#include "leafmass/symplectic.hpp"
#include "leafmass/verify.hpp"

namespace leafmass {

using nlohmann::ordered_json;

inline ordered_json rational_json(const Rational& r) {
    return ordered_json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

/// Matrix as nested arrays of coordinate vectors (entry digits, lowest first).
inline ordered_json matrix_json(const GFMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().digits(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline ordered_json gauss_table_json(const std::vector<GaussVerdict>& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table) {
        ordered_json r;
        r["n"] = row.label.n;
        r["d1"] = row.label.d1.get_str();
        r["d2"] = row.label.d2.get_str();
        r["verdict"] = to_string(row.verdict);
        r["rule"] = to_string(row.rule);
        r["witness"] = row.witness ? *row.witness : "";
        r["mass"] = rational_json(row.mass);
        rows.push_back(r);
    }
    return ordered_json{{"rows", rows}};
}

inline ordered_json egh_report_json(const EghReport& rep,
                                    std::optional<bool> choice_independent = std::nullopt) {
    ordered_json out;
    out["g_order"] = rep.g_order.get_str();
    out["gamma_order"] = rep.gamma_order.get_str();
    out["h_order"] = rep.h_order.get_str();
    out["count"] = rep.cosets.count;
    out["identity_coset"] = rep.cosets.identity_coset;
    out["representatives"] = ordered_json::array();
    for (const auto& m : rep.cosets.representatives) out["representatives"].push_back(matrix_json(m));
    out["stabilizer_orders"] = ordered_json::array();
    for (const auto& s : rep.cosets.left_stabilizer_orders)
        out["stabilizer_orders"].push_back(s.get_str());
    out["aut_orders"] = ordered_json::array();
    for (const auto& a : rep.aut_orders) out["aut_orders"].push_back(a.get_str());
    out["mass_sum"] = rational_json(rep.geometric_mass);
    if (choice_independent) out["choice_independent"] = *choice_independent;
    return out;
}

inline ordered_json stabilizer_json(const IsotropicStabilizerReport& rep, long q) {
    long qd = 1;
    for (long i = 0; i < rep.d; ++i) qd *= q;
    ordered_json out;
    out["d"] = rep.d;
    out["matrix_size"] = rep.matrix_size;
    out["end_algebra"] = "Mat_" + std::to_string(rep.matrix_size) + "(F_" + std::to_string(qd) + ")";
    out["stabilizer_order"] = rep.stabilizer_order.get_str();
    return out;
}

inline ordered_json eo_strata_json(long g, std::optional<long> p_rank_filter) {
    ordered_json out;
    out["strata"] = ordered_json::array();
    for (const auto& phi : enumerate_elementary_sequences(g, p_rank_filter)) {
        ordered_json s;
        s["phi"] = phi.values;
        s["p_rank"] = p_rank(phi);
        s["a_number"] = a_number(phi);
        if (g == 4 && p_rank(phi) == 0) s["supersingular"] = supersingular_g4(phi);
        out["strata"].push_back(s);
    }
    if (g == 4 && p_rank_filter == 0) {
        out["newton_polygons"] = ordered_json::array();
        for (const auto& np : newton_prank0(4)) {
            ordered_json slopes = ordered_json::array();
            for (const auto& sl : np.slopes) slopes.push_back(sl.str());
            out["newton_polygons"].push_back(slopes);
        }
        out["closure_edges"] = ordered_json::array();
        for (const auto& [up, down] : eo_g4_closure_edges())
            out["closure_edges"].push_back({up.values, down.values});
    }
    return out;
}

inline ordered_json leaf_verdict_json(long g, long p, std::optional<long> a, LeafVerdict verdict) {
    ordered_json out{{"g", g}, {"p", p}, {"verdict", to_string(verdict)}};
    if (a) out["a"] = *a;
    return out;
}

inline ordered_json verify_results_json(const std::vector<CheckResult>& results) {
    ordered_json out = ordered_json::array();
    for (const auto& r : results) {
        ordered_json item;
        item["id"] = r.id;
        item["pass"] = r.pass;
        item["seconds"] = r.seconds;
        item["failures"] = r.failures;
        out.push_back(item);
    }
    return out;
}

} // namespace leafmass
