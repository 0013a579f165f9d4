#pragma once

#include <json.hpp>

#include "leafmass/lattice.hpp"

namespace leafmass {

/// Wire format: {"p": int, "rank": n, "gram": [[ [4 rational strings] ... ]]}
/// where each quaternion entry lists its 1,i,j,k coordinates as rational
/// strings ("n" or "n/d").
inline nlohmann::ordered_json lattice_to_json(const HermitianLattice& l) {
    nlohmann::ordered_json out;
    out["p"] = l.order().p.get_si();
    out["rank"] = l.rank();
    nlohmann::ordered_json gram = nlohmann::ordered_json::array();
    for (long i = 0; i < l.rank(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (long j = 0; j < l.rank(); ++j) {
            nlohmann::ordered_json entry = nlohmann::ordered_json::array();
            for (size_t c = 0; c < 4; ++c) entry.push_back(l.gram_at(i, j).c[c].str());
            row.push_back(entry);
        }
        gram.push_back(row);
    }
    out["gram"] = gram;
    return out;
}

inline HermitianLattice lattice_from_json(const nlohmann::json& j) {
    require(j.contains("p") && j.contains("rank") && j.contains("gram"),
            "lattice_from_json: need p, rank, gram");
    long p = j["p"].get<long>();
    long rank = j["rank"].get<long>();
    auto ord = std::make_shared<const QuaternionOrder>(make_order(p));
    require(j["gram"].is_array() && j["gram"].size() == static_cast<size_t>(rank),
            "lattice_from_json: bad gram shape");
    std::vector<std::vector<Quat>> gram(static_cast<size_t>(rank),
                                        std::vector<Quat>(static_cast<size_t>(rank)));
    for (size_t i = 0; i < static_cast<size_t>(rank); ++i) {
        require(j["gram"][i].size() == static_cast<size_t>(rank), "lattice_from_json: bad gram row");
        for (size_t c = 0; c < static_cast<size_t>(rank); ++c) {
            const auto& entry = j["gram"][i][c];
            require(entry.is_array() && entry.size() == 4, "lattice_from_json: entry needs 4 coords");
            for (size_t k = 0; k < 4; ++k)
                gram[i][c].c[k] = Rational::parse(entry[k].get<std::string>());
        }
    }
    return HermitianLattice(ord, rank, gram);
}

} // namespace leafmass
