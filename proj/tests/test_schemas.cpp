#include <catch2/catch.hpp>

#include <fstream>
#include <regex>

#include "leafmass/lattice_io.hpp"
#include "leafmass/report_json.hpp"

using namespace leafmass;
using nlohmann::json;

namespace {

// Validator for the JSON Schema subset used by the shipped schema files:
// type, required, properties, items, enum, pattern.
bool validate(const json& schema, const json& value, std::string& why) {
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "number" && value.is_number()) || (t == "boolean" && value.is_boolean());
        if (!ok) {
            why = "type mismatch: expected " + t;
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"]) found = found || e == value;
        if (!found) {
            why = "value not in enum";
            return false;
        }
    }
    if (schema.contains("pattern") && value.is_string()) {
        std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_search(value.get<std::string>(), re)) {
            why = "pattern mismatch for " + value.get<std::string>();
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    why = "missing required key " + key.get<std::string>();
                    return false;
                }
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    if (!validate(it.value(), value[it.key()], why)) {
                        why = it.key() + ": " + why;
                        return false;
                    }
    }
    if (value.is_array() && schema.contains("items")) {
        for (const auto& item : value)
            if (!validate(schema["items"], item, why)) {
                why = "item: " + why;
                return false;
            }
    }
    return true;
}

json load_schema(const std::string& name) {
    for (const std::string prefix : {"schemas/", "../schemas/", "../../schemas/"}) {
        std::ifstream in(prefix + name);
        if (in.good()) {
            json j;
            in >> j;
            return j;
        }
    }
    FAIL("schema file not found: " + name);
    return {};
}

void expect_valid(const std::string& schema_name, const json& value) {
    std::string why;
    bool ok = validate(load_schema(schema_name), value, why);
    INFO(schema_name << ": " << why);
    CHECK(ok);
}

} // namespace

TEST_CASE("emitted JSON validates against the shipped schemas") {
    expect_valid("rational.schema.json", json::parse(Rational(-7, 3).json()));
    expect_valid("rational.schema.json", rational_json(mass_maximal(3, 1, 2)));

    auto o = std::make_shared<const QuaternionOrder>(make_order(2));
    expect_valid("lattice.schema.json",
                 lattice_to_json(HermitianLattice::standard(o, 2, Rational(3, 2))));

    expect_valid("gauss_table.schema.json", gauss_table_json(full_table(2, 13, AutOracle{})));

    EghReport rep = build_egh_and_cosets(3, 2);
    expect_valid("double_cosets.schema.json", egh_report_json(rep, true));

    expect_valid("stabilizer.schema.json", stabilizer_json(isotropic_stabilizer(4, 4, {0}), 4));

    expect_valid("eo_strata.schema.json", eo_strata_json(4, 0));
    expect_valid("eo_strata.schema.json", eo_strata_json(3, std::nullopt));

    expect_valid("leaf_verdict.schema.json", leaf_verdict_json(3, 2, 2, LeafVerdict::Singleton));
    expect_valid("leaf_verdict.schema.json", leaf_verdict_json(4, 5, std::nullopt, LeafVerdict::NotSingleton));

    std::vector<CheckResult> fake(2);
    fake[0].id = "x";
    fake[1].id = "y";
    fake[1].pass = false;
    fake[1].failures = {"clause"};
    expect_valid("verify_all.schema.json", verify_results_json(fake));
}

TEST_CASE("schema validator actually rejects bad documents") {
    json schema = load_schema("rational.schema.json");
    std::string why;
    CHECK(!validate(schema, json{{"num", "1.5"}, {"den", "2"}}, why));
    CHECK(!validate(schema, json{{"num", "1"}}, why));
    CHECK(!validate(schema, json{{"num", 1}, {"den", 2}}, why));
}
