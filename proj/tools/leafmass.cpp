// Command-line front end: exact masses, class numbers, lattice operations,
// finite-group reports and the acceptance matrix. Exit codes: 0 success,
// 1 domain error, 2 resource error, 3 internal-consistency failure,
// 64 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "leafmass/lattice_io.hpp"
#include "leafmass/report_json.hpp"
#include "leafmass/verify.hpp"

using namespace leafmass;
using nlohmann::ordered_json;

namespace {

std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

HermitianLattice load_lattice(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open lattice file: " + path);
    nlohmann::json j;
    in >> j;
    return lattice_from_json(j);
}

void emit(const ordered_json& j, const std::string& format) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump(2) << "\n"; // text falls back to pretty JSON unless overridden
}

int threads_from_env() {
    const char* env = std::getenv("LEAFMASS_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n == 0) return static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quaternion Hermitian masses, class numbers and strata"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    std::string format = "text";
    app.add_option("--format", format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomised checks (default 0)");
    long max_bound = 64;
    app.add_option("--max-bound", max_bound, "short-vector bound ceiling")->check(CLI::PositiveNumber);
    long long max_nodes = 500000000;
    app.add_option("--max-enum", max_nodes, "search node budget")->check(CLI::PositiveNumber);

    // mass
    auto* mass_cmd = app.add_subcommand("mass", "maximal-lattice genus mass M_n(D1,D2)");
    long m_n = 1;
    long m_d1 = 1, m_d2 = 1;
    mass_cmd->add_option("--n", m_n, "rank")->required();
    mass_cmd->add_option("--d1", m_d1, "principal-class primes product")->required();
    mass_cmd->add_option("--d2", m_d2, "non-principal-class primes product")->required();

    // ssp-mass
    auto* ssp_cmd = app.add_subcommand("ssp-mass", "superspecial mass v_g L_{g,p^c}");
    long s_g = 1, s_c = 0, s_p = 2;
    ssp_cmd->add_option("--g", s_g)->required();
    ssp_cmd->add_option("--c", s_c)->required();
    ssp_cmd->add_option("--p", s_p)->required();

    // leaf-mass
    auto* leaf_cmd = app.add_subcommand("leaf-mass", "central-leaf mass for g = 2, 3");
    long l_g = 2, l_p = 2, l_a = 1, l_d = 3;
    std::string l_case = "beyond-fp4";
    bool l_in_divisor = false, l_t_fp6 = false;
    leaf_cmd->add_option("--g", l_g, "genus (2 or 3)")->required();
    leaf_cmd->add_option("--p", l_p)->required();
    leaf_cmd->add_option("--a", l_a, "a-number (g = 3: 1 or 2)");
    leaf_cmd->add_option("--case", l_case, "parameter field: fp4-not-fp2 | beyond-fp4 (g=2 or g=3 a=2: also fp2)");
    leaf_cmd->add_option("--d", l_d, "d-value in {3,4,5,6} (g = 3, a = 1)");
    leaf_cmd->add_flag("--in-divisor", l_in_divisor, "y lies in the divisor D (g = 3, a = 1)");
    leaf_cmd->add_flag("--t-in-fp6", l_t_fp6, "t defined over F_{p^6} (g = 3, a = 1)");

    // class-number
    auto* cn_cmd = app.add_subcommand("class-number", "Eichler H_1(D,1) or the g = 2 leaf class number");
    long c_eichler = 0;
    long c_p = 0;
    std::string c_case = "beyond-fp4";
    cn_cmd->add_option("--eichler", c_eichler, "discriminant D for H_1(D,1)");
    cn_cmd->add_option("--g2-p", c_p, "prime p for the genus-2 leaf class number");
    cn_cmd->add_option("--case", c_case, "fp4-not-fp2 | beyond-fp4");

    // gauss-table
    auto* gauss_cmd = app.add_subcommand("gauss-table", "class-number-one classification table");
    long g_nmax = 4;
    long g_dmax = 13;
    gauss_cmd->add_option("--n-max", g_nmax)->required();
    gauss_cmd->add_option("--d-max", g_dmax)->required();

    // decompose-lattice / aut / isometric
    auto* dec_cmd = app.add_subcommand("decompose-lattice", "orthogonal decomposition of a lattice file");
    std::string dec_file;
    dec_cmd->add_option("file", dec_file)->required();
    auto* aut_cmd = app.add_subcommand("aut", "automorphism group of a lattice file");
    std::string aut_file;
    aut_cmd->add_option("file", aut_file)->required();
    auto* iso_cmd = app.add_subcommand("isometric", "isometry test for two lattice files");
    std::string iso_f1, iso_f2;
    iso_cmd->add_option("file1", iso_f1)->required();
    iso_cmd->add_option("file2", iso_f2)->required();

    // double-cosets
    auto* dc_cmd = app.add_subcommand("double-cosets", "Gamma\\G/H report");
    long dc_g = 3, dc_p = 2;
    int dc_trials = 0;
    dc_cmd->add_option("--g", dc_g)->required();
    dc_cmd->add_option("--p", dc_p)->required();
    dc_cmd->add_option("--trials", dc_trials, "choice-independence conjugation trials");

    // stabilizer
    auto* st_cmd = app.add_subcommand("stabilizer", "isotropic eigenspace stabiliser in Sp_{2c}(F_q)");
    long st_twoc = 4, st_q = 4;
    std::vector<long> st_subset{0};
    st_cmd->add_option("--two-c", st_twoc)->required();
    st_cmd->add_option("--q", st_q)->required();
    st_cmd->add_option("--subset", st_subset, "eigenline indices in Z/2c");

    // eo-strata
    auto* eo_cmd = app.add_subcommand("eo-strata", "elementary sequences and Newton polygons");
    long eo_g = 4;
    long eo_prank = -1;
    eo_cmd->add_option("--g", eo_g)->required();
    eo_cmd->add_option("--p-rank", eo_prank, "filter by p-rank");

    // leaf-verdict
    auto* lv_cmd = app.add_subcommand("leaf-verdict", "is the central leaf a singleton?");
    long lv_g = 1, lv_p = 2, lv_a = 0;
    lv_cmd->add_option("--g", lv_g)->required();
    lv_cmd->add_option("--p", lv_p)->required();
    lv_cmd->add_option("--a", lv_a, "a-number (needed at g = 3, p = 2)");

    // verify-all
    auto* verify_cmd = app.add_subcommand("verify-all", "run the acceptance matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (*mass_cmd) {
            Rational m = mass_maximal(m_n, m_d1, m_d2);
            if (format == "json" || format == "text")
                std::cout << m.json() << "\n";
            else
                std::cout << "num,den\n" << m.num().get_str() << "," << m.den().get_str() << "\n";
            return 0;
        }
        if (*ssp_cmd) {
            Rational m = mass_superspecial(s_g, s_c, s_p);
            std::cout << m.json() << "\n";
            return 0;
        }
        if (*leaf_cmd) {
            Rational m;
            if (l_g == 2) {
                G2ParameterField pf = l_case == "fp4-not-fp2" ? G2ParameterField::InP1Fp4NotFp2
                                                              : G2ParameterField::BeyondFp4;
                require(l_case == "fp4-not-fp2" || l_case == "beyond-fp4",
                        "leaf-mass: --case must be fp4-not-fp2 or beyond-fp4 at g = 2");
                m = mass_g2_nonss({l_p, pf});
            } else if (l_g == 3 && l_a >= 2) {
                G3UCase uc;
                if (l_case == "fp2") uc = G3UCase::UFp2;
                else if (l_case == "fp4-not-fp2") uc = G3UCase::UFp4NotFp2;
                else if (l_case == "beyond-fp4") uc = G3UCase::BeyondFp4;
                else throw domain_error("leaf-mass: --case must be fp2, fp4-not-fp2 or beyond-fp4");
                m = mass_g3_a2(l_p, uc);
            } else if (l_g == 3) {
                m = mass_g3_a1(l_p, static_cast<int>(l_d), l_in_divisor, l_t_fp6);
            } else {
                throw domain_error("leaf-mass: supported genera are 2 and 3");
            }
            std::cout << m.json() << "\n";
            return 0;
        }
        if (*cn_cmd) {
            if (c_eichler > 0) {
                std::cout << eichler_class_number(c_eichler).get_str() << "\n";
                return 0;
            }
            require(c_p > 0, "class-number: need --eichler D or --g2-p P");
            G2ParameterField pf = c_case == "fp4-not-fp2" ? G2ParameterField::InP1Fp4NotFp2
                                                          : G2ParameterField::BeyondFp4;
            std::cout << class_number_g2_nonss({c_p, pf}).get_str() << "\n";
            return 0;
        }
        if (*gauss_cmd) {
            auto table = full_table(g_nmax, g_dmax, verified_aut_oracle());
            if (format == "json") {
                std::cout << gauss_table_json(table).dump(2) << "\n";
            } else if (format == "csv") {
                std::cout << "n,d1,d2,verdict,rule,witness,mass\n";
                for (const auto& row : table)
                    std::cout << row.label.n << "," << row.label.d1.get_str() << ","
                              << row.label.d2.get_str() << "," << to_string(row.verdict) << ","
                              << to_string(row.rule) << ","
                              << csv_quote(row.witness ? *row.witness : "") << ","
                              << csv_quote(row.mass.str()) << "\n";
            } else {
                // Text layout mirrors the four-case classification: the
                // class-number-one rows grouped by rank, then the rest.
                std::map<long, std::vector<std::string>> ones;
                for (const auto& row : table)
                    if (row.verdict == Verdict::One || row.verdict == Verdict::KnownOneCited)
                        ones[row.label.n].push_back("(" + row.label.d1.get_str() + "," +
                                                    row.label.d2.get_str() + ") [" +
                                                    to_string(row.rule) + "]");
                std::cout << "class number one exactly at:\n";
                for (const auto& [n, rows] : ones) {
                    std::cout << "  n = " << n << ": ";
                    for (size_t i = 0; i < rows.size(); ++i)
                        std::cout << rows[i] << (i + 1 < rows.size() ? ", " : "");
                    std::cout << "\n";
                }
                std::cout << "all other labels with D <= " << g_dmax << ":";
                long more = 0, undecided = 0;
                for (const auto& row : table) {
                    if (row.verdict == Verdict::MoreThanOne) ++more;
                    if (row.verdict == Verdict::Undecided) ++undecided;
                }
                std::cout << " " << more << " with class number > 1, " << undecided
                          << " undecided\n";
            }
            return 0;
        }
        if (*dec_cmd) {
            HermitianLattice l = load_lattice(dec_file);
            DecompositionBudget budget;
            budget.max_trace_bound = max_bound;
            budget.node_budget = max_nodes;
            auto dec = orthogonal_decompose(l, budget);
            ordered_json out;
            out["components"] = ordered_json::array();
            for (const auto& comp : dec.components)
                out["components"].push_back(lattice_to_json(comp.lattice));
            out["classes"] = dec.classes;
            emit(out, format);
            return 0;
        }
        if (*aut_cmd) {
            HermitianLattice l = load_lattice(aut_file);
            AutomorphismGroup g = automorphism_group(l, max_nodes);
            ordered_json out;
            out["order"] = g.order.get_str();
            out["generators"] = ordered_json::array();
            for (const auto& gen : g.generators) {
                ordered_json gj = ordered_json::array();
                for (const auto& row : gen) {
                    ordered_json rj = ordered_json::array();
                    for (const auto& e : row) {
                        ordered_json ej = ordered_json::array();
                        for (const auto& x : e) ej.push_back(x.get_str());
                        rj.push_back(ej);
                    }
                    gj.push_back(rj);
                }
                out["generators"].push_back(gj);
            }
            emit(out, format);
            return 0;
        }
        if (*iso_cmd) {
            bool iso = isometric(load_lattice(iso_f1), load_lattice(iso_f2), max_nodes);
            ordered_json out{{"isometric", iso}};
            emit(out, format);
            return 0;
        }
        if (*dc_cmd) {
            EghReport rep = build_egh_and_cosets(dc_g, dc_p);
            std::optional<bool> ci;
            if (dc_trials > 0) ci = choice_independence_check(dc_g, dc_p, dc_trials, seed);
            emit(egh_report_json(rep, ci), format);
            return 0;
        }
        if (*st_cmd) {
            std::set<long> subset(st_subset.begin(), st_subset.end());
            auto rep = isotropic_stabilizer(st_twoc, st_q, subset);
            emit(stabilizer_json(rep, st_q), format);
            return 0;
        }
        if (*eo_cmd) {
            std::optional<long> filter;
            if (eo_prank >= 0) filter = eo_prank;
            auto strata = enumerate_elementary_sequences(eo_g, filter);
            if (format == "json") {
                std::cout << eo_strata_json(eo_g, filter).dump(2) << "\n";
            } else {
                for (const auto& phi : strata) {
                    std::cout << "(";
                    for (size_t i = 0; i < phi.values.size(); ++i)
                        std::cout << phi.values[i] << (i + 1 < phi.values.size() ? "," : "");
                    std::cout << ")  p-rank " << p_rank(phi) << "  a-number " << a_number(phi);
                    if (eo_g == 4 && p_rank(phi) == 0)
                        std::cout << (supersingular_g4(phi) ? "  supersingular" : "");
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (*lv_cmd) {
            std::optional<long> a;
            if (lv_a > 0) a = lv_a;
            LeafVerdict verdict = central_leaf_verdict(lv_g, lv_p, a);
            emit(leaf_verdict_json(lv_g, lv_p, a, verdict), format);
            return 0;
        }
        if (*verify_cmd) {
            auto results = run_acceptance(threads_from_env());
            int failed = 0;
            if (format == "json") {
                for (const auto& r : results)
                    if (!r.pass) ++failed;
                std::cout << verify_results_json(results).dump(2) << "\n";
            } else {
                for (const auto& r : results) {
                    std::printf("%-28s %s  (%.2fs)\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
                                r.seconds);
                    for (const auto& f : r.failures)
                        std::printf("    clause failed: %s\n", f.c_str());
                    if (!r.pass) ++failed;
                }
                std::printf("%zu/%zu criteria passed\n",
                            results.size() - static_cast<size_t>(failed), results.size());
            }
            return failed == 0 ? 0 : 3;
        }
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 64;
}
