#ifndef RAINBOW_TOOLS_CLI_HPP
#define RAINBOW_TOOLS_CLI_HPP

#include <rainbow/rainbow.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rainbow::cli {

enum ExitCode : int { ok = 0, verified_fail = 1, usage_error = 2 };

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LoadedColoring {
    Coloring coloring;
    std::optional<ordered_json> params;
};

inline LoadedColoring load_coloring(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error & e) {
        throw InputError(path + ": " + e.what());
    }
    LoadedColoring out{coloring_from_json(j), std::nullopt};
    if (j.contains("meta") && j["meta"].is_object() && j["meta"].contains("params"))
        out.params = j["meta"]["params"];
    return out;
}

/// Rebuilds the construction recorded in a file and checks that it matches.
inline Construction load_construction(const std::string & path)
{
    auto loaded = load_coloring(path);
    if (!loaded.params)
        throw InputError(path + ": no construction parameters (meta.params) recorded");
    auto con = construct_from_params(*loaded.params);
    if (!(con.coloring == loaded.coloring))
        throw InputError(path + ": edges differ from the recorded construction");
    return con;
}

inline void emit(const std::string & text, const std::string & path, std::ostream & out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw InputError("cannot write " + path);
    f << text;
}

inline std::pair<Vertex, Vertex> parse_pair(const std::string & s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw InputError("expected a pair u,v but got \"" + s + "\"");
    try {
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception &) {
        throw InputError("expected a pair u,v but got \"" + s + "\"");
    }
}

inline int env_int(const char * name, int fallback)
{
    const char * v = std::getenv(name);
    return v ? std::atoi(v) : fallback;
}

/// Parses argv and runs one subcommand. Exit codes: 0 success / pass,
/// 1 verified failure, 2 usage or input error.
inline int run(int argc, const char * const * argv, std::ostream & out = std::cout, std::ostream & err = std::cerr)
{
    CLI::App app{"Rainbow k-connection toolkit for complete multipartite graphs"};
    app.require_subcommand(1);

    // construct
    auto * construct = app.add_subcommand("construct", "Build one of the coloring families");
    std::string family, base_file, out_file;
    int a = 0, b = 0, k = 1, m = 0, n = 0;
    std::vector<int> sizes, grow;
    construct->add_option("--family", family, "bipartite4 | ctk | extension | mnn | k2416")->required();
    construct->add_option("--a", a, "bipartite4: size of A");
    construct->add_option("--b", b, "bipartite4: size of B");
    construct->add_option("--k", k, "connectivity level (bipartite4, ctk)");
    construct->add_option("--sizes", sizes, "ctk: part sizes")->delimiter(',');
    construct->add_option("--m", m, "mnn: size of A");
    construct->add_option("--n", n, "mnn: size of B and C");
    construct->add_option("--base", base_file, "extension: base coloring file");
    construct->add_option("--grow", grow, "extension: two 0-based part indices")->delimiter(',');
    construct->add_option("-o,--output", out_file, "output file (default stdout)");

    // verify
    auto * verify = app.add_subcommand("verify", "Decide rainbow k-connectivity exactly");
    std::string coloring_file, mode = "decision", pairs = "all", report_file;
    int jobs = 1;
    bool json_out = false;
    verify->add_option("--coloring", coloring_file, "coloring JSON")->required();
    verify->add_option("--k", k, "target k")->required();
    verify->add_option("--mode", mode, "decision | maximize")->check(CLI::IsMember({"decision", "maximize"}));
    verify->add_option("--pairs", pairs, "all | u,v");
    verify->add_option("--jobs", jobs, "worker threads");
    verify->add_option("--report", report_file, "write the JSON report here");
    verify->add_flag("--json", json_out, "print the JSON report instead of the summary");

    // witness
    auto * witness = app.add_subcommand("witness", "Emit and check the explicit path families of a construction");
    std::string pair_arg;
    witness->add_option("--coloring", coloring_file, "construction JSON (with meta)")->required();
    witness->add_option("--k", k, "target k")->required();
    witness->add_option("--pair", pair_arg, "u,v (default: check every pair)");
    witness->add_option("-o,--output", out_file, "output file for the family JSON");

    // lower-bound
    auto * lower = app.add_subcommand("lower-bound", "Certify the pigeonhole lower bounds");
    std::string scenario;
    int samples = 0;
    std::uint64_t seed = 0;
    lower->add_option("--scenario", scenario, "bipartite5 | multipartite4")
        ->required()
        ->check(CLI::IsMember({"bipartite5", "multipartite4"}));
    lower->add_option("--k", k, "k")->required();
    lower->add_option("--sizes", sizes, "part sizes; the largest part is the twin part")->required()->delimiter(',');
    auto * samples_opt = lower->add_option("--samples", samples, "number of random colorings");
    auto * seed_opt = lower->add_option("--seed", seed, "first seed (seed + i for sample i)");
    lower->add_option("--coloring", coloring_file, "certify this coloring instead of sampling");
    lower->add_option("-o,--output", out_file, "certificate JSON output");

    // fkt
    auto * fkt = app.add_subcommand("fkt", "Print ceil(2k / (t - 1))");
    int t = 0;
    fkt->add_option("--k", k, "k")->required();
    fkt->add_option("--t", t, "number of parts")->required();

    // rck-exact
    auto * rck = app.add_subcommand("rck-exact", "Exact rc_k by exhaustive canonical search");
    SearchBudget budget;
    budget.max_edges = env_int("RAINBOW_MAX_EDGES", budget.max_edges);
    budget.node_limit = env_int("RAINBOW_NODE_LIMIT", 0);
    rck->add_option("--sizes", sizes, "part sizes")->required()->delimiter(',');
    rck->add_option("--k", k, "k")->required();
    rck->add_option("--max-colors", budget.max_colors, "largest palette to try")->required();
    rck->add_option("--max-edges", budget.max_edges, "edge-count guard");
    rck->add_option("-o,--output", out_file, "witness coloring output");

    // export-dot
    auto * dot = app.add_subcommand("export-dot", "Graphviz rendering of a coloring");
    std::vector<std::string> palette;
    dot->add_option("--coloring", coloring_file, "coloring JSON")->required();
    dot->add_option("--palette", palette, "color names for 1..L")->delimiter(',');
    dot->add_option("-o,--output", out_file, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (*construct) {
            Construction con;
            switch (family_from_string(family)) {
            case Family::bipartite4: con = color_bipartite4(a, b, k); break;
            case Family::ctk: con = color_ctk(PartitionSpec(sizes), k); break;
            case Family::mnn: con = color_mnn(m, n); break;
            case Family::k2416: con = color_2_4_16(); break;
            case Family::extension: {
                if (base_file.empty() || grow.size() != 2)
                    throw InputError("extension needs --base FILE and --grow p,q");
                auto loaded = load_coloring(base_file);
                if (loaded.params) {
                    auto base = construct_from_params(*loaded.params);
                    if (!(base.coloring == loaded.coloring))
                        throw InputError(base_file + ": edges differ from the recorded construction");
                    con = color_extension(base, grow[0], grow[1]);
                } else {
                    con = color_extension(loaded.coloring, grow[0], grow[1]);
                }
                break;
            }
            }
            emit(to_json(con).dump() + "\n", out_file, out);
            return ok;
        }

        if (*verify) {
            const auto c = load_coloring(coloring_file).coloring;
            VerifyOptions opt;
            opt.mode = mode == "maximize" ? PackingMode::maximize : PackingMode::decision;
            opt.jobs = jobs;
            if (pairs != "all")
                opt.only_pair = parse_pair(pairs);
            if (k > structural_connectivity(c.spec()))
                err << "note: the graph is only " << structural_connectivity(c.spec()) << "-connected\n";
            auto report = verify_rainbow_k_connected(c, k, opt);
            const auto j = to_json(report);
            if (!report_file.empty())
                emit(j.dump() + "\n", report_file, out);
            if (json_out) {
                out << j.dump() << "\n";
            } else {
                out << (report.pass ? "PASS" : "FAIL") << ": rainbow " << k << "-connectivity, "
                    << report.pairs.size() << " pair(s) checked in " << to_string(opt.mode) << " mode\n";
                if (report.failure) {
                    const auto & f = *report.failure;
                    out << "failing pair " << f.family.u << "," << f.family.v << ": at most " << f.count
                        << " internally disjoint rainbow path(s)\n";
                }
            }
            return report.pass ? ok : verified_fail;
        }

        if (*witness) {
            const auto con = load_construction(coloring_file);
            if (!pair_arg.empty()) {
                auto [u, v] = parse_pair(pair_arg);
                auto fam = witness_paths(con, u, v, k);
                const bool valid = family_is_valid(con.coloring, fam, k);
                auto j = to_json(fam);
                j["valid"] = valid;
                emit(j.dump() + "\n", out_file, out);
                return valid ? ok : verified_fail;
            }
            int bad = 0, total = 0;
            for (Vertex u = 0; u < con.coloring.num_vertices(); ++u)
                for (Vertex v = u + 1; v < con.coloring.num_vertices(); ++v) {
                    ++total;
                    if (!family_is_valid(con.coloring, witness_paths(con, u, v, k), k)) {
                        ++bad;
                        err << "invalid family for pair " << u << "," << v << "\n";
                    }
                }
            out << (bad == 0 ? "PASS" : "FAIL") << ": " << total - bad << "/" << total
                << " witness families valid at k=" << k << "\n";
            return bad == 0 ? ok : verified_fail;
        }

        if (*lower) {
            const auto scen = scenario == "bipartite5" ? LowerBoundScenario::bipartite5 : LowerBoundScenario::multipartite4;
            if (sizes.size() < 2)
                throw InputError("--sizes needs at least two parts");
            auto big = std::max_element(sizes.begin(), sizes.end());
            const int big_m = *big;
            std::vector<int> small;
            for (auto it = sizes.begin(); it != sizes.end(); ++it)
                if (it != big)
                    small.push_back(*it);

            auto certify = [&](const Coloring & c) {
                if (scen == LowerBoundScenario::bipartite5) {
                    if (small.size() != 1)
                        throw InputError("bipartite5 needs exactly two sizes");
                    return certify_bipartite_lower(k, small[0], big_m, c);
                }
                return certify_multipartite_lower(k, static_cast<int>(sizes.size()), small, big_m, c);
            };

            auto certs = ordered_json::array();
            if (!coloring_file.empty()) {
                certs.push_back(to_json(certify(load_coloring(coloring_file).coloring)));
            } else {
                if (samples_opt->count() == 0 || seed_opt->count() == 0)
                    throw InputError("sampling needs explicit --samples and --seed");
                const int colors = scen == LowerBoundScenario::bipartite5 ? 4 : 3;
                const PartitionSpec spec(sizes);
                for (int i = 0; i < samples; ++i)
                    certs.push_back(to_json(certify(random_coloring(spec, colors, seed + i))));
            }
            ordered_json j;
            j["scenario"] = scenario;
            j["certificates"] = certs;
            if (out_file.empty()) {
                out << j.dump() << "\n";
            } else {
                emit(j.dump() + "\n", out_file, out);
                out << certs.size() << " certificate(s) written to " << out_file << "\n";
            }
            return ok;
        }

        if (*fkt) {
            out << f_formula(k, t) << "\n";
            return ok;
        }

        if (*rck) {
            auto result = rc_k_exact(PartitionSpec(sizes), k, budget);
            if (!result.value) {
                out << "rc_" << k << " > " << budget.max_colors << "\n";
                return ok;
            }
            out << "rc_" << k << " = " << *result.value << "\n";
            const auto j = to_json(*result.witness);
            if (out_file.empty())
                out << j.dump() << "\n";
            else
                emit(j.dump() + "\n", out_file, out);
            return ok;
        }

        if (*dot) {
            const auto c = load_coloring(coloring_file).coloring;
            emit(export_dot(c, palette.empty() ? default_palette() : palette), out_file, out);
            return ok;
        }
    } catch (const FormatError & e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const InputError & e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const BudgetExceeded & e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument & e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::out_of_range & e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::logic_error & e) {
        err << "internal error: " << e.what() << "\n";
        return verified_fail;
    }
    return usage_error;
}

} // namespace rainbow::cli

#endif
