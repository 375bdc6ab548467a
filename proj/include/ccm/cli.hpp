#pragma once

// Command-line surface. Every subcommand wraps one library operation or
// verification suite, emits a deterministic JSON report on stdout and a
// one-line summary on stderr, and exits 0 on pass, 1 on fail, 2 on
// usage/parse errors.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccm/chain.hpp"
#include "ccm/error.hpp"
#include "ccm/io.hpp"
#include "ccm/spherical.hpp"
#include "ccm/verify.hpp"

namespace ccm::cli {

namespace detail_cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::optional<Point> apex_from_flag(const std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    return Point(std::vector<double>(values));
}

inline io::json center_to_json(const WeightedCenter& w) {
    io::json r = io::json::object();
    r["weight"] = w.weight;
    r["moment"] = io::vec_to_json(w.moment);
    r["point"] = w.point ? io::vec_to_json(*w.point) : io::json();
    return r;
}

// Full-dimensional chains pass through; (n-1)-cycles are cone-filled from
// the given or default apex.
inline Chain as_full_dimensional(const Chain& chain, const std::optional<Point>& apex) {
    if (chain.intrinsic_dim() == chain.ambient_dim()) {
        if (apex) throw ValidationError("--apex applies only to (n-1)-dimensional cycles");
        return chain;
    }
    if (chain.intrinsic_dim() + 1 == chain.ambient_dim() && is_cycle(chain))
        return apex ? cone_fill(chain, *apex) : cone_fill_default(chain);
    throw ValidationError("chain must be full-dimensional or an (n-1)-dimensional cycle");
}

inline int emit(const io::Report& report, std::ostream& out, std::ostream& err) {
    out << io::serialize_report(report);
    err << report.command << ": " << report.status << "\n";
    return io::exit_code_for(report);
}

} // namespace detail_cli

// Runs the tool on `args` (without the program name); reports go to `out`,
// human-readable logs to `err`. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"circumcenter-of-mass geometry toolkit"};
    app.require_subcommand(1);

    std::string input_path;
    std::vector<double> apex_flag;
    double t_flag = 0.0;
    double tol_flag = -1.0; // negative means "suite default"
    std::uint64_t seed = 0;
    std::uint64_t samples = 200000;
    std::size_t trials = 0;
    std::size_t dim = 3;
    std::string oracle;
    double symmetric_tol = 1e-12;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input_path, "chain document (JSON or OFF)")->required();
    };
    auto add_apex = [&](CLI::App* cmd) {
        cmd->add_option("--apex", apex_flag, "cone apex coordinates")->delimiter(',');
    };

    CLI::App* pow_cmd = app.add_subcommand("pow", "power of a single simplex, both closed forms");
    add_input(pow_cmd);
    pow_cmd->add_option("--tol", tol_flag, "relative agreement tolerance");
    CLI::Option* oracle_opt =
        pow_cmd->add_option("--oracle", oracle, "independent oracle")->check(CLI::IsMember({"mc"}));
    pow_cmd->add_option("--samples", samples, "Monte Carlo sample count");
    oracle_opt->needs(pow_cmd->add_option("--seed", seed, "Monte Carlo seed"));

    CLI::App* ccm_cmd = app.add_subcommand("ccm", "circumcenter of mass");
    add_input(ccm_cmd);
    add_apex(ccm_cmd);

    CLI::App* centroid_cmd = app.add_subcommand("centroid", "centroid of mass");
    add_input(centroid_cmd);
    add_apex(centroid_cmd);

    CLI::App* euler_cmd = app.add_subcommand("euler", "Euler-line point at parameter t");
    add_input(euler_cmd);
    add_apex(euler_cmd);
    euler_cmd->add_option("--t", t_flag, "affine parameter, 0 = circumcenter, 1 = centroid")
        ->required();

    CLI::App* fill_cmd = app.add_subcommand("fill", "cone filling of a cycle");
    add_input(fill_cmd);
    add_apex(fill_cmd);

    CLI::App* boundary_cmd = app.add_subcommand("boundary", "boundary chain");
    add_input(boundary_cmd);

    CLI::App* is_cycle_cmd = app.add_subcommand("is-cycle", "test whether the boundary vanishes");
    add_input(is_cycle_cmd);

    CLI::App* sphere_ccm_cmd =
        app.add_subcommand("sphere-ccm", "spherical circumcenter of mass of a chain on S^d");
    add_input(sphere_ccm_cmd);

    CLI::App* sphere_identity_cmd = app.add_subcommand(
        "sphere-identity", "lift mass against the chordal form, per simplex");
    add_input(sphere_identity_cmd);
    sphere_identity_cmd->add_option("--tol", tol_flag, "relative agreement tolerance");

    CLI::App* verify_cmd = app.add_subcommand("verify", "randomized verification suites");
    verify_cmd->require_subcommand(1);
    struct SuiteSpec {
        CLI::App* cmd;
        std::size_t default_trials;
        bool has_dim;
        bool needs_seed;
    };
    std::vector<std::pair<std::string, SuiteSpec>> suites;
    auto add_suite = [&](const std::string& name, const std::string& help,
                         std::size_t default_trials, bool has_dim, bool needs_seed) {
        CLI::App* cmd = verify_cmd->add_subcommand(name, help);
        if (has_dim) cmd->add_option("--dim", dim, "ambient dimension");
        if (needs_seed) {
            cmd->add_option("--trials", trials, "number of random inputs");
            cmd->add_option("--seed", seed, "random seed")->required();
        }
        cmd->add_option("--tol", tol_flag, "override the suite tolerance");
        if (name == "spherical-cycle")
            cmd->add_option("--tol-symmetric", symmetric_tol,
                            "tolerance for the symmetric triangulations");
        suites.emplace_back(name, SuiteSpec{cmd, default_trials, has_dim, needs_seed});
    };
    add_suite("lemma", "facet powers against the circumcenter-to-centroid displacement", 1000,
              true, true);
    add_suite("cycle-moments", "moment identities of full-dimensional cycles", 200, true, true);
    add_suite("filling-independence", "circumcenter of mass from two cone apexes", 200, true,
              true);
    add_suite("equilateral-polygon", "unit-edge polygons against the lamina centroid", 200, false,
              true);
    add_suite("equilateral-polytope", "constant facet edge-square polytopes", 0, false, false);
    add_suite("minkowski", "area-weighted outward normals of convex polytopes", 100, false, true);
    add_suite("inscribed", "inscribed boundaries against the sphere center", 100, false, true);
    add_suite("spherical-cycle", "spherical circumcenter of mass of 2-cycles", 100, false, true);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ccm");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto tol_or = [&](double fallback) { return tol_flag < 0.0 ? fallback : tol_flag; };

    std::string active = "ccm";
    try {
        if (app.get_subcommands().size() == 1) {
            CLI::App* sub = app.get_subcommands().front();
            active = sub->get_name();
            if (sub == verify_cmd && !verify_cmd->get_subcommands().empty())
                active += " " + verify_cmd->get_subcommands().front()->get_name();
        }

        io::Report report;
        if (pow_cmd->parsed()) {
            const Chain chain = io::parse_chain(detail_cli::read_file(input_path));
            if (chain.terms().size() != 1)
                throw ValidationError("pow expects a chain with exactly one simplex");
            const Simplex s = chain.term_simplex(chain.terms().front());
            const double via_edges = pow_simplex_edges(s);
            const double via_circum = pow_simplex_circum(s);
            const double tol = tol_or(1e-10);
            const double rel = std::abs(via_edges - via_circum) /
                               std::max(std::abs(via_edges), std::abs(via_circum));
            bool pass = rel <= tol && via_edges < 0.0 && via_circum < 0.0;

            report.command = "pow";
            report.inputs = {{"input", input_path}};
            report.results = {{"pow_edges", via_edges},
                              {"pow_circum", via_circum},
                              {"relative_difference", rel}};
            report.tolerances = {{"relative_difference", tol}};
            if (!oracle.empty()) {
                const PowEstimate est = pow_simplex_mc(s, samples, seed);
                const bool agrees = std::abs(est.mean - via_edges) <= 4.0 * est.std_error;
                report.inputs["oracle"] = oracle;
                report.inputs["samples"] = samples;
                report.inputs["seed"] = seed;
                report.results["mc_mean"] = est.mean;
                report.results["mc_std_error"] = est.std_error;
                report.results["mc_agrees"] = agrees;
                report.tolerances["mc_sigma"] = 4.0;
                pass = pass && agrees;
            }
            report.status = pass ? "pass" : "fail";
        } else if (ccm_cmd->parsed() || centroid_cmd->parsed() || euler_cmd->parsed()) {
            const Chain chain = io::parse_chain(detail_cli::read_file(input_path));
            const std::optional<Point> apex = detail_cli::apex_from_flag(apex_flag);
            const Chain full = detail_cli::as_full_dimensional(chain, apex);
            WeightedCenter center;
            if (ccm_cmd->parsed()) {
                report.command = "ccm";
                center = circumcenter_of_mass(full);
            } else if (centroid_cmd->parsed()) {
                report.command = "centroid";
                center = centroid_of_mass(full);
            } else {
                report.command = "euler";
                report.inputs["t"] = t_flag;
                center = euler_point(full, t_flag);
            }
            report.inputs["input"] = input_path;
            if (apex) report.inputs["apex"] = io::vec_to_json(*apex);
            report.results = detail_cli::center_to_json(center);
            report.status = "pass";
        } else if (fill_cmd->parsed() || boundary_cmd->parsed()) {
            const Chain chain = io::parse_chain(detail_cli::read_file(input_path));
            report.inputs["input"] = input_path;
            if (fill_cmd->parsed()) {
                report.command = "fill";
                const std::optional<Point> apex = detail_cli::apex_from_flag(apex_flag);
                if (apex) report.inputs["apex"] = io::vec_to_json(*apex);
                const Chain filled = apex ? cone_fill(chain, *apex) : cone_fill_default(chain);
                report.results["chain"] = io::chain_to_json(filled);
            } else {
                report.command = "boundary";
                report.results["chain"] = io::chain_to_json(boundary(chain));
            }
            report.status = "pass";
        } else if (is_cycle_cmd->parsed()) {
            const Chain chain = io::parse_chain(detail_cli::read_file(input_path));
            const bool cycle = is_cycle(chain);
            report.command = "is-cycle";
            report.inputs = {{"input", input_path}};
            report.results = {{"is_cycle", cycle}};
            report.status = cycle ? "pass" : "fail";
        } else if (sphere_ccm_cmd->parsed()) {
            const Chain chain = io::parse_chain(detail_cli::read_file(input_path));
            const SphericalMass mass = spherical_ccm(chain);
            report.command = "sphere-ccm";
            report.inputs = {{"input", input_path}};
            report.results["vector"] = io::vec_to_json(mass.vector);
            report.results["mass"] = mass.mass;
            report.results["center"] =
                mass.center ? io::vec_to_json(mass.center->direction) : io::json();
            report.status = "pass";
        } else if (sphere_identity_cmd->parsed()) {
            const Chain chain = io::parse_chain(detail_cli::read_file(input_path));
            if (chain.intrinsic_dim() + 1 != chain.ambient_dim())
                throw ValidationError("sphere-identity expects a d-chain in R^(d+1)");
            const double tol = tol_or(1e-10);
            double max_rel = 0.0;
            for (const ChainTerm& term : chain.terms()) {
                const auto [lift_mass, chordal_mass] =
                    chordal_mass_identity(detail::spherical_term(chain, term));
                max_rel = std::max(max_rel, std::abs(lift_mass - chordal_mass) /
                                                std::max(lift_mass, chordal_mass));
            }
            report.command = "sphere-identity";
            report.inputs = {{"input", input_path}};
            report.results = {{"max_relative_difference", max_rel},
                              {"terms", chain.terms().size()}};
            report.tolerances = {{"max_relative_difference", tol}};
            report.status = max_rel <= tol ? "pass" : "fail";
        } else {
            for (const auto& [name, spec] : suites) {
                if (!spec.cmd->parsed()) continue;
                const std::size_t n = trials == 0 ? spec.default_trials : trials;
                if (name == "lemma")
                    report = verify::lemma_suite(dim, n, seed, tol_or(1e-9));
                else if (name == "cycle-moments")
                    report = verify::cycle_moments_suite(dim, n, seed, tol_or(1e-9));
                else if (name == "filling-independence")
                    report = verify::filling_independence_suite(dim, n, seed, tol_or(1e-9));
                else if (name == "equilateral-polygon")
                    report = verify::equilateral_polygon_suite(n, seed, tol_or(1e-9));
                else if (name == "equilateral-polytope")
                    report = verify::equilateral_polytope_suite(tol_or(1e-9));
                else if (name == "minkowski")
                    report = verify::minkowski_suite(n, seed, tol_or(1e-9));
                else if (name == "inscribed")
                    report = verify::inscribed_suite(n, seed, tol_or(1e-9));
                else
                    report = verify::spherical_cycle_suite(n, seed, tol_or(1e-9), symmetric_tol);
                break;
            }
        }
        return detail_cli::emit(report, out, err);
    } catch (const std::exception& e) {
        io::Report report;
        report.command = active;
        report.results = {{"error", e.what()}};
        report.status = "error";
        return detail_cli::emit(report, out, err);
    }
}

} // namespace ccm::cli
