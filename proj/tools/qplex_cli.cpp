// Command-line front end: build catalog POVMs, verify morphophoricity and
// design level, explore qplex geometry, analyse orthogonality graphs, check
// the primal equation and run tomography.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qplex/designs.hpp"
#include "qplex/geometry.hpp"
#include "qplex/graph.hpp"
#include "qplex/io.hpp"
#include "qplex/povm.hpp"
#include "qplex/primal.hpp"

using nlohmann::json;
using namespace qplex;

namespace {

struct CommonOptions {
    std::string input;
    std::string name;
    std::vector<double> params;
    std::string output;
    std::string format = "text";
    double tolerance = 1e-9;
    std::uint64_t seed = kDefaultSeed;
    int samples = 200;
};

void add_source_options(CLI::App* cmd, CommonOptions& opt, bool need_source = true) {
    auto* input = cmd->add_option("--input", opt.input, "POVM file in the interchange format");
    auto* name = cmd->add_option("--name", opt.name, "catalog entry name");
    cmd->add_option("--params", opt.params, "catalog entry parameters");
    if (need_source) {
        input->excludes(name);
        name->excludes(input);
    }
}

void add_report_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--output", opt.output, "write the report to this path");
    cmd->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--tolerance", opt.tolerance, "decision tolerance");
    cmd->add_option("--seed", opt.seed, "seed for randomised checks");
    cmd->add_option("--samples", opt.samples, "sample count for randomised checks");
}

struct Source {
    Povm povm;
    std::optional<designs::ProjectiveDesign> design;
    std::string label;
};

Source resolve_source(const CommonOptions& opt) {
    if (!opt.name.empty()) {
        designs::CatalogEntry entry = designs::catalog_build(opt.name, opt.params);
        return {std::move(entry.povm), std::move(entry.design), opt.name};
    }
    if (opt.input.empty()) throw CLI::ValidationError("give either --input or --name");
    const json j = json::parse(io::read_file(opt.input));
    if (j.contains("vectors")) {
        designs::ProjectiveDesign design = io::design_from_json(j);
        Povm povm = designs::design_povm(design);
        return {std::move(povm), std::move(design), opt.input};
    }
    Povm povm = io::povm_from_json(j);
    std::optional<designs::ProjectiveDesign> design;
    if (povm.is_rank_one() && povm.is_equal_trace()) {
        // recover generating vectors so the design-level checks can run
        std::vector<cvec> vectors;
        for (const auto& e : povm.effects()) {
            const EigenSystem es = hermitian_eig(e);
            cvec v(povm.dim());
            for (int i = 0; i < povm.dim(); ++i) v[i] = es.vectors(i, povm.dim() - 1);
            vectors.push_back(std::move(v));
        }
        design = designs::ProjectiveDesign::from_vectors(povm.dim(), std::move(vectors));
    }
    return {std::move(povm), std::move(design), opt.input};
}

void emit(const CommonOptions& opt, const json& report, const std::string& text) {
    const std::string payload = (opt.format == "json") ? report.dump(2) + "\n" : text;
    if (opt.output.empty())
        std::cout << payload;
    else
        io::write_file(opt.output, payload);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

int run_catalog(const CommonOptions& opt, bool list) {
    if (list) {
        for (const auto& name : designs::catalog_names()) std::cout << name << "\n";
        return 0;
    }
    designs::CatalogEntry entry = designs::catalog_build(opt.name, opt.params);
    if (!opt.output.empty()) io::save_povm(entry.povm, opt.output);
    std::ostringstream text;
    text << "catalog " << entry.name << ": d = " << entry.povm.dim()
         << ", n = " << entry.povm.size()
         << ", design strength >= " << entry.advertised_t << "\n";
    if (!opt.output.empty()) text << "written to " << opt.output << "\n";
    std::cout << text.str();
    return 0;
}

int run_verify(const CommonOptions& opt) {
    Source src = resolve_source(opt);
    const MorphophoricityReport morph = morphophoricity_report(src.povm, opt.tolerance);
    const NormOneReport norm1 = norm_one_property(src.povm);

    json report = io::morphophoricity_json(morph);
    report["source"] = src.label;
    report["dim"] = src.povm.dim();
    report["n"] = src.povm.size();
    report["norm_one"] = norm1.norm_one;
    int design_level = 0;
    if (src.design) {
        for (int t = 1; t <= 4; ++t)
            if (designs::welch_design_check(*src.design, t).is_design) design_level = t;
        report["design_level"] = design_level;
        report["two_design_identity_residual"] =
            designs::two_design_identity_residual(*src.design);
    }
    if (src.povm.dim() == 2) {
        const auto shape = designs::range_shape_d2(src.povm);
        report["range_shape"] = designs::to_string(shape.kind);
        report["range_semiaxes"] = shape.semiaxes;
    }

    std::ostringstream text;
    text << "verify " << src.label << " (d = " << src.povm.dim() << ", n = " << src.povm.size()
         << ")\n"
         << "  morphophoric:      " << (morph.morphophoric ? "yes" : "no")
         << "  (frame deviation " << fmt(morph.frame_deviation) << ")\n"
         << "  alpha:             " << fmt(morph.alpha) << "  (closed form "
         << fmt(morph.alpha_closed_form) << ")\n"
         << "  tight IC:          " << (morph.tight_ic ? "yes" : "no") << "  (beta "
         << fmt(morph.beta) << ")\n"
         << "  IC:                " << (morph.informationally_complete ? "yes" : "no")
         << "  (rank " << morph.rank_of_span << ")\n"
         << "  norm-1 property:   " << (norm1.norm_one ? "yes" : "no") << "\n";
    if (src.design) text << "  design level:      " << design_level << "\n";
    if (report.contains("range_shape"))
        text << "  range shape:       " << report["range_shape"].get<std::string>() << "\n";
    emit(opt, report, text.str());
    return 0;
}

int run_geometry(const CommonOptions& opt, const std::string& probe_path,
                 const std::string& polytope_csv) {
    Source src = resolve_source(opt);
    const geom::GeometryReport geo = geom::geometry_report(src.povm, opt.tolerance);
    const geom::DualityReport duality = geom::duality_checks(src.povm, opt.samples, opt.seed);

    json report = io::geometry_json(geo);
    report["source"] = src.label;
    report["seed"] = opt.seed;
    report["samples"] = opt.samples;
    report["duality"] = {
        {"facet_margin_min", duality.facet_margin_min},
        {"facet_equality_gap", duality.facet_equality_gap},
        {"pair_min_centred", duality.pair_min},
        {"pair_max_centred", duality.pair_max},
        {"fundamental_ok", duality.fundamental_ok},
        {"self_dual_candidates", duality.self_dual_candidates},
        {"self_dual_failures", duality.self_dual_failures},
        {"vertices_in_range", duality.vertices_in_range},
        {"samples_in_primal_polytope", duality.samples_in_primal_polytope},
        {"inner_radius_residual", duality.inner_radius_residual},
    };

    bool probes_ok = true;
    if (!probe_path.empty()) {
        const json in = json::parse(io::read_file(probe_path));
        json probe_results = json::array();
        const json rows = in.is_array() && !in.empty() && in.front().is_array()
                              ? in
                              : json::array({in});
        for (const json& row : rows) {
            const auto p = io::probability_vector_from_json(row);
            json res;
            if (src.design) {
                const auto membership = geom::pure_membership_check(*src.design, p, opt.tolerance);
                res["pure_range"] = membership.in_pure_range;
                res["linear_residual"] = membership.linear_max;
                res["quadratic_residual"] = membership.quadratic;
                res["cubic_residual"] = membership.cubic;
                if (src.povm.dim() <= 3) {
                    const auto low = geom::state_membership_low_dim(*src.design, p, opt.tolerance);
                    res["in_range"] = low.by_inequalities;
                    res["routes_agree"] = low.by_inequalities == low.by_reconstruction;
                    if (!res["routes_agree"].get<bool>()) probes_ok = false;
                }
            } else {
                const ComplexMatrix tau =
                    geom::reconstruct_state(src.povm, p, geom::ReconstructionRoute::tight_frame);
                res["min_eigenvalue"] = hermitian_eig(tau).values.front();
                res["in_range"] = hermitian_eig(tau).values.front() >= -opt.tolerance;
            }
            probe_results.push_back(res);
        }
        report["probes"] = probe_results;
    }
    if (!polytope_csv.empty()) io::write_file(polytope_csv, io::vertices_csv(geo.basis_distributions));

    std::ostringstream text;
    text << "geometry " << src.label << " (seed " << opt.seed << ", samples " << opt.samples
         << ")\n"
         << "  alpha = " << fmt(geo.alpha) << ", m = " << fmt(geo.m) << ", r = " << fmt(geo.r)
         << ", R = " << fmt(geo.R) << "\n"
         << "  mediality distances: min " << fmt(*std::min_element(
                geo.mediality_distances.begin(), geo.mediality_distances.end()))
         << ", max " << fmt(*std::max_element(geo.mediality_distances.begin(),
                                              geo.mediality_distances.end()))
         << "\n"
         << "  linear system rank: " << geo.linear_system_rank << "\n"
         << "  duality: facet margin " << fmt(duality.facet_margin_min) << ", fundamental "
         << (duality.fundamental_ok ? "ok" : "VIOLATED") << ", self-dual failures "
         << duality.self_dual_failures << "/" << duality.self_dual_candidates << "\n";
    emit(opt, report, text.str());

    const bool ok = duality.fundamental_ok && duality.self_dual_failures == 0 &&
                    duality.vertices_in_range && duality.samples_in_primal_polytope && probes_ok;
    return ok ? 0 : 1;
}

int run_graph(const CommonOptions& opt, const std::string& adjacency_path) {
    Source src = resolve_source(opt);
    if (!src.design)
        throw std::invalid_argument("graph: the input must be a rank-1 equal-trace design");
    const graph::OrthogonalityGraph g = graph::build_orthogonality_graph(*src.design);
    const graph::SrgParameters params = graph::srg_analysis(g, src.povm.dim());
    const graph::CliqueReport cliques = graph::clique_analysis(g, params);

    json report = io::graph_params_json(g, params, cliques);
    report["source"] = src.label;
    bool table_ok = true;
    if (const auto row = graph::known_parameters(params.n, params.d)) {
        table_ok = row->kappa == params.kappa && row->lambda == params.lambda &&
                   row->mu == params.mu && row->r == params.r && row->q == params.q &&
                   row->psi == params.psi && (!cliques.delsarte || row->c == cliques.c);
        report["matches_known_table"] = table_ok;
    }
    if (!adjacency_path.empty()) io::write_file(adjacency_path, io::adjacency_list(g));

    std::ostringstream text;
    text << "graph " << src.label << "\n"
         << "  (n, kappa, lambda, mu) = (" << params.n << ", " << params.kappa << ", "
         << params.lambda << ", " << params.mu << ")\n"
         << "  (d, r, q, psi, c) = (" << params.d << ", " << params.r << ", " << params.q << ", "
         << params.psi << ", "
         << (cliques.delsarte ? std::to_string(cliques.c) : std::string("not-delsarte")) << ")\n"
         << "  a = " << fmt(g.a) << " (Welch-Levenshtein " << fmt(params.welch_levenshtein_a)
         << ")\n"
         << "  maximal cliques: " << cliques.maximal_cliques.size() << " (max size "
         << cliques.max_size << ")\n"
         << "  identities: " << (params.identities_ok ? "ok" : "VIOLATED") << "\n";
    for (const auto& v : params.violations) text << "    - " << v << "\n";
    if (report.contains("matches_known_table"))
        text << "  known parameter table: " << (table_ok ? "match" : "MISMATCH") << "\n";
    emit(opt, report, text.str());
    return (params.identities_ok && table_ok) ? 0 : 1;
}

int run_primal(const CommonOptions& opt, const std::string& sky_path,
               const std::string& ground_path, const std::string& state_path,
               const std::string& joint_csv_path) {
    const Povm sky = io::load_povm(sky_path);
    const Povm ground = io::load_povm(ground_path);
    ComplexMatrix rho = ComplexMatrix::identity(sky.dim());
    rho *= cplx(1.0 / sky.dim(), 0.0);
    if (!state_path.empty()) rho = io::load_state(state_path);

    const MorphophoricityReport morph = morphophoricity_report(sky, opt.tolerance);
    json report;
    report["sky"] = sky_path;
    report["ground"] = ground_path;
    report["morphophoric_sky"] = morph.morphophoric;
    report["alpha"] = morph.alpha;

    double residual = -1.0;
    if (morph.morphophoric) {
        residual = primal::urgleichung_residual(sky, ground, rho, morph.alpha);
        report["urgleichung_residual"] = residual;
    }
    std::optional<double> rank1;
    if (sky.is_rank_one() && sky.is_equal_trace()) {
        rank1 = primal::rank1_urgleichung_residual(sky, ground, rho);
        report["rank1_urgleichung_residual"] = *rank1;
    }
    if (!joint_csv_path.empty())
        io::write_file(joint_csv_path, io::joint_csv(primal::lueders_joint(sky, ground, rho)));

    std::ostringstream text;
    text << "primal equation: sky " << sky_path << ", ground " << ground_path << "\n"
         << "  sky morphophoric: " << (morph.morphophoric ? "yes" : "no") << " (alpha "
         << fmt(morph.alpha) << ")\n";
    if (morph.morphophoric) text << "  residual: " << fmt(residual) << "\n";
    if (rank1) text << "  rank-1 form residual: " << fmt(*rank1) << "\n";
    emit(opt, report, text.str());
    return (morph.morphophoric && residual <= opt.tolerance) ? 0 : 1;
}

int run_tomography(const CommonOptions& opt, const std::string& probs_path,
                   const std::string& route_name) {
    Source src = resolve_source(opt);
    const auto p = io::load_probability_vector(probs_path);
    geom::ReconstructionRoute route = geom::ReconstructionRoute::tight_frame;
    if (route_name == "two-design")
        route = geom::ReconstructionRoute::two_design;
    else if (route_name == "auto" && src.povm.is_rank_one() && src.povm.is_equal_trace())
        route = geom::ReconstructionRoute::two_design;
    const ComplexMatrix tau = geom::reconstruct_state(src.povm, p, route);
    const double min_eig = hermitian_eig(tau).values.front();
    const auto roundtrip = measurement_map(src.povm, tau);
    double roundtrip_err = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        roundtrip_err = std::max(roundtrip_err, std::abs(roundtrip[j] - p[j]));

    json report = io::state_to_json(tau);
    report["min_eigenvalue"] = min_eig;
    report["roundtrip_residual"] = roundtrip_err;
    report["physical"] = min_eig >= -opt.tolerance;

    std::ostringstream text;
    text << "tomography " << src.label << "\n"
         << "  reconstructed state, min eigenvalue " << fmt(min_eig) << "\n"
         << "  roundtrip residual " << fmt(roundtrip_err) << "\n";
    emit(opt, report, text.str());
    return roundtrip_err <= 1e-8 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphophoric POVMs, generalised qplexes and 2-designs"};
    app.require_subcommand(1);

    CommonOptions opt;
    bool list = false;
    std::string probe_path, polytope_csv, adjacency_path;
    std::string sky_path, ground_path, state_path, joint_csv_path;
    std::string probs_path, route_name = "auto";

    auto* catalog = app.add_subcommand("catalog", "construct or list the built-in designs");
    catalog->add_flag("--list", list, "list catalog names");
    catalog->add_option("--name", opt.name, "catalog entry name");
    catalog->add_option("--params", opt.params, "catalog entry parameters");
    catalog->add_option("--output", opt.output, "write the POVM in the interchange format");

    auto* verify = app.add_subcommand("verify", "validate a POVM and report morphophoricity");
    add_source_options(verify, opt);
    add_report_options(verify, opt);

    auto* geometry = app.add_subcommand("geometry", "qplex geometry, duality and membership");
    add_source_options(geometry, opt);
    add_report_options(geometry, opt);
    geometry->add_option("--probe", probe_path, "probability vectors to membership-test");
    geometry->add_option("--polytope-csv", polytope_csv, "export basis-polytope vertices as CSV");

    auto* graph_cmd = app.add_subcommand("graph", "orthogonality-graph analysis of a design");
    add_source_options(graph_cmd, opt);
    add_report_options(graph_cmd, opt);
    graph_cmd->add_option("--adjacency", adjacency_path, "export the edge list");

    auto* primal = app.add_subcommand("primal", "generalised primal equation residuals");
    primal->add_option("--sky", sky_path, "sky POVM file")->required();
    primal->add_option("--ground", ground_path, "ground POVM file")->required();
    primal->add_option("--state", state_path, "pre-measurement state (default maximally mixed)");
    primal->add_option("--joint-csv", joint_csv_path, "export the joint distribution as CSV");
    add_report_options(primal, opt);

    auto* tomography = app.add_subcommand("tomography", "reconstruct a state from probabilities");
    add_source_options(tomography, opt);
    add_report_options(tomography, opt);
    tomography->add_option("--probs", probs_path, "probability vector file")->required();
    tomography->add_option("--route", route_name, "auto, two-design or tight-frame")
        ->check(CLI::IsMember({"auto", "two-design", "tight-frame"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog->parsed()) return run_catalog(opt, list);
        if (verify->parsed()) return run_verify(opt);
        if (geometry->parsed()) return run_geometry(opt, probe_path, polytope_csv);
        if (graph_cmd->parsed()) return run_graph(opt, adjacency_path);
        if (primal->parsed())
            return run_primal(opt, sky_path, ground_path, state_path, joint_csv_path);
        if (tomography->parsed()) return run_tomography(opt, probs_path, route_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
