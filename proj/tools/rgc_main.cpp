// Command-line driver: sampling, builders, homology, distances,
// genericity certification, occurrence detection and the Monte Carlo
// experiment/percolation harnesses. Every subcommand validates its
// inputs, writes exactly one output file and exits nonzero with a
// diagnostic on error. Outputs are pure functions of (inputs, seed);
// timing goes to stderr only.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rgc/detection.hpp"
#include "rgc/experiment.hpp"
#include "rgc/genericity.hpp"
#include "rgc/homology.hpp"
#include "rgc/io.hpp"
#include "rgc/poisson.hpp"

namespace {

using rgc::json;

rgc::Box parse_window(const std::string& spec)
{
    std::istringstream stream(spec);
    std::vector<double> lo, hi;
    std::string token;
    while (stream >> token) {
        auto comma = token.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("window: expected lo,hi pairs, got '" + token + "'");
        lo.push_back(std::stod(token.substr(0, comma)));
        hi.push_back(std::stod(token.substr(comma + 1)));
    }
    if (lo.empty())
        throw std::invalid_argument("window: empty specification");
    rgc::Vector vlo(static_cast<int>(lo.size())), vhi(static_cast<int>(hi.size()));
    for (std::size_t i = 0; i < lo.size(); ++i) {
        vlo(static_cast<int>(i)) = lo[i];
        vhi(static_cast<int>(i)) = hi[i];
    }
    return rgc::Box(std::move(vlo), std::move(vhi));
}

json report_json(const rgc::OccurrenceReport& r)
{
    json j;
    j["kind"] = r.kind == rgc::OccurrenceKind::Isolated ? "isolated" : "pendant";
    j["component"] = r.component_id;
    json witness = json::array();
    for (auto [a, b] : r.witness)
        witness.push_back(json::array({a, b}));
    j["witness"] = std::move(witness);
    if (r.bridge)
        j["bridge"] = json::array({r.bridge->first, r.bridge->second});
    j["interior_certified"] = r.interior_certified;
    j["undecided"] = r.undecided;
    return j;
}

struct CommonOptions {
    std::string output;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

rgc::PoissonConfig process_config(const rgc::ConfigFile& cfg, const CommonOptions& common)
{
    rgc::PoissonConfig pc;
    pc.intensity = cfg.get_double("process", "intensity");
    pc.window = cfg.get_box("process", "window");
    pc.seed = common.seed_set
                  ? common.seed
                  : static_cast<std::uint64_t>(cfg.get_long_or("process", "seed", 0));
    pc.mode = rgc::sampling_mode_from_string(cfg.get_or("process", "mode", "direct"));
    return pc;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"random geometric complexes toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonOptions common;
    app.add_option("--threads", common.threads,
                   "worker threads (default: RGC_THREADS env or hardware)");

    // --- sample ---------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "sample a Poisson point process");
    std::string sample_config, sample_window = "0,1 0,1", sample_mode = "direct";
    double sample_intensity = 1.0;
    sample_cmd->add_option("--config", sample_config, "config file with a [process] section");
    sample_cmd->add_option("--intensity", sample_intensity, "points per unit volume");
    sample_cmd->add_option("--window", sample_window, "lo,hi pairs per axis");
    sample_cmd->add_option("--mode", sample_mode, "direct | cube");
    sample_cmd->add_option("--seed", common.seed, "RNG seed")->each([&](const std::string&) {
        common.seed_set = true;
    });
    sample_cmd->add_option("-o,--output", common.output, "output CSV")->required();

    // --- build ----------------------------------------------------------
    auto* build_cmd = app.add_subcommand("build", "build a Rips or Čech complex");
    std::string build_points, build_flavor = "rips";
    double build_rho = 1.0;
    int build_cap = -1;
    build_cmd->add_option("--points", build_points, "points CSV")->required();
    build_cmd->add_option("--rho", build_rho, "scale parameter")->required();
    build_cmd->add_option("--flavor", build_flavor, "rips | cech");
    build_cmd->add_option("--dim-cap", build_cap, "dimension cap (default per flavor)");
    build_cmd->add_option("-o,--output", common.output, "output complex JSON")->required();

    // --- betti ----------------------------------------------------------
    auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of a complex");
    std::string betti_complex, betti_field = "rational";
    betti_cmd->add_option("--complex", betti_complex, "complex JSON")->required();
    betti_cmd->add_option("--field", betti_field, "gf2 | rational");
    betti_cmd->add_option("-o,--output", common.output, "output JSON")->required();

    // --- dist -----------------------------------------------------------
    auto* dist_cmd = app.add_subcommand("dist", "Hausdorff and bottleneck distances");
    std::string dist_a, dist_b;
    dist_cmd->add_option("--points-a", dist_a, "first points CSV")->required();
    dist_cmd->add_option("--points-b", dist_b, "second points CSV")->required();
    dist_cmd->add_option("-o,--output", common.output, "output JSON")->required();

    // --- generic --------------------------------------------------------
    auto* generic_cmd = app.add_subcommand(
        "generic", "genericity margin, rescaled representation and certificate");
    std::string generic_points, generic_flavor = "cech";
    double generic_rho = 1.0;
    bool generic_force = false;
    generic_cmd->add_option("--points", generic_points, "points CSV")->required();
    generic_cmd->add_option("--rho", generic_rho, "scale parameter")->required();
    generic_cmd->add_option("--flavor", generic_flavor, "rips | cech");
    generic_cmd->add_flag("--force-rescale", generic_force, "rescale even when generic");
    generic_cmd->add_option("-o,--output", common.output, "output certificate JSON")
        ->required();

    // --- detect ---------------------------------------------------------
    auto* detect_cmd = app.add_subcommand("detect", "isolated and pendant occurrences");
    std::string detect_points, detect_target, detect_flavor = "rips", detect_window;
    double detect_rho = 1.0;
    int detect_axis = 0;
    detect_cmd->add_option("--points", detect_points, "points CSV")->required();
    detect_cmd->add_option("--rho", detect_rho, "scale parameter")->required();
    detect_cmd->add_option("--flavor", detect_flavor, "rips | cech");
    detect_cmd->add_option("--target", detect_target, "target complex JSON")->required();
    detect_cmd->add_option("--window", detect_window,
                           "lo,hi pairs per axis (default: bounding box)");
    detect_cmd->add_option("--axis", detect_axis, "crossing axis for the host");
    detect_cmd->add_option("-o,--output", common.output, "output JSON")->required();

    // --- experiment -----------------------------------------------------
    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo experiment from config");
    std::string exp_config;
    exp_cmd->add_option("--config", exp_config, "experiment config file")->required();
    exp_cmd->add_option("--seed", common.seed, "override [process] seed")
        ->each([&](const std::string&) { common.seed_set = true; });
    exp_cmd->add_option("-o,--output", common.output, "output report JSON")->required();

    // --- percolation ----------------------------------------------------
    auto* perc_cmd = app.add_subcommand("percolation", "crossing-probability curves");
    std::string perc_config, perc_report;
    perc_cmd->add_option("--config", perc_config, "percolation config file")->required();
    perc_cmd->add_option("--seed", common.seed, "override [process] seed")
        ->each([&](const std::string&) { common.seed_set = true; });
    perc_cmd->add_option("--report", perc_report, "also write the full report JSON");
    perc_cmd->add_option("-o,--output", common.output, "output curve CSV")->required();

    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    try {
        if (sample_cmd->parsed()) {
            rgc::PoissonConfig cfg;
            if (!sample_config.empty()) {
                cfg = process_config(rgc::ConfigFile::read(sample_config), common);
            } else {
                cfg.intensity = sample_intensity;
                cfg.window = parse_window(sample_window);
                cfg.seed = common.seed;
                cfg.mode = rgc::sampling_mode_from_string(sample_mode);
            }
            rgc::write_points_csv(common.output, rgc::sample(cfg));
        } else if (build_cmd->parsed()) {
            rgc::PointSet X = rgc::read_points_csv(build_points);
            rgc::Flavor flavor = rgc::flavor_from_string(build_flavor);
            rgc::GeometricComplex G = flavor == rgc::Flavor::Rips
                                          ? rgc::rips_complex(X, build_rho, build_cap)
                                          : rgc::cech_complex(X, build_rho, build_cap);
            rgc::write_complex_json(common.output, G.complex);
        } else if (betti_cmd->parsed()) {
            rgc::SimplicialComplex K = rgc::read_complex_json(betti_complex);
            rgc::BettiVector b =
                rgc::betti_numbers(K, rgc::field_from_string(betti_field));
            rgc::write_file(common.output, rgc::betti_to_json(b).dump(2) + "\n");
        } else if (dist_cmd->parsed()) {
            rgc::PointSet A = rgc::read_points_csv(dist_a);
            rgc::PointSet B = rgc::read_points_csv(dist_b);
            double h = rgc::hausdorff_distance(A, B);
            double bn = rgc::bottleneck_set_distance(A, B);
            json j{{"hausdorff", h}};
            if (std::isfinite(bn))
                j["bottleneck"] = bn;
            else
                j["bottleneck"] = "inf";
            rgc::write_file(common.output, j.dump(2) + "\n");
        } else if (generic_cmd->parsed()) {
            rgc::PointSet X = rgc::read_points_csv(generic_points);
            rgc::Flavor flavor = rgc::flavor_from_string(generic_flavor);
            rgc::MakeGenericResult made =
                rgc::make_generic(X, generic_rho, flavor, generic_force);
            rgc::RepresentationCertificate cert =
                rgc::certify(made.points, generic_rho, flavor);
            json j = rgc::certificate_to_json(cert);
            j["rescaled"] = made.rescaled;
            j["scale"] = made.scale;
            j["input_margin"] = rgc::genericity_margin(X, generic_rho, flavor);
            rgc::write_file(common.output, j.dump(2) + "\n");
        } else if (detect_cmd->parsed()) {
            rgc::PointSet X = rgc::read_points_csv(detect_points, true);
            rgc::Flavor flavor = rgc::flavor_from_string(detect_flavor);
            rgc::SimplicialComplex target = rgc::read_complex_json(detect_target);
            rgc::GeometricComplex G = flavor == rgc::Flavor::Rips
                                          ? rgc::rips_complex(X, detect_rho)
                                          : rgc::cech_complex(X, detect_rho);
            rgc::Box window = detect_window.empty() ? rgc::Box::bounding(X)
                                                    : parse_window(detect_window);
            auto decomposition = rgc::connected_components(G, window);
            json out;
            json isolated = json::array();
            for (const auto& r :
                 rgc::find_isolated_occurrences(G, target, window, detect_rho)) {
                json j = report_json(r);
                j["component_vertices"] =
                    decomposition.components[r.component_id].vertices;
                isolated.push_back(std::move(j));
            }
            out["isolated"] = std::move(isolated);

            std::optional<int> host = rgc::crossing_component(G, window, detect_axis);
            out["crossing_component"] = host ? json(*host) : json(nullptr);
            json pendant = json::array();
            if (!host) {
                auto decomp = rgc::connected_components(G);
                std::size_t best = 0;
                for (const auto& c : decomp.components)
                    if (c.vertices.size() > best) {
                        best = c.vertices.size();
                        host = c.id;
                    }
            }
            if (host) {
                for (const auto& r : rgc::find_pendant_occurrences(G, target, *host)) {
                    json j = report_json(r);
                    std::vector<int> side;
                    for (auto [from, to] : r.witness)
                        side.push_back(to);
                    std::sort(side.begin(), side.end());
                    j["occurrence_vertices"] = side;
                    pendant.push_back(std::move(j));
                }
            }
            out["host_component"] = host ? json(*host) : json(nullptr);
            out["pendant"] = std::move(pendant);
            rgc::write_file(common.output, out.dump(2) + "\n");
        } else if (exp_cmd->parsed()) {
            rgc::ConfigFile cfg = rgc::ConfigFile::read(exp_config);
            rgc::PoissonConfig pc = process_config(cfg, common);
            double rho = cfg.get_double("complex", "rho");
            rgc::Flavor flavor =
                rgc::flavor_from_string(cfg.get_or("complex", "flavor", "rips"));
            int dim_cap = static_cast<int>(cfg.get_long_or("complex", "dim_cap", -1));
            rgc::PointSet rep = rgc::read_points_csv(cfg.get("target", "points_file"));
            std::optional<rgc::SimplicialComplex> target;
            if (cfg.has("target", "complex_file"))
                target = rgc::read_complex_json(cfg.get("target", "complex_file"));

            std::string kind = cfg.get("experiment", "kind");
            long trials = cfg.get_long("experiment", "trials");
            int threads = common.threads > 0
                              ? common.threads
                              : static_cast<int>(cfg.get_long_or("experiment", "threads", 0));

            rgc::ExperimentReport report;
            if (kind == "events") {
                rgc::EventProbabilityParams p;
                p.representation = rep;
                p.target = target;
                p.rho = rho;
                p.flavor = flavor;
                p.dim_cap = dim_cap;
                p.delta = cfg.get_double("experiment", "delta");
                p.intensity = pc.intensity;
                p.trials = trials;
                p.seed = pc.seed;
                p.threads = threads;
                report = rgc::estimate_event_probabilities(p);
            } else if (kind == "isolation") {
                rgc::IsolationParams p;
                p.representation = rep;
                p.target = target;
                p.rho = rho;
                p.flavor = flavor;
                p.dim_cap = dim_cap;
                p.intensity = pc.intensity;
                p.window = pc.window;
                p.mode = pc.mode;
                p.trials = trials;
                p.seed = pc.seed;
                p.threads = threads;
                report = rgc::run_isolation_experiment(p);
            } else if (kind == "pendant") {
                rgc::PendantParams p;
                p.representation = rep;
                p.target = target;
                p.rho = rho;
                p.flavor = flavor;
                p.dim_cap = dim_cap;
                p.intensity = pc.intensity;
                p.window = pc.window;
                p.mode = pc.mode;
                p.axis = static_cast<int>(cfg.get_long_or("experiment", "axis", 0));
                p.trials = trials;
                p.seed = pc.seed;
                p.threads = threads;
                report = rgc::run_pendant_experiment(p);
            } else {
                throw std::invalid_argument("unknown experiment kind: " + kind);
            }
            rgc::write_file(common.output, rgc::to_json(report).dump(2) + "\n");
        } else if (perc_cmd->parsed()) {
            rgc::ConfigFile cfg = rgc::ConfigFile::read(perc_config);
            rgc::PercolationParams p;
            p.rho = cfg.get_double("complex", "rho");
            p.t_values = cfg.get_doubles("percolation", "t_values");
            p.window_sizes = cfg.get_doubles("percolation", "window_sizes");
            p.dim = static_cast<int>(cfg.get_long_or("percolation", "dim", 2));
            p.axis = static_cast<int>(cfg.get_long_or("percolation", "axis", 0));
            p.trials = cfg.get_long("percolation", "trials");
            p.seed = common.seed_set
                         ? common.seed
                         : static_cast<std::uint64_t>(cfg.get_long_or("process", "seed", 0));
            p.threads = common.threads;
            rgc::ExperimentReport report = rgc::percolation_probe(p);

            std::ostringstream csv;
            csv << "t,window,crossing_fraction,stderr\n";
            for (const auto& row : report.results.at("curve")) {
                csv << row.at("t").dump() << "," << row.at("window").dump() << ","
                    << row.at("crossing_fraction").dump() << ","
                    << row.at("stderr").dump() << "\n";
            }
            rgc::write_file(common.output, csv.str());
            if (!perc_report.empty())
                rgc::write_file(perc_report, rgc::to_json(report).dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 started)
                       .count();
    std::cerr << "elapsed: " << elapsed << " s\n";
    return 0;
}
