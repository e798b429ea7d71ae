#include "rgc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "rgc/tolerance.hpp"

namespace rgc {

double predict_cA(double t, int d, double delta, int n_vertices, double vol_WI)
{
    if (!(t > 0.0) || !(delta > 0.0) || n_vertices < 1 || vol_WI < 0.0 || d < 1)
        throw std::invalid_argument("predict_cA: invalid arguments");
    double ball_mass = t * unit_ball_volume(d) * std::pow(delta, d);
    return std::pow(ball_mass, n_vertices) * std::exp(-t * vol_WI);
}

double predict_cB(double t, double vol_WO, double vol_WI)
{
    if (!(t > 0.0) || vol_WI < 0.0)
        throw std::invalid_argument("predict_cB: invalid arguments");
    if (vol_WO < vol_WI)
        throw std::invalid_argument("predict_cB: vol_WO must be >= vol_WI");
    return std::exp(-t * (vol_WO - vol_WI));
}

double dilated_box_volume(const Box& box, double r)
{
    if (r < 0.0)
        throw std::invalid_argument("dilated_box_volume: radius must be >= 0");
    const int d = box.dim();
    Vector sides = box.hi - box.lo;

    // Elementary symmetric polynomials sigma_0..sigma_d of the sides.
    std::vector<double> sigma(d + 1, 0.0);
    sigma[0] = 1.0;
    for (int i = 0; i < d; ++i)
        for (int j = std::min(i + 1, d); j >= 1; --j)
            sigma[j] += sigma[j - 1] * sides(i);

    double vol = sigma[d];
    for (int k = 1; k <= d; ++k)
        vol += sigma[d - k] * unit_ball_volume(k) * std::pow(r, k);
    return vol;
}

std::vector<double> isotonic_fit(const std::vector<double>& y,
                                 const std::vector<double>& weights)
{
    if (y.size() != weights.size())
        throw std::invalid_argument("isotonic_fit: size mismatch");
    struct Block {
        double sum, weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < y.size(); ++i) {
        blocks.push_back({y[i] * weights[i], weights[i], 1});
        while (blocks.size() > 1) {
            auto& b = blocks[blocks.size() - 1];
            auto& a = blocks[blocks.size() - 2];
            if (a.sum / a.weight <= b.sum / b.weight)
                break;
            a.sum += b.sum;
            a.weight += b.weight;
            a.count += b.count;
            blocks.pop_back();
        }
    }
    std::vector<double> fit;
    fit.reserve(y.size());
    for (const Block& b : blocks)
        fit.insert(fit.end(), b.count, b.sum / b.weight);
    return fit;
}

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("RGC_THREADS")) {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

// Runs fn(trial) for 0..trials-1 on a worker pool. fn must only write to
// per-trial slots; aggregation stays deterministic regardless of the
// thread count.
template <typename Fn>
void parallel_trials(long trials, int threads, Fn&& fn)
{
    threads = static_cast<int>(std::min<long>(resolve_threads(threads),
                                              std::max<long>(trials, 1)));
    if (threads <= 1) {
        for (long i = 0; i < trials; ++i)
            fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            while (true) {
                long i = next.fetch_add(1);
                if (i >= trials)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(trials);
                    return;
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

double binomial_stderr(double p, long n)
{
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

json event_summary(long count, long trials)
{
    double freq = static_cast<double>(count) / static_cast<double>(trials);
    return json{{"count", count},
                {"frequency", freq},
                {"stderr", binomial_stderr(freq, trials)}};
}

GeometricComplex build_flavor(const PointSet& X, double rho, Flavor flavor, int dim_cap)
{
    return flavor == Flavor::Rips ? rips_complex(X, rho, dim_cap)
                                  : cech_complex(X, rho, dim_cap);
}

SimplicialComplex resolve_target(const std::optional<SimplicialComplex>& target,
                                 const PointSet& representation, double rho,
                                 Flavor flavor, int dim_cap)
{
    if (target)
        return *target;
    return build_flavor(representation, rho, flavor, dim_cap).complex;
}

json box_to_json(const Box& box)
{
    json intervals = json::array();
    for (int a = 0; a < box.dim(); ++a)
        intervals.push_back(json::array({box.lo(a), box.hi(a)}));
    return intervals;
}

constexpr std::uint64_t kEventTag = 0xE57E57ULL;
constexpr std::uint64_t kIsolationTag = 0x150150ULL;
constexpr std::uint64_t kPendantTag = 0x9E4DA47ULL;
constexpr std::uint64_t kPercolationTag = 0x9E4C0ULL;

} // namespace

json to_json(const ExperimentReport& report)
{
    return json{{"schema_version", report.schema_version},
                {"kind", report.kind},
                {"config", report.config},
                {"trials", report.trials},
                {"results", report.results}};
}

ExperimentReport estimate_event_probabilities(const EventProbabilityParams& params)
{
    const PointSet& rep = params.representation;
    if (rep.size() < 1)
        throw std::invalid_argument("estimate_event_probabilities: empty representation");
    if (!(params.delta > 0.0))
        throw std::invalid_argument("estimate_event_probabilities: delta must be positive");
    if (params.trials < 1)
        throw std::invalid_argument("estimate_event_probabilities: trials must be >= 1");

    const double alpha = rep.min_pairwise_distance();
    if (params.delta > alpha / 2.0)
        throw std::invalid_argument(
            "estimate_event_probabilities: delta exceeds half the minimum "
            "inter-vertex distance");
    const double margin = genericity_margin(rep, params.rho, params.flavor);
    if (params.delta > margin)
        throw std::invalid_argument(
            "estimate_event_probabilities: delta exceeds the genericity margin " +
            std::to_string(margin));

    SimplicialComplex target = resolve_target(params.target, rep, params.rho,
                                              params.flavor, params.dim_cap);

    const int d = rep.dim();
    const int n = rep.size();
    const double t = params.intensity;
    const Box W = Box::bounding(rep);
    const double vol_WI = dilated_box_volume(W, params.delta);
    const double vol_WO = dilated_box_volume(W, params.delta + params.rho);
    const double c_A = predict_cA(t, d, params.delta, n, vol_WI);
    const double c_B = predict_cB(t, vol_WO, vol_WI);
    const Box sampling_box = W.axis_dilated(params.delta + params.rho);

    std::vector<std::uint8_t> hit_A(params.trials, 0), hit_B(params.trials, 0),
        hit_eq(params.trials, 0);

    parallel_trials(params.trials, params.threads, [&](long trial) {
        PoissonConfig cfg;
        cfg.intensity = t;
        cfg.window = sampling_box;
        cfg.seed = derive_seed(params.seed, kEventTag, static_cast<std::uint64_t>(trial));
        PointSet pts = sample_direct(cfg);

        std::vector<int> ball_counts(n, 0);
        long stray_inner = 0, shell_count = 0;
        std::vector<Vector> inner_points;
        for (int i = 0; i < pts.size(); ++i) {
            Vector p = pts.point(i).transpose();
            double e = W.exterior_distance(p);
            if (e <= params.delta) {
                inner_points.push_back(p);
                bool in_ball = false;
                for (int v = 0; v < n; ++v) {
                    if ((p - rep.point(v).transpose()).norm() < params.delta) {
                        ++ball_counts[v];
                        in_ball = true;
                        break; // balls are disjoint
                    }
                }
                if (!in_ball)
                    ++stray_inner;
            } else if (e <= params.delta + params.rho) {
                ++shell_count;
            }
        }

        bool a_event = stray_inner == 0;
        for (int v = 0; v < n && a_event; ++v)
            a_event = ball_counts[v] == 1;
        hit_A[trial] = a_event ? 1 : 0;
        hit_B[trial] = shell_count == 0 ? 1 : 0;

        if (static_cast<int>(inner_points.size()) == n) {
            PointSet inner = PointSet::from_points(inner_points, true);
            GeometricComplex built =
                build_flavor(inner, params.rho, params.flavor, params.dim_cap);
            hit_eq[trial] =
                combinatorially_equivalent(built.complex, target).equivalent ? 1 : 0;
        }
    });

    long count_A = 0, count_B = 0, count_eq = 0, count_eq_and_B = 0, violations = 0;
    for (long i = 0; i < params.trials; ++i) {
        count_A += hit_A[i];
        count_B += hit_B[i];
        count_eq += hit_eq[i];
        count_eq_and_B += (hit_eq[i] && hit_B[i]) ? 1 : 0;
        if (hit_A[i] && !hit_eq[i])
            ++violations;
    }

    const double trials_d = static_cast<double>(params.trials);
    const double freq_A = count_A / trials_d;
    const double freq_B = count_B / trials_d;
    const double freq_eq_and_B = count_eq_and_B / trials_d;
    const double product = freq_A * freq_B;

    ExperimentReport report;
    report.kind = "event_probabilities";
    report.trials = params.trials;
    report.config = json{{"rho", params.rho},
                         {"flavor", to_string(params.flavor)},
                         {"delta", params.delta},
                         {"intensity", t},
                         {"trials", params.trials},
                         {"seed", params.seed},
                         {"representation_size", n},
                         {"dim", d}};

    json warnings = json::array();
    double ball_mass = t * unit_ball_volume(d) * std::pow(params.delta, d);
    if (ball_mass > 1.0)
        warnings.push_back("t * kappa_d * delta^d exceeds 1; c_A is not a "
                           "probability lower bound");

    report.results = json{
        {"events",
         json{{"A_hat", event_summary(count_A, params.trials)},
              {"B_hat", event_summary(count_B, params.trials)},
              {"equivalent", event_summary(count_eq, params.trials)},
              {"equivalent_and_B", event_summary(count_eq_and_B, params.trials)}}},
        {"predictions", json{{"c_A", c_A},
                             {"c_B", c_B},
                             {"c_A_c_B", c_A * c_B},
                             {"vol_WI", vol_WI},
                             {"vol_WO", vol_WO},
                             {"margin", margin}}},
        {"checks",
         json{{"A_within_3sigma",
               std::abs(freq_A - c_A) <= 3.0 * binomial_stderr(c_A, params.trials)},
              {"B_within_3sigma",
               std::abs(freq_B - c_B) <= 3.0 * binomial_stderr(c_B, params.trials)},
              {"equivalent_implied_by_A", violations == 0},
              {"product_bound",
               freq_eq_and_B >=
                   product - 3.0 * binomial_stderr(std::max(product, 1e-12),
                                                   params.trials)}}},
        {"warnings", warnings}};
    return report;
}

ExperimentReport run_isolation_experiment(const IsolationParams& params)
{
    const PointSet& rep = params.representation;
    if (rep.size() < 1)
        throw std::invalid_argument("run_isolation_experiment: empty representation");
    if (params.window.dim() != rep.dim())
        throw std::invalid_argument("run_isolation_experiment: window dimension mismatch");
    if (params.trials < 1)
        throw std::invalid_argument("run_isolation_experiment: trials must be >= 1");

    const double margin = genericity_margin(rep, params.rho, params.flavor);
    if (margin <= 0.0)
        throw std::invalid_argument(
            "run_isolation_experiment: representation has zero genericity margin; "
            "apply make_generic first");
    const double alpha = rep.min_pairwise_distance();
    double delta = std::min(alpha / 2.0, margin);
    if (!std::isfinite(delta))
        delta = params.rho / 2.0; // single-vertex target: any scale works

    SimplicialComplex target = resolve_target(params.target, rep, params.rho,
                                              params.flavor, params.dim_cap);

    const Box W = Box::bounding(rep);
    const double beta = (W.hi - W.lo).maxCoeff();
    const double gamma = beta + 2.0 * (delta + params.rho);

    long n_cells = 1;
    for (int a = 0; a < params.window.dim(); ++a) {
        long per_axis = static_cast<long>(
            std::floor((params.window.hi(a) - params.window.lo(a)) / gamma));
        if (per_axis < 1)
            throw std::invalid_argument(
                "run_isolation_experiment: window side " + std::to_string(a) +
                " shorter than the required cell width gamma = " +
                std::to_string(gamma));
        n_cells *= per_axis;
    }

    const double vol_WI = dilated_box_volume(W, delta);
    const double vol_WO = dilated_box_volume(W, delta + params.rho);
    const double c_A = predict_cA(params.intensity, rep.dim(), delta, rep.size(), vol_WI);
    const double c_B = predict_cB(params.intensity, vol_WO, vol_WI);

    std::vector<long> counts(params.trials, 0), undecided(params.trials, 0);
    parallel_trials(params.trials, params.threads, [&](long trial) {
        PoissonConfig cfg;
        cfg.intensity = params.intensity;
        cfg.window = params.window;
        cfg.mode = params.mode;
        cfg.seed = derive_seed(params.seed, kIsolationTag,
                               static_cast<std::uint64_t>(trial));
        PointSet pts = sample(cfg);
        GeometricComplex G = build_flavor(pts, params.rho, params.flavor, params.dim_cap);
        auto reports = find_isolated_occurrences(G, target, params.window, params.rho);
        for (const auto& r : reports)
            (r.undecided ? undecided[trial] : counts[trial]) += 1;
    });

    long total = 0, total_undecided = 0;
    double sum_sq = 0.0;
    for (long i = 0; i < params.trials; ++i) {
        total += counts[i];
        total_undecided += undecided[i];
        sum_sq += static_cast<double>(counts[i]) * static_cast<double>(counts[i]);
    }
    const double trials_d = static_cast<double>(params.trials);
    const double mean = total / trials_d;
    const double variance = std::max(sum_sq / trials_d - mean * mean, 0.0);
    const double stderr_mean = std::sqrt(variance / trials_d);
    const double mean_per_cell = mean / static_cast<double>(n_cells);
    const double stderr_per_cell = stderr_mean / static_cast<double>(n_cells);

    ExperimentReport report;
    report.kind = "isolation";
    report.trials = params.trials;
    report.config = json{{"rho", params.rho},
                         {"flavor", to_string(params.flavor)},
                         {"intensity", params.intensity},
                         {"window", box_to_json(params.window)},
                         {"mode", to_string(params.mode)},
                         {"trials", params.trials},
                         {"seed", params.seed},
                         {"representation_size", rep.size()}};
    report.results =
        json{{"delta", delta},
             {"gamma", gamma},
             {"cells_per_trial", n_cells},
             {"mean_count", mean},
             {"stderr_mean", stderr_mean},
             {"count_per_unit_volume", mean / params.window.volume()},
             {"mean_per_cell", mean_per_cell},
             {"stderr_per_cell", stderr_per_cell},
             {"per_cell_lower_bound", c_A * c_B},
             {"bound_satisfied",
              mean_per_cell >= c_A * c_B - 3.0 * stderr_per_cell},
             {"undecided_components", total_undecided},
             {"predictions",
              json{{"c_A", c_A}, {"c_B", c_B}, {"vol_WI", vol_WI}, {"vol_WO", vol_WO}}}};
    return report;
}

ExperimentReport run_pendant_experiment(const PendantParams& params)
{
    const PointSet& rep = params.representation;
    if (rep.size() < 1)
        throw std::invalid_argument("run_pendant_experiment: empty representation");
    if (params.trials < 1)
        throw std::invalid_argument("run_pendant_experiment: trials must be >= 1");

    SimplicialComplex target = resolve_target(params.target, rep, params.rho,
                                              params.flavor, params.dim_cap);

    std::vector<long> counts(params.trials, 0);
    std::vector<std::uint8_t> has_host(params.trials, 0), fallback(params.trials, 0);

    parallel_trials(params.trials, params.threads, [&](long trial) {
        PoissonConfig cfg;
        cfg.intensity = params.intensity;
        cfg.window = params.window;
        cfg.mode = params.mode;
        cfg.seed = derive_seed(params.seed, kPendantTag,
                               static_cast<std::uint64_t>(trial));
        PointSet pts = sample(cfg);
        if (pts.empty())
            return;
        GeometricComplex G = build_flavor(pts, params.rho, params.flavor, params.dim_cap);
        std::optional<int> host = crossing_component(G, params.window, params.axis);
        if (!host) {
            // Fall back to the largest component.
            ComponentDecomposition decomp = connected_components(G);
            std::size_t best = 0;
            int best_id = -1;
            for (const Component& c : decomp.components) {
                if (c.vertices.size() > best) {
                    best = c.vertices.size();
                    best_id = c.id;
                }
            }
            if (best_id < 0)
                return;
            host = best_id;
            fallback[trial] = 1;
        }
        has_host[trial] = 1;
        auto reports = find_pendant_occurrences(G, target, *host);
        for (const auto& r : reports)
            if (!r.undecided)
                counts[trial] += 1;
    });

    long total = 0, hosts = 0, fallbacks = 0;
    for (long i = 0; i < params.trials; ++i) {
        total += counts[i];
        hosts += has_host[i];
        fallbacks += fallback[i];
    }
    const double trials_d = static_cast<double>(params.trials);
    ExperimentReport report;
    report.kind = "pendant";
    report.trials = params.trials;
    report.config = json{{"rho", params.rho},
                         {"flavor", to_string(params.flavor)},
                         {"intensity", params.intensity},
                         {"window", box_to_json(params.window)},
                         {"mode", to_string(params.mode)},
                         {"axis", params.axis},
                         {"trials", params.trials},
                         {"seed", params.seed}};
    report.results = json{
        {"mean_count", total / trials_d},
        {"trials_with_host", hosts},
        {"no_host_fraction", 1.0 - hosts / trials_d},
        {"fallback_host_fraction", fallbacks / trials_d},
        {"mean_count_given_host", hosts > 0 ? total / static_cast<double>(hosts) : 0.0}};
    return report;
}

ExperimentReport percolation_probe(const PercolationParams& params)
{
    if (params.t_values.empty() || params.window_sizes.empty())
        throw std::invalid_argument("percolation_probe: t_values and window_sizes required");
    if (!std::is_sorted(params.t_values.begin(), params.t_values.end()))
        throw std::invalid_argument("percolation_probe: t_values must be sorted ascending");
    for (double t : params.t_values)
        if (t < 0.0)
            throw std::invalid_argument("percolation_probe: intensities must be >= 0");
    if (params.trials < 1)
        throw std::invalid_argument("percolation_probe: trials must be >= 1");

    const std::size_t nt = params.t_values.size();
    const std::size_t nw = params.window_sizes.size();

    // indicators[w][t] holds one crossing flag per trial.
    std::vector<std::vector<std::vector<std::uint8_t>>> indicators(
        nw, std::vector<std::vector<std::uint8_t>>(
                nt, std::vector<std::uint8_t>(params.trials, 0)));

    for (std::size_t wi = 0; wi < nw; ++wi) {
        Box window = Box::cube(params.dim, 0.0, params.window_sizes[wi]);
        for (std::size_t ti = 0; ti < nt; ++ti) {
            double t = params.t_values[ti];
            if (t == 0.0)
                continue; // empty process, fraction exactly 0
            parallel_trials(params.trials, params.threads, [&](long trial) {
                PoissonConfig cfg;
                cfg.intensity = t;
                cfg.window = window;
                cfg.seed = derive_seed(params.seed, kPercolationTag,
                                       static_cast<std::uint64_t>(wi),
                                       static_cast<std::uint64_t>(ti),
                                       static_cast<std::uint64_t>(trial));
                PointSet pts = sample_direct(cfg);
                GeometricComplex G = rips_complex(pts, params.rho, 1);
                indicators[wi][ti][trial] =
                    crossing_component(G, window, params.axis).has_value() ? 1 : 0;
            });
        }
    }

    const double trials_d = static_cast<double>(params.trials);
    json curve = json::array();
    std::vector<std::vector<double>> fractions(nw, std::vector<double>(nt, 0.0));
    std::vector<std::vector<double>> smoothed(nw);
    for (std::size_t wi = 0; wi < nw; ++wi) {
        for (std::size_t ti = 0; ti < nt; ++ti) {
            long c = 0;
            for (std::uint8_t b : indicators[wi][ti])
                c += b;
            fractions[wi][ti] = c / trials_d;
        }
        smoothed[wi] = isotonic_fit(fractions[wi], std::vector<double>(nt, 1.0));
        for (std::size_t ti = 0; ti < nt; ++ti) {
            curve.push_back(json{{"t", params.t_values[ti]},
                                 {"window", params.window_sizes[wi]},
                                 {"crossing_fraction", fractions[wi][ti]},
                                 {"stderr", binomial_stderr(fractions[wi][ti],
                                                            params.trials)},
                                 {"smoothed", smoothed[wi][ti]}});
        }
    }

    // The t at which a smoothed curve crosses 1/2, linearly interpolated.
    auto crossing_point = [&](const std::vector<double>& fit) -> std::optional<double> {
        for (std::size_t i = 0; i < fit.size(); ++i) {
            if (fit[i] >= 0.5) {
                if (i == 0)
                    return params.t_values[0];
                double t0 = params.t_values[i - 1], t1 = params.t_values[i];
                double f0 = fit[i - 1], f1 = fit[i];
                if (f1 <= f0)
                    return t1;
                return t0 + (0.5 - f0) / (f1 - f0) * (t1 - t0);
            }
        }
        return std::nullopt;
    };

    // Bootstrap the crossing point of the largest window over trials.
    std::size_t largest = 0;
    for (std::size_t wi = 1; wi < nw; ++wi)
        if (params.window_sizes[wi] > params.window_sizes[largest])
            largest = wi;
    std::optional<double> t_perc = crossing_point(smoothed[largest]);

    const int bootstrap_rounds = 200;
    std::vector<double> boot_estimates;
    for (int b = 0; b < bootstrap_rounds; ++b) {
        RandomStream stream(params.seed, kPercolationTag, 0xB007ULL,
                            static_cast<std::uint64_t>(b));
        std::vector<double> resampled(nt, 0.0);
        for (std::size_t ti = 0; ti < nt; ++ti) {
            long c = 0;
            for (long i = 0; i < params.trials; ++i) {
                std::uint64_t pick = stream() % static_cast<std::uint64_t>(params.trials);
                c += indicators[largest][ti][pick];
            }
            resampled[ti] = c / trials_d;
        }
        auto fit = isotonic_fit(resampled, std::vector<double>(nt, 1.0));
        if (auto est = crossing_point(fit))
            boot_estimates.push_back(*est);
    }
    std::sort(boot_estimates.begin(), boot_estimates.end());
    json t_perc_json;
    if (t_perc && !boot_estimates.empty()) {
        auto pick = [&](double q) {
            std::size_t idx = static_cast<std::size_t>(
                q * static_cast<double>(boot_estimates.size() - 1));
            return boot_estimates[idx];
        };
        t_perc_json = json{{"estimate", *t_perc},
                           {"window", params.window_sizes[largest]},
                           {"ci_low", pick(0.025)},
                           {"ci_high", pick(0.975)},
                           {"bootstrap_rounds", bootstrap_rounds},
                           {"bootstrap_hits",
                            static_cast<long>(boot_estimates.size())}};
    } else {
        t_perc_json = json{{"estimate", nullptr},
                           {"window", params.window_sizes[largest]}};
    }

    ExperimentReport report;
    report.kind = "percolation";
    report.trials = params.trials;
    report.config = json{{"rho", params.rho},
                         {"t_values", params.t_values},
                         {"window_sizes", params.window_sizes},
                         {"dim", params.dim},
                         {"axis", params.axis},
                         {"trials", params.trials},
                         {"seed", params.seed}};
    report.results = json{{"curve", curve}, {"t_perc", t_perc_json}};
    return report;
}

} // namespace rgc
