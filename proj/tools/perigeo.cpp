// perigeo: isometry invariants of periodic point sets.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include "perigeo/amd.hpp"
#include "perigeo/batch.hpp"
#include "perigeo/density.hpp"
#include "perigeo/isoset.hpp"
#include "perigeo/metric.hpp"
#include "perigeo/radii.hpp"
#include "perigeo/set_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace perigeo;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json points_json(const std::vector<Vec>& pts) {
    json out = json::array();
    for (const Vec& p : pts) out.push_back(std::vector<double>(p.data(), p.data() + p.size()));
    return out;
}

json corners_json(const PiecewiseLinear& f, double t_scale = 1.0) {
    json out = json::array();
    for (const Corner& c : f.corners()) out.push_back({c.t * t_scale, c.value});
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ':')) {
        try {
            parts.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError("--grid expects t0:t1:steps");
        }
    }
    if (parts.size() != 3 || parts[2] < 1 || parts[1] < parts[0]) throw UsageError("--grid expects t0:t1:steps");
    const int steps = static_cast<int>(parts[2]);
    std::vector<double> grid;
    for (int i = 0; i <= steps; ++i) grid.push_back(parts[0] + (parts[1] - parts[0]) * i / steps);
    return grid;
}

DrConfig dr_config(const std::string& engine, double delta) {
    DrConfig cfg;
    cfg.delta = delta;
    if (engine == "exact")
        cfg.engine = DrEngine::Exact;
    else if (engine == "approx")
        cfg.engine = DrEngine::Approx;
    else if (engine == "auto")
        cfg.engine = DrEngine::Auto;
    else
        throw UsageError("--dr must be exact, approx or auto");
    return cfg;
}

void write_plot_csv(const std::string& prefix, int k, const std::vector<std::pair<double, double>>& rows) {
    const std::string path = prefix + "_k" + std::to_string(k) + ".csv";
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << std::setprecision(12) << "t,psi\n";
    for (const auto& [t, v] : rows) out << t << ',' << v << '\n';
}

json isoset_json(const Isoset& iso) {
    json j;
    j["alpha"] = iso.alpha;
    j["unstable"] = iso.unstable;
    j["classes"] = json::array();
    for (const auto& c : iso.classes) {
        j["classes"].push_back({{"weight", std::to_string(c.weight_num) + "/" + std::to_string(c.weight_den)},
                                {"weight_value", c.weight()},
                                {"size", c.representative.size()},
                                {"members", c.members},
                                {"points", points_json(c.representative.points)}});
    }
    return j;
}

// Chooses alpha from --alpha / --stable for one or two sets.
double pick_alpha(const std::vector<const PeriodicSet*>& sets, double alpha, bool stable, const Tolerances& tol,
                  json& meta) {
    if (alpha >= 0 && stable) throw UsageError("--alpha and --stable are mutually exclusive");
    if (alpha >= 0) return alpha;
    if (stable) {
        double a = 0, beta = 0;
        bool fallback = false;
        for (const auto* s : sets) {
            const auto st = minimum_stable_radius(*s, tol);
            a = std::max(a, st.alpha);
            beta = std::max(beta, st.beta);
            fallback = fallback || st.fallback;
        }
        meta["beta"] = beta;
        meta["stable_fallback"] = fallback;
        return a;
    }
    double a = 0;
    for (const auto* s : sets) a = std::max(a, easy_stable_radius(*s));
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isometry invariants of periodic point sets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "perigeo 1.0");

    std::string file_a, file_b, format = "json", grid_spec, plot_prefix, dr = "auto", mode = "amd";
    int k = 100, samples = 0;
    std::uint64_t seed = 0;
    double alpha = -1, alpha_max = 0, delta = 0.1;
    bool stable = false, text = false;
    std::vector<int> point_pair;
    std::vector<std::string> batch_files;

    auto* amd_cmd = app.add_subcommand("amd", "Average Minimum Distances");
    amd_cmd->add_option("file", file_a, "Periodic set file")->required();
    amd_cmd->add_option("-k", k, "Number of neighbours")->check(CLI::PositiveNumber);
    amd_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* density_cmd = app.add_subcommand("density", "Density functions psi_0..psi_k");
    density_cmd->add_option("file", file_a, "Periodic set file")->required();
    density_cmd->add_option("-k", k, "Largest k")->check(CLI::NonNegativeNumber);
    density_cmd->add_option("--samples", samples, "Monte Carlo samples (forces sampling)");
    density_cmd->add_option("--grid", grid_spec, "t0:t1:steps for sampling");
    density_cmd->add_option("--seed", seed, "Random seed");
    density_cmd->add_option("--plot-csv", plot_prefix, "Write PREFIX_k<K>.csv per k");

    auto* isoset_cmd = app.add_subcommand("isoset", "Isoset at a radius");
    isoset_cmd->add_option("file", file_a, "Periodic set file")->required();
    isoset_cmd->add_option("--alpha", alpha, "Cluster radius");
    isoset_cmd->add_flag("--stable", stable, "Use the minimum stable radius (default)");

    auto* isotree_cmd = app.add_subcommand("isotree", "Alpha-partitions over growing alpha");
    isotree_cmd->add_option("file", file_a, "Periodic set file")->required();
    isotree_cmd->add_option("--alpha-max", alpha_max, "Largest radius")->required();
    isotree_cmd->add_flag("--text", text, "Plain text description instead of JSON");

    auto* compare_cmd = app.add_subcommand("compare", "Isometry decision");
    compare_cmd->add_option("fileA", file_a)->required();
    compare_cmd->add_option("fileB", file_b)->required();

    auto* emd_cmd = app.add_subcommand("emd", "Earth mover's distance between isosets");
    emd_cmd->add_option("fileA", file_a)->required();
    emd_cmd->add_option("fileB", file_b)->required();
    emd_cmd->add_option("--alpha", alpha, "Cluster radius");
    emd_cmd->add_flag("--stable", stable, "Use the larger minimum stable radius");
    emd_cmd->add_option("--dr", dr, "exact, approx or auto");
    emd_cmd->add_option("--delta", delta, "Approximation slack")->check(CLI::NonNegativeNumber);

    auto* dcluster_cmd = app.add_subcommand("dcluster", "Distance between two clusters");
    dcluster_cmd->add_option("fileA", file_a)->required();
    dcluster_cmd->add_option("fileB", file_b)->required();
    dcluster_cmd->add_option("--points", point_pair, "Motif indices iA iB")->expected(2)->required();
    dcluster_cmd->add_option("--alpha", alpha, "Cluster radius")->required();
    dcluster_cmd->add_option("--dr", dr, "exact, approx or auto");
    dcluster_cmd->add_option("--delta", delta, "Approximation slack")->check(CLI::NonNegativeNumber);

    auto* batch_cmd = app.add_subcommand("batch", "Pairwise comparison of many files");
    batch_cmd->add_option("files", batch_files, "Periodic set files")->required()->expected(2, -1);
    batch_cmd->add_option("--mode", mode, "amd, isoset or emd")->check(CLI::IsMember({"amd", "isoset", "emd"}));
    batch_cmd->add_option("-k", k, "AMD length")->check(CLI::PositiveNumber);
    batch_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    batch_cmd->add_option("--dr", dr, "exact, approx or auto");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const Tolerances tol = Tolerances::from_env();
    std::cout << std::setprecision(15);
    try {
        json out;
        out["schema"] = 1;

        if (*amd_cmd) {
            const auto set = parse_set_file(file_a, tol);
            const auto a = amd(set, k);
            if (format == "csv") {
                std::cout << "k,amd\n";
                for (int j = 0; j < k; ++j) std::cout << j + 1 << ',' << a.values[j] << '\n';
                return 0;
            }
            out["k"] = k;
            out["amd"] = a.values;
            out["per_point"] = a.per_point;
        } else if (*density_cmd) {
            const auto set = parse_set_file(file_a, tol);
            const bool sampled = samples > 0 || set.dim() > 1;
            out["k_max"] = k;
            out["psi"] = json::array();
            if (!sampled) {
                const DensityFingerprint1D f(set);
                out["method"] = "exact";
                out["period"] = f.period();
                for (int j = 0; j <= k; ++j) {
                    const auto& psi = f.psi(j);
                    out["psi"].push_back({{"k", j},
                                          {"corners", corners_json(psi)},
                                          {"corners_original_units", corners_json(psi, f.period())}});
                    if (!plot_prefix.empty()) {
                        std::vector<std::pair<double, double>> rows;
                        for (const Corner& c : psi.corners()) rows.push_back({c.t, c.value});
                        write_plot_csv(plot_prefix, j, rows);
                    }
                }
            } else {
                if (samples <= 0) samples = 100000;
                const auto grid =
                    grid_spec.empty() ? parse_grid("0:" + std::to_string(radius_report(set, tol).covering) + ":20")
                                      : parse_grid(grid_spec);
                std::vector<int> ks;
                for (int j = 0; j <= k; ++j) ks.push_back(j);
                const auto est = psi_sampled(set, ks, grid, samples, seed);
                out["method"] = "sampled";
                out["samples"] = samples;
                out["seed"] = seed;
                for (int j = 0; j <= k; ++j) {
                    json rows = json::array();
                    std::vector<std::pair<double, double>> plot;
                    for (const auto& s : est[j]) {
                        rows.push_back({s.t, s.estimate, s.stderr_});
                        plot.push_back({s.t, s.estimate});
                    }
                    out["psi"].push_back({{"k", j}, {"samples", rows}});
                    if (!plot_prefix.empty()) write_plot_csv(plot_prefix, j, plot);
                }
            }
        } else if (*isoset_cmd) {
            const auto set = parse_set_file(file_a, tol);
            json meta = json::object();
            const double a = pick_alpha({&set}, alpha, stable || alpha < 0, tol, meta);
            const auto iso = isoset(set, a, tol);
            out.update(isoset_json(iso));
            out.update(meta);
            out["regularity"] = iso.classes.size();
        } else if (*isotree_cmd) {
            const auto set = parse_set_file(file_a, tol);
            const auto tree = isotree(set, alpha_max, tol);
            if (text) {
                std::cout << tree.describe();
                return 0;
            }
            out["alpha_max"] = alpha_max;
            out["refinement_ok"] = tree.refinement_ok;
            out["split_radii"] = tree.split_radii();
            out["levels"] = json::array();
            for (const auto& lv : tree.levels)
                out["levels"].push_back({{"radius", lv.radius}, {"blocks", lv.blocks}, {"parent", lv.parent}});
            out["description"] = tree.describe();
        } else if (*compare_cmd) {
            const auto s = parse_set_file(file_a, tol);
            const auto q = parse_set_file(file_b, tol);
            out["isometric"] = isosets_equal(s, q, tol);
            out["alpha_used"] = s.dim() == q.dim() ? common_stable_radius(s, q) : 0.0;
        } else if (*emd_cmd) {
            const auto s = parse_set_file(file_a, tol);
            const auto q = parse_set_file(file_b, tol);
            const auto cfg = dr_config(dr, delta);
            json meta = json::object();
            const double a = pick_alpha({&s, &q}, alpha, stable, tol, meta);
            const auto r = emd(isoset(s, a, tol), isoset(q, a, tol), cfg);
            out.update(meta);
            out["alpha"] = a;
            out["cost"] = r.cost;
            out["engine"] = engine_name(r.engine);
            out["factor_bound"] = r.factor_bound;
            json plan = json::array();
            for (int i = 0; i < r.plan.flows.rows(); ++i) {
                std::vector<double> row(r.plan.flows.cols());
                for (int j = 0; j < r.plan.flows.cols(); ++j) row[j] = r.plan.flows(i, j);
                plan.push_back(row);
            }
            out["plan"] = plan;
        } else if (*dcluster_cmd) {
            const auto s = parse_set_file(file_a, tol);
            const auto q = parse_set_file(file_b, tol);
            if (point_pair[0] < 0 || point_pair[0] >= s.size() || point_pair[1] < 0 || point_pair[1] >= q.size())
                throw UsageError("--points index out of range");
            const auto cfg = dr_config(dr, delta);
            const auto r = d_C(alpha_cluster(s, point_pair[0], alpha, tol), alpha_cluster(q, point_pair[1], alpha, tol),
                               alpha, cfg);
            out["alpha"] = alpha;
            out["d_C"] = r.value;
            out["d_M_forward"] = r.forward.value;
            out["d_M_backward"] = r.backward.value;
            out["engine"] = engine_name(r.engine);
            out["factor_bound"] = r.factor_bound;
            out["prefix_monotone"] = r.forward.prefix_monotone && r.backward.prefix_monotone;
        } else if (*batch_cmd) {
            const auto r = batch_compare(batch_files, parse_batch_mode(mode), k, dr_config(dr, delta), tol);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
            if (format == "csv") {
                std::cout << batch_to_csv(r);
                return 0;
            }
            out = batch_to_json(r);
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
