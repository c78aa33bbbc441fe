// Command line runner: one experiment per subcommand, results as CSV or JSON
// with a provenance header.  Exit status 0 on success, 1 if any row records a
// numerical failure, 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparselab/averages.hpp"
#include "sparselab/experiments.hpp"
#include "sparselab/interpolation.hpp"
#include "sparselab/oscillatory.hpp"
#include "sparselab/random_singular.hpp"
#include "sparselab/reports.hpp"
#include "sparselab/rng.hpp"
#include "sparselab/signal_io.hpp"
#include "sparselab/sparse.hpp"
#include "sparselab/weights.hpp"

namespace {

using nlohmann::json;
using namespace sparselab;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Params {
    double alpha = 0.5;
    double p = 2.0;
    double r = 1.5;
    int k_min = 4;
    int k_max = 8;
    std::int64_t n = 1024;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string weight = "a=0";
    std::string phase = "d=2";
    std::string out;
    std::string format;
    double c = 10.0;
    double eps = 0.1;
    std::string op = "H";
    double ppw = 16.0;
    std::string f_path;
    std::string g_path;

    json to_json() const {
        return {{"alpha", alpha}, {"p", p},         {"r", r},           {"k_min", k_min},   {"k_max", k_max},
                {"n", n},         {"trials", trials}, {"seed", seed},     {"weight", weight}, {"phase", phase},
                {"out", out},     {"format", format}, {"c", c},           {"eps", eps},       {"op", op},
                {"ppw", ppw},     {"f", f_path},      {"g", g_path}};
    }

    void apply_config(const json& cfg) {
        if (!cfg.is_object()) throw UsageError("config: expected a JSON object");
        for (const auto& [key, v] : cfg.items()) {
            if (key == "alpha") alpha = v.get<double>();
            else if (key == "p") p = v.get<double>();
            else if (key == "r") r = v.get<double>();
            else if (key == "k_min") k_min = v.get<int>();
            else if (key == "k_max") k_max = v.get<int>();
            else if (key == "n") n = v.get<std::int64_t>();
            else if (key == "trials") trials = v.get<int>();
            else if (key == "seed") seed = v.get<std::uint64_t>();
            else if (key == "weight") weight = v.get<std::string>();
            else if (key == "phase") phase = v.get<std::string>();
            else if (key == "out") out = v.get<std::string>();
            else if (key == "format") format = v.get<std::string>();
            else if (key == "c") c = v.get<double>();
            else if (key == "eps") eps = v.get<double>();
            else if (key == "op") op = v.get<std::string>();
            else if (key == "ppw") ppw = v.get<double>();
            else if (key == "f") f_path = v.get<std::string>();
            else if (key == "g") g_path = v.get<std::string>();
            else throw UsageError("config: unknown key '" + key + "'");
        }
    }
};

// Tabular result; `failures` counts rows with a numerical failure.
struct Result {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;
    json extra = json::object();  // summary fields, appended to JSON and as CSV comments
    json document;                // non-tabular result (JSON only)
    int failures = 0;
};

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(17) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

void write_result(const std::string& experiment, const Params& prm, const Result& res, bool json_default) {
    std::string format = prm.format.empty() ? (json_default ? "json" : "csv") : prm.format;
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    if (format == "csv" && res.header.empty()) format = "json";

    std::ofstream file;
    if (!prm.out.empty()) {
        file.open(prm.out);
        if (!file) throw UsageError("cannot open output file " + prm.out);
    }
    std::ostream& os = prm.out.empty() ? std::cout : file;

    const json provenance = {{"tool", "sparselab"}, {"version", SPARSELAB_VERSION},
                             {"experiment", experiment}, {"config", prm.to_json()}};
    if (format == "json") {
        json doc;
        if (!res.document.is_null()) {
            doc = res.document;
        } else {
            json rows = json::array();
            for (const auto& row : res.rows) {
                json obj = json::object();
                for (std::size_t i = 0; i < res.header.size(); ++i) obj[res.header[i]] = row[i];
                rows.push_back(obj);
            }
            doc = {{"rows", rows}};
        }
        if (!doc.is_object()) doc = {{"result", doc}};
        for (const auto& [k, v] : res.extra.items()) doc[k] = v;
        doc["provenance"] = provenance;
        os << doc.dump(2) << "\n";
        return;
    }
    os << "# sparselab " << SPARSELAB_VERSION << "\n";
    os << "# experiment " << experiment << "\n";
    os << "# config " << prm.to_json().dump() << "\n";
    for (std::size_t i = 0; i < res.header.size(); ++i) os << (i ? "," : "") << res.header[i];
    os << "\n";
    for (const auto& row : res.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
        os << "\n";
    }
    for (const auto& [k, v] : res.extra.items()) os << "# " << k << " " << v.dump() << "\n";
}

// "a=<exp>" for a power weight, "file=<path>" for a weight file (Signal format).
Weight parse_weight(const std::string& text, const GridWindow& window) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("--weight expects a=<exp> or file=<path>");
    const std::string key = text.substr(0, eq);
    const std::string val = text.substr(eq + 1);
    if (key == "a") return power_weight(std::stod(val), window);
    if (key == "file") {
        const Signal s = io::load_signal(val);
        const GridWindow w(s.extent().lo, s.extent().hi);
        return Weight(w, std::vector<double>(s.values().begin(), s.values().end()));
    }
    throw UsageError("--weight expects a=<exp> or file=<path>");
}

// "d=<deg>" for y^deg, "coeffs=c0,c1,..." for a raw polynomial (normalized).
PolynomialPhase parse_phase(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("--phase expects d=<deg> or coeffs=c0,c1,...");
    const std::string key = text.substr(0, eq);
    const std::string val = text.substr(eq + 1);
    if (key == "d") {
        const int d = std::stoi(val);
        if (d == 0) return PolynomialPhase::zero();
        return PolynomialPhase::monomial(d);
    }
    if (key == "coeffs") {
        std::vector<double> raw;
        std::stringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ',')) raw.push_back(std::stod(item));
        const PolynomialPhase p = normalize_phase(raw);
        if (p.pure_linear) return PolynomialPhase::zero();
        return p;
    }
    throw UsageError("--phase expects d=<deg> or coeffs=c0,c1,...");
}

Result run_sample_set(const Params& prm) {
    const RandomSet set = sample_random_set(prm.alpha, prm.seed, prm.n);
    Result res;
    res.header = {"n", "x", "y"};
    for (std::int64_t n = -prm.n; n <= prm.n; ++n) {
        if (n == 0) continue;
        res.rows.push_back({n, set.x(n) ? 1 : 0, set.y(n)});
    }
    return res;
}

Result run_opnorm(const Params& prm) {
    Result res;
    res.header = {"alpha", "k", "seed", "opnorm", "certified", "abs_sum"};
    for (int k = prm.k_min; k <= prm.k_max; ++k) {
        for (int t = 0; t < prm.trials; ++t) {
            const std::uint64_t s = trial_seed(prm.seed, k, t);
            const ScaleBlock b = sample_scale_block(prm.alpha, s, k);
            res.rows.push_back({prm.alpha, k, s, opnorm_multiplier(b), certified_opnorm(b), b.abs_sum()});
        }
    }
    return res;
}

Result run_concentration(const Params& prm) {
    const auto table = concentration_experiment(prm.alpha, prm.k_min, prm.k_max, prm.trials, prm.c, prm.seed);
    Result res;
    res.header = {"alpha", "k", "seed", "opnorm", "bound", "exceed"};
    for (const auto& row : table.rows) {
        res.rows.push_back({row.alpha, row.k, row.seed, row.opnorm, row.bound, row.exceed ? 1 : 0});
    }
    json summary = json::array();
    for (const auto& s : table.summary) {
        summary.push_back({{"k", s.k}, {"trials", s.trials}, {"exceedances", s.exceedances},
                           {"median_ratio", s.median_ratio}});
    }
    res.extra["summary"] = summary;
    res.extra["trend_p_value"] = table.trend_p_value;
    return res;
}

Result run_scale_bounds(const Params& prm) {
    Result res;
    res.header = {"k", "trial", "lhs", "opnorm", "first_constant", "scaled_constant", "second_constant"};
    double worst2 = 0.0;
    double worst1 = 0.0;
    for (int k = prm.k_min; k <= prm.k_max; ++k) {
        const Interval interval{0, std::int64_t{1} << k};
        for (int t = 0; t < prm.trials; ++t) {
            const std::uint64_t s = trial_seed(prm.seed, k, t);
            rng::SplitMix64 gen(rng::combine(s, 1));
            const Signal f = random_block_signal(gen, interval, 1);
            const Signal g = random_block_signal(gen, interval, 1);
            const auto rep = scale_bilinear_bounds(f, g, interval, sample_scale_block(prm.alpha, s, k), prm.eps);
            worst1 = std::max(worst1, rep.first_constant);
            worst2 = std::max(worst2, rep.second_constant);
            res.rows.push_back({k, t, rep.lhs, rep.opnorm, rep.first_constant, rep.scaled_constant,
                                rep.second_constant});
        }
    }
    res.extra["max_first_constant"] = worst1;
    res.extra["max_second_constant"] = worst2;
    return res;
}

Result run_sparse_check(const Params& prm) {
    Result res;
    if (!prm.f_path.empty()) {
        const Signal f = io::load_signal(prm.f_path);
        const Signal g = prm.g_path.empty() ? f : io::load_signal(prm.g_path);
        const SparseCollection s = build_sparse_collection(f, g, prm.r);
        const SparsityReport rep = verify_sparsity(s);
        res.document = {{"c0", s.c0}, {"collection", report::to_json(s)}, {"sparsity", report::to_json(rep)},
                        {"form", sparse_form(s, f, g, {prm.r, prm.r})}};
        if (!rep.ok) res.failures = 1;
        return res;
    }
    res.header = {"trial", "cubes", "c0", "ok"};
    const Interval window{0, prm.n};
    for (int t = 0; t < prm.trials; ++t) {
        rng::SplitMix64 gen(rng::combine(prm.seed, static_cast<std::uint64_t>(t)));
        const Signal f = random_block_signal(gen, window, 1);
        const Signal g = random_block_signal(gen, window, 1);
        const SparseCollection s = build_sparse_collection(f, g, prm.r);
        const bool ok = verify_sparsity(s).ok;
        if (!ok) ++res.failures;
        res.rows.push_back({t, s.size(), s.c0, ok});
    }
    return res;
}

Result run_domination(const Params& prm) {
    SingularOperator op;
    if (prm.op == "H") op = SingularOperator::hilbert;
    else if (prm.op == "H_alpha") op = SingularOperator::random_hilbert;
    else throw UsageError("--op must be H or H_alpha");
    const DominationSweep sweep = domination_sweep(op, prm.alpha, prm.r, prm.n, prm.trials, prm.seed);
    Result res;
    res.header = {"op", "n", "trial", "ratio"};
    for (std::size_t t = 0; t < sweep.ratios.size(); ++t) res.rows.push_back({prm.op, prm.n, t, sweep.ratios[t]});
    res.extra["sup_ratio"] = sweep.sup_ratio;
    res.extra["max_c0"] = sweep.max_c0;
    return res;
}

Result run_weight_char(const Params& prm) {
    const GridWindow window = GridWindow::symmetric(prm.n);
    const Weight w = parse_weight(prm.weight, window);
    const auto family = default_family(w);
    Result res;
    json records = json::array();
    records.push_back(report::to_json(ap_characteristic(w, prm.p, family)));
    records.push_back(report::to_json(rh_characteristic(w, prm.r, family)));
    records.push_back(report::to_json(ap_characteristic(dual_weight(w, prm.p), conjugate_exponent(prm.p), family)));
    res.document = {{"records", records}};
    if (const auto rs = rh_exponent_scan(w, family)) res.document["rh_scan_r"] = *rs;
    return res;
}

Result run_ww_check(const Params& prm) {
    const GridWindow window = GridWindow::symmetric(prm.n);
    const Weight w = parse_weight(prm.weight, window);
    const auto family = default_family(w);
    Result res;
    res.document = report::to_json(check_ww_conditions(w, prm.p, prm.alpha, prm.r, family));
    return res;
}

Result run_wnorm(const Params& prm) {
    const auto eq = prm.weight.find('=');
    if (eq == std::string::npos || prm.weight.substr(0, eq) != "a") throw UsageError("wnorm expects --weight a=<exp>");
    const double a = std::stod(prm.weight.substr(eq + 1));
    const auto sweep = weighted_norm_sweep(prm.alpha, prm.p, a, prm.n, prm.trials, prm.seed);
    Result res;
    res.header = {"n", "trial", "ratio"};
    for (std::size_t t = 0; t < sweep.ratios.size(); ++t) res.rows.push_back({prm.n, t, sweep.ratios[t]});
    res.extra["sup_ratio"] = sweep.sup_ratio;
    return res;
}

Result run_osc_decay(const Params& prm) {
    PieceOptions opt;
    opt.points_per_wavelength = prm.ppw;
    const DecayReport rep = oscillatory_decay(parse_phase(prm.phase), prm.k_min, prm.k_max, opt);
    Result res;
    res.header = {"k", "norm", "fitted_eta"};
    for (const auto& row : rep.rows) {
        if (!row.converged) ++res.failures;
        res.rows.push_back({row.k, row.converged ? json(row.norm) : json("nan"), rep.fitted_eta});
    }
    return res;
}

Result run_badset(const Params& prm) {
    PieceOptions opt;
    opt.points_per_wavelength = prm.ppw;
    const PolynomialPhase phase = parse_phase(prm.phase);
    Result res;
    res.header = {"k", "eps", "measure", "allowance", "ratio"};
    for (int k = prm.k_min; k <= prm.k_max; ++k) {
        const auto rep = badset_measure(LocalizedPiece(phase, k, opt), prm.eps);
        res.rows.push_back({k, rep.eps, rep.measure, rep.allowance, rep.ratio});
    }
    return res;
}

Result run_interp(const Params& prm) {
    const EndpointPair pair = EndpointPair::random_hilbert(prm.alpha);
    const CriticalIndex ci = critical_index(pair);
    Result res;
    res.document = {{"theta0", ci.theta0}, {"r0", ci.r0}, {"eta", gain_exponent(pair, prm.r)}};
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparselab: sparse domination and random singular integral experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(SPARSELAB_VERSION));

    Params prm;
    std::string config_path;
    app.add_option("--alpha", prm.alpha, "Density exponent of the random set");
    app.add_option("--p", prm.p, "Lebesgue / weight exponent");
    app.add_option("--r", prm.r, "Average exponent");
    app.add_option("--k-min", prm.k_min, "Smallest scale");
    app.add_option("--k-max", prm.k_max, "Largest scale");
    app.add_option("--n", prm.n, "Window size / truncation");
    app.add_option("--trials", prm.trials, "Trials per setting");
    app.add_option("--seed", prm.seed, "Base seed");
    app.add_option("--weight", prm.weight, "Weight: a=<exp> or file=<path>");
    app.add_option("--phase", prm.phase, "Phase: d=<deg> or coeffs=c0,c1,...");
    app.add_option("--out", prm.out, "Output path (default stdout)");
    app.add_option("--format", prm.format, "csv or json");
    app.add_option("--c", prm.c, "Constant C of the concentration bound");
    app.add_option("--eps", prm.eps, "Exponent eps");
    app.add_option("--op", prm.op, "Operator for domination: H or H_alpha");
    app.add_option("--ppw", prm.ppw, "Mesh points per wavelength");
    app.add_option("--f", prm.f_path, "Signal file for f");
    app.add_option("--g", prm.g_path, "Signal file for g");
    app.add_option("--config", config_path, "JSON config; its keys override flags");

    struct Entry {
        const char* name;
        const char* help;
        Result (*run)(const Params&);
        bool json_default;
    };
    const std::vector<Entry> entries = {
        {"sample-set", "Sample a random set X_n", run_sample_set, false},
        {"opnorm", "Operator norms of scale blocks", run_opnorm, false},
        {"concentration", "Concentration of scale block norms", run_concentration, false},
        {"scale-bounds", "Single-interval bounds for scale blocks", run_scale_bounds, true},
        {"sparse-check", "Build and verify sparse collections", run_sparse_check, false},
        {"domination", "Sparse domination ratios", run_domination, false},
        {"weight-char", "A_p and RH_r characteristics", run_weight_char, true},
        {"ww-check", "Weight hypotheses for H_alpha", run_ww_check, true},
        {"wnorm", "Weighted norm ratios of H_alpha", run_wnorm, false},
        {"osc-decay", "Scale decay of localized oscillatory pieces", run_osc_decay, false},
        {"badset", "Bad-set measure of the kernel K_Q", run_badset, false},
        {"interp", "Critical index and gain exponent", run_interp, true},
    };
    for (const auto& e : entries) app.add_subcommand(e.name, e.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot open config " + config_path);
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw UsageError(std::string("config: ") + e.what());
            }
            prm.apply_config(cfg);
        }
        for (const auto& e : entries) {
            if (app.got_subcommand(e.name)) {
                const Result res = e.run(prm);
                write_result(e.name, prm, res, e.json_default);
                return res.failures > 0 ? 1 : 0;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
