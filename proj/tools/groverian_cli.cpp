// groverian: Groverian entanglement measure and Grover-search evolution for
// n-qudit registers.
//
// Exit codes: 0 success; 1 verification breach; 2 parse/input errors;
// 3 explicitly requested method inapplicable; 4 optimizer non-convergence
// under --strict; 5 unwritable output.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groverian/entropy.hpp"
#include "groverian/evolution.hpp"
#include "groverian/grover.hpp"
#include "groverian/measure.hpp"
#include "groverian/product.hpp"
#include "groverian/rng.hpp"
#include "groverian/state.hpp"
#include "groverian/state_io.hpp"
#include "groverian/version.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBreach = 1;
constexpr int kExitParse = 2;
constexpr int kExitInapplicable = 3;
constexpr int kExitNoConverge = 4;
constexpr int kExitUnwritable = 5;

// All numeric output is printed (and JSON-encoded) at 12 significant digits.
std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

int env_threads() {
    const char* raw = std::getenv("GROVERIAN_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 4096)
        throw groverian::RangeViolation("GROVERIAN_THREADS must be an integer >= 1");
    return static_cast<int>(v);
}

struct CommonOpts {
    std::uint64_t seed = 0;
    bool json = false;
    int threads = 0; // 0: resolve from GROVERIAN_THREADS (default 1)
};

struct OptimizerOpts {
    int restarts = 64;
    int max_sweeps = 500;
    double tolerance = 1e-10;
    bool real_only = false;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "Deterministic seed")->capture_default_str();
    cmd->add_flag("--json", c.json, "Emit JSON instead of text");
    cmd->add_option("--threads", c.threads,
                    "Optimizer restart parallelism (default: GROVERIAN_THREADS or 1); "
                    "never changes results");
}

void add_optimizer(CLI::App* cmd, OptimizerOpts& o) {
    cmd->add_option("--restarts", o.restarts, "Optimizer restarts")->capture_default_str();
    cmd->add_option("--max-sweeps", o.max_sweeps, "Sweep cap per restart")
        ->capture_default_str();
    cmd->add_option("--tolerance", o.tolerance, "Per-sweep improvement tolerance")
        ->capture_default_str();
    cmd->add_flag("--real-only", o.real_only, "Restrict product factors to real vectors");
    cmd->add_flag("--strict", o.strict, "Exit 4 if the optimizer did not converge");
}

groverian::OptimizerConfig make_config(const CommonOpts& c, const OptimizerOpts& o) {
    groverian::OptimizerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.max_sweeps = o.max_sweeps;
    cfg.tolerance = o.tolerance;
    cfg.seed = c.seed;
    cfg.real_only = o.real_only;
    cfg.threads = c.threads > 0 ? c.threads : env_threads();
    return cfg;
}

std::string state_to_string(const groverian::QuditRegisterState& psi) {
    std::ostringstream os;
    groverian::write_state(os, psi);
    return os.str();
}

// ---------------------------------------------------------------- measure

struct MeasureOpts {
    std::string file;
    std::string method = "all";
    int cut = 1;
    int grid_resolution = 41;
    bool normalize = false;
    CommonOpts common;
    OptimizerOpts optimizer;
};

int run_measure(const MeasureOpts& opt) {
    const groverian::QuditRegisterState psi =
        groverian::read_state_file(opt.file, opt.normalize);
    const int d = psi.level_count();
    const int n = psi.qudit_count();
    const bool explicit_method = opt.method != "all";

    const bool closed_ok = d == 3 && n == 2 && psi.is_real(1e-9);
    const bool schmidt_ok = n >= 2;

    ordered_json out;
    out["file"] = opt.file;
    out["d"] = d;
    out["n"] = n;
    out["reports"] = ordered_json::array();
    out["skipped"] = ordered_json::array();
    std::ostringstream text;
    text << "file=" << opt.file << " d=" << d << " n=" << n << "\n";

    auto want = [&](const char* name) { return opt.method == "all" || opt.method == name; };
    auto skip = [&](const char* method, const std::string& reason) -> std::optional<int> {
        if (explicit_method) {
            std::cerr << "method " << method << " inapplicable: " << reason << "\n";
            return kExitInapplicable;
        }
        out["skipped"].push_back({{"method", method}, {"reason", reason}});
        text << "method=" << method << " skipped reason=\"" << reason << "\"\n";
        return std::nullopt;
    };

    bool numeric_converged = true;
    bool ran_numeric = false;

    if (want("numeric")) {
        const groverian::EntanglementReport rep =
            groverian::pmax_numeric(psi, make_config(opt.common, opt.optimizer));
        ran_numeric = true;
        numeric_converged = rep.converged;
        out["reports"].push_back({{"method", "numeric"},
                                  {"p_max", round12(rep.p_max)},
                                  {"g", round12(rep.g)},
                                  {"converged", rep.converged},
                                  {"restarts_used", rep.restarts_used}});
        text << "method=numeric p_max=" << fmt12(rep.p_max) << " g=" << fmt12(rep.g)
             << " converged=" << (rep.converged ? "yes" : "no")
             << " restarts_used=" << rep.restarts_used << "\n";
    }
    if (want("closed-form")) {
        if (!closed_ok) {
            if (auto code = skip("closed_form_2qutrit",
                                 "requires a real two-qutrit state (d=3, n=2)"))
                return *code;
        } else {
            const double p = groverian::pmax_closed_form_two_qutrit_real(psi);
            // the closed form over-estimates, and rounding can push it a
            // hair past 1; g is taken on the clamped value so the report
            // never aborts at the P = 1 boundary
            const double g = groverian::groverian(std::min(p, 1.0));
            out["reports"].push_back({{"method", "closed_form_2qutrit"},
                                      {"p_max", round12(p)},
                                      {"g", round12(g)}});
            text << "method=closed_form_2qutrit p_max=" << fmt12(p) << " g=" << fmt12(g)
                 << "\n";
        }
    }
    if (want("schmidt")) {
        if (!schmidt_ok) {
            if (auto code = skip("schmidt", "requires n >= 2")) return *code;
        } else {
            const double p = groverian::pmax_schmidt_bipartite(psi, opt.cut);
            const double g = groverian::groverian(p);
            out["reports"].push_back({{"method", "schmidt"},
                                      {"p_max", round12(p)},
                                      {"g", round12(g)},
                                      {"cut", opt.cut}});
            text << "method=schmidt p_max=" << fmt12(p) << " g=" << fmt12(g)
                 << " cut=" << opt.cut << "\n";
        }
    }
    if (want("grid")) {
        const bool real = opt.optimizer.real_only || psi.is_real(1e-9);
        try {
            const double p = groverian::pmax_grid(psi, opt.grid_resolution, real);
            const double g = groverian::groverian(p);
            out["reports"].push_back({{"method", "grid"},
                                      {"p_max", round12(p)},
                                      {"g", round12(g)},
                                      {"resolution", opt.grid_resolution},
                                      {"mode", real ? "real" : "full"}});
            text << "method=grid p_max=" << fmt12(p) << " g=" << fmt12(g)
                 << " resolution=" << opt.grid_resolution
                 << " mode=" << (real ? "real" : "full") << "\n";
        } catch (const groverian::BudgetExceeded& e) {
            if (auto code = skip("grid", e.what())) return *code;
        }
    }

    if (opt.common.json)
        std::cout << out.dump(2) << "\n";
    else
        std::cout << text.str();

    if (opt.optimizer.strict && ran_numeric && !numeric_converged) return kExitNoConverge;
    return kExitOk;
}

// ----------------------------------------------------------------- evolve

struct EvolveOpts {
    int d = 3;
    int n = 2;
    std::size_t marked = 0;
    int m = -1; // -1: optimal_iterations(d, n)
    std::string output;
    CommonOpts common;
    OptimizerOpts optimizer;
};

std::string trace_to_csv(const groverian::EvolutionTrace& trace) {
    std::ostringstream csv;
    csv << "step_index,step_label,success_prob,g_groverian,s_entropy\n";
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const groverian::TraceRecord& r = trace.records[i];
        csv << i << "," << r.step_label << "," << fmt12(r.success_prob) << ",";
        if (r.g_groverian) csv << fmt12(*r.g_groverian);
        csv << ",";
        if (r.s_entropy) csv << fmt12(*r.s_entropy);
        csv << "\n";
    }
    return csv.str();
}

ordered_json trace_to_json(const groverian::EvolutionTrace& trace) {
    ordered_json records = ordered_json::array();
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const groverian::TraceRecord& r = trace.records[i];
        ordered_json rec;
        rec["step_index"] = i;
        rec["step_label"] = r.step_label;
        rec["success_prob"] = round12(r.success_prob);
        rec["g_groverian"] = r.g_groverian ? ordered_json(round12(*r.g_groverian))
                                           : ordered_json(nullptr);
        rec["s_entropy"] =
            r.s_entropy ? ordered_json(round12(*r.s_entropy)) : ordered_json(nullptr);
        records.push_back(std::move(rec));
    }
    return records;
}

int run_evolve(const EvolveOpts& opt) {
    const int m = opt.m >= 0 ? opt.m : groverian::optimal_iterations(opt.d, opt.n);
    const groverian::OptimizerConfig cfg = make_config(opt.common, opt.optimizer);

    // the reference two-qutrit run carries the real-mode cross-check
    const groverian::EvolutionTrace trace =
        (opt.d == 3 && opt.n == 2 && m == 2)
            ? groverian::trace_two_qutrit(opt.marked, cfg)
            : groverian::trace_general(opt.d, opt.n, opt.marked, m, cfg);

    ordered_json meta;
    meta["command"] = "evolve";
    meta["version"] = groverian::kVersion;
    meta["d"] = opt.d;
    meta["n"] = opt.n;
    meta["marked"] = opt.marked;
    meta["iterations"] = m;
    meta["seed"] = opt.common.seed;
    meta["restarts"] = opt.optimizer.restarts;
    meta["max_sweeps"] = opt.optimizer.max_sweeps;
    meta["tolerance"] = round12(opt.optimizer.tolerance);
    meta["threads"] = cfg.threads;

    const std::string csv = trace_to_csv(trace);
    if (!opt.output.empty()) {
        try {
            std::ofstream f(opt.output, std::ios::binary);
            if (!f) throw groverian::IoError("cannot open output file: " + opt.output);
            f << csv;
            f.flush();
            if (!f) throw groverian::IoError("write failed: " + opt.output);
            std::ofstream mf(opt.output + ".meta.json", std::ios::binary);
            if (!mf) throw groverian::IoError("cannot open sidecar: " + opt.output +
                                              ".meta.json");
            mf << meta.dump(2) << "\n";
            mf.flush();
            if (!mf) throw groverian::IoError("write failed: " + opt.output + ".meta.json");
        } catch (const groverian::IoError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUnwritable;
        }
    }
    if (opt.common.json) {
        ordered_json doc;
        doc["meta"] = meta;
        doc["records"] = trace_to_json(trace);
        std::cout << doc.dump(2) << "\n";
    } else if (opt.output.empty()) {
        std::cout << csv;
    }
    if (opt.optimizer.strict && !trace.all_converged) return kExitNoConverge;
    return kExitOk;
}

// ----------------------------------------------------------------- search

struct SearchOpts {
    int d = 3;
    int n = 2;
    std::size_t marked = 0;
    int m = -1; // -1: optimal_iterations(d, n)
    bool full_steps = false;
    CommonOpts common;
};

int run_search(const SearchOpts& opt) {
    const bool optimal = opt.m < 0;
    const int m = optimal ? groverian::optimal_iterations(opt.d, opt.n) : opt.m;
    groverian::GroverConfig cfg;
    cfg.marked = opt.marked;
    cfg.iterations = m;
    cfg.record_half_steps = !opt.full_steps;
    const groverian::EvolutionTrace trace = groverian::run_search(opt.d, opt.n, cfg);

    if (opt.common.json) {
        ordered_json doc;
        doc["d"] = opt.d;
        doc["n"] = opt.n;
        doc["marked"] = opt.marked;
        doc["iterations"] = m;
        doc["optimal"] = optimal;
        doc["records"] = ordered_json::array();
        for (const groverian::TraceRecord& r : trace.records)
            doc["records"].push_back({{"step_label", r.step_label},
                                      {"success_prob", round12(r.success_prob)}});
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "d=" << opt.d << " n=" << opt.n << " marked=" << opt.marked
                  << " iterations=" << m << " optimal=" << (optimal ? "yes" : "no") << "\n";
        for (const groverian::TraceRecord& r : trace.records)
            std::cout << "step=" << r.step_label
                      << " success_prob=" << fmt12(r.success_prob) << "\n";
    }
    return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyOpts {
    int trials = 1000;
    bool skip_closed_form = false;
    bool inject_closed_form_error = false;
    CommonOpts common;
    OptimizerOpts optimizer;
};

struct PairCheck {
    double max_abs_diff = 0.0;
    std::optional<groverian::QuditRegisterState> worst;
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;

    void update(double lhs, double rhs, const groverian::QuditRegisterState& psi) {
        const double diff = std::abs(lhs - rhs);
        if (diff > max_abs_diff || !worst) {
            max_abs_diff = diff;
            worst = psi;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
    }
};

int run_verify(const VerifyOpts& opt) {
    if (opt.trials < 1) throw groverian::RangeViolation("--trials must be >= 1");
    groverian::OptimizerConfig cfg = make_config(opt.common, opt.optimizer);
    cfg.real_only = false; // full-mode numeric is the route under test

    groverian::Rng rng(opt.common.seed);
    PairCheck num_vs_sch, clo_vs_sch;

    for (int t = 0; t < opt.trials; ++t) {
        std::vector<groverian::Complex> amps(9);
        for (auto& a : amps) a = groverian::Complex{rng.gaussian(), 0.0};
        const groverian::QuditRegisterState psi(3, 2, std::move(amps), true);

        const double p_sch = groverian::pmax_schmidt_bipartite(psi, 1);
        const double p_num = groverian::pmax_numeric(psi, cfg).p_max;
        num_vs_sch.update(p_num, p_sch, psi);
        if (!opt.skip_closed_form) {
            double p_clo = groverian::pmax_closed_form_two_qutrit_real(psi);
            if (opt.inject_closed_form_error) p_clo += 1e-3;
            clo_vs_sch.update(p_clo, p_sch, psi);
        }
    }

    const double tol = 1e-6;
    const bool num_ok = num_vs_sch.max_abs_diff <= tol;
    const bool clo_ok = opt.skip_closed_form || clo_vs_sch.max_abs_diff <= tol;

    if (opt.common.json) {
        ordered_json doc;
        doc["trials"] = opt.trials;
        doc["seed"] = opt.common.seed;
        doc["tolerance"] = tol;
        doc["numeric_vs_schmidt"] = {{"max_abs_diff", round12(num_vs_sch.max_abs_diff)},
                                     {"ok", num_ok}};
        if (opt.skip_closed_form) {
            doc["closed_vs_schmidt"] = nullptr;
        } else {
            doc["closed_vs_schmidt"] = {{"max_abs_diff", round12(clo_vs_sch.max_abs_diff)},
                                        {"ok", clo_ok}};
        }
        if (!num_ok || !clo_ok) {
            const PairCheck& bad = !num_ok ? num_vs_sch : clo_vs_sch;
            doc["breach"] = {
                {"method", !num_ok ? "numeric" : "closed_form_2qutrit"},
                {"value", round12(bad.worst_lhs)},
                {"schmidt", round12(bad.worst_rhs)},
                {"state", state_to_string(*bad.worst)},
            };
        } else {
            doc["breach"] = nullptr;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "trials=" << opt.trials << " seed=" << opt.common.seed << "\n";
        std::cout << "numeric_vs_schmidt max_abs_diff=" << fmt12(num_vs_sch.max_abs_diff)
                  << " ok=" << (num_ok ? "yes" : "no") << "\n";
        if (!opt.skip_closed_form)
            std::cout << "closed_vs_schmidt max_abs_diff=" << fmt12(clo_vs_sch.max_abs_diff)
                      << " ok=" << (clo_ok ? "yes" : "no") << "\n";
        if (!num_ok || !clo_ok) {
            const PairCheck& bad = !num_ok ? num_vs_sch : clo_vs_sch;
            std::cout << "breach method="
                      << (!num_ok ? "numeric" : "closed_form_2qutrit")
                      << " value=" << fmt12(bad.worst_lhs)
                      << " schmidt=" << fmt12(bad.worst_rhs) << " state:\n"
                      << state_to_string(*bad.worst);
        }
    }
    return (num_ok && clo_ok) ? kExitOk : kExitBreach;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Groverian entanglement measure for n-qudit Grover search"};
    app.require_subcommand(1);

    MeasureOpts measure_opts;
    CLI::App* measure = app.add_subcommand(
        "measure", "Compute P_max and G for a state file");
    measure->add_option("file", measure_opts.file, "State file")->required();
    measure
        ->add_option("--method", measure_opts.method,
                     "numeric|closed-form|schmidt|grid|all")
        ->check(CLI::IsMember({"numeric", "closed-form", "schmidt", "grid", "all"}))
        ->capture_default_str();
    measure->add_option("--cut", measure_opts.cut, "Bipartite cut for schmidt")
        ->capture_default_str();
    measure
        ->add_option("--grid-resolution", measure_opts.grid_resolution,
                     "Points per angle for grid")
        ->capture_default_str();
    measure->add_flag("--normalize", measure_opts.normalize,
                      "Normalize the input instead of requiring unit norm");
    add_common(measure, measure_opts.common);
    add_optimizer(measure, measure_opts.optimizer);

    EvolveOpts evolve_opts;
    CLI::App* evolve = app.add_subcommand(
        "evolve", "Trace success, G, and entropy along a Grover run (CSV)");
    evolve->add_option("--d", evolve_opts.d, "Levels per qudit")->capture_default_str();
    evolve->add_option("--n", evolve_opts.n, "Qudit count")->capture_default_str();
    evolve->add_option("--marked", evolve_opts.marked, "Flat index of the marked state")
        ->capture_default_str();
    evolve->add_option("--m", evolve_opts.m,
                       "Grover iterations (default: the optimal count)");
    evolve->add_option("--output,-o", evolve_opts.output,
                       "CSV path; also writes <output>.meta.json");
    add_common(evolve, evolve_opts.common);
    add_optimizer(evolve, evolve_opts.optimizer);

    SearchOpts search_opts;
    CLI::App* search = app.add_subcommand(
        "search", "Run Grover search and print success probabilities");
    search->add_option("--d", search_opts.d, "Levels per qudit")->capture_default_str();
    search->add_option("--n", search_opts.n, "Qudit count")->capture_default_str();
    search->add_option("--marked", search_opts.marked, "Flat index of the marked state")
        ->capture_default_str();
    search->add_option("--m", search_opts.m,
                       "Grover iterations (default: the optimal count)");
    search->add_flag("--full-steps", search_opts.full_steps,
                     "Record only full iterations, not half-steps");
    add_common(search, search_opts.common);

    VerifyOpts verify_opts;
    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check numeric, Schmidt, and closed-form routes on random states");
    verify->add_option("--trials", verify_opts.trials, "Random states to test")
        ->capture_default_str();
    verify->add_flag("--skip-closed-form", verify_opts.skip_closed_form,
                     "Check only numeric vs schmidt");
    verify
        ->add_flag("--inject-closed-form-error", verify_opts.inject_closed_form_error,
                   "Deliberately corrupt the closed-form value (harness self-test)")
        ->group(""); // hidden
    add_common(verify, verify_opts.common);
    add_optimizer(verify, verify_opts.optimizer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (measure->parsed()) return run_measure(measure_opts);
        if (evolve->parsed()) return run_evolve(evolve_opts);
        if (search->parsed()) return run_search(search_opts);
        if (verify->parsed()) return run_verify(verify_opts);
    } catch (const groverian::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse; // unreachable: a subcommand is required
}
