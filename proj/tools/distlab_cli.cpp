// Command-line front end: product evaluations, parameter sweeps, constant
// tables, and the Klein-Gordon divergence study.  Reports are JSON, sweeps
// and sequences are CSV; identical command lines produce byte-identical
// output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "distlab/closedform.hpp"
#include "distlab/kleingordon.hpp"
#include "distlab/products.hpp"

using namespace distlab;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ScheduleOpt {
    double start = 10.0;
    double ratio = 2.0;
    int count = 14;
    NSchedule build() const { return NSchedule::geometric(start, ratio, count); }
};

// "start:ratio:count"
ScheduleOpt parse_schedule(const std::string& s) {
    ScheduleOpt opt;
    if (s.empty()) return opt;
    std::istringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw CLI::ValidationError("schedule", "expected start:ratio:count");
    opt.start = std::stod(a);
    opt.ratio = std::stod(b);
    opt.count = std::stoi(c);
    return opt;
}

// "lo:hi:points"
std::vector<double> parse_grid(const std::string& s) {
    std::istringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw CLI::ValidationError("grid", "expected lo:hi:points");
    const double lo = std::stod(a), hi = std::stod(b);
    const int pts = std::stoi(c);
    if (pts < 1 || (pts > 1 && !(hi > lo)))
        throw CLI::ValidationError("grid", "need lo < hi and points >= 1");
    std::vector<double> g;
    for (int i = 0; i < pts; ++i)
        g.push_back(pts == 1 ? lo : lo + (hi - lo) * i / (pts - 1));
    return g;
}

// mini-language: d0,d1,... are delta derivatives, file:path.csv is a sampled
// compact function
std::vector<Distribution> parse_dists(const std::string& s) {
    std::vector<Distribution> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.rfind("file:", 0) == 0) {
            out.push_back(load_compact_csv(tok.substr(5)));
        } else if (tok.size() >= 2 && tok[0] == 'd') {
            out.push_back(DeltaDerivative{std::stoi(tok.substr(1))});
        } else {
            throw CLI::ValidationError("dists", "unknown distribution token: " + tok);
        }
    }
    if (out.empty()) throw CLI::ValidationError("dists", "no distributions given");
    return out;
}

TestFunction select_psi(const std::string& name) {
    for (auto& psi : standard_test_functions())
        if (psi.name() == name) return psi;
    throw CLI::ValidationError("psi", "unknown test function: " + name);
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

json verdict_json(const LimitVerdict& v) {
    json j;
    j["kind"] = to_string(v.kind);
    j["zero_floor"] = v.zero_floor;
    j["is_zero"] = v.is_zero();
    if (v.kind == LimitVerdict::Kind::converged) j["value"] = v.value;
    if (v.kind == LimitVerdict::Kind::divergent) {
        j["growth_model"] = to_string(v.fit.model);
        j["fitted_rate"] = v.fit.rate;
        j["fit_residual"] = v.fit.residual;
    }
    json seq = json::array();
    for (auto [n, val] : v.sequence) seq.push_back({n, val});
    j["sequence"] = seq;
    return j;
}

json config_json(int m, const MollifierSpec& spec, double alpha, double beta,
                 const ScheduleOpt& sched, const std::string& psi, double quad_tol) {
    json j;
    j["m"] = m;
    j["normalization_F"] = spec.normalization();
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["schedule"] = {{"start", sched.start}, {"ratio", sched.ratio},
                     {"count", sched.count}};
    j["psi"] = psi;
    j["quad_tol"] = quad_tol;
    j["deterministic"] = true;
    return j;
}

int run_constants(const std::vector<int>& ms, const std::string& pairs_arg,
                  const std::string& output) {
    std::vector<std::pair<int, int>> pairs;
    std::istringstream ss(pairs_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("pairs", "expected i:j,i:j,...");
        pairs.emplace_back(std::stoi(tok.substr(0, colon)),
                           std::stoi(tok.substr(colon + 1)));
    }
    std::ostringstream out;
    out << "m,i,j,value,error_estimate,status\n";
    for (int m : ms) {
        auto spec = MollifierSpec::make(m);
        for (auto [i, j] : pairs) {
            out << m << ',' << i << ',' << j << ',';
            try {
                auto a = spec.a_constant(i, j);
                out << fmt(a.value) << ',' << fmt(a.error_estimate) << ",ok\n";
            } catch (const DivergentConstant&) {
                out << ",,divergent\n";
            }
        }
    }
    write_output(output, out.str());
    return 0;
}

struct ProductArgs {
    std::string dists;
    int method = 1;
    int m = 2;
    double alpha = 2.0;
    double beta = 1.0;
    std::string schedule;
    std::string psi = "bump_unit";
    std::string weights;
    std::string pair_params;
    std::string output;
    int threads = 0;
    double match_tol = 0.02;
};

AWeights parse_weights(const std::string& s, int order) {
    if (s.empty()) return AWeights::defaults(order);
    std::vector<double> w;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(std::stod(tok));
    return AWeights::general(order, std::move(w));
}

std::vector<std::pair<double, double>> parse_pair_params(const std::string& s) {
    std::vector<std::pair<double, double>> out;
    if (s.empty()) return out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("pair-params", "expected a1:b1,a2:b2,...");
        out.emplace_back(std::stod(tok.substr(0, colon)),
                         std::stod(tok.substr(colon + 1)));
    }
    return out;
}

// closed-form prediction for the configurations the oracle covers
std::optional<Prediction> oracle_prediction(const std::vector<Distribution>& dists,
                                            int method, double alpha, double beta,
                                            int m, const AWeights& weights) {
    bool all_delta = true;
    bool equal_plain_delta = true;
    for (const auto& d : dists) {
        const auto* dd = std::get_if<DeltaDerivative>(&d);
        if (!dd) {
            all_delta = false;
            equal_plain_delta = false;
            break;
        }
        if (dd->order != 0) equal_plain_delta = false;
    }
    const int count = static_cast<int>(dists.size());
    if (count == 2 && all_delta && method == 1) {
        const auto& k = std::get<DeltaDerivative>(dists[0]).order;
        const auto& l = std::get<DeltaDerivative>(dists[1]).order;
        return predict_pair_derivatives(k, l, alpha, beta, m);
    }
    if (!equal_plain_delta) return std::nullopt;
    if (method == 1) return predict_method1_equal_deltas(count, alpha, beta, m);
    return predict_method2_equal_deltas(count, alpha, beta, m, weights);
}

int run_product(const ProductArgs& args) {
    auto dists = parse_dists(args.dists);
    auto spec = MollifierSpec::make(args.m);
    auto psi = select_psi(args.psi);
    auto sched_opt = parse_schedule(args.schedule);
    auto sched = sched_opt.build();
    RegParams params{args.alpha, args.beta, parse_pair_params(args.pair_params)};
    ProductOptions opts;
    opts.exec.threads = args.threads;
    auto weights = parse_weights(args.weights, static_cast<int>(dists.size()));

    LimitVerdict verdict;
    if (args.method == 1) {
        if (dists.size() == 2)
            verdict = pair_product(dists[0], dists[1], params, sched, psi, spec, opts);
        else
            verdict = nfold_method1(dists, params, sched, psi, spec, opts);
    } else if (args.method == 2) {
        verdict = amethod(dists, weights, params, sched, psi, spec, opts);
    } else {
        throw CLI::ValidationError("method", "method must be 1 or 2");
    }

    json report;
    report["schema"] = 1;
    report["command"] = "product";
    report["config"] = config_json(args.m, spec, args.alpha, args.beta, sched_opt,
                                   args.psi, opts.quad_tol);
    report["config"]["dists"] = args.dists;
    report["config"]["method"] = args.method;
    report["config"]["weights"] = weights.coefficients();
    report["verdict"] = verdict_json(verdict);

    auto pred = oracle_prediction(dists, args.method, args.alpha, args.beta, args.m,
                                  weights);
    if (pred) {
        report["prediction"] = pred->to_json();
        bool match = false;
        if (pred->kind == Prediction::Kind::zero) {
            match = verdict.is_zero();
        } else if (pred->kind == Prediction::Kind::value) {
            try {
                const double want = pred->coefficient(spec) * psi.value_at_zero();
                match = verdict.kind == LimitVerdict::Kind::converged &&
                        std::abs(verdict.value - want) <=
                            args.match_tol * std::max(std::abs(want), 1e-300);
                report["prediction"]["numeric_value"] = want;
            } catch (const DivergentConstant&) {
                report["prediction"]["numeric_value"] = nullptr;
            }
        }
        report["oracle_match"] = match;
    }

    write_output(args.output, report.dump(2) + "\n");
    return 0;
}

struct SweepArgs {
    std::string dists;
    int method = 1;
    int m = 2;
    std::string alpha_grid = "0.5:3.0:6";
    std::string beta_grid = "0.5:2.0:4";
    std::string schedule;
    std::string psi = "bump_unit";
    std::string weights;
    std::string output;
    int threads = 0;
};

int run_sweep(const SweepArgs& args) {
    auto dists = parse_dists(args.dists);
    auto spec = MollifierSpec::make(args.m);
    auto psi = select_psi(args.psi);
    auto sched = parse_schedule(args.schedule).build();
    auto alphas = parse_grid(args.alpha_grid);
    auto betas = parse_grid(args.beta_grid);
    if (alphas.size() * betas.size() > 1000)
        throw CLI::ValidationError("grid", "sweep capped at 1000 cells");
    auto weights = parse_weights(args.weights, static_cast<int>(dists.size()));

    struct Row {
        double alpha, beta;
        std::string verdict;
        double value = 0.0;
        std::string note;
    };
    const std::size_t cells = alphas.size() * betas.size();
    ProductOptions opts;  // per-cell runs stay serial; cells parallelize
    opts.exec.mode = ExecMode::serial;
    ExecConfig exec{ExecMode::openmp, args.threads};

    std::vector<Row> rows = map_indexed<Row>(
        cells,
        [&](std::size_t idx) {
            Row row;
            row.alpha = alphas[idx / betas.size()];
            row.beta = betas[idx % betas.size()];
            RegParams params{row.alpha, row.beta, {}};
            try {
                LimitVerdict v;
                if (args.method == 1) {
                    if (dists.size() == 2)
                        v = pair_product(dists[0], dists[1], params, sched, psi, spec,
                                         opts);
                    else
                        v = nfold_method1(dists, params, sched, psi, spec, opts);
                } else {
                    v = amethod(dists, weights, params, sched, psi, spec, opts);
                }
                row.verdict = v.is_zero() ? "zero" : to_string(v.kind);
                row.value = v.kind == LimitVerdict::Kind::converged ? v.value : 0.0;
            } catch (const std::exception& e) {
                row.verdict = "error";
                row.note = e.what();
            }
            return row;
        },
        exec);

    std::ostringstream out;
    out << "alpha,beta,verdict,value,note\n";
    for (const auto& r : rows)
        out << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << r.verdict << ','
            << fmt(r.value) << ',' << r.note << "\n";
    write_output(args.output, out.str());
    return 0;
}

struct KgArgs {
    double mu = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    std::string schedule;
    std::string output;
    std::string csv;
    int threads = 0;
};

int run_kg(const KgArgs& args) {
    KGConfig cfg;
    cfg.mu = args.mu;
    cfg.alpha = args.alpha;
    cfg.beta = args.beta;
    cfg.schedule = parse_schedule(args.schedule).build();
    ExecConfig exec{ExecMode::openmp, args.threads};
    auto study = divergence_study(cfg, exec);

    std::ostringstream csv;
    csv << "n,I_n,lower_bound\n";
    for (std::size_t i = 0; i < study.ns.size(); ++i) {
        csv << fmt(study.ns[i]) << ',' << fmt(study.values[i]) << ',';
        if (std::isnan(study.bounds[i]))
            csv << "\n";
        else
            csv << fmt(study.bounds[i]) << "\n";
    }
    if (!args.csv.empty()) write_output(args.csv, csv.str());

    json report;
    report["schema"] = 1;
    report["command"] = "kg";
    report["config"] = {{"mu", args.mu},       {"alpha", args.alpha},
                        {"beta", args.beta},   {"quad_tol", cfg.quad_tol},
                        {"schedule_points", cfg.schedule.values.size()},
                        {"deterministic", true}};
    json seq = json::array();
    for (std::size_t i = 0; i < study.ns.size(); ++i)
        seq.push_back({study.ns[i], study.values[i]});
    report["sequence"] = seq;
    report["max_dual_residual"] = study.max_dual_residual;
    report["best_fit"] = {{"model", to_string(study.best_fit.model)},
                          {"rate", study.best_fit.rate},
                          {"residual", study.best_fit.residual}};
    report["verdict"] = verdict_json(study.verdict);
    if (args.csv.empty() && args.output.empty()) {
        write_output("", csv.str());
        write_output("", report.dump(2) + "\n");
    } else {
        write_output(args.output, report.dump(2) + "\n");
    }
    return 0;
}

struct ResidualArgs {
    double mu = 1.0;
    double beta = 1.0;
    double t = 0.0;
    std::string output;
};

int run_residuals(const ResidualArgs& args) {
    auto a12 = [](double k) { return std::complex<double>(std::exp(-k * k), 0.0); };
    auto zeta = [](double k) { return std::exp(-0.5 * k * k); };
    auto bump = FourierBumpSpec::standard();
    auto phi_tilde = [&bump](double q) { return bump.bump(q); };

    std::ostringstream out;
    out << "eps,analytic_residual_abs\n";
    for (double eps : {1.0, 1e-1, 1e-2, 1e-3, 1e-4})
        out << fmt(eps) << ','
            << fmt(std::abs(analytic_smearing_residual(a12, zeta, args.t, eps, args.mu)))
            << "\n";
    out << "n,mollifier_residual_abs\n";
    for (double n : {10.0, 40.0, 160.0, 640.0, 2560.0})
        out << fmt(n) << ','
            << fmt(std::abs(mollifier_smearing_residual(a12, zeta, args.t, phi_tilde,
                                                        args.beta, n, args.mu)))
            << "\n";
    write_output(args.output, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for regularized products of distributions"};
    app.require_subcommand(1);

    // constants
    auto* constants = app.add_subcommand("constants", "table of A_{i,j} constants");
    std::vector<int> ms{2};
    std::string pairs = "1:2,1:4,2:2,2:4";
    std::string const_out;
    constants->add_option("--m", ms, "mollifier powers (even)");
    constants->add_option("--pairs", pairs, "i:j pairs, comma separated");
    constants->add_option("-o,--output", const_out, "output file (default stdout)");

    // product
    auto* product = app.add_subcommand("product", "evaluate one product configuration");
    ProductArgs pargs;
    product->add_option("--dists", pargs.dists, "e.g. d0,d0 or d1,d2 or file:f.csv")
        ->required();
    product->add_option("--method", pargs.method, "1 = pairing, 2 = A-multiplication");
    product->add_option("--m", pargs.m, "mollifier power (even, >= 2)");
    product->add_option("--alpha", pargs.alpha, "analytic exponent");
    product->add_option("--beta", pargs.beta, "mollifier exponent");
    product->add_option("--schedule", pargs.schedule, "start:ratio:count");
    product->add_option("--psi", pargs.psi, "test function name");
    product->add_option("--weights", pargs.weights,
                        "A-multiplication weights, leading first");
    product->add_option("--pair-params", pargs.pair_params,
                        "per-pair alpha:beta list for method 1, N >= 4");
    product->add_option("--match-tol", pargs.match_tol, "oracle match tolerance");
    product->add_option("--threads", pargs.threads, "worker threads (0 = all)");
    product->add_option("-o,--output", pargs.output, "output file (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "verdict grid over (alpha, beta)");
    SweepArgs sargs;
    sweep->add_option("--dists", sargs.dists)->required();
    sweep->add_option("--method", sargs.method);
    sweep->add_option("--m", sargs.m);
    sweep->add_option("--alpha-grid", sargs.alpha_grid, "lo:hi:points");
    sweep->add_option("--beta-grid", sargs.beta_grid, "lo:hi:points");
    sweep->add_option("--schedule", sargs.schedule, "start:ratio:count");
    sweep->add_option("--psi", sargs.psi);
    sweep->add_option("--weights", sargs.weights);
    sweep->add_option("--threads", sargs.threads);
    sweep->add_option("-o,--output", sargs.output, "CSV output file");

    // kg
    auto* kg = app.add_subcommand("kg", "Klein-Gordon two-point divergence study");
    KgArgs kargs;
    kg->add_option("--mu", kargs.mu, "boson mass");
    kg->add_option("--alpha", kargs.alpha);
    kg->add_option("--beta", kargs.beta);
    kg->add_option("--schedule", kargs.schedule, "start:ratio:count");
    kg->add_option("--threads", kargs.threads);
    kg->add_option("-o,--output", kargs.output, "JSON report file");
    kg->add_option("--csv", kargs.csv, "CSV (n, I_n, bound) file");

    // residuals
    auto* residuals =
        app.add_subcommand("residuals", "field smearing residual decay tables");
    ResidualArgs rargs;
    residuals->add_option("--mu", rargs.mu);
    residuals->add_option("--beta", rargs.beta);
    residuals->add_option("--t", rargs.t, "time parameter (0 recommended)");
    residuals->add_option("-o,--output", rargs.output, "CSV output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(constants)) return run_constants(ms, pairs, const_out);
        if (app.got_subcommand(product)) return run_product(pargs);
        if (app.got_subcommand(sweep)) return run_sweep(sargs);
        if (app.got_subcommand(kg)) return run_kg(kargs);
        if (app.got_subcommand(residuals)) return run_residuals(rargs);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
