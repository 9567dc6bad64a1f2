#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gencond/cond.hpp"
#include "gencond/estimators.hpp"
#include "gencond/testgen.hpp"

using namespace gencond;
using nlohmann::json;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::uint64_t apply_seed_env(std::uint64_t seed) {
    if (const char* e = std::getenv("GENCOND_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(e, &end, 10);
        if (end == e || *end != '\0')
            throw std::invalid_argument("GENCOND_SEED is not an integer");
        return static_cast<std::uint64_t>(v);
    }
    return seed;
}

double kappa2(const Mat& M) {
    Eigen::BDCSVD<Mat> svd(M);
    const Vec sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0)
        return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string csv_quote(const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

SvMode parse_sv_mode(const std::string& s) {
    if (s == "geometric") return SvMode::geometric;
    if (s == "arithmetic") return SvMode::arithmetic;
    throw std::invalid_argument("sv_mode must be 'geometric' or 'arithmetic'");
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
    GenSpec spec;
    std::string sv_mode = "geometric";
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    GenSpec spec = a.spec;
    spec.sv_mode = parse_sv_mode(a.sv_mode);
    spec.seed = apply_seed_env(spec.seed);
    ProblemPair pair = generate_pair(spec);
    write_archive(a.out, pair);
    json out;
    out["archive"] = a.out;
    out["p"] = spec.p;
    out["q"] = spec.q;
    out["n"] = spec.n;
    out["s"] = spec.s;
    out["seed"] = spec.seed;
    out["kappa_A"] = kappa2(pair.A);
    out["kappa_C"] = kappa2(pair.C);
    std::cout << out.dump() << "\n";
    return 0;
}

// --------------------------------------------------------------- cond ----

struct CondArgs {
    std::string archive;
    bool exact = false, bounds = false, kron_free = false, all = false;
    bool relaxed = false, force_dense = false, force_matrix_free = false;
    bool csv = false;
    std::uint64_t seed = 2024;
};

int cmd_cond(const CondArgs& a) {
    ProblemPair pair = read_archive(a.archive);
    if (a.relaxed) pair.mode = ValidationMode::relaxed;
    ValidationReport rep = validate(pair);
    if (pair.mode == ValidationMode::strict && !rep.passed)
        throw InvalidProblemError("archive " + a.archive + ": " + rep.failure);

    const bool all = a.all || (!a.exact && !a.bounds && !a.kron_free);
    GenInvBundle b = build_bundle(pair);

    json out;
    out["archive"] = a.archive;
    out["p"] = pair.sig.p;
    out["q"] = pair.sig.q;
    out["n"] = pair.n();
    out["s"] = pair.s();

    ConditionTriple exact{};
    BoundTriple bounds{};
    double nkf = 0.0;
    if (all || a.exact) {
        ExactOptions eo;
        eo.force_dense = a.force_dense;
        eo.force_matrix_free = a.force_matrix_free;
        eo.seed = apply_seed_env(a.seed);
        exact = exact_condition_numbers(b, pair, eo);
        out["exact"] = {{"normwise", exact.normwise},
                        {"mixed", exact.mixed},
                        {"componentwise", exact.componentwise}};
    }
    if (all || a.bounds) {
        bounds = upper_bounds(b, pair);
        out["bounds"] = {{"normwise", bounds.normwise},
                         {"mixed", bounds.mixed},
                         {"componentwise", bounds.componentwise}};
        if (all || a.exact) {
            out["bounds"]["r1"] = bounds.normwise / exact.normwise;
            out["bounds"]["r2"] = bounds.mixed / exact.mixed;
            out["bounds"]["r3"] = bounds.componentwise / exact.componentwise;
        }
    }
    if (all || a.kron_free) {
        nkf = normwise_kron_free(b, pair);
        out["kron_free"] = nkf;
    }
    if (all) {
        BundleResiduals r = bundle_identity_residuals(b, pair);
        out["diagnostics"] = {
            {"kron_vs_exact_rel", std::abs(nkf - exact.normwise) /
                                      std::max(exact.normwise, 1e-300)},
            {"commute_left", r.commute_left},
            {"commute_right", r.commute_right},
            {"recover_p", r.recover_p},
            {"annihilate_c", r.annihilate_c},
            {"annihilate_cd_plain", r.annihilate_cd_plain},
            {"annihilate_cd_weighted", r.annihilate_cd_weighted},
        };
    }

    if (!a.csv) {
        std::cout << out.dump() << "\n";
        return 0;
    }
    std::vector<std::pair<std::string, double>> cols;
    if (all || a.exact) {
        cols.push_back({"n_exact", exact.normwise});
        cols.push_back({"m_exact", exact.mixed});
        cols.push_back({"c_exact", exact.componentwise});
    }
    if (all || a.bounds) {
        cols.push_back({"n_upper", bounds.normwise});
        cols.push_back({"m_upper", bounds.mixed});
        cols.push_back({"c_upper", bounds.componentwise});
    }
    if (all || a.kron_free) cols.push_back({"n_kron_free", nkf});
    std::string hdr, row;
    for (size_t i = 0; i < cols.size(); ++i) {
        if (i) hdr += ",", row += ",";
        hdr += cols[i].first;
        row += fmt17(cols[i].second);
    }
    std::cout << hdr << "\n" << row << "\n";
    return 0;
}

// ----------------------------------------------------------- estimate ----

struct EstArgs {
    std::string archive;
    int alg = 1;
    EstimatorConfig cfg;
    bool with_exact = false;
    bool compat_sigma = false;
    bool force_dense = false;
};

int cmd_estimate(const EstArgs& a) {
    ProblemPair pair = read_archive(a.archive);
    ValidationReport rep = validate(pair);
    if (pair.mode == ValidationMode::strict && !rep.passed)
        throw InvalidProblemError("archive " + a.archive + ": " + rep.failure);
    GenInvBundle b = build_bundle(pair);

    EstimatorConfig cfg = a.cfg;
    cfg.seed = apply_seed_env(cfg.seed);

    json out;
    out["archive"] = a.archive;
    out["alg"] = a.alg;
    out["seed"] = cfg.seed;

    ConditionTriple exact{};
    if (a.with_exact) {
        ExactOptions eo;
        eo.force_dense = a.force_dense;
        eo.seed = cfg.seed;
        exact = exact_condition_numbers(b, pair, eo);
        out["exact"] = {{"normwise", exact.normwise},
                        {"mixed", exact.mixed},
                        {"componentwise", exact.componentwise}};
    }

    if (a.alg == 1) {
        NormEstimate e = estimate_normwise_probabilistic(b, pair, cfg);
        out["alpha1"] = e.alpha1;
        out["alpha2"] = e.alpha2;
        out["iterations"] = e.iterations;
        out["converged"] = e.converged;
        out["estimate"] = e.value;
        if (a.with_exact) out["ratio"] = e.value / exact.normwise;
    } else if (a.alg == 2) {
        const double v = estimate_normwise_ssce(b, pair, cfg, a.compat_sigma);
        out["k"] = cfg.k;
        out["estimate"] = v;
        if (a.with_exact) out["ratio"] = v / exact.normwise;
    } else if (a.alg == 3) {
        MixedComponentwiseEstimate e = estimate_mixed_componentwise_ssce(b, pair, cfg);
        out["k"] = cfg.k;
        out["mixed_estimate"] = e.mixed;
        out["componentwise_estimate"] = e.componentwise;
        if (a.with_exact) {
            out["mixed_ratio"] = e.mixed / exact.mixed;
            out["componentwise_ratio"] = e.componentwise / exact.componentwise;
        }
    } else {
        throw std::invalid_argument("--alg must be 1, 2 or 3");
    }
    std::cout << out.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------- experiment ----

struct ExperimentConfig {
    Eigen::Index p = 50, q = 30, n = 40, s = 20;
    std::vector<double> l1_list{1.0, 2.0};
    std::vector<double> l2_list{0.0, 1.0};
    int trials = 10;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_csv = "experiment.csv";
    double kappa_h = 100.0;
    SvMode sv_mode = SvMode::geometric;
    EstimatorConfig est;
    bool force_dense = false;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty list value");
    return out;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    ExperimentConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = v.find_last_not_of(" \t\r");
            return v.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "p") c.p = std::stoll(val);
        else if (key == "q") c.q = std::stoll(val);
        else if (key == "n") c.n = std::stoll(val);
        else if (key == "s") c.s = std::stoll(val);
        else if (key == "l1_list") c.l1_list = parse_list(val);
        else if (key == "l2_list") c.l2_list = parse_list(val);
        else if (key == "trials") c.trials = std::stoi(val);
        else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "threads") c.threads = std::stoi(val);
        else if (key == "out_csv") c.out_csv = val;
        else if (key == "kappa_h") c.kappa_h = std::stod(val);
        else if (key == "sv_mode") c.sv_mode = parse_sv_mode(val);
        else if (key == "k") c.est.k = std::stoi(val);
        else if (key == "delta") c.est.delta = std::stod(val);
        else if (key == "epsilon") c.est.epsilon = std::stod(val);
        else if (key == "max_iter") c.est.max_iter = std::stoi(val);
        else if (key == "force_dense") c.force_dense = std::stoi(val) != 0;
        else throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
    if (c.trials < 1) throw std::runtime_error("trials must be >= 1");
    return c;
}

struct TrialRow {
    int trial = 0;
    double l1 = 0.0, l2 = 0.0;
    std::uint64_t seed = 0;
    double kappa_A = 0.0, kappa_C = 0.0;
    double n_exact = 0.0, m_exact = 0.0, c_exact = 0.0;
    double n_upper = 0.0, m_upper = 0.0, c_upper = 0.0;
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    double n_kron_free = 0.0;
    double alpha1 = 0.0, alpha2 = 0.0;
    double n_est_p = 0.0, r_p = 0.0;
    double n_est_s = 0.0, r_s = 0.0;
    double m_est = 0.0, r_m = 0.0;
    double c_est = 0.0, r_c = 0.0;
    double t_base = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
    double t_p = 0.0, t_s = 0.0, t_m = 0.0, t_c = 0.0;
    std::string status = "ok";
};

const char* kCsvHeader =
    "trial,l1,l2,seed,kappa_A,kappa_C,n_exact,m_exact,c_exact,"
    "n_upper,m_upper,c_upper,r1,r2,r3,n_kron_free,alpha1,alpha2,"
    "n_est_p,r_p,n_est_s,r_s,m_est,r_m,c_est,r_c,"
    "t_base,t1,t2,t3,t4,t_p,t_s,t_m,t_c,status";

void write_row(std::ostream& os, const TrialRow& r) {
    os << r.trial << ',' << fmt17(r.l1) << ',' << fmt17(r.l2) << ',' << r.seed << ','
       << fmt17(r.kappa_A) << ',' << fmt17(r.kappa_C) << ',' << fmt17(r.n_exact) << ','
       << fmt17(r.m_exact) << ',' << fmt17(r.c_exact) << ',' << fmt17(r.n_upper) << ','
       << fmt17(r.m_upper) << ',' << fmt17(r.c_upper) << ',' << fmt17(r.r1) << ','
       << fmt17(r.r2) << ',' << fmt17(r.r3) << ',' << fmt17(r.n_kron_free) << ','
       << fmt17(r.alpha1) << ',' << fmt17(r.alpha2) << ',' << fmt17(r.n_est_p) << ','
       << fmt17(r.r_p) << ',' << fmt17(r.n_est_s) << ',' << fmt17(r.r_s) << ','
       << fmt17(r.m_est) << ',' << fmt17(r.r_m) << ',' << fmt17(r.c_est) << ','
       << fmt17(r.r_c) << ',' << fmt17(r.t_base) << ',' << fmt17(r.t1) << ','
       << fmt17(r.t2) << ',' << fmt17(r.t3) << ',' << fmt17(r.t4) << ','
       << fmt17(r.t_p) << ',' << fmt17(r.t_s) << ',' << fmt17(r.t_m) << ','
       << fmt17(r.t_c) << ',' << csv_quote(r.status) << '\n';
}

TrialRow run_trial(const ExperimentConfig& c, int trial, double l1, double l2) {
    TrialRow r;
    r.trial = trial;
    r.l1 = l1;
    r.l2 = l2;
    r.seed = c.seed + static_cast<std::uint64_t>(trial);
    try {
        GenSpec gs;
        gs.p = c.p; gs.q = c.q; gs.n = c.n; gs.s = c.s;
        gs.l1 = l1; gs.l2 = l2;
        gs.sv_mode = c.sv_mode;
        gs.kappa_H = c.kappa_h;
        gs.seed = r.seed;
        ProblemPair pair = generate_pair(gs);
        r.kappa_A = kappa2(pair.A);
        r.kappa_C = kappa2(pair.C);

        double t0 = now_seconds();
        GenInvBundle b = build_bundle(pair);
        r.t_base = now_seconds() - t0;

        ExactOptions eo;
        eo.force_dense = c.force_dense;
        eo.force_matrix_free = !c.force_dense;
        eo.seed = r.seed;
        ConditionTriple exact = exact_condition_numbers(b, pair, eo);
        r.n_exact = exact.normwise;
        r.m_exact = exact.mixed;
        r.c_exact = exact.componentwise;

        BoundTriple bounds = upper_bounds(b, pair);
        r.n_upper = bounds.normwise;
        r.m_upper = bounds.mixed;
        r.c_upper = bounds.componentwise;
        r.r1 = r.n_upper / r.n_exact;
        r.r2 = r.m_upper / r.m_exact;
        r.r3 = r.c_upper / r.c_exact;
        r.n_kron_free = normwise_kron_free(b, pair);

        EstimatorConfig ec = c.est;
        ec.seed = r.seed;
        t0 = now_seconds();
        NormEstimate a1 = estimate_normwise_probabilistic(b, pair, ec);
        r.t1 = now_seconds() - t0;
        r.alpha1 = a1.alpha1;
        r.alpha2 = a1.alpha2;
        r.n_est_p = a1.value;
        r.r_p = a1.value / r.n_exact;
        if (!a1.converged) r.status = "alg1 unconverged";

        t0 = now_seconds();
        r.n_est_s = estimate_normwise_ssce(b, pair, ec);
        r.t2 = now_seconds() - t0;
        r.r_s = r.n_est_s / r.n_exact;

        t0 = now_seconds();
        MixedComponentwiseEstimate a3 = estimate_mixed_componentwise_ssce(b, pair, ec);
        r.t3 = now_seconds() - t0;
        r.t4 = r.t3;
        r.m_est = a3.mixed;
        r.c_est = a3.componentwise;
        r.r_m = r.m_est / r.m_exact;
        r.r_c = r.c_est / r.c_exact;

        const double tb = std::max(r.t_base, 1e-12);
        r.t_p = r.t1 / tb;
        r.t_s = r.t2 / tb;
        r.t_m = r.t3 / tb;
        r.t_c = r.t4 / tb;
    } catch (const std::exception& e) {
        r.status = e.what();
    }
    return r;
}

int cmd_experiment(const std::string& config_path) {
    ExperimentConfig c = load_config(config_path);
    c.seed = apply_seed_env(c.seed);
    int threads = c.threads > 0 ? c.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    struct Cell { double l1, l2; };
    std::vector<Cell> cells;
    for (double l1 : c.l1_list)
        for (double l2 : c.l2_list) cells.push_back({l1, l2});

    const int total = static_cast<int>(cells.size()) * c.trials;
    std::vector<TrialRow> rows(total);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= total) return;
            const Cell& cell = cells[idx / c.trials];
            rows[idx] = run_trial(c, idx, cell.l1, cell.l2);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min(threads, total); ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ofstream csv(c.out_csv);
    if (!csv) throw std::runtime_error("cannot open output file " + c.out_csv);
    csv << kCsvHeader << "\n";
    for (const TrialRow& r : rows) write_row(csv, r);
    csv.close();

    // per-cell aggregation, recomputed from the stored rows
    bool any_fail = false;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
        json cell;
        cell["l1"] = cells[ci].l1;
        cell["l2"] = cells[ci].l2;
        int ok = 0;
        auto agg = [&](auto pick, const char* name) {
            double sum = 0.0, mx = -std::numeric_limits<double>::infinity(),
                   mn = std::numeric_limits<double>::infinity();
            int cnt = 0;
            for (int t = 0; t < c.trials; ++t) {
                const TrialRow& r = rows[ci * c.trials + t];
                if (r.status != "ok" && r.status != "alg1 unconverged") continue;
                const double v = pick(r);
                sum += v;
                mx = std::max(mx, v);
                mn = std::min(mn, v);
                ++cnt;
            }
            if (cnt > 0)
                cell[name] = {{"mean", sum / cnt}, {"max", mx}, {"min", mn}};
        };
        for (int t = 0; t < c.trials; ++t) {
            const TrialRow& r = rows[ci * c.trials + t];
            if (r.status == "ok" || r.status == "alg1 unconverged") ++ok;
        }
        cell["ok"] = ok;
        cell["trials"] = c.trials;
        if (ok < c.trials) any_fail = true;
        agg([](const TrialRow& r) { return r.r1; }, "r1");
        agg([](const TrialRow& r) { return r.r2; }, "r2");
        agg([](const TrialRow& r) { return r.r3; }, "r3");
        agg([](const TrialRow& r) { return r.r_p; }, "r_p");
        agg([](const TrialRow& r) { return r.r_s; }, "r_s");
        agg([](const TrialRow& r) { return r.r_m; }, "r_m");
        agg([](const TrialRow& r) { return r.r_c; }, "r_c");
        agg([](const TrialRow& r) { return r.t_p; }, "t_p");
        agg([](const TrialRow& r) { return r.t_s; }, "t_s");
        agg([](const TrialRow& r) { return r.t_m; }, "t_m");
        agg([](const TrialRow& r) { return r.t_c; }, "t_c");
        std::cout << cell.dump() << "\n";
    }
    json summary;
    summary["csv"] = c.out_csv;
    summary["rows"] = total;
    summary["threads"] = threads;
    std::cout << summary.dump() << "\n";
    return any_fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-inverse condition numbers: generator, exact values, "
                 "bounds, statistical estimators"};
    app.require_subcommand(1);

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate a problem archive");
    gen->add_option("--p", ga.spec.p, "positive signature block")->required();
    gen->add_option("--q", ga.spec.q, "negative signature block")->required();
    gen->add_option("--n", ga.spec.n, "columns of A and C")->required();
    gen->add_option("--s", ga.spec.s, "rows of C")->required();
    gen->add_option("--l1", ga.spec.l1, "kappa(A-factor) exponent: n^l1");
    gen->add_option("--l2", ga.spec.l2, "kappa(C) exponent: s^l2");
    gen->add_option("--sv-mode", ga.sv_mode, "geometric|arithmetic");
    gen->add_option("--kappa-h", ga.spec.kappa_H, "condition of the J-orthogonal factor");
    gen->add_option("--seed", ga.spec.seed, "RNG seed");
    gen->add_option("--out", ga.out, "output directory")->required();

    CondArgs ca;
    CLI::App* cond = app.add_subcommand("cond", "condition numbers of an archive");
    cond->add_option("archive", ca.archive, "problem archive directory")->required();
    cond->add_flag("--exact", ca.exact, "exact condition numbers");
    cond->add_flag("--bounds", ca.bounds, "upper bounds and ratios");
    cond->add_flag("--kron-free", ca.kron_free, "comparison-matrix normwise value");
    cond->add_flag("--all", ca.all, "everything plus agreement diagnostics");
    cond->add_flag("--relaxed", ca.relaxed, "skip strict validation");
    cond->add_flag("--force-dense", ca.force_dense, "dense SVD of the full derivative");
    cond->add_flag("--force-matrix-free", ca.force_matrix_free, "power iteration only");
    cond->add_flag("--csv", ca.csv, "CSV output instead of JSON");
    cond->add_option("--seed", ca.seed, "power-iteration start seed");

    EstArgs ea;
    CLI::App* est = app.add_subcommand("estimate", "statistical condition estimators");
    est->add_option("archive", ea.archive, "problem archive directory")->required();
    est->add_option("--alg", ea.alg, "1 = probabilistic normwise, 2 = small-sample "
                                     "normwise, 3 = small-sample mixed/componentwise")
        ->required();
    est->add_option("--k", ea.cfg.k, "sample count for algs 2-3");
    est->add_option("--delta", ea.cfg.delta, "alg 1 bracket slack");
    est->add_option("--epsilon", ea.cfg.epsilon, "alg 1 failure probability");
    est->add_option("--seed", ea.cfg.seed, "RNG seed");
    est->add_option("--max-iter", ea.cfg.max_iter, "alg 1 iteration cap (0 = dim)");
    est->add_flag("--with-exact", ea.with_exact, "also compute exact values and ratios");
    est->add_flag("--compat-sigma", ea.compat_sigma, "alg 2 printed sigma variant");
    est->add_flag("--force-dense", ea.force_dense, "dense exact path");

    std::string config_path;
    CLI::App* exp = app.add_subcommand("experiment", "ratio study over generated pairs");
    exp->add_option("config", config_path, "key = value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(ga);
        if (cond->parsed()) return cmd_cond(ca);
        if (est->parsed()) return cmd_estimate(ea);
        if (exp->parsed()) return cmd_experiment(config_path);
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidProblemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GenerationError& e) {
        std::cerr << "error: " << e.what() << " [p=" << e.spec.p << " q=" << e.spec.q
                  << " n=" << e.spec.n << " s=" << e.spec.s << " l1=" << e.spec.l1
                  << " l2=" << e.spec.l2 << " seed=" << e.spec.seed << "]\n";
        return 1;
    } catch (const DegenerateOutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
