// Command-line front end: spectra, Lyapunov exponents, localization and
// duality experiments for the almost Mathieu operator, with reproducible
// dataset emission.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "amo/angles.hpp"
#include "amo/approximation.hpp"
#include "amo/arithmetic.hpp"
#include "amo/duality.hpp"
#include "amo/localization.hpp"
#include "amo/manifest.hpp"
#include "amo/rng.hpp"
#include "amo/verify.hpp"
#include "amo/version.hpp"

namespace {

using nlohmann::json;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct GridSpec {
    double a = 0.0, b = 0.0;
    long long n = 0;  // 0: not a 3-field spec
};

GridSpec parse_grid(const std::string& s, bool need_count) {
    GridSpec g;
    std::stringstream ss(s);
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (need_count ? parts.size() != 3 : parts.size() != 2)
        throw CLI::ValidationError("grid", "expected " + std::string(need_count ? "a:b:n" : "a:b"));
    g.a = std::stod(parts[0]);
    g.b = std::stod(parts[1]);
    if (need_count) g.n = std::stoll(parts[2]);
    return g;
}

std::vector<double> linspace(double a, double b, long long n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            (n == 1) ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

void emit_dataset(const std::string& payload, const std::string& out,
                  amo::RunManifest manifest, double wall_seconds) {
    manifest.wall_time_s = wall_seconds;
    manifest.version = amo::kVersion;
    if (out == "-") {
        std::cout << payload;
        amo::write_manifest(manifest, "-");
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open output file: " + out);
        f << payload;
        amo::write_manifest(manifest, out);
    }
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost Mathieu operator toolkit"};
    app.set_version_flag("--version", amo::kVersion);
    app.require_subcommand(1);

    int threads = 0;
    std::uint64_t seed = 42;
    app.add_option("--threads", threads, "worker threads (default: logical cores)");
    app.add_option("--seed", seed, "seed for randomized checks");

    std::string cmdline = join_args(argc, argv);
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    // ---- classify ----------------------------------------------------
    auto* c_classify = app.add_subcommand("classify", "arithmetic class of a frequency");
    std::string cl_alpha;
    long long cl_n = 10000;
    double cl_c = 0.1, cl_r = 2.0;
    int cl_depth = 40, cl_kmax = 12;
    std::string cl_out = "-";
    c_classify->add_option("--alpha", cl_alpha, "frequency expression")->required();
    c_classify->add_option("--n", cl_n, "scan bound N");
    c_classify->add_option("--c", cl_c, "Diophantine constant c");
    c_classify->add_option("--r", cl_r, "Diophantine exponent r");
    c_classify->add_option("--depth", cl_depth, "continued-fraction depth");
    c_classify->add_option("--kmax", cl_kmax, "Liouville witness depth");
    c_classify->add_option("--out", cl_out, "output path or -");

    // ---- transfer -----------------------------------------------------
    auto* c_transfer = app.add_subcommand("transfer", "renormalized monodromy matrix");
    double tr_lambda = 1.0, tr_omega = 0.0, tr_energy = 0.0;
    std::string tr_alpha = "golden";
    long long tr_n = 100;
    std::string tr_out = "-";
    c_transfer->add_option("--lambda", tr_lambda)->required();
    c_transfer->add_option("--alpha", tr_alpha)->required();
    c_transfer->add_option("--omega", tr_omega);
    c_transfer->add_option("--energy", tr_energy)->required();
    c_transfer->add_option("--n", tr_n)->required();
    c_transfer->add_option("--out", tr_out);

    // ---- lyapunov -----------------------------------------------------
    auto* c_lyap = app.add_subcommand("lyapunov", "Lyapunov exponent sweep (CSV)");
    double ly_lambda = 1.0;
    std::string ly_alpha = "golden";
    std::string ly_grid_spec;
    long long ly_steps = 10000;
    int ly_grid = 256, ly_herman_n = 100;
    std::string ly_out = "-";
    bool ly_serial = false;
    c_lyap->add_option("--lambda", ly_lambda)->required();
    c_lyap->add_option("--alpha", ly_alpha)->required();
    c_lyap->add_option("--energy-grid", ly_grid_spec, "a:b:n")->required();
    c_lyap->add_option("--steps", ly_steps, "transfer steps per phase");
    c_lyap->add_option("--grid", ly_grid, "phase grid size");
    c_lyap->add_option("--herman-n", ly_herman_n, "product length for the margin column");
    c_lyap->add_option("--out", ly_out);
    c_lyap->add_flag("--serial", ly_serial, "serial reference kernel");

    // ---- bands ----------------------------------------------------------
    auto* c_bands = app.add_subcommand("bands", "band/gap structure of a rational frequency");
    double bd_lambda = 1.0;
    long long bd_p = 1, bd_q = 2;
    bool bd_csv = false, bd_oracle = false;
    std::string bd_out = "-";
    c_bands->add_option("--lambda", bd_lambda)->required();
    c_bands->add_option("--p", bd_p)->required();
    c_bands->add_option("--q", bd_q)->required();
    c_bands->add_flag("--csv", bd_csv, "CSV instead of JSON");
    c_bands->add_flag("--oracle", bd_oracle, "use the Bloch eigenvalue fallback path");
    c_bands->add_option("--out", bd_out);

    // ---- butterfly -------------------------------------------------------
    auto* c_bfly = app.add_subcommand("butterfly", "band dataset over all p/q up to qmax");
    double bf_lambda = 1.0;
    int bf_qmax = 50;
    std::string bf_out = "butterfly.csv";
    bool bf_serial = false;
    c_bfly->add_option("--lambda", bf_lambda)->required();
    c_bfly->add_option("--qmax", bf_qmax)->required();
    c_bfly->add_option("--out", bf_out);
    c_bfly->add_flag("--serial", bf_serial, "serial reference kernel");

    // ---- ids -------------------------------------------------------------
    auto* c_ids = app.add_subcommand("ids", "integrated density of states (CSV)");
    double id_lambda = 1.0, id_omega = 0.0;
    std::string id_alpha = "golden";
    int id_n = 1000, id_phase_grid = 0;
    std::string id_grid_spec, id_out = "-";
    bool id_serial = false;
    c_ids->add_option("--lambda", id_lambda)->required();
    c_ids->add_option("--alpha", id_alpha)->required();
    c_ids->add_option("--n", id_n, "restriction size N");
    c_ids->add_option("--grid", id_grid_spec, "a:b:m energy grid")->required();
    c_ids->add_option("--omega", id_omega, "phase (default 0)");
    c_ids->add_option("--phase-grid", id_phase_grid, "average over this many phases");
    c_ids->add_option("--out", id_out);
    c_ids->add_flag("--serial", id_serial);

    // ---- localize ----------------------------------------------------------
    auto* c_loc = app.add_subcommand("localize", "windowed eigenpairs with decay fits");
    double lo_lambda = 3.0, lo_omega = 0.0;
    std::string lo_alpha = "golden";
    int lo_n = 2001;
    std::string lo_window, lo_out = "pairs.json";
    c_loc->add_option("--lambda", lo_lambda)->required();
    c_loc->add_option("--alpha", lo_alpha)->required();
    c_loc->add_option("--omega", lo_omega);
    c_loc->add_option("--n", lo_n, "restriction size (odd, centered at 0)");
    c_loc->add_option("--window", lo_window, "a:b energy window")->required();
    c_loc->add_option("--out", lo_out);

    // ---- gordon-check ---------------------------------------------------
    auto* c_gordon = app.add_subcommand("gordon-check", "three-block estimate and Gordon scales");
    double gc_lambda = 1.0, gc_C = 2.0;
    std::string gc_alpha;
    int gc_trials = 100, gc_pmax = 20, gc_depth = 12;
    std::string gc_out = "-";
    c_gordon->add_option("--trials", gc_trials, "random three-block trials");
    c_gordon->add_option("--pmax", gc_pmax);
    c_gordon->add_option("--lambda", gc_lambda);
    c_gordon->add_option("--alpha", gc_alpha, "run the scale test for this frequency");
    c_gordon->add_option("--c", gc_C, "growth constant C");
    c_gordon->add_option("--depth", gc_depth, "convergents to use as scales");
    c_gordon->add_option("--out", gc_out);

    // ---- js-check ---------------------------------------------------------
    auto* c_js = app.add_subcommand("js-check", "reflection-symmetry defect report");
    double js_lambda = 1.0, js_omega = 0.0, js_eps = 1e-3;
    std::string js_alpha = "golden";
    std::vector<long long> js_m;
    long long js_n = 1000;
    std::string js_out = "-";
    c_js->add_option("--lambda", js_lambda)->required();
    c_js->add_option("--alpha", js_alpha)->required();
    c_js->add_option("--omega", js_omega);
    c_js->add_option("--m-list", js_m, "reflection centers")->required();
    c_js->add_option("--n", js_n, "defect scan bound");
    c_js->add_option("--epsilon", js_eps);
    c_js->add_option("--out", js_out);

    // ---- duality ------------------------------------------------------------
    auto* c_dual = app.add_subcommand("duality", "dual-solution and reducibility experiment");
    double du_lambda = 3.0, du_omega = 0.0, du_omega_tilde = 0.3;
    std::string du_alpha = "golden";
    int du_n = 2001;
    long long du_window = 50;
    bool du_probe_gap = false;
    std::string du_out = "-";
    c_dual->add_option("--lambda", du_lambda)->required();
    c_dual->add_option("--alpha", du_alpha)->required();
    c_dual->add_option("--omega", du_omega, "phase of the localized system (0 for reducibility)");
    c_dual->add_option("--omega-tilde", du_omega_tilde, "dual phase");
    c_dual->add_option("--n", du_n, "restriction size");
    c_dual->add_option("--window", du_window, "dual residual window");
    c_dual->add_flag("--probe-gap", du_probe_gap, "locate the dual energy against band edges");
    c_dual->add_option("--out", du_out);

    // ---- verify ----------------------------------------------------------
    auto* c_verify = app.add_subcommand("verify", "run the verification battery");
    std::string vf_profile = "quick", vf_out = "-", vf_mutate;
    c_verify->add_option("--profile", vf_profile)->check(CLI::IsMember({"quick", "full"}));
    c_verify->add_option("--out", vf_out);
    c_verify->add_option("--mutate", vf_mutate, "testing aid: corrupt a checked identity")
        ->check(CLI::IsMember({"tmpolyrel-sign"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        amo::RunManifest manifest;
        manifest.command_line = cmdline;
        manifest.seed = seed;

        if (*c_classify) {
            double alpha = amo::parse_angle_expr(cl_alpha);
            amo::ContinuedFraction cf = amo::expand_continued_fraction(alpha, cl_depth);
            json rep;
            rep["alpha"] = alpha;
            rep["partial_quotients"] = cf.partial_quotients;
            json convs = json::array();
            for (const auto& cv : cf.convergents) convs.push_back({{"p", cv.p}, {"q", cv.q}});
            rep["convergents"] = convs;
            if (cf.is_rational()) {
                rep["kind"] = "rational";
                rep["witness"] = {{"terminated", cf.terminated},
                                  {"quotient_cutoff_hit", cf.quotient_cutoff_hit}};
            } else {
                amo::DiophantineScan scan = amo::diophantine_scan(alpha, cl_c, cl_r, cl_n);
                if (scan.kind == amo::FrequencyKind::diophantine_certified) {
                    rep["kind"] = "diophantine_certified";
                    rep["witness"] = {{"c", cl_c}, {"r", cl_r}, {"N", cl_n},
                                      {"min_margin", scan.min_margin},
                                      {"min_margin_n", scan.min_margin_n}};
                } else {
                    rep["failing_n"] = scan.failing_n;
                    amo::LiouvilleReport lw = amo::liouville_witness(cf, cl_kmax);
                    if (lw.kind == amo::FrequencyKind::liouville_certified) {
                        rep["kind"] = "liouville_certified";
                        rep["witness"] = {{"passing_k", lw.passing_k}, {"k_max", cl_kmax}};
                    } else {
                        rep["kind"] = "unverified";
                        rep["witness"] = {{"failing_n", scan.failing_n},
                                          {"failing_value", scan.failing_value},
                                          {"failing_threshold", scan.failing_threshold}};
                    }
                }
            }
            manifest.tolerances = {{"c", cl_c}, {"r", cl_r}, {"N", cl_n}};
            emit_dataset(rep.dump(2) + "\n", cl_out, manifest, elapsed());
            return 0;
        }

        if (*c_transfer) {
            amo::Parameters par(tr_lambda, amo::parse_angle_expr(tr_alpha), tr_omega);
            amo::ScaledMat2 m = amo::monodromy_scaled(par, tr_energy, tr_n);
            json rep;
            rep["matrix"] = {{m.m.a, m.m.b}, {m.m.c, m.m.d}};
            rep["log_scale"] = m.log_scale;
            rep["log_norm"] = m.log_spectral_norm();
            rep["det_renormalized"] = m.m.det();
            rep["n"] = tr_n;
            emit_dataset(rep.dump(2) + "\n", tr_out, manifest, elapsed());
            return 0;
        }

        if (*c_lyap) {
            double alpha = amo::parse_angle_expr(ly_alpha);
            GridSpec g = parse_grid(ly_grid_spec, true);
            std::vector<double> energies = linspace(g.a, g.b, g.n);
            amo::Exec exec = ly_serial ? amo::Exec::serial : amo::Exec::parallel;
            auto ests = amo::lyapunov_phase_average_sweep(ly_lambda, alpha, energies,
                                                          ly_steps, ly_grid, exec);
            std::ostringstream csv;
            csv << "E,gamma_hat,stderr,herman_margin\n";
            for (std::size_t i = 0; i < energies.size(); ++i) {
                amo::HermanReport h = amo::herman_subharmonic_check(
                    ly_lambda, alpha, energies[i], ly_herman_n, 256);
                csv << fmt12(energies[i]) << ',' << fmt12(ests[i].value) << ','
                    << fmt12(ests[i].stderr_) << ','
                    << fmt12(h.margin / static_cast<double>(h.n)) << '\n';
            }
            manifest.tolerances = {{"steps", ly_steps}, {"grid", ly_grid},
                                   {"herman_n", ly_herman_n}};
            emit_dataset(csv.str(), ly_out, manifest, elapsed());
            return 0;
        }

        if (*c_bands) {
            amo::BandSet bs = bd_oracle ? amo::band_set_bloch_oracle(bd_lambda, bd_p, bd_q)
                                        : amo::band_set(bd_lambda, bd_p, bd_q);
            std::ostringstream payload;
            if (bd_csv) {
                payload << "band_index,left,right\n";
                for (std::size_t i = 0; i < bs.intervals.size(); ++i)
                    payload << i << ',' << fmt12(bs.intervals[i].lo) << ','
                            << fmt12(bs.intervals[i].hi) << '\n';
            } else {
                json rep;
                rep["lambda"] = bd_lambda;
                rep["p"] = bd_p;
                rep["q"] = bd_q;
                rep["merged_gap_count"] = bs.merged_gap_count;
                rep["measure"] = amo::measure(bs);
                json bands = json::array();
                for (const auto& iv : bs.intervals)
                    bands.push_back({{"left", iv.lo}, {"right", iv.hi}, {"length", iv.length()}});
                rep["bands"] = bands;
                json gp = json::array();
                for (const auto& iv : amo::gaps(bs))
                    gp.push_back({{"left", iv.lo}, {"right", iv.hi}, {"length", iv.length()}});
                rep["gaps"] = gp;
                payload << rep.dump(2) << "\n";
            }
            manifest.tolerances = {{"edge_tol", 1e-12}, {"merge_tol", 1e-11}};
            manifest.checks = {{"oracle_path", bd_oracle}};
            emit_dataset(payload.str(), bd_out, manifest, elapsed());
            return 0;
        }

        if (*c_bfly) {
            amo::Exec exec = bf_serial ? amo::Exec::serial : amo::Exec::parallel;
            auto rows = amo::butterfly_dataset(bf_lambda, bf_qmax, exec);
            std::ostringstream csv;
            csv << "p,q,band_index,left,right\n";
            for (const auto& r : rows)
                csv << r.p << ',' << r.q << ',' << r.band_index << ',' << fmt12(r.left)
                    << ',' << fmt12(r.right) << '\n';
            manifest.tolerances = {{"edge_tol", 1e-12}, {"merge_tol", 1e-11}};
            emit_dataset(csv.str(), bf_out, manifest, elapsed());
            return 0;
        }

        if (*c_ids) {
            double alpha = amo::parse_angle_expr(id_alpha);
            GridSpec g = parse_grid(id_grid_spec, true);
            std::vector<double> energies = linspace(g.a, g.b, g.n);
            amo::Exec exec = id_serial ? amo::Exec::serial : amo::Exec::parallel;
            std::vector<double> vals;
            if (id_phase_grid > 0) {
                vals = amo::ids_estimate_phase_averaged(id_lambda, alpha, energies, id_n,
                                                        id_phase_grid, exec);
            } else {
                amo::Parameters par(id_lambda, alpha, id_omega);
                vals = amo::ids_estimate(par, energies, id_n, exec);
            }
            std::ostringstream csv;
            csv << "E,ids\n";
            for (std::size_t i = 0; i < energies.size(); ++i)
                csv << fmt12(energies[i]) << ',' << fmt12(vals[i]) << '\n';
            manifest.tolerances = {{"N", id_n}, {"phase_grid", id_phase_grid}};
            manifest.checks = {{"phase_averaged", id_phase_grid > 0}};
            emit_dataset(csv.str(), id_out, manifest, elapsed());
            return 0;
        }

        if (*c_loc) {
            if (lo_n < 3 || lo_n % 2 == 0)
                throw CLI::ValidationError("--n", "restriction size must be odd and >= 3");
            GridSpec w = parse_grid(lo_window, false);
            amo::Parameters par(lo_lambda, amo::parse_angle_expr(lo_alpha), lo_omega);
            long long M = (lo_n - 1) / 2;
            amo::FiniteRestriction r = amo::FiniteRestriction::build(par, -M, M);
            auto pairs = amo::eigenpairs(r, w.a, w.b, seed);
            json rep = json::array();
            for (auto& p : pairs) {
                amo::DecayFit fit = amo::decay_fit(p);
                json e;
                e["energy"] = p.energy;
                e["center"] = p.center;
                e["residual"] = p.residual;
                e["converged"] = p.converged;
                e["degenerate"] = p.degenerate;
                e["decay_rate"] = fit.rate;
                e["fit_r2"] = fit.r2;
                e["fit_refused"] = fit.refused;
                e["fit_points"] = fit.points_used;
                rep.push_back(e);
            }
            manifest.tolerances = {{"eigenvalue_tol", 1e-12}, {"residual_tol", 1e-8}};
            emit_dataset(rep.dump(2) + "\n", lo_out, manifest, elapsed());
            return 0;
        }

        if (*c_gordon) {
            json rep;
            if (gc_trials > 0) {
                auto rng = amo::make_rng(seed, 1);
                std::uniform_int_distribution<int> pdist(1, gc_pmax);
                std::uniform_real_distribution<double> vdist(-2.0, 2.0);
                std::uniform_real_distribution<double> edist(-3.0, 3.0);
                double min_ratio = std::numeric_limits<double>::infinity();
                for (int t = 0; t < gc_trials; ++t) {
                    int p = pdist(rng);
                    std::vector<double> V(static_cast<std::size_t>(p));
                    for (double& v : V) v = vdist(rng);
                    auto one = amo::gordon_inequality_check(V, edist(rng), vdist(rng), vdist(rng));
                    min_ratio = std::min(min_ratio, one.ratio);
                }
                rep["three_block"] = {{"trials", gc_trials}, {"min_ratio", min_ratio},
                                      {"bound", 0.5}};
            }
            if (!gc_alpha.empty()) {
                double alpha = amo::parse_angle_expr(gc_alpha);
                amo::ContinuedFraction cf = amo::expand_continued_fraction(alpha, gc_depth);
                std::vector<long long> scales;
                for (const auto& cv : cf.convergents)
                    if (cv.q > 1 && cv.q < 2'000'000 &&
                        (scales.empty() || cv.q > scales.back()))
                        scales.push_back(cv.q);
                amo::Parameters par(gc_lambda, alpha, 0.0);
                double Cs[1] = {gc_C};
                auto pot = amo::gordon_potential_check(par, scales, Cs);
                json rows = json::array();
                for (const auto& row : pot.rows)
                    rows.push_back({{"q", row.qk}, {"C", row.C}, {"defect", row.defect},
                                    {"log_value", row.log_value},
                                    {"amo_log_bound", row.amo_log_bound}});
                rep["gordon_scales"] = {{"rows", rows},
                                        {"decreasing_to_zero", pot.decreasing_to_zero}};
            }
            manifest.tolerances = {{"slack", 1e-10}};
            emit_dataset(rep.dump(2) + "\n", gc_out, manifest, elapsed());
            return 0;
        }

        if (*c_js) {
            amo::Parameters par(js_lambda, amo::parse_angle_expr(js_alpha), js_omega);
            auto jrep = amo::js_condition_check(par, js_m, js_n, js_eps);
            json rep;
            rep["B"] = jrep.B;
            rep["v_inf"] = jrep.v_inf;
            json rows = json::array();
            for (const auto& row : jrep.rows)
                rows.push_back({{"m", row.m}, {"defect", row.defect},
                                {"threshold", row.threshold}, {"satisfied", row.satisfied}});
            rep["rows"] = rows;
            emit_dataset(rep.dump(2) + "\n", js_out, manifest, elapsed());
            return 0;
        }

        if (*c_dual) {
            if (du_n < 3 || du_n % 2 == 0)
                throw CLI::ValidationError("--n", "restriction size must be odd and >= 3");
            double alpha = amo::parse_angle_expr(du_alpha);
            amo::Parameters par(du_lambda, alpha, du_omega);
            long long M = (du_n - 1) / 2;
            amo::FiniteRestriction r = amo::FiniteRestriction::build(par, -M, M);
            // mid-spectrum eigenpair with an interior center
            double lo, hi;
            amo::gershgorin_bounds(r.diagonal, r.off, lo, hi);
            int median = r.size() / 2;
            auto values = amo::sturm_eigenvalues_by_index(r.diagonal, r.off, median - 8,
                                                          median + 8, lo, hi, 1e-12);
            auto pairs = amo::eigenpairs(r, values.front() - 1e-9, values.back() + 1e-9, seed);
            const amo::EigenPair* pick = nullptr;
            for (const auto& p : pairs)
                if (p.converged && std::llabs(p.center) < M - std::max<long long>(M / 5, 25)) {
                    pick = &p;
                    break;
                }
            if (!pick) throw std::runtime_error("no interior localized eigenpair found");

            json rep;
            rep["lambda"] = du_lambda;
            rep["alpha"] = alpha;
            rep["energy"] = pick->energy;
            rep["dual_coupling"] = 1.0 / du_lambda;
            rep["dual_energy"] = pick->energy / du_lambda;
            amo::DualSolution ds = amo::dual_solution(pick->vector, pick->n1, du_omega_tilde,
                                                      du_omega, alpha, du_lambda,
                                                      pick->energy, du_window);
            rep["dual_residual"] = ds.residual;
            rep["dual_max_abs"] = ds.max_abs;

            const amo::EigenPair* axis_pick = nullptr;
            std::vector<amo::EigenPair> axis_pairs;
            if (du_omega == 0.0) {
                // reducibility wants a state centered on the reflection axis;
                // off-axis mirror doublets hand back c at the scale of their
                // splitting
                amo::Parameters par0(du_lambda, alpha, 0.0);
                axis_pairs = amo::reflection_centered_pairs(par0, M, 3, seed);
                for (const auto& p : axis_pairs) {
                    amo::BlochProfile prof = amo::bloch_profile_from_eigenvector(p);
                    if (prof.symmetry_defect > 0.9) continue;
                    amo::FourierSeries v1 = prof.g;
                    amo::FourierSeries v2(v1.degree());
                    for (int k = -v1.degree(); k <= v1.degree(); ++k) {
                        double ang =
                            -2.0 * 3.14159265358979323846 * amo::frac_mul_add(0.0, k, alpha);
                        v2.set_coeff(k, v1.coeff(k) * std::complex<double>(std::cos(ang),
                                                                           std::sin(ang)));
                    }
                    try {
                        auto conj = amo::reducibility_conjugate(
                            v1, v2, amo::dual_cocycle(du_lambda, p.energy), alpha);
                        rep["c"] = conj.c;
                        rep["conjugation_residual"] = conj.residual;
                        rep["d_min"] = conj.d_min;
                        rep["bloch_symmetry_defect"] = prof.symmetry_defect;
                        rep["bloch_antisymmetric"] = prof.antisymmetric;
                        rep["reducibility_energy"] = p.energy;
                        rep["reducibility_center"] = p.center;
                        axis_pick = &p;
                        break;
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                }
                if (!axis_pick) {
                    rep["c"] = nullptr;
                    rep["note"] = "no reflection-centered eigenpair admitted the conjugation";
                }
            } else {
                rep["c"] = nullptr;
                rep["note"] = "reducibility pipeline requires --omega 0";
            }

            if (du_probe_gap) {
                if (du_lambda <= 1.0)
                    throw CLI::ValidationError("--probe-gap", "requires lambda > 1");
                if (!axis_pick)
                    throw std::runtime_error("gap probe needs a reflection-centered eigenpair");
                amo::ContinuedFraction cf = amo::expand_continued_fraction(alpha, 40);
                long long p = 1, q = 2;
                for (const auto& cv : cf.convergents)
                    if (cv.q <= 200) {
                        p = cv.p;
                        q = cv.q;
                    }
                auto probe = amo::gap_edge_probe(du_lambda, alpha, p, q, *axis_pick);
                rep["gap_probe"] = {{"p", p},
                                    {"q", q},
                                    {"dual_energy", probe.dual_energy},
                                    {"nearest_edge", probe.nearest_edge},
                                    {"edge_distance", probe.edge_distance},
                                    {"error_bound", probe.error_bound},
                                    {"within_bound", probe.within_bound},
                                    {"c", probe.c},
                                    {"nearest_is_left_edge", probe.nearest_is_left_edge},
                                    {"side_matches_sign", probe.side_matches}};
            }
            manifest.tolerances = {{"window", du_window}};
            emit_dataset(rep.dump(2) + "\n", du_out, manifest, elapsed());
            return 0;
        }

        if (*c_verify) {
            amo::VerifyOptions opt;
            opt.profile = vf_profile;
            opt.seed = seed;
            opt.mutate = vf_mutate;
            amo::VerifyReport rep = amo::verify_all(opt);
            for (const auto& c : rep.criteria)
                std::cerr << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name
                          << "  (" << c.category << ", " << fmt12(c.seconds) << " s)\n";
            std::cerr << (rep.pass ? "VERIFY PASS" : "VERIFY FAIL") << ": "
                      << rep.hard_failures << " hard failure(s), " << rep.statistical_misses
                      << " statistical miss(es)\n";
            manifest.tolerances = {{"profile", vf_profile}};
            for (const auto& c : rep.criteria) manifest.checks[c.name] = c.pass;
            emit_dataset(rep.to_json().dump(2) + "\n", vf_out, manifest, elapsed());
            return rep.pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
