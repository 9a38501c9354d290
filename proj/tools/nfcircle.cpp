#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>

#include "nfcircle/circle.hpp"
#include "nfcircle/hl.hpp"
#include "nfcircle/io.hpp"
#include "nfcircle/local.hpp"
#include "nfcircle/report.hpp"

namespace nfc {
namespace {

class Stopwatch {
   public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - t0_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

   private:
    std::chrono::steady_clock::time_point t0_;
};

std::string base_dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

void ensure_out(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw SchemaError("cannot create output directory: " + dir);
}

void write_json_artifact(const std::string& path, const Json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

ArtifactMeta make_meta(const ExperimentConfig& cfg, double wall_ms, uint64_t used) {
    ArtifactMeta meta;
    meta.config_digest = cfg.digest;
    meta.wall_clock_ms = wall_ms;
    meta.budget_points = cfg.budget_points;
    meta.budget_used = used;
    meta.deterministic = cfg.jobs == 1;
    return meta;
}

void emit_config(const ExperimentConfig& cfg, const std::string& out, const std::string& cmd) {
    write_json_artifact(out + "/" + cmd + "-config.json", cfg.resolved);
}

std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    for (long p = 2; p <= bound; ++p) {
        Int pp(p);
        if (mpz_probab_prime_p(pp.get_mpz_t(), 30) != 0) out.push_back(p);
    }
    return out;
}

uint64_t total_points(const EquationInstance& inst, double P) {
    uint64_t total = 0;
    for (std::size_t s = 0; s < inst.slots(); ++s) total += slot_points(inst, P, s).count;
    return total;
}

CountOptions options_for(const ExperimentConfig& cfg) {
    CountOptions opts;
    opts.budget_points = cfg.budget_points;
    opts.jobs = cfg.jobs;
    opts.witness_cap = cfg.witness_cap;
    return opts;
}

int cmd_count(const ExperimentConfig& cfg, const std::string& out) {
    Stopwatch sw;
    EquationInstance inst = instance_from_json(cfg.instance);
    CountOptions opts = options_for(cfg);
    CountReport rep;
    uint64_t used = 0;
    for (double P : cfg.P_schedule) {
        rep.rows.push_back(count_solutions(inst, P, opts));
        used += total_points(inst, P);
        const auto& r = rep.rows.back();
        std::cout << "count: P=" << fmt_double(r.P) << " count=" << r.count.get_str() << " ("
                  << fmt_double(r.elapsed_ms) << " ms)\n";
    }
    ArtifactMeta meta = make_meta(cfg, sw.ms(), used);
    write_text_file(out + "/count.csv", count_report_csv(rep, meta));
    emit_config(cfg, out, "count");
    std::cout << "wrote " << out << "/count.csv\n";
    return 0;
}

int cmd_predict(const ExperimentConfig& cfg, const std::string& out) {
    Stopwatch sw;
    EquationInstance inst = instance_from_json(cfg.instance);
    CountOptions opts = options_for(cfg);
    auto series = singular_series(inst, Int(cfg.prime_cutoff), cfg.j_cap, Int(cfg.gamma_cutoff),
                                  cfg.density_tol, cfg.budget_points);
    std::cout << "series: euler=" << fmt_double(series.euler_product)
              << " direct=" << fmt_double(series.direct_sum.real()) << "\n";
    auto integral = singular_integral(inst, cfg.method, cfg.samples, cfg.seed, cfg.jobs,
                                      cfg.beta_cutoff);
    std::cout << "integral: " << fmt_double(integral.value) << " +/- "
              << fmt_double(integral.stderr_) << " (" << integral.method << ")\n";
    std::vector<CountRow> counts;
    std::vector<PredictionValue> preds;
    uint64_t used = integral.samples;
    for (double P : cfg.P_schedule) {
        counts.push_back(count_solutions(inst, P, opts));
        preds.push_back(prediction(inst, series, integral, P));
        used += total_points(inst, P);
        double pv = preds.back().value;
        double ratio = pv != 0 ? counts.back().count.get_d() / pv : 0.0;
        std::cout << "P=" << fmt_double(P) << " count=" << counts.back().count.get_str()
                  << " prediction=" << fmt_double(pv) << " ratio=" << fmt_double(ratio) << "\n";
    }
    ArtifactMeta meta = make_meta(cfg, sw.ms(), used);
    write_json_artifact(out + "/predict.json", predict_report(series, integral, counts, preds, meta));
    write_text_file(out + "/ratio.csv", ratio_csv(counts, preds, meta));
    emit_config(cfg, out, "predict");
    std::cout << "wrote " << out << "/predict.json, " << out << "/ratio.csv\n";
    return 0;
}

int cmd_arcs(const ExperimentConfig& cfg, const std::string& out) {
    Stopwatch sw;
    EquationInstance inst = instance_from_json(cfg.instance);
    CountOptions opts = options_for(cfg);
    std::vector<ArcSampleRow> detail;
    MinorArcScan scan = minor_arc_scan(inst, cfg.P_schedule, cfg.theta, cfg.arc_samples, cfg.seed,
                                       opts, &detail);
    for (const auto& row : scan.rows)
        std::cout << "arcs: P=" << fmt_double(row.P) << " max|S3|=" << fmt_double(row.max_abs_S3)
                  << " minor=" << row.minor_samples << " major=" << row.major_samples << "\n";
    std::cout << "arcs: fitted exponent " << fmt_double(scan.fitted_exponent) << "\n";
    ArtifactMeta meta =
        make_meta(cfg, sw.ms(), static_cast<uint64_t>(cfg.arc_samples) * cfg.P_schedule.size());
    write_text_file(out + "/arcs.csv", arcs_csv(detail, meta));
    emit_config(cfg, out, "arcs");
    std::cout << "wrote " << out << "/arcs.csv\n";
    return 0;
}

int cmd_local(const ExperimentConfig& cfg, const std::string& out) {
    Stopwatch sw;
    EquationInstance inst = instance_from_json(cfg.instance);
    const uint64_t budget = std::min<uint64_t>(cfg.budget_points, 50'000'000ULL);
    std::vector<LocalCertificate> certs;
    uint64_t used = 0;
    for (long p : primes_up_to(cfg.prime_cutoff)) {
        IdealSpec pi = principal_ideal(fe_from_int(*inst.k, Int(p)));
        certs.push_back(hensel_certify(pi, inst, 3, budget));
        const auto& c = certs.back();
        used += c.examined;
        std::cout << "local: p=" << p << (c.found ? " certified" : " not certified");
        if (c.definitive_insoluble) std::cout << " (insoluble)";
        if (!c.note.empty()) std::cout << " [" << c.note << "]";
        std::cout << "\n";
    }
    auto places = real_place_certify(inst);
    for (const auto& r : places)
        std::cout << "local: place " << r.place << (r.ok ? " certified" : " not certified")
                  << " value=" << fmt_double(r.value) << " grad=" << fmt_double(r.grad_norm)
                  << "\n";
    ArtifactMeta meta = make_meta(cfg, sw.ms(), used);
    Json doc = local_report(cfg.instance, certs, places, meta);
    write_json_artifact(out + "/local.json", doc);
    emit_config(cfg, out, "local");
    std::cout << "wrote " << out << "/local.json\n";
    if (doc["definitive_insoluble"].get<bool>()) {
        std::cerr << "local obstruction found: instance is insoluble\n";
        return 4;
    }
    return 0;
}

int cmd_wapprox(const ExperimentConfig& cfg, const std::string& out) {
    Stopwatch sw;
    EquationInstance inst = instance_from_json(cfg.instance);
    CountOptions opts = options_for(cfg);
    WitnessCertificate cert = weak_approx_search(inst, cfg.P_schedule, opts);
    uint64_t used = 0;
    for (double P : cert.P_tried) used += total_points(inst, P);
    if (cert.found) {
        if (!replay_witness(inst, cert)) throw InternalError("witness failed its own replay");
        std::cout << "wapprox: witness found at P=" << fmt_double(cert.P) << "\n";
    } else {
        std::cout << "wapprox: no witness up to P=" << fmt_double(cfg.P_schedule.back())
                  << " (exhaustion report)\n";
    }
    ArtifactMeta meta = make_meta(cfg, sw.ms(), used);
    write_json_artifact(out + "/wapprox.json", wapprox_report(cfg.instance, cert, meta));
    emit_config(cfg, out, "wapprox");
    std::cout << "wrote " << out << "/wapprox.json\n";
    return 0;
}

int cmd_verify(const std::string& cert_path, const std::string& out, unsigned jobs) {
    Stopwatch sw;
    Json doc = read_json_file(cert_path);
    if (!doc.is_object() || !doc.contains("type"))
        throw SchemaError("certificate document needs a type");
    std::string type = doc["type"].get<std::string>();
    EquationInstance inst = instance_from_json(doc.contains("instance") ? doc["instance"] : Json());
    Json results = Json::array();
    bool all = true;
    uint64_t used = 0;
    if (type == "local-report") {
        for (const auto& c : doc["primes"]) {
            LocalCertificate lc = hensel_from_json(c);
            bool ok = true;
            std::string how;
            if (lc.found) {
                ok = replay_hensel(lc, inst);
                how = "replayed witness";
            } else if (lc.definitive_insoluble) {
                IdealSpec pi = principal_ideal(fe_from_int(*inst.k, lc.p));
                auto re = hensel_certify(pi, inst, std::max(1u, lc.search_depth), 50'000'000ULL);
                used += re.examined;
                ok = re.definitive_insoluble;
                how = "re-searched obstruction";
            } else {
                how = "inconclusive certificate, nothing to replay";
            }
            all = all && ok;
            results.push_back(Json{{"p", lc.p.get_str()}, {"ok", ok}, {"how", how}});
            std::cout << "verify: p=" << lc.p.get_str() << (ok ? " ok" : " FAILED") << " (" << how
                      << ")\n";
        }
        auto fresh = real_place_certify(inst);
        for (const auto& c : doc["real_places"]) {
            RealPlaceCertificate rc = real_place_from_json(c);
            bool ok = rc.place < fresh.size();
            if (ok) {
                const auto& f = fresh[rc.place];
                ok = f.ok == rc.ok &&
                     std::fabs(f.value - rc.value) <= 1e-12 + 1e-9 * std::fabs(rc.value);
            }
            all = all && ok;
            results.push_back(Json{{"place", rc.place}, {"ok", ok}, {"how", "recomputed"}});
            std::cout << "verify: place " << rc.place << (ok ? " ok" : " FAILED") << "\n";
        }
    } else if (type == "wapprox-report") {
        WitnessCertificate wc = witness_from_json(doc["witness"]);
        bool ok = true;
        std::string how;
        if (wc.found) {
            ok = replay_witness(inst, wc);
            how = "replayed witness";
        } else {
            how = "exhaustion report, nothing to replay";
        }
        all = ok;
        results.push_back(Json{{"witness", wc.found}, {"ok", ok}, {"how", how}});
        std::cout << "verify: witness" << (ok ? " ok" : " FAILED") << " (" << how << ")\n";
    } else {
        throw SchemaError("unknown certificate type '" + type + "'");
    }
    ArtifactMeta meta;
    meta.config_digest = hex64(fnv1a64(doc.dump()));
    meta.wall_clock_ms = sw.ms();
    meta.budget_points = 50'000'000ULL;
    meta.budget_used = used;
    meta.deterministic = jobs == 1;
    Json verdict;
    verdict["type"] = "verify-report";
    verdict["meta"] = meta_to_json(meta);
    verdict["certificate_file"] = cert_path;
    verdict["results"] = results;
    verdict["all_ok"] = all;
    write_json_artifact(out + "/verify.json", verdict);
    Json vcfg;
    vcfg["cert_file"] = cert_path;
    vcfg["jobs"] = jobs;
    write_json_artifact(out + "/verify-cert-config.json", vcfg);
    std::cout << "wrote " << out << "/verify.json\n";
    if (!all) {
        std::cerr << "certificate verification failed\n";
        return 5;
    }
    return 0;
}

struct CheckList {
    Json checks = Json::array();
    bool all = true;

    void run(const std::string& name, const std::function<bool()>& fn) {
        bool ok = false;
        std::string detail;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        all = all && ok;
        Json row;
        row["name"] = name;
        row["pass"] = ok;
        if (!detail.empty()) row["detail"] = detail;
        checks.push_back(row);
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
    }
};

int cmd_selftest(uint64_t seed, unsigned jobs, const std::string& out) {
    Stopwatch sw;
    CheckList list;
    CountOptions opts;
    opts.jobs = jobs;

    EquationInstance qi = builtin_fixture("qi");
    EquationInstance insoluble = builtin_fixture("qi-insoluble3");
    EquationInstance wapprox = builtin_fixture("wapprox-qi");
    EquationInstance qcbrt2 = builtin_fixture("qcbrt2");

    auto norm_mult_check = [&](const EquationInstance& inst, uint64_t stream) {
        const auto& K = *inst.K;
        for (unsigned trial = 0; trial < 50; ++trial) {
            Rng::Stream rng(seed, stream + trial);
            std::vector<Int> uc, vc;
            for (std::size_t i = 0; i < K.n; ++i) uc.push_back(Int(rng.next_int(-3, 3)));
            for (std::size_t i = 0; i < K.n; ++i) vc.push_back(Int(rng.next_int(-3, 3)));
            KElement u = kelem_from_ints(K, uc), v = kelem_from_ints(K, vc);
            FieldElement lhs = kelem_norm(K, kelem_mul(K, u, v));
            FieldElement rhs = field_mul(kelem_norm(K, u), kelem_norm(K, v));
            if (!(lhs == rhs)) return false;
        }
        return true;
    };

    list.run("qi.norm-multiplicativity", [&] { return norm_mult_check(qi, 900); });
    list.run("qcbrt2.norm-multiplicativity", [&] { return norm_mult_check(qcbrt2, 950); });

    list.run("qi.count-consistency", [&] {
        CountRow row = count_solutions(qi, 8.0, opts);
        return row.count == naive_count(qi, 8.0, 100'000'000ULL);
    });
    list.run("qi.orthogonality", [&] {
        CountRow row = count_solutions(qi, 8.0, opts);
        return orthogonality_count(qi, 8.0, opts) == row.count;
    });
    list.run("qi.io-roundtrip", [&] {
        EquationInstance back = instance_from_json(instance_to_json(qi));
        return count_solutions(back, 8.0, opts).count == count_solutions(qi, 8.0, opts).count;
    });
    list.run("qi.complete-sum", [&] {
        auto v = complete_sum({Rat(1, 3)}, qi);
        std::complex<double> want(0.0, -std::sqrt(3.0) / 27.0);
        return std::abs(v.S - want) < 1e-9 && v.denom_norm == 3;
    });
    list.run("qi.local-density", [&] {
        auto d2 = local_density_adaptive(principal_ideal(fe_from_int(*qi.k, Int(2))), qi);
        auto d3 = local_density_adaptive(principal_ideal(fe_from_int(*qi.k, Int(3))), qi);
        return d2.stabilized && std::fabs(d2.mu.back() - 0.75) < 1e-9 && d3.stabilized &&
               std::fabs(d3.mu.back() - 83.0 / 81.0) < 1e-9;
    });
    list.run("qi.series-dyadic", [&] {
        auto s = singular_series(qi, Int(20), 0, Int(32));
        std::vector<double> xs, ys;
        for (const auto& [R, v] : s.dyadic) {
            double a = std::abs(v);
            if (a > 1e-12) {
                xs.push_back(R.get_d());
                ys.push_back(a);
            }
        }
        return s.euler_product > 0 && xs.size() >= 2 && loglog_slope(xs, ys) < 0;
    });
    list.run("qi.integral-slab", [&] {
        auto est = singular_integral(qi, "slab", 200'000ULL, seed, jobs);
        if (est.value_at_eps.size() != 5) return false;
        double gap = std::fabs(est.value_at_eps[3] - est.value_at_eps[4]);
        double se = est.stderr_at_eps[3] + est.stderr_at_eps[4];
        return est.value > 0 && gap < 3 * se;
    });
    list.run("qi.hensel", [&] {
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
            auto c = hensel_certify(principal_ideal(fe_from_int(*qi.k, Int(p))), qi);
            if (!c.found || !replay_hensel(c, qi)) return false;
        }
        return true;
    });
    list.run("qi.real-place", [&] {
        auto places = real_place_certify(qi);
        for (const auto& r : places)
            if (!r.ok) return false;
        return !places.empty();
    });
    list.run("qi.insoluble3", [&] {
        auto c = hensel_certify(principal_ideal(fe_from_int(*insoluble.k, Int(3))), insoluble);
        auto s = singular_series(insoluble, Int(10), 0, Int(16));
        return c.definitive_insoluble && std::fabs(s.euler_product) < 1e-9;
    });
    list.run("qi.wapprox", [&] {
        WitnessCertificate cert = weak_approx_search(wapprox, {8.0, 16.0, 32.0}, opts);
        return cert.found && replay_witness(wapprox, cert) && cert.equation_exact &&
               cert.congruence_ok;
    });
    list.run("qi.arc-scan", [&] {
        std::vector<ArcSampleRow> detail;
        auto scan = minor_arc_scan(qi, {16.0, 32.0}, 0.4, 40, seed, opts, &detail);
        if (!std::isfinite(scan.fitted_exponent)) return false;
        for (const auto& row : detail)
            if (row.label != "major" && row.label != "minor") return false;
        return scan.rows.size() == 2;
    });

    list.run("qcbrt2.count-consistency", [&] {
        CountRow row = count_solutions(qcbrt2, 4.0, opts);
        return row.count == naive_count(qcbrt2, 4.0, 100'000'000ULL);
    });
    list.run("qcbrt2.orthogonality", [&] {
        CountRow row = count_solutions(qcbrt2, 4.0, opts);
        return orthogonality_count(qcbrt2, 4.0, opts) == row.count;
    });
    list.run("qcbrt2.local-density", [&] {
        for (long p : {2L, 3L, 5L}) {
            auto d = local_density_adaptive(principal_ideal(fe_from_int(*qcbrt2.k, Int(p))),
                                            qcbrt2);
            if (!d.stabilized) return false;
        }
        return true;
    });
    list.run("qcbrt2.series-positive", [&] {
        auto s = singular_series(qcbrt2, Int(7), 0, Int(8));
        return s.euler_product > 0;
    });
    list.run("qcbrt2.integral-slab", [&] {
        auto est = singular_integral(qcbrt2, "slab", 100'000ULL, seed, jobs);
        if (est.value_at_eps.size() != 5) return false;
        double gap = std::fabs(est.value_at_eps[3] - est.value_at_eps[4]);
        double se = est.stderr_at_eps[3] + est.stderr_at_eps[4];
        return est.value > 0 && gap < 3 * se;
    });
    list.run("qcbrt2.hensel", [&] {
        for (long p : {2L, 3L, 5L}) {
            auto c = hensel_certify(principal_ideal(fe_from_int(*qcbrt2.k, Int(p))), qcbrt2);
            if (!c.found || !replay_hensel(c, qcbrt2)) return false;
        }
        return true;
    });
    list.run("qcbrt2.real-place", [&] {
        auto places = real_place_certify(qcbrt2);
        for (const auto& r : places)
            if (!r.ok) return false;
        return !places.empty();
    });

    Json cfg_doc;
    cfg_doc["fixtures"] = Json::array({"qi", "qi-insoluble3", "wapprox-qi", "qcbrt2"});
    cfg_doc["seed"] = seed;
    cfg_doc["jobs"] = jobs;

    ArtifactMeta meta;
    meta.config_digest = hex64(fnv1a64(cfg_doc.dump()));
    meta.wall_clock_ms = sw.ms();
    meta.budget_points = 0;
    meta.budget_used = 0;
    meta.deterministic = jobs == 1;

    Json doc;
    doc["type"] = "selftest-report";
    doc["meta"] = meta_to_json(meta);
    doc["checks"] = list.checks;
    doc["all_pass"] = list.all;
    write_json_artifact(out + "/selftest.json", doc);
    write_json_artifact(out + "/selftest-config.json", cfg_doc);

    std::size_t passed = 0;
    for (const auto& c : list.checks)
        if (c["pass"].get<bool>()) ++passed;
    std::cout << "selftest: " << passed << "/" << list.checks.size() << " checks passed\n";
    std::cout << "wrote " << out << "/selftest.json\n";
    if (!list.all) {
        std::cerr << "selftest failed\n";
        return 5;
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"circle-method toolkit for a N(x) + b N(y) = z^n over a number field"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", cert_path;
    uint64_t seed = 42, budget = 0;
    unsigned jobs = 1;
    auto* config_opt =
        app.add_option("--config", config_path, "experiment configuration file (JSON)")
            ->envname("NFCIRCLE_CONFIG");
    auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads; 1 is the deterministic path")
                         ->envname("NFCIRCLE_JOBS");
    auto* seed_opt =
        app.add_option("--seed", seed, "seed for all sampled subsystems")->envname("NFCIRCLE_SEED");
    auto* budget_opt = app.add_option("--budget-points", budget, "lattice point budget")
                           ->envname("NFCIRCLE_BUDGET_POINTS");
    app.add_option("--out", out_dir, "artifact output directory")->envname("NFCIRCLE_OUT");

    auto* count_cmd = app.add_subcommand("count", "count box solutions over the P schedule");
    auto* predict_cmd =
        app.add_subcommand("predict", "singular series and integral, prediction and ratio table");
    auto* arcs_cmd = app.add_subcommand("arcs", "minor-arc exponential sum scan");
    auto* local_cmd = app.add_subcommand("local", "certify local solubility at every place");
    auto* wapprox_cmd =
        app.add_subcommand("wapprox", "search for a weak-approximation witness");
    auto* verify_cmd = app.add_subcommand("verify-cert", "replay a certificate document");
    verify_cmd->add_option("cert", cert_path, "certificate JSON file")->required();
    auto* selftest_cmd =
        app.add_subcommand("selftest", "run the invariant suite on the built-in fixtures");
    for (auto* sub :
         {count_cmd, predict_cmd, arcs_cmd, local_cmd, wapprox_cmd, verify_cmd, selftest_cmd})
        sub->fallthrough();

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

    ensure_out(out_dir);

    if (selftest_cmd->parsed()) return cmd_selftest(seed, jobs == 0 ? 1 : jobs, out_dir);
    if (verify_cmd->parsed()) return cmd_verify(cert_path, out_dir, jobs == 0 ? 1 : jobs);

    if (config_opt->count() == 0)
        throw SchemaError("this subcommand needs --config (or NFCIRCLE_CONFIG)");
    Json raw = read_json_file(config_path);
    if (!raw.is_object()) throw SchemaError("config must be a JSON object");
    if (jobs_opt->count() > 0) raw["jobs"] = jobs;
    if (seed_opt->count() > 0) raw["seed"] = seed;
    if (budget_opt->count() > 0) raw["budget_points"] = budget;
    ExperimentConfig cfg = resolve_config(raw, base_dir_of(config_path));

    try {
        if (count_cmd->parsed()) return cmd_count(cfg, out_dir);
        if (predict_cmd->parsed()) return cmd_predict(cfg, out_dir);
        if (arcs_cmd->parsed()) return cmd_arcs(cfg, out_dir);
        if (local_cmd->parsed()) return cmd_local(cfg, out_dir);
        if (wapprox_cmd->parsed()) return cmd_wapprox(cfg, out_dir);
    } catch (const InfeasibleError& e) {
        Json doc;
        doc["type"] = "infeasibility-report";
        doc["meta"] = meta_to_json(make_meta(cfg, 0, 0));
        doc["error"] = e.what();
        write_json_artifact(out_dir + "/infeasible.json", doc);
        emit_config(cfg, out_dir, "infeasible");
        std::cerr << "infeasible: " << e.what() << "\n";
        return 4;
    }
    throw InternalError("no subcommand dispatched");
}

}  // namespace
}  // namespace nfc

int main(int argc, char** argv) {
    try {
        return nfc::run_cli(argc, argv);
    } catch (const nfc::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const nfc::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const nfc::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
}
