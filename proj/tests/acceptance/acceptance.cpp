#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nfcircle/circle.hpp"
#include "nfcircle/hl.hpp"
#include "nfcircle/io.hpp"
#include "nfcircle/local.hpp"
#include "properties.hpp"

using namespace nfc;
using namespace nfc::props;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void gate(int idx, const std::string& name, const std::string& err) {
    if (err.empty()) {
        std::printf("PASS %2d %s\n", idx, name.c_str());
    } else {
        std::printf("FAIL %2d %s: %s\n", idx, name.c_str(), err.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

template <typename F>
void run_gate(int idx, const std::string& name, F body) {
    std::string err;
    try {
        err = body();
    } catch (const std::exception& e) {
        err = std::string("exception: ") + e.what();
    }
    gate(idx, name, err);
}

std::vector<long> primes_upto(long bound) {
    std::vector<long> out;
    for (long p = 2; p <= bound; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) out.push_back(p);
    }
    return out;
}

IdealSpec prime_of(const EquationInstance& inst, long p) {
    return principal_ideal(fe_from_int(*inst.k, Int(p)));
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path + ">";
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    std::string scratch = argc > 2 ? argv[2] : ".";

    EquationInstance qi = builtin_fixture("qi");
    std::vector<LocalDensityResult> densities;
    std::optional<SingularIntegralEstimate> integral;

    run_gate(1, "orthogonality identity reproduces the exact counts", [&]() -> std::string {
        auto t0 = std::chrono::steady_clock::now();
        const long expected[] = {74, 220, 563};
        const double Ps[] = {8, 12, 16};
        for (int i = 0; i < 3; ++i) {
            Int direct = count_solutions(qi, Ps[i], {}).count;
            Int orth = orthogonality_count(qi, Ps[i]);
            if (direct != orth)
                return "P=" + std::to_string((int)Ps[i]) + ": " + direct.get_str() +
                       " != " + orth.get_str();
            if (direct != expected[i])
                return "P=" + std::to_string((int)Ps[i]) + ": count " + direct.get_str() +
                       ", expected " + std::to_string(expected[i]);
        }
        double dt = seconds_since(t0);
        if (dt >= 60) return "took " + fmt(dt) + "s, limit 60s";
        return "";
    });

    run_gate(2, "meet-in-the-middle matches the naive count on random instances",
             [&]() -> std::string {
                 bool saw_deg1 = false, saw_deg2 = false;
                 for (std::size_t i = 0; i < 10; ++i) {
                     EquationInstance inst = random_small_instance(42, i);
                     (inst.m() == 1 ? saw_deg1 : saw_deg2) = true;
                     double P = inst.m() == 1 ? 12 : 8;
                     Int naive = naive_count(inst, P, 2'000'000'000ULL);
                     Int mitm = count_solutions(inst, P, {}).count;
                     if (naive != mitm)
                         return "instance " + std::to_string(i) + " (" + inst.label +
                                "): naive " + naive.get_str() + " != mitm " + mitm.get_str();
                 }
                 if (!saw_deg1 || !saw_deg2) return "instance mix lacks a base field degree";
                 return "";
             });

    run_gate(3, "prediction matches the count within 15 percent", [&]() -> std::string {
        auto t0 = std::chrono::steady_clock::now();
        SingularSeriesEstimate series = singular_series(qi, Int(50), 0);
        integral = singular_integral(qi, "slab", 2'000'000, 1, 1);
        for (double P : {200.0, 400.0}) {
            Int c = count_solutions(qi, P, {}).count;
            PredictionValue pred = prediction(qi, series, *integral, P);
            if (!(pred.value > 0)) return "prediction is not positive";
            double ratio = c.get_d() / pred.value;
            if (!(ratio >= 0.85 && ratio <= 1.15))
                return "P=" + std::to_string((int)P) + ": ratio " + fmt(ratio) +
                       " outside [0.85, 1.15]";
        }
        double dt = seconds_since(t0);
        if (dt >= 600) return "took " + fmt(dt) + "s, limit 600s";
        return "";
    });

    run_gate(4, "local densities stabilize and match the counting form", [&]() -> std::string {
        densities.clear();
        for (long p : primes_upto(50)) {
            LocalDensityResult d = local_density_adaptive(prime_of(qi, p), qi);
            if (!d.stabilized) return "p=" + std::to_string(p) + " did not stabilize";
            if (!(d.tail_gap < 1e-3))
                return "p=" + std::to_string(p) + " tail gap " + fmt(d.tail_gap);
            densities.push_back(d);
        }
        for (long p : {3L, 5L, 7L}) {
            LocalDensityResult d = local_density(prime_of(qi, p), 2, qi);
            if (!d.counting_asserted)
                return "p=" + std::to_string(p) + ": counting form not asserted";
            for (unsigned j = 1; j <= 2; ++j) {
                double gap = std::fabs(d.mu[j] - d.mu_counting[j - 1].get_d());
                if (!(gap < 1e-9))
                    return "p=" + std::to_string(p) + " j=" + std::to_string(j) +
                           ": character and counting forms differ by " + fmt(gap);
            }
        }
        return "";
    });

    run_gate(5, "minor arc power saving", [&]() -> std::string {
        MinorArcScan scan = minor_arc_scan(qi, {64, 128, 256, 512}, 0.4, 1000, 42);
        if (!(scan.fitted_exponent < 0.9))
            return "fitted exponent " + fmt(scan.fitted_exponent) + " >= 0.9";
        for (const auto& row : scan.rows)
            if (!(row.max_abs_S3 > 0)) return "degenerate scan row";
        return "";
    });

    run_gate(6, "mean value growth", [&]() -> std::string {
        MeanValueCheck mv = mean_value_check(1, qi, {8, 16, 32, 64});
        if (!(mv.fitted_exponent <= 2.3))
            return "fitted exponent " + fmt(mv.fitted_exponent) + " > 2.3";
        return "";
    });

    run_gate(7, "algebra invariants hold on all built-in fields", [&]() -> std::string {
        auto fields = {field_Q(), field_Qsqrt2(), field_Qi(), field_Qcbrt2()};
        for (const auto& k : fields) {
            for (auto prop : {norm_multiplicativity, embedding_homomorphism, trace_linearity,
                              norm_compatibility, denominator_ideality}) {
                std::string err = prop(*k, 1, 200);
                if (!err.empty()) return err;
            }
            std::string err = height_constant(*k, 1, 200);
            if (!err.empty()) return err;
            err = submultiplicativity(*k, 1, 200);
            if (!err.empty()) return err;
            long d = k->label == "Q(i)" ? 2 : -1;
            err = extension_norm_multiplicativity(quadratic_extension(*k, d), 1, 200);
            if (!err.empty()) return err;
        }
        return "";
    });

    run_gate(8, "weak approximation witness with exact replay", [&]() -> std::string {
        EquationInstance wa = builtin_fixture("wapprox-qi");
        WitnessCertificate cert = weak_approx_search(wa, {8, 16, 32}, {});
        if (!cert.found) return "no witness on the schedule";
        if (!cert.equation_exact) return "witness equation not exact";
        if (!cert.congruence_ok) return "witness congruence violated";
        for (const auto& d : cert.distances)
            if (!(d.distance < d.bound)) return "archimedean distance bound violated";
        if (!replay_witness(wa, cert)) return "replay failed";
        return "";
    });

    run_gate(9, "every place certifies locally", [&]() -> std::string {
        for (long p : primes_upto(50)) {
            LocalCertificate c = hensel_certify(prime_of(qi, p), qi, 3);
            if (!c.found) return "p=" + std::to_string(p) + ": no certificate";
            if (!replay_hensel(c, qi)) return "p=" + std::to_string(p) + ": replay failed";
        }
        for (const auto& cert : real_place_certify(qi))
            if (!cert.ok) return "real place " + std::to_string(cert.place) + " failed";
        if (densities.empty())
            for (long p : primes_upto(50))
                densities.push_back(local_density_adaptive(prime_of(qi, p), qi));
        for (const auto& d : densities)
            if (!(d.mu.back() > 0)) return "p=" + d.p.get_str() + ": density not positive";
        if (!integral) integral = singular_integral(qi, "slab", 200'000, 1, 1);
        if (!(integral->value > 0)) return "archimedean density not positive";
        return "";
    });

    run_gate(10, "seeded selftest artifacts are byte-identical", [&]() -> std::string {
        if (cli.empty()) return "no CLI path given";
        std::string a = scratch + "/stA", b = scratch + "/stB";
        for (const std::string& dir : {a, b}) {
            std::string cmd = cli + " selftest --jobs 1 --seed 42 --out " + dir + " > " + dir +
                              "-stdout.txt 2>&1";
            if (std::system(("mkdir -p " + dir).c_str()) != 0) return "cannot make " + dir;
            if (std::system(cmd.c_str()) != 0) return "selftest run failed in " + dir;
        }
        for (const char* name : {"/selftest.json", "/selftest-config.json"}) {
            std::string da = read_all(a + name), db = read_all(b + name);
            if (da != db) return std::string(name + 1) + " differs between reruns";
            if (da.rfind("<unreadable", 0) == 0) return da;
        }
        return "";
    });

    if (g_failures) {
        std::printf("%d of 10 gates failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 gates passed\n");
    return 0;
}
