#include "nfcircle/report.hpp"

#include <sstream>

#include "nfcircle/util.hpp"

namespace nfc {

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += fmt_double(v[i]);
    }
    return out;
}

std::string join_rats(const std::vector<Rat>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += rat_to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string count_report_csv(const CountReport& report, const ArtifactMeta& meta) {
    std::ostringstream os;
    os << meta_csv_comment(meta);
    os << "P,count,elapsed_ms,budget_hit\n";
    for (const auto& row : report.rows) {
        os << fmt_double(row.P) << "," << row.count.get_str() << ","
           << fmt_double(meta.deterministic ? 0.0 : row.elapsed_ms) << ","
           << (row.budget_hit ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string arcs_csv(const std::vector<ArcSampleRow>& rows, const ArtifactMeta& meta) {
    std::ostringstream os;
    os << meta_csv_comment(meta);
    os << "P,theta,alpha_coords,label,gamma,denom_norm,abs_S3\n";
    for (const auto& row : rows) {
        os << fmt_double(row.P) << "," << fmt_double(row.theta) << "," << join_doubles(row.alpha)
           << "," << row.label << "," << join_rats(row.gamma) << "," << row.denom_norm.get_str()
           << "," << fmt_double(row.abs_S3) << "\n";
    }
    return os.str();
}

std::string ratio_csv(const std::vector<CountRow>& counts,
                      const std::vector<PredictionValue>& predictions,
                      const ArtifactMeta& meta) {
    if (counts.size() != predictions.size()) throw InternalError("ratio table length mismatch");
    std::ostringstream os;
    os << meta_csv_comment(meta);
    os << "P,count,prediction,prediction_stderr,ratio\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double c = counts[i].count.get_d();
        double pred = predictions[i].value;
        double ratio = pred != 0 ? c / pred : 0.0;
        os << fmt_double(counts[i].P) << "," << counts[i].count.get_str() << ","
           << fmt_double(pred) << "," << fmt_double(predictions[i].stderr_) << ","
           << fmt_double(ratio) << "\n";
    }
    return os.str();
}

Json series_to_json(const SingularSeriesEstimate& series) {
    Json doc;
    doc["value"] = series.euler_product;
    doc["prime_cutoff"] = series.prime_cutoff.get_str();
    Json per_prime = Json::array();
    for (const auto& f : series.per_prime)
        per_prime.push_back(Json{{"p", f.p.get_str()},
                                 {"mu", f.mu},
                                 {"j_stop", f.j_stop},
                                 {"tail_gap", f.tail_gap},
                                 {"stabilized", f.stabilized}});
    doc["per_prime"] = per_prime;
    doc["gamma_cutoff"] = series.gamma_cutoff.get_str();
    doc["direct_sum"] = Json::array({series.direct_sum.real(), series.direct_sum.imag()});
    Json dyadic = Json::array();
    for (const auto& [R, v] : series.dyadic)
        dyadic.push_back(Json{{"R", R.get_str()}, {"sum", Json::array({v.real(), v.imag()})}});
    doc["dyadic"] = dyadic;
    return doc;
}

Json integral_to_json(const SingularIntegralEstimate& integral) {
    Json doc;
    doc["value"] = integral.value;
    doc["stderr"] = integral.stderr_;
    doc["method"] = integral.method;
    doc["seed"] = integral.seed;
    doc["samples"] = integral.samples;
    doc["eps_schedule"] = integral.eps_schedule;
    doc["value_at_eps"] = integral.value_at_eps;
    doc["stderr_at_eps"] = integral.stderr_at_eps;
    return doc;
}

Json predict_report(const SingularSeriesEstimate& series, const SingularIntegralEstimate& integral,
                    const std::vector<CountRow>& counts,
                    const std::vector<PredictionValue>& predictions, const ArtifactMeta& meta) {
    if (counts.size() != predictions.size()) throw InternalError("ratio table length mismatch");
    Json doc;
    doc["meta"] = meta_to_json(meta);
    doc["series"] = series_to_json(series);
    doc["integral"] = integral_to_json(integral);
    Json at = Json::object();
    for (const auto& p : predictions)
        at[fmt_double(p.P)] = Json{{"value", p.value}, {"stderr", p.stderr_}};
    doc["prediction_at"] = at;
    Json ratio = Json::array();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double pred = predictions[i].value;
        double r = pred != 0 ? counts[i].count.get_d() / pred : 0.0;
        ratio.push_back(Json{{"P", counts[i].P},
                             {"count", counts[i].count.get_str()},
                             {"prediction", pred},
                             {"ratio", r}});
    }
    doc["ratio"] = ratio;
    return doc;
}

Json local_report(const Json& instance_doc, const std::vector<LocalCertificate>& primes,
                  const std::vector<RealPlaceCertificate>& places, const ArtifactMeta& meta) {
    Json doc;
    doc["type"] = "local-report";
    doc["meta"] = meta_to_json(meta);
    doc["instance"] = instance_doc;
    Json pr = Json::array();
    bool all = true;
    bool insoluble = false;
    for (const auto& c : primes) {
        pr.push_back(hensel_to_json(c));
        all = all && c.found;
        insoluble = insoluble || c.definitive_insoluble;
    }
    doc["primes"] = pr;
    Json pl = Json::array();
    for (const auto& c : places) {
        pl.push_back(real_place_to_json(c));
        all = all && c.ok;
    }
    doc["real_places"] = pl;
    doc["all_certified"] = all;
    doc["definitive_insoluble"] = insoluble;
    return doc;
}

Json wapprox_report(const Json& instance_doc, const WitnessCertificate& cert,
                    const ArtifactMeta& meta) {
    Json doc;
    doc["type"] = "wapprox-report";
    doc["meta"] = meta_to_json(meta);
    doc["instance"] = instance_doc;
    doc["witness"] = witness_to_json(cert);
    return doc;
}

}  // namespace nfc
