#pragma once

#include "nfcircle/io.hpp"

namespace nfc {

/// CSV artifacts carry the meta block as leading "# key: value" lines; data
/// rows use 17-significant-digit doubles. Deterministic mode zeroes elapsed
/// times so golden runs are byte-identical.
std::string count_report_csv(const CountReport& report, const ArtifactMeta& meta);

std::string arcs_csv(const std::vector<ArcSampleRow>& rows, const ArtifactMeta& meta);

std::string ratio_csv(const std::vector<CountRow>& counts,
                      const std::vector<PredictionValue>& predictions,
                      const ArtifactMeta& meta);

Json series_to_json(const SingularSeriesEstimate& series);
Json integral_to_json(const SingularIntegralEstimate& integral);

/// Prediction report: series{value, per_prime, dyadic}, integral{value,
/// stderr, method, seed}, prediction_at{P: value}, ratio rows.
Json predict_report(const SingularSeriesEstimate& series, const SingularIntegralEstimate& integral,
                    const std::vector<CountRow>& counts,
                    const std::vector<PredictionValue>& predictions, const ArtifactMeta& meta);

Json local_report(const Json& instance_doc, const std::vector<LocalCertificate>& primes,
                  const std::vector<RealPlaceCertificate>& places, const ArtifactMeta& meta);

Json wapprox_report(const Json& instance_doc, const WitnessCertificate& cert,
                    const ArtifactMeta& meta);

}  // namespace nfc
