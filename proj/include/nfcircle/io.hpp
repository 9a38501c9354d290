#pragma once

#include <json.hpp>

#include "nfcircle/fixtures.hpp"
#include "nfcircle/hl.hpp"
#include "nfcircle/local.hpp"

namespace nfc {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "nfcircle 0.1.0";

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);
Int int_from_string(const std::string& s);

/// Field document keys: degree, mult_table (m x m array of m-vectors of
/// "p/q" strings), signature [n1, n2], and at least one of min_poly
/// (integer strings, constant first, monic) or embedding_values
/// ((n1+n2) x m rows, [re, im] pairs). Optional label, basis_labels.
Json field_to_json(const FieldSpec& k);
std::shared_ptr<const FieldSpec> field_from_json(const Json& doc);

/// Extension document keys: degree, mult_table (n x n array of n-vectors of
/// base-field coordinate arrays), optional label.
Json extension_to_json(const ExtensionSpec& K);
std::shared_ptr<const ExtensionSpec> extension_from_json(const Json& doc,
                                                         std::shared_ptr<const FieldSpec> k);

Json ideal_to_json(const IdealSpec& a);
IdealSpec ideal_from_json(const Json& doc, const FieldSpec& k);

/// Instance document: either {"fixture": name} or inline
/// {field, extension, a, b, modulus, residues, targets, eta, rho?, center?,
/// label?}. `field`/`extension` may instead be given as `field_file` /
/// `extension_file` paths; inline_instance_files() replaces the paths by the
/// file contents.
Json instance_to_json(const EquationInstance& inst);
EquationInstance instance_from_json(const Json& doc);
void inline_instance_files(Json& doc, const std::string& base_dir);

/// Fully-materialized run configuration. Every field below appears in
/// `resolved`; the digest is the FNV-1a hash of its canonical dump.
struct ExperimentConfig {
    Json instance;
    std::vector<double> P_schedule{8, 12, 16};
    double theta = 0.4;
    long prime_cutoff = 50;
    long gamma_cutoff = 64;
    double density_tol = 1e-3;
    unsigned j_cap = 0;
    uint64_t samples = 2'000'000ULL;
    std::string method = "slab";
    double beta_cutoff = 8.0;
    std::size_t arc_samples = 1000;
    uint64_t seed = 42;
    unsigned jobs = 1;
    uint64_t budget_points = 2'000'000'000ULL;
    std::size_t witness_cap = 16;

    Json resolved;
    std::string digest;
};

/// Validates the raw document, inlines field/extension files (relative to
/// base_dir), materializes every default, and computes the digest. Unknown
/// keys are a schema error.
ExperimentConfig resolve_config(Json raw, const std::string& base_dir = ".");

/// Meta block embedded in every artifact. In deterministic mode volatile
/// timings are zeroed so reruns are byte-identical.
struct ArtifactMeta {
    std::string tool_version = kToolVersion;
    std::string config_digest;
    double wall_clock_ms = 0;
    uint64_t budget_points = 0;
    uint64_t budget_used = 0;
    bool deterministic = false;
};

Json meta_to_json(const ArtifactMeta& meta);
/// "# key: value" comment lines prepended to CSV artifacts.
std::string meta_csv_comment(const ArtifactMeta& meta);

Json witness_to_json(const WitnessCertificate& cert);
WitnessCertificate witness_from_json(const Json& doc);

Json hensel_to_json(const LocalCertificate& cert);
LocalCertificate hensel_from_json(const Json& doc);

Json real_place_to_json(const RealPlaceCertificate& cert);
RealPlaceCertificate real_place_from_json(const Json& doc);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);

}  // namespace nfc
