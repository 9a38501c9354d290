#include "nfcircle/io.hpp"

#include <fstream>
#include <sstream>

#include "nfcircle/util.hpp"

namespace nfc {

namespace {

const Json& need(const Json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw SchemaError(std::string("missing key '") + key + "'");
    return *it;
}

double need_double(const Json& doc, const char* key) {
    const Json& v = need(doc, key);
    if (!v.is_number()) throw SchemaError(std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

std::string need_string(const Json& doc, const char* key) {
    const Json& v = need(doc, key);
    if (!v.is_string()) throw SchemaError(std::string("key '") + key + "' must be a string");
    return v.get<std::string>();
}

std::size_t need_size(const Json& doc, const char* key) {
    const Json& v = need(doc, key);
    if (!v.is_number_unsigned()) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw SchemaError(std::string("key '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::vector<Rat> rat_vector(const Json& arr, std::size_t want, const char* what) {
    if (!arr.is_array() || arr.size() != want)
        throw SchemaError(std::string(what) + ": expected an array of " + std::to_string(want) +
                          " rationals");
    std::vector<Rat> out;
    out.reserve(want);
    for (const auto& e : arr) {
        if (!e.is_string()) throw SchemaError(std::string(what) + ": rationals are \"p/q\" strings");
        out.push_back(rat_from_string(e.get<std::string>()));
    }
    return out;
}

std::vector<Int> int_vector(const Json& arr, std::size_t want, const char* what) {
    if (!arr.is_array() || arr.size() != want)
        throw SchemaError(std::string(what) + ": expected an array of " + std::to_string(want) +
                          " integers");
    std::vector<Int> out;
    out.reserve(want);
    for (const auto& e : arr) {
        if (!e.is_string()) throw SchemaError(std::string(what) + ": integers are decimal strings");
        out.push_back(int_from_string(e.get<std::string>()));
    }
    return out;
}

Json rat_vector_json(const std::vector<Rat>& v) {
    Json arr = Json::array();
    for (const auto& r : v) arr.push_back(rat_to_string(r));
    return arr;
}

Json int_vector_json(const std::vector<Int>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(x.get_str());
    return arr;
}

std::string join_path(const std::string& base, const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    if (base.empty() || base == ".") return path;
    return base + "/" + path;
}

}  // namespace

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    try {
        Rat r(s);
        if (r.get_den() == 0) throw SchemaError("rational with zero denominator: " + s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw SchemaError("malformed rational: '" + s + "'");
    }
}

Int int_from_string(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw SchemaError("malformed integer: '" + s + "'");
    }
}

Json field_to_json(const FieldSpec& k) {
    Json doc;
    doc["degree"] = k.m;
    doc["signature"] = Json::array({k.n1, k.n2});
    Json table = Json::array();
    for (std::size_t i = 0; i < k.m; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < k.m; ++j) {
            Json cell = Json::array();
            for (std::size_t l = 0; l < k.m; ++l) cell.push_back(rat_to_string(k.t(i, j, l)));
            row.push_back(cell);
        }
        table.push_back(row);
    }
    doc["mult_table"] = table;
    Json emb = Json::array();
    for (std::size_t p = 0; p < k.places(); ++p) {
        Json row = Json::array();
        for (std::size_t j = 0; j < k.m; ++j) {
            auto v = k.sigma(p, j);
            row.push_back(Json::array({v.real(), v.imag()}));
        }
        emb.push_back(row);
    }
    doc["embedding_values"] = emb;
    if (!k.label.empty()) doc["label"] = k.label;
    if (!k.basis_labels.empty()) doc["basis_labels"] = k.basis_labels;
    return doc;
}

std::shared_ptr<const FieldSpec> field_from_json(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("field document must be an object");
    std::size_t m = need_size(doc, "degree");
    if (m == 0) throw SchemaError("field degree must be positive");
    const Json& sig = need(doc, "signature");
    if (!sig.is_array() || sig.size() != 2)
        throw SchemaError("signature must be [n1, n2]");
    std::size_t n1 = sig[0].get<std::size_t>(), n2 = sig[1].get<std::size_t>();

    const Json& table = need(doc, "mult_table");
    if (!table.is_array() || table.size() != m) throw SchemaError("mult_table must have m rows");
    std::vector<Rat> mult(m * m * m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!table[i].is_array() || table[i].size() != m)
            throw SchemaError("mult_table rows must have m entries");
        for (std::size_t j = 0; j < m; ++j) {
            auto cell = rat_vector(table[i][j], m, "mult_table entry");
            for (std::size_t l = 0; l < m; ++l) mult[(i * m + j) * m + l] = cell[l];
        }
    }

    std::string label = doc.contains("label") ? need_string(doc, "label") : "";
    std::vector<std::string> basis_labels;
    if (doc.contains("basis_labels")) {
        for (const auto& e : doc["basis_labels"]) basis_labels.push_back(e.get<std::string>());
    }

    if (doc.contains("min_poly")) {
        auto coeffs = int_vector(doc["min_poly"], m + 1, "min_poly");
        FieldSpec f = make_power_basis_field(coeffs, label);
        if (f.n1 != n1 || f.n2 != n2) throw SchemaError("signature disagrees with min_poly");
        if (f.mult != mult) throw SchemaError("mult_table disagrees with min_poly");
        if (!basis_labels.empty()) {
            if (basis_labels.size() != m) throw SchemaError("need m basis labels");
            f.basis_labels = basis_labels;
        }
        return std::make_shared<const FieldSpec>(std::move(f));
    }

    if (!doc.contains("embedding_values"))
        throw SchemaError("field document needs min_poly or embedding_values");
    const Json& emb_doc = doc["embedding_values"];
    if (!emb_doc.is_array() || emb_doc.size() != n1 + n2)
        throw SchemaError("embedding_values must have n1+n2 rows");
    std::vector<std::complex<double>> emb;
    for (const auto& row : emb_doc) {
        if (!row.is_array() || row.size() != m)
            throw SchemaError("embedding_values rows must have m entries");
        for (const auto& e : row) {
            if (e.is_number()) {
                emb.emplace_back(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                emb.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else {
                throw SchemaError("embedding values are numbers or [re, im] pairs");
            }
        }
    }
    return std::make_shared<const FieldSpec>(
        make_field_spec(m, std::move(mult), n1, n2, std::move(emb), label, basis_labels));
}

Json extension_to_json(const ExtensionSpec& K) {
    Json doc;
    doc["degree"] = K.n;
    Json table = Json::array();
    for (std::size_t i = 0; i < K.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < K.n; ++j) {
            Json cell = Json::array();
            for (std::size_t l = 0; l < K.n; ++l) cell.push_back(rat_vector_json(K.T(i, j, l).c));
            row.push_back(cell);
        }
        table.push_back(row);
    }
    doc["mult_table"] = table;
    if (!K.label.empty()) doc["label"] = K.label;
    return doc;
}

std::shared_ptr<const ExtensionSpec> extension_from_json(const Json& doc,
                                                         std::shared_ptr<const FieldSpec> k) {
    if (!doc.is_object()) throw SchemaError("extension document must be an object");
    std::size_t n = need_size(doc, "degree");
    if (n == 0) throw SchemaError("extension degree must be positive");
    const Json& table = need(doc, "mult_table");
    if (!table.is_array() || table.size() != n) throw SchemaError("mult_table must have n rows");
    std::vector<FieldElement> flat(n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!table[i].is_array() || table[i].size() != n)
            throw SchemaError("mult_table rows must have n entries");
        for (std::size_t j = 0; j < n; ++j) {
            const Json& cell = table[i][j];
            if (!cell.is_array() || cell.size() != n)
                throw SchemaError("mult_table entries must have n coordinates");
            for (std::size_t l = 0; l < n; ++l)
                flat[(i * n + j) * n + l] =
                    FieldElement(*k, rat_vector(cell[l], k->m, "extension coefficient"));
        }
    }
    std::string label = doc.contains("label") ? need_string(doc, "label") : "";
    return std::make_shared<const ExtensionSpec>(
        make_extension_spec(*k, n, std::move(flat), label));
}

Json ideal_to_json(const IdealSpec& a) {
    Json doc;
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.basis.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.basis.cols; ++j) row.push_back(a.basis.at(i, j).get_str());
        rows.push_back(row);
    }
    doc["basis_rows"] = rows;
    doc["norm"] = a.norm.get_str();
    return doc;
}

IdealSpec ideal_from_json(const Json& doc, const FieldSpec& k) {
    if (doc.is_string()) {
        if (doc.get<std::string>() == "whole") return whole_ring(k);
        throw SchemaError("modulus string must be \"whole\"");
    }
    if (!doc.is_object()) throw SchemaError("modulus must be \"whole\" or an object");
    if (doc.contains("generator")) {
        auto coords = rat_vector(doc["generator"], k.m, "modulus generator");
        FieldElement g(k, coords);
        if (!fe_is_integral(g)) throw SchemaError("modulus generator must be integral");
        return principal_ideal(g);
    }
    if (doc.contains("basis_rows")) {
        const Json& rows = doc["basis_rows"];
        if (!rows.is_array() || rows.size() != k.m)
            throw SchemaError("modulus basis needs m rows");
        ZMat b(k.m, k.m);
        for (std::size_t i = 0; i < k.m; ++i) {
            auto row = int_vector(rows[i], k.m, "modulus basis row");
            for (std::size_t j = 0; j < k.m; ++j) b.at(i, j) = row[j];
        }
        return ideal_from_basis_rows(k, b);
    }
    throw SchemaError("modulus needs generator or basis_rows");
}

Json instance_to_json(const EquationInstance& inst) {
    Json doc;
    doc["field"] = field_to_json(*inst.k);
    doc["extension"] = extension_to_json(*inst.K);
    doc["a"] = rat_vector_json(inst.a.c);
    doc["b"] = rat_vector_json(inst.b.c);
    doc["modulus"] = ideal_to_json(inst.modulus);
    Json res = Json::array();
    for (const auto& r : inst.residues) res.push_back(int_vector_json(r));
    doc["residues"] = res;
    doc["targets"] = inst.targets;
    doc["eta"] = inst.eta;
    doc["rho"] = inst.box.rho;
    if (inst.box.center != inst.targets) doc["center"] = inst.box.center;
    if (!inst.label.empty()) doc["label"] = inst.label;
    return doc;
}

EquationInstance instance_from_json(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("instance document must be an object");
    if (doc.contains("fixture")) {
        if (doc.size() != 1) throw SchemaError("fixture reference takes no other keys");
        return builtin_fixture(need_string(doc, "fixture"));
    }
    auto k = field_from_json(need(doc, "field"));
    auto K = extension_from_json(need(doc, "extension"), k);
    const std::size_t m = k->m, slots = 2 * K->n + 1;
    FieldElement a(*k, rat_vector(need(doc, "a"), m, "coefficient a"));
    FieldElement b(*k, rat_vector(need(doc, "b"), m, "coefficient b"));
    IdealSpec modulus = ideal_from_json(need(doc, "modulus"), *k);
    const Json& res_doc = need(doc, "residues");
    if (!res_doc.is_array() || res_doc.size() != slots)
        throw SchemaError("residues must have 2n+1 slots");
    std::vector<std::vector<Int>> residues;
    for (const auto& r : res_doc) residues.push_back(int_vector(r, m, "residue"));
    const Json& tgt = need(doc, "targets");
    if (!tgt.is_array() || tgt.size() != slots * m)
        throw SchemaError("targets must have (2n+1)m entries");
    std::vector<double> targets;
    for (const auto& t : tgt) {
        if (!t.is_number()) throw SchemaError("targets are numbers");
        targets.push_back(t.get<double>());
    }
    double eta = need_double(doc, "eta");
    double rho = doc.contains("rho") ? need_double(doc, "rho") : -1.0;
    std::vector<double> center;
    if (doc.contains("center")) {
        for (const auto& c : doc["center"]) center.push_back(c.get<double>());
    }
    std::string label = doc.contains("label") ? need_string(doc, "label") : "";
    return make_instance(k, K, a, b, modulus, std::move(residues), std::move(targets), eta, rho,
                         std::move(center), label);
}

void inline_instance_files(Json& doc, const std::string& base_dir) {
    if (!doc.is_object()) return;
    if (doc.contains("field_file")) {
        doc["field"] = read_json_file(join_path(base_dir, need_string(doc, "field_file")));
        doc.erase("field_file");
    }
    if (doc.contains("extension_file")) {
        doc["extension"] = read_json_file(join_path(base_dir, need_string(doc, "extension_file")));
        doc.erase("extension_file");
    }
}

ExperimentConfig resolve_config(Json raw, const std::string& base_dir) {
    if (!raw.is_object()) throw SchemaError("config must be a JSON object");
    static const char* allowed[] = {"instance",  "fixture",      "P",       "theta",
                                    "prime_cutoff", "gamma_cutoff", "density_tol", "j_cap",
                                    "samples",   "method",       "beta_cutoff", "arc_samples",
                                    "seed",      "jobs",         "budget_points", "witness_cap"};
    for (auto it = raw.begin(); it != raw.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw SchemaError("unknown config key '" + it.key() + "'");
    }
    if (raw.contains("fixture")) {
        if (raw.contains("instance")) throw SchemaError("give fixture or instance, not both");
        raw["instance"] = Json{{"fixture", raw["fixture"]}};
        raw.erase("fixture");
    }
    if (!raw.contains("instance")) throw SchemaError("config needs an instance");

    ExperimentConfig cfg;
    cfg.instance = raw["instance"];
    inline_instance_files(cfg.instance, base_dir);
    instance_from_json(cfg.instance);  // validate now so artifacts are never partial

    if (raw.contains("P")) {
        const Json& p = raw["P"];
        cfg.P_schedule.clear();
        if (p.is_number()) {
            cfg.P_schedule.push_back(p.get<double>());
        } else if (p.is_array() && !p.empty()) {
            for (const auto& e : p) {
                if (!e.is_number()) throw SchemaError("P entries must be numbers");
                cfg.P_schedule.push_back(e.get<double>());
            }
        } else {
            throw SchemaError("P must be a number or a non-empty array");
        }
        for (double v : cfg.P_schedule)
            if (!(v > 0)) throw SchemaError("P values must be positive");
    }
    if (raw.contains("theta")) cfg.theta = need_double(raw, "theta");
    if (!(cfg.theta > 0) || !(cfg.theta < 1)) throw SchemaError("theta must lie in (0,1)");
    if (raw.contains("prime_cutoff")) cfg.prime_cutoff = static_cast<long>(need_size(raw, "prime_cutoff"));
    if (raw.contains("gamma_cutoff")) cfg.gamma_cutoff = static_cast<long>(need_size(raw, "gamma_cutoff"));
    if (raw.contains("density_tol")) cfg.density_tol = need_double(raw, "density_tol");
    if (raw.contains("j_cap")) cfg.j_cap = static_cast<unsigned>(need_size(raw, "j_cap"));
    if (raw.contains("samples")) cfg.samples = need_size(raw, "samples");
    if (raw.contains("method")) {
        cfg.method = need_string(raw, "method");
        if (cfg.method != "slab" && cfg.method != "oscillatory")
            throw SchemaError("method must be slab or oscillatory");
    }
    if (raw.contains("beta_cutoff")) cfg.beta_cutoff = need_double(raw, "beta_cutoff");
    if (raw.contains("arc_samples")) cfg.arc_samples = need_size(raw, "arc_samples");
    if (raw.contains("seed")) cfg.seed = need_size(raw, "seed");
    if (raw.contains("jobs")) cfg.jobs = static_cast<unsigned>(need_size(raw, "jobs"));
    if (cfg.jobs == 0) cfg.jobs = 1;
    if (raw.contains("budget_points")) cfg.budget_points = need_size(raw, "budget_points");
    if (raw.contains("witness_cap")) cfg.witness_cap = need_size(raw, "witness_cap");

    Json r;
    r["instance"] = cfg.instance;
    r["P"] = cfg.P_schedule;
    r["theta"] = cfg.theta;
    r["prime_cutoff"] = cfg.prime_cutoff;
    r["gamma_cutoff"] = cfg.gamma_cutoff;
    r["density_tol"] = cfg.density_tol;
    r["j_cap"] = cfg.j_cap;
    r["samples"] = cfg.samples;
    r["method"] = cfg.method;
    r["beta_cutoff"] = cfg.beta_cutoff;
    r["arc_samples"] = cfg.arc_samples;
    r["seed"] = cfg.seed;
    r["jobs"] = cfg.jobs;
    r["budget_points"] = cfg.budget_points;
    r["witness_cap"] = cfg.witness_cap;
    cfg.resolved = std::move(r);
    cfg.digest = hex64(fnv1a64(cfg.resolved.dump()));
    return cfg;
}

Json meta_to_json(const ArtifactMeta& meta) {
    Json doc;
    doc["tool_version"] = meta.tool_version;
    doc["config_digest"] = meta.config_digest;
    doc["wall_clock_ms"] = meta.deterministic ? 0.0 : meta.wall_clock_ms;
    doc["budget_points"] = meta.budget_points;
    doc["budget_used"] = meta.budget_used;
    return doc;
}

std::string meta_csv_comment(const ArtifactMeta& meta) {
    std::ostringstream os;
    os << "# tool_version: " << meta.tool_version << "\n";
    os << "# config_digest: " << meta.config_digest << "\n";
    os << "# wall_clock_ms: " << fmt_double(meta.deterministic ? 0.0 : meta.wall_clock_ms) << "\n";
    os << "# budget_points: " << meta.budget_points << "\n";
    os << "# budget_used: " << meta.budget_used << "\n";
    return os.str();
}

Json witness_to_json(const WitnessCertificate& cert) {
    Json doc;
    doc["type"] = "wapprox";
    doc["found"] = cert.found;
    doc["P"] = cert.P;
    Json coords = Json::array();
    for (const auto& s : cert.slot_coords) coords.push_back(int_vector_json(s));
    doc["slot_coords"] = coords;
    doc["equation_exact"] = cert.equation_exact;
    doc["congruence_ok"] = cert.congruence_ok;
    Json dist = Json::array();
    for (const auto& d : cert.distances)
        dist.push_back(Json{{"slot", d.slot},
                            {"place", d.place},
                            {"distance", d.distance},
                            {"bound", d.bound}});
    doc["distances"] = dist;
    doc["P_tried"] = cert.P_tried;
    return doc;
}

WitnessCertificate witness_from_json(const Json& doc) {
    WitnessCertificate cert;
    cert.found = need(doc, "found").get<bool>();
    cert.P = need_double(doc, "P");
    for (const auto& s : need(doc, "slot_coords")) {
        std::vector<Int> row;
        for (const auto& c : s) row.push_back(int_from_string(c.get<std::string>()));
        cert.slot_coords.push_back(row);
    }
    cert.equation_exact = need(doc, "equation_exact").get<bool>();
    cert.congruence_ok = need(doc, "congruence_ok").get<bool>();
    for (const auto& d : need(doc, "distances")) {
        PlaceDistance pd;
        pd.slot = need_size(d, "slot");
        pd.place = need_size(d, "place");
        pd.distance = need_double(d, "distance");
        pd.bound = need_double(d, "bound");
        cert.distances.push_back(pd);
    }
    if (doc.contains("P_tried"))
        for (const auto& p : doc["P_tried"]) cert.P_tried.push_back(p.get<double>());
    return cert;
}

Json hensel_to_json(const LocalCertificate& cert) {
    Json doc;
    doc["type"] = "hensel";
    doc["p"] = cert.p.get_str();
    doc["found"] = cert.found;
    doc["definitive_insoluble"] = cert.definitive_insoluble;
    doc["j"] = cert.j;
    doc["witness"] = int_vector_json(cert.witness);
    doc["deriv_index"] = cert.deriv_index;
    doc["deriv_val"] = cert.deriv_val;
    doc["residue"] = int_vector_json(cert.residue);
    doc["residue_depth"] = cert.residue_depth;
    doc["search_depth"] = cert.search_depth;
    doc["examined"] = cert.examined;
    doc["note"] = cert.note;
    return doc;
}

LocalCertificate hensel_from_json(const Json& doc) {
    LocalCertificate cert;
    cert.p = int_from_string(need_string(doc, "p"));
    cert.found = need(doc, "found").get<bool>();
    cert.definitive_insoluble = need(doc, "definitive_insoluble").get<bool>();
    cert.j = static_cast<unsigned>(need_size(doc, "j"));
    for (const auto& w : need(doc, "witness"))
        cert.witness.push_back(int_from_string(w.get<std::string>()));
    cert.deriv_index = need_size(doc, "deriv_index");
    cert.deriv_val = static_cast<unsigned>(need_size(doc, "deriv_val"));
    for (const auto& r : need(doc, "residue"))
        cert.residue.push_back(int_from_string(r.get<std::string>()));
    cert.residue_depth = static_cast<unsigned>(need_size(doc, "residue_depth"));
    cert.search_depth = static_cast<unsigned>(need_size(doc, "search_depth"));
    if (doc.contains("examined")) cert.examined = need_size(doc, "examined");
    if (doc.contains("note")) cert.note = need_string(doc, "note");
    return cert;
}

Json real_place_to_json(const RealPlaceCertificate& cert) {
    Json doc;
    doc["type"] = "real-place";
    doc["place"] = cert.place;
    doc["value"] = cert.value;
    doc["grad_norm"] = cert.grad_norm;
    doc["tol"] = cert.tol;
    doc["margin"] = cert.margin;
    doc["ok"] = cert.ok;
    return doc;
}

RealPlaceCertificate real_place_from_json(const Json& doc) {
    RealPlaceCertificate cert;
    cert.place = need_size(doc, "place");
    cert.value = need_double(doc, "value");
    cert.grad_norm = need_double(doc, "grad_norm");
    cert.tol = need_double(doc, "tol");
    cert.margin = need_double(doc, "margin");
    cert.ok = need(doc, "ok").get<bool>();
    return cert;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << content;
    if (!out) throw SchemaError("write failed: " + path);
}

Json read_json_file(const std::string& path) {
    try {
        return Json::parse(read_text_file(path));
    } catch (const Json::parse_error& e) {
        throw SchemaError("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace nfc
