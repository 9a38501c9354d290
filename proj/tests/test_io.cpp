#include <doctest.h>

#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <filesystem>

#include "nfcircle/io.hpp"
#include "nfcircle/lattice.hpp"
#include "nfcircle/report.hpp"

using namespace nfc;

namespace {

MPoly<Rat> sqrt2_poly() {
    MPoly<Rat> f(1);
    f.add_term({2}, Rat(1));
    f.add_term({0}, Rat(-2));
    return f;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("nfcircle-io-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("rational and integer strings") {
    CHECK(rat_to_string(Rat(3, 4)) == "3/4");
    CHECK(rat_to_string(Rat(5)) == "5");
    CHECK(rat_to_string(Rat(0)) == "0");
    Rat neg(-1, 2);
    CHECK(rat_to_string(neg) == "-1/2");

    CHECK(rat_from_string("10/4") == Rat(5, 2));
    CHECK(rat_from_string("-7/3") == -Rat(7, 3));
    CHECK(rat_from_string("0") == Rat(0));
    CHECK_THROWS_AS(rat_from_string("1/0"), SchemaError);
    CHECK_THROWS_AS(rat_from_string("abc"), SchemaError);

    CHECK(int_from_string("123456789012345678901234567890").get_str() ==
          "123456789012345678901234567890");
    CHECK(int_from_string("-17") == -17);
    CHECK_THROWS_AS(int_from_string("12x"), SchemaError);
    CHECK_THROWS_AS(int_from_string(""), SchemaError);
}

TEST_CASE("field documents round trip") {
    for (auto maker : {field_Q, field_Qsqrt2, field_Qi, field_Qcbrt2}) {
        auto k = maker();
        auto k2 = field_from_json(field_to_json(*k));
        REQUIRE(k2->m == k->m);
        CHECK(k2->label == k->label);
        for (std::size_t i = 0; i < k->m; ++i)
            for (std::size_t j = 0; j < k->m; ++j)
                for (std::size_t l = 0; l < k->m; ++l)
                    CHECK(k2->t(i, j, l) == k->t(i, j, l));
        for (std::size_t r = 0; r < k->places(); ++r)
            for (std::size_t c = 0; c < k->m; ++c)
                CHECK(std::abs(k2->sigma(r, c) - k->sigma(r, c)) < 1e-12);
    }
}

TEST_CASE("field documents from a minimal polynomial") {
    auto ref = field_Qcbrt2();
    Json doc = field_to_json(*ref);
    doc.erase("embedding_values");
    doc["min_poly"] = Json::array({"-2", "0", "0", "1"});
    auto k = field_from_json(doc);
    for (std::size_t r = 0; r < ref->places(); ++r)
        for (std::size_t c = 0; c < ref->m; ++c)
            CHECK(std::abs(k->sigma(r, c) - ref->sigma(r, c)) < 1e-9);

    doc["signature"] = Json::array({3, 0});
    CHECK_THROWS_AS(field_from_json(doc), SchemaError);
}

TEST_CASE("tampered multiplication tables are rejected") {
    Json doc = field_to_json(*field_Qi());
    doc["mult_table"][1][1] = Json::array({"1", "0"});
    CHECK_THROWS_AS(field_from_json(doc), SchemaError);

    Json missing = field_to_json(*field_Q());
    missing.erase("mult_table");
    CHECK_THROWS_AS(field_from_json(missing), SchemaError);
}

TEST_CASE("instance documents round trip") {
    EquationInstance qi = builtin_fixture("qi");
    Json doc = instance_to_json(qi);
    EquationInstance back = instance_from_json(doc);
    CHECK(back.label == qi.label);
    CHECK(back.eta == qi.eta);
    CHECK(back.box.rho == qi.box.rho);
    CHECK(back.targets == qi.targets);
    CHECK(count_solutions(back, 8, {}).count == 74);

    EquationInstance wa = builtin_fixture("wapprox-qi");
    EquationInstance wa2 = instance_from_json(instance_to_json(wa));
    CHECK(wa2.modulus.norm == wa.modulus.norm);
    REQUIRE(wa2.residues.size() == wa.residues.size());
    for (std::size_t s = 0; s < wa.residues.size(); ++s)
        CHECK(wa2.residues[s] == wa.residues[s]);
}

TEST_CASE("fixture sugar") {
    EquationInstance inst = instance_from_json(Json{{"fixture", "qi"}});
    CHECK(inst.label == "qi");
    CHECK_THROWS_AS(instance_from_json(Json{{"fixture", "no-such-fixture"}}), SchemaError);
    CHECK_THROWS_AS(instance_from_json(Json{{"fixture", "qi"}, {"eta", 0.5}}), SchemaError);
}

TEST_CASE("config validation and defaults") {
    ExperimentConfig cfg = resolve_config(Json{{"fixture", "qi"}});
    CHECK(cfg.P_schedule == std::vector<double>{8, 12, 16});
    CHECK(cfg.theta == 0.4);
    CHECK(cfg.method == "slab");
    CHECK(cfg.samples == 2'000'000ULL);
    CHECK(cfg.seed == 42);
    CHECK(cfg.jobs == 1);
    CHECK(cfg.resolved.contains("witness_cap"));

    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"instance", Json{{"fixture", "qi"}}}}),
                    SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"colour", 3}}), SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"theta", 0.4}}), SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"theta", 1.5}}), SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"theta", 0.0}}), SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"method", "fft"}}), SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"P", Json::array()}}), SchemaError);
    CHECK_THROWS_AS(resolve_config(Json{{"fixture", "qi"}, {"P", -3}}), SchemaError);

    ExperimentConfig scalar = resolve_config(Json{{"fixture", "qi"}, {"P", 12}});
    ExperimentConfig arr = resolve_config(Json{{"fixture", "qi"}, {"P", Json::array({12})}});
    CHECK(scalar.P_schedule == arr.P_schedule);

    CHECK(resolve_config(Json{{"fixture", "qi"}, {"jobs", 0}}).jobs == 1);
}

TEST_CASE("config digests") {
    Json raw{{"fixture", "qi"}, {"seed", 7}};
    ExperimentConfig a = resolve_config(raw);
    ExperimentConfig b = resolve_config(raw);
    CHECK(a.digest == b.digest);
    CHECK(a.digest.size() == 16);
    for (char c : a.digest) CHECK(std::isxdigit(static_cast<unsigned char>(c)));

    raw["seed"] = 8;
    CHECK(resolve_config(raw).digest != a.digest);
}

TEST_CASE("meta blocks") {
    ArtifactMeta meta;
    meta.config_digest = "deadbeefdeadbeef";
    meta.wall_clock_ms = 3.25;
    meta.budget_points = 100;
    meta.budget_used = 42;

    CHECK(meta_to_json(meta)["wall_clock_ms"] == 3.25);
    meta.deterministic = true;
    CHECK(meta_to_json(meta)["wall_clock_ms"] == 0.0);

    std::string comment = meta_csv_comment(meta);
    CHECK(comment.find(kToolVersion) != std::string::npos);
    CHECK(comment.find("deadbeefdeadbeef") != std::string::npos);
    CHECK(comment.find('\r') == std::string::npos);
    std::size_t lines = 0, at = 0;
    while ((at = comment.find('\n', at)) != std::string::npos) {
        ++lines;
        ++at;
    }
    CHECK(lines == 5);
    CHECK(comment.rfind("# tool_version:", 0) == 0);
}

TEST_CASE("witness documents round trip and replay") {
    EquationInstance wa = builtin_fixture("wapprox-qi");
    WitnessCertificate cert = weak_approx_search(wa, {8, 16, 32}, {});
    REQUIRE(cert.found);

    Json doc = witness_to_json(cert);
    CHECK(doc["type"] == "wapprox");
    WitnessCertificate back = witness_from_json(doc);
    CHECK(back.found == cert.found);
    CHECK(back.P == cert.P);
    CHECK(back.slot_coords == cert.slot_coords);
    CHECK(back.P_tried == cert.P_tried);
    REQUIRE(back.distances.size() == cert.distances.size());
    for (std::size_t i = 0; i < cert.distances.size(); ++i) {
        CHECK(back.distances[i].slot == cert.distances[i].slot);
        CHECK(back.distances[i].distance == cert.distances[i].distance);
    }
    CHECK(replay_witness(wa, back));
}

TEST_CASE("hensel documents round trip and replay") {
    MPoly<Rat> f = sqrt2_poly();
    LocalCertificate cert = hensel_certify_poly(f, Int(7), 3);
    REQUIRE(cert.found);

    Json doc = hensel_to_json(cert);
    CHECK(doc["type"] == "hensel");
    LocalCertificate back = hensel_from_json(doc);
    CHECK(back.p == cert.p);
    CHECK(back.j == cert.j);
    CHECK(back.witness == cert.witness);
    CHECK(back.deriv_index == cert.deriv_index);
    CHECK(back.deriv_val == cert.deriv_val);
    CHECK(back.examined == cert.examined);
    CHECK(replay_hensel(back, f));
}

TEST_CASE("real place documents round trip") {
    EquationInstance qi = builtin_fixture("qi");
    RealPlaceCertificate cert = real_place_certify(qi)[0];
    Json doc = real_place_to_json(cert);
    CHECK(doc["type"] == "real-place");
    RealPlaceCertificate back = real_place_from_json(doc);
    CHECK(back.place == cert.place);
    CHECK(back.value == cert.value);
    CHECK(back.grad_norm == cert.grad_norm);
    CHECK(back.tol == cert.tol);
    CHECK(back.margin == cert.margin);
    CHECK(back.ok == cert.ok);
}

TEST_CASE("count report csv") {
    CountReport report;
    report.rows.push_back({8, Int(74), 3.5, false});
    report.rows.push_back({12, Int(220), 7.25, true});
    ArtifactMeta meta;
    meta.config_digest = "0123456789abcdef";

    std::string live = count_report_csv(report, meta);
    CHECK(live.find("P,count,elapsed_ms,budget_hit\n") != std::string::npos);
    CHECK(live.find("8,74,3.5,0\n") != std::string::npos);
    CHECK(live.find("12,220,7.25,1\n") != std::string::npos);

    meta.deterministic = true;
    std::string det = count_report_csv(report, meta);
    CHECK(det.find("8,74,0,0\n") != std::string::npos);
    CHECK(det.find("3.5") == std::string::npos);
}

TEST_CASE("ratio csv handles a zero prediction") {
    std::vector<CountRow> counts{{8, Int(5), 0, false}};
    std::vector<PredictionValue> preds(1);
    preds[0].P = 8;
    preds[0].value = 0;
    ArtifactMeta meta;
    std::string csv = ratio_csv(counts, preds, meta);
    CHECK(csv.find("8,5,0,0,0\n") != std::string::npos);

    CHECK_THROWS_AS(ratio_csv(counts, {}, meta), InternalError);
}

TEST_CASE("predict report shape") {
    EquationInstance qi = builtin_fixture("qi");
    SingularSeriesEstimate series = singular_series(qi, Int(2), 1);
    SingularIntegralEstimate integral = singular_integral(qi, "slab", 20'000, 1, 1);
    std::vector<CountRow> counts{{8, Int(74), 0, false}};
    std::vector<PredictionValue> preds{prediction(qi, series, integral, 8)};
    Json doc = predict_report(series, integral, counts, preds, ArtifactMeta{});

    CHECK(doc.contains("meta"));
    CHECK(doc["series"]["value"] == series.euler_product);
    CHECK(doc["series"]["per_prime"].size() == 1);
    CHECK(doc["integral"]["method"] == "slab");
    CHECK(doc["integral"]["seed"] == 1);
    CHECK(doc["prediction_at"].contains("8"));
    REQUIRE(doc["ratio"].size() == 1);
    CHECK(doc["ratio"][0]["count"] == "74");
}

TEST_CASE("ideal documents") {
    auto k = field_Qi();
    CHECK(ideal_from_json(Json("whole"), *k).norm == 1);
    CHECK_THROWS_AS(ideal_from_json(Json("everything"), *k), SchemaError);
    CHECK_THROWS_AS(ideal_from_json(Json(42), *k), SchemaError);
    CHECK_THROWS_AS(ideal_from_json(Json::object(), *k), SchemaError);

    IdealSpec onePlusI = ideal_from_json(Json{{"generator", Json::array({"1", "1"})}}, *k);
    CHECK(onePlusI.norm == 2);
    CHECK_THROWS_AS(ideal_from_json(Json{{"generator", Json::array({"1/2", "0"})}}, *k),
                    SchemaError);

    IdealSpec three = principal_ideal(fe_from_int(*k, Int(3)));
    IdealSpec back = ideal_from_json(ideal_to_json(three), *k);
    CHECK(back.norm == three.norm);
    CHECK(ideal_contains(back, fe_from_int(*k, Int(3))));
    CHECK_FALSE(ideal_contains(back, fe_from_int(*k, Int(1))));
}

TEST_CASE("instance files are inlined") {
    TempDir dir;
    EquationInstance qi = builtin_fixture("qi");
    Json doc = instance_to_json(qi);
    write_text_file(dir.file("field.json"), doc["field"].dump());
    write_text_file(dir.file("ext.json"), doc["extension"].dump());
    doc.erase("field");
    doc.erase("extension");
    doc["field_file"] = "field.json";
    doc["extension_file"] = "ext.json";

    inline_instance_files(doc, dir.path.string());
    CHECK(doc.contains("field"));
    CHECK_FALSE(doc.contains("field_file"));
    EquationInstance back = instance_from_json(doc);
    CHECK(count_solutions(back, 8, {}).count == 74);
}

TEST_CASE("file errors") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(read_json_file(dir.file("missing.json")),
                         doctest::Contains("cannot read file"), SchemaError);
    write_text_file(dir.file("broken.json"), "{ nope");
    CHECK_THROWS_WITH_AS(read_json_file(dir.file("broken.json")),
                         doctest::Contains("malformed JSON"), SchemaError);
    CHECK(read_text_file(dir.file("broken.json")) == "{ nope");
}

}  // TEST_SUITE
