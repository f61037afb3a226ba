#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kuzlab/config.hpp"
#include "kuzlab/dataset.hpp"
#include "kuzlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace kuzlab;
namespace fs = std::filesystem;

// fresh scratch directory per test run
static fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path()
                     / ("kuzlab_io_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

static std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    out.close();
    return p.string();
}

static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// the two-record canonical fixture; checksum frozen from an independent
// implementation of FNV-1a
static const char* kCanonTwo =
    "{\"kappa\":9.53369526135,\"parity\":-1,\"coefficients\":[1,-1.068333551]}\n"
    "{\"kappa\":12.17300832468,\"parity\":-1,\"coefficients\":[1,0.2904]}\n";
static const char* kChecksumTwo = "fnv1a64:efd162417ef9ce0e";

TEST_CASE("fnv1a checksum vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("abc") == 0xe71fa2190541574bULL);
}

TEST_CASE("canonical record emission") {
    MaassFormRecord f;
    f.kappa = 9.53369526135L;
    f.parity = -1;
    f.coefficients = {1.0L, -1.068333551L};
    CHECK(emit_record(f)
          == "{\"kappa\":9.53369526135,\"parity\":-1,"
             "\"coefficients\":[1,-1.068333551]}\n");

    MaassFormRecord g;
    g.kappa = 11.5L;
    g.parity = 1;
    g.coefficients = {1.0L, 0.25L, -0.5L};
    g.alpha = 1.25L;
    CHECK(emit_record(g)
          == "{\"kappa\":11.5,\"parity\":1,"
             "\"coefficients\":[1,0.25,-0.5],\"alpha\":1.25}\n");
    CHECK(fnv1a64(emit_record(g)) == 0xe872dc49accdc795ULL);

    CHECK(fmt15(1.0L) == "1");
    CHECK(fmt15(-0.5L) == "-0.5");
}

TEST_CASE("dataset load, sort, manifest, byte round trip") {
    // header comments, shuffled order, whitespace-rich JSON
    std::string raw =
        "# provenance: test fixture\n"
        "# second header line\n"
        "{\"kappa\": 12.17300832468, \"parity\": -1,"
        " \"coefficients\": [1, 0.2904]}\n"
        "\n"
        "{\"coefficients\": [1, -1.068333551], \"parity\": -1,"
        " \"kappa\": \"9.53369526135\"}\n";
    std::string path = write_file("two.jsonl", raw);

    auto [forms, manifest] = load_dataset(path);
    REQUIRE(forms.size() == 2);
    CHECK(forms[0].kappa == doctest::Approx(9.53369526135).epsilon(1e-14));
    CHECK(forms[1].kappa == doctest::Approx(12.17300832468).epsilon(1e-14));
    CHECK(manifest.form_count == 2);
    CHECK(manifest.kappa_max == doctest::Approx(12.17300832468).epsilon(1e-14));
    CHECK(manifest.coeff_depth == 2);
    CHECK(manifest.checksum == kChecksumTwo);
    CHECK(manifest.source == path);

    // canonical emission matches the frozen bytes, and re-parsing the
    // emission reproduces it exactly
    std::string canon = emit_dataset(forms);
    CHECK(canon == kCanonTwo);
    auto [forms2, manifest2] = parse_dataset(canon, "memory");
    CHECK(emit_dataset(forms2) == canon);
    CHECK(manifest2.checksum == kChecksumTwo);
}

TEST_CASE("string kappa keeps long-double precision") {
    std::string raw =
        "{\"kappa\": \"9.533695261353123456\", \"parity\": 1,"
        " \"coefficients\": [1]}\n";
    auto [forms, manifest] = parse_dataset(raw, "memory");
    REQUIRE(forms.size() == 1);
    CHECK(forms[0].kappa == strtold("9.533695261353123456", nullptr));
}

TEST_CASE("schema and parse errors") {
    auto parse_line = [](const std::string& line) {
        return parse_dataset(line, "memory");
    };

    CHECK_THROWS_AS(parse_line("{\"kappa\":10,\"parity\":0,"
                               "\"coefficients\":[1]}\n"),
                    SchemaError);
    CHECK_THROWS_AS(parse_line("{\"kappa\":10,\"parity\":1,"
                               "\"coefficients\":[2,1]}\n"),
                    SchemaError);
    CHECK_THROWS_AS(parse_line("{\"parity\":1,\"coefficients\":[1]}\n"),
                    SchemaError);
    CHECK_THROWS_AS(parse_line("{\"kappa\":10,\"parity\":1,"
                               "\"coefficients\":[1],\"alpha\":0}\n"),
                    SchemaError);
    CHECK_THROWS_AS(parse_line("{\"kappa\":10,\"parity\":1,"
                               "\"coefficients\":[]}\n"),
                    SchemaError);

    // the missing field is named
    try {
        parse_line("{\"parity\":1,\"coefficients\":[1]}\n");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("kappa") != std::string::npos);
    }

    // malformed JSON carries the 1-based line number
    std::string bad =
        "{\"kappa\":10,\"parity\":1,\"coefficients\":[1]}\n"
        "{not json}\n";
    try {
        parse_dataset(bad, "memory");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("duplicate kappa collapse emits a warning") {
    std::string raw =
        "{\"kappa\":10.0,\"parity\":1,\"coefficients\":[1,0.5]}\n"
        "{\"kappa\":10.0000000004,\"parity\":1,\"coefficients\":[1,0.5,0.2]}\n"
        "{\"kappa\":11.0,\"parity\":-1,\"coefficients\":[1,-0.5]}\n";
    std::vector<std::string> warnings;
    auto [forms, manifest] = parse_dataset(raw, "memory", &warnings);
    CHECK(forms.size() == 2);
    CHECK(manifest.form_count == 2);
    CHECK(warnings.size() == 1);
    CHECK(warnings[0].find("10") != std::string::npos);
    // the deeper record of the colliding pair is kept
    CHECK(forms[0].depth() == 3);
}

TEST_CASE("remote catalog: cache hit, corruption, unknown id") {
    fs::path cache = scratch_dir() / "cache";
    fs::create_directories(cache);

    // the loopback test vector: id pinned to the canonical two-record file
    std::ofstream(cache / "test_fixture_v1.jsonl", std::ios::binary)
        << kCanonTwo;
    std::string got = fetch_remote("test-fixture-v1", cache.string());
    CHECK(slurp(got) == kCanonTwo);

    // corrupted cache entry: same id, different dataset
    std::ofstream(cache / "test_fixture_v1.jsonl", std::ios::binary)
        << "{\"kappa\":5.5,\"parity\":1,\"coefficients\":[1]}\n";
    CHECK_THROWS_AS(fetch_remote("test-fixture-v1", cache.string()),
                    ChecksumMismatch);

    CHECK_THROWS_AS(fetch_remote("no-such-catalog-id", cache.string()),
                    NetworkError);
}

TEST_CASE("config defaults, file, environment") {
    RunConfig def;
    CHECK_NOTHROW(def.validate());
    CHECK(def.worker_count == 1);
    CHECK(def.output_format == "csv");

    std::string path = write_file("run.cfg",
                                  "# comment\n"
                                  "worker_count = 4\n"
                                  "delta=0.15\n"
                                  "output_format = json\n"
                                  "\n"
                                  "modulus_cap = 50000\n");
    RunConfig cfg = load_config(path);
    CHECK(cfg.worker_count == 4);
    CHECK(cfg.delta == doctest::Approx(0.15));
    CHECK(cfg.output_format == "json");
    CHECK(cfg.modulus_cap == 50000);
    CHECK(cfg.abs_tol == def.abs_tol); // untouched keys keep defaults

    CHECK_THROWS_AS(load_config(write_file("bad1.cfg", "no_such_key = 1\n")),
                    SchemaError);
    CHECK_THROWS_AS(load_config(write_file("bad2.cfg", "just some text\n")),
                    ParseError);
    CHECK_THROWS_AS(load_config(write_file("bad3.cfg", "worker_count = zero\n")),
                    ParseError);

    RunConfig bad = def;
    bad.worker_count = 0;
    CHECK_THROWS_AS(bad.validate(), SchemaError);
    bad = def;
    bad.abs_tol = 0;
    CHECK_THROWS_AS(bad.validate(), SchemaError);
    bad = def;
    bad.output_format = "xml";
    CHECK_THROWS_AS(bad.validate(), SchemaError);

    ::setenv("KUZLAB_WORKER_COUNT", "3", 1);
    ::setenv("KUZLAB_OUTPUT_FORMAT", "json", 1);
    RunConfig env = def;
    apply_env_overrides(env);
    CHECK(env.worker_count == 3);
    CHECK(env.output_format == "json");
    ::unsetenv("KUZLAB_WORKER_COUNT");
    ::unsetenv("KUZLAB_OUTPUT_FORMAT");
}

TEST_CASE("report rows and serialization") {
    Report r;
    r.add("residual", 1.5L, 1.0L, 0.6L);
    r.add("ratio", 2.0L, 1.0L, 0.5L);
    CHECK(r.rows[0].pass);
    CHECK_FALSE(r.rows[1].pass);
    CHECK_FALSE(r.all_pass());

    CHECK(r.to_csv()
          == "name,value,reference,tolerance,pass\n"
             "residual,1.5,1,0.6,true\n"
             "ratio,2,1,0.5,false\n");

    CHECK(r.to_json()
          == "{\"rows\":["
             "{\"name\":\"residual\",\"value\":1.5,\"reference\":1,"
             "\"tolerance\":0.6,\"pass\":true},"
             "{\"name\":\"ratio\",\"value\":2,\"reference\":1,"
             "\"tolerance\":0.5,\"pass\":false}"
             "],\"all_pass\":false}");

    CHECK(error_json("ParseError", "bad line")
          == "{\"error\":\"ParseError\",\"message\":\"bad line\"}");

    Report ok;
    ok.add("exact", 1.0L, 1.0L, 1e-9L);
    CHECK(ok.all_pass());
}
