#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "siftlab/cli.hpp"

using namespace siftlab;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("goldbach subcommand emits actual and predictions") {
    auto r = run_cli({"goldbach", "--N", "100", "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("N,m,w,metric,value,predicted,rel_err,flag") == 0);
    CHECK(r.out.find("goldbach_actual,12,") != std::string::npos);
    CHECK(r.out.find("8.300") != std::string::npos); // crude prediction ~ 8.3009
}

TEST_CASE("parity violations exit 2 with a diagnostic") {
    auto r = run_cli({"goldbach", "--N", "99"});
    CHECK(r.code == 2);
    CHECK(r.err.find("parity") != std::string::npos);
    auto r2 = run_cli({"twin", "--x", "100", "--b", "3"});
    CHECK(r2.code == 2);
    CHECK(r2.err.find("parity") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"goldbach", "--wat", "1"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"goldbach", "--N", "100", "--slack", "0.5"}).code == 2);
    CHECK(run_cli({"goldbach", "--N", "100", "--cutoff", "9"}).code == 2);
    CHECK(run_cli({"goldbach", "--N", "100", "--limit", "50"}).code == 2);
    CHECK(run_cli({"goldbach", "--N", "100", "--format", "yaml"}).code == 2);
}

TEST_CASE("twin subcommand") {
    auto r = run_cli({"twin", "--x", "100", "--b", "2", "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("twin_actual,8,") != std::string::npos);
}

TEST_CASE("rough subcommand json mirrors the partition report") {
    auto r = run_cli({"rough", "--N", "100", "--m", "2", "--format", "json", "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"b_total\":21") != std::string::npos);
    CHECK(r.out.find("\"a_total\":11") != std::string::npos);
    CHECK(r.out.find("\"threshold\":10") != std::string::npos);
}

TEST_CASE("deterministic bytes across worker counts") {
    auto a = run_cli({"rough", "--N", "20000", "--m", "3", "--w", "5000",
                      "--workers", "1", "--no-timestamp"});
    auto b = run_cli({"rough", "--N", "20000", "--m", "3", "--w", "5000",
                      "--workers", "7", "--no-timestamp"});
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out == b.out);
    // and with a different segment size
    auto c = run_cli({"rough", "--N", "20000", "--m", "3", "--w", "5000",
                      "--segment-size", "8192", "--no-timestamp"});
    CHECK(a.out == c.out);
}

TEST_CASE("timestamp appears unless suppressed") {
    auto with = run_cli({"twin", "--x", "50", "--b", "2"});
    CHECK(with.out.find("generated_at") != std::string::npos);
    auto without = run_cli({"twin", "--x", "50", "--b", "2", "--no-timestamp"});
    CHECK(without.out.find("generated_at") == std::string::npos);
}

TEST_CASE("report json mirrors AnalysisReport fields") {
    auto r = run_cli({"report", "--N", "100", "--m", "2", "--format", "json",
                      "--no-timestamp"});
    CHECK(r.code == 0);
    for (const char* key : {"\"N\":", "\"goldbach_actual\":", "\"predicted_crude\":",
                            "\"predicted_refined\":", "\"per_k_ratios\":",
                            "\"interval_ratios\":", "\"dmn\":", "\"dn2\":", "\"twin\":"})
        CHECK(r.out.find(key) != std::string::npos);
    CHECK(r.out.find("\"goldbach_actual\":12") != std::string::npos);
}

TEST_CASE("csv and json carry identical numeric values") {
    AnalysisReport rep;
    {
        PrimeTable t(1000);
        rep = analyze(t, 100, 2.0, 30.0, 2);
    }
    std::string csv = emit_analysis(rep, OutputFormat::csv);
    std::string json = emit_analysis(rep, OutputFormat::json);
    // the crude prediction string must appear identically in both
    std::string crude = fmt_real(rep.predicted_crude);
    std::string refined = fmt_real(rep.predicted_refined);
    CHECK(csv.find(crude) != std::string::npos);
    CHECK(json.find(crude) != std::string::npos);
    CHECK(csv.find(refined) != std::string::npos);
    CHECK(json.find(refined) != std::string::npos);
    CHECK(json.find("\"goldbach_actual\":12") != std::string::npos);
    CHECK(csv.find("goldbach_actual,12,") != std::string::npos);
}

TEST_CASE("empty row set emits header only") {
    CHECK(emit_rows_csv({}) == csv_header());
}

TEST_CASE("emitted predictions are reproducible from the named operations") {
    auto r = run_cli({"goldbach", "--N", "100", "--no-timestamp"});
    // predicted column of the goldbach_actual row
    std::string needle = "goldbach_actual,12,";
    auto pos = r.out.find(needle);
    REQUIRE(pos != std::string::npos);
    auto rest = r.out.substr(pos + needle.size());
    auto comma = rest.find(',');
    double emitted = std::stod(rest.substr(0, comma));
    CHECK(emitted == doctest::Approx(predicted_goldbach(100)).epsilon(1e-11));
}

TEST_CASE("sieve subcommand saves a loadable cache") {
    std::string path = "cli_cache_test.spt";
    auto r = run_cli({"sieve", "--limit", "50000", "--save", path, "--format", "json",
                      "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"prime_count_total\":5133") != std::string::npos);
    PrimeTable loaded = load_cache(path);
    CHECK(loaded.limit() == 50000);
    CHECK(loaded.prime_count_total() == 5133);
    std::remove(path.c_str());
}

TEST_CASE("dn subcommand handles parity output") {
    auto r = run_cli({"dn", "--N", "10", "--n", "2", "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dn_expectation") != std::string::npos);
    auto mismatch = run_cli({"dn", "--N", "9", "--n", "2", "--no-timestamp"});
    CHECK(mismatch.code == 0);
    CHECK(mismatch.out.find("parity_mismatch") != std::string::npos);
}

TEST_CASE("mertens subcommand") {
    auto r = run_cli({"mertens", "--z", "1000", "--format", "json", "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"primes_used\":168") != std::string::npos);
}

TEST_CASE("sievefuncs subcommand") {
    auto r = run_cli({"sievefuncs", "--u", "2", "2.5", "5", "--format", "json",
                      "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"f\":0") != std::string::npos); // f(2) = 0
}

TEST_CASE("alpha subcommand json") {
    auto r = run_cli({"alpha", "--N", "100", "--m", "2", "--format", "json",
                      "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"numerator\":11") != std::string::npos);
    CHECK(r.out.find("\"denominator\":21") != std::string::npos);
}

TEST_CASE("cache directory round trip through the CLI") {
    std::string dir = "cli_cache_dir_test";
    std::filesystem::create_directory(dir);
    auto first = run_cli({"goldbach", "--N", "5000", "--cache-dir", dir, "--no-timestamp"});
    CHECK(first.code == 0);
    CHECK(std::filesystem::exists(dir + "/prime_5000.spt"));
    auto second = run_cli({"goldbach", "--N", "5000", "--cache-dir", dir, "--no-timestamp"});
    CHECK(second.code == 0);
    CHECK(first.out == second.out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("dn emits both constant readings") {
    auto r = run_cli({"dn", "--N", "100", "--n", "2", "--format", "json", "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"asymptotic_divisors_only_reading\":0") != std::string::npos);
}

TEST_CASE("verify subcommand passes on a small table") {
    auto r = run_cli({"verify", "--limit", "300000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("all checks passed") != std::string::npos);
}
