#include "wallislab/report.hpp"

#include "support/schema_check.hpp"
#include "support/subprocess.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace wallislab;
using nlohmann::json;

#ifndef WALLISLAB_CLI_PATH
#error "WALLISLAB_CLI_PATH must be defined by the build"
#endif
#ifndef WALLISLAB_SCHEMA_PATH
#error "WALLISLAB_SCHEMA_PATH must be defined by the build"
#endif

namespace {

const std::string cli = WALLISLAB_CLI_PATH;

json load_schema() {
    std::ifstream f(WALLISLAB_SCHEMA_PATH);
    REQUIRE(f.good());
    return json::parse(f);
}

ReportEnvelope sample_table_envelope() {
    ReportEnvelope env;
    env.command = "table";
    env.parameters = {{"sequence", "a_n"}, {"max_n", "3"}, {"step", "1"}, {"digits", "6"}};
    env.generated_at = rfc3339_utc_now();
    env.results = results_json(make_seq_table(SequenceId::WallisProduct, 3, 1, 6));
    return env;
}

}  // namespace

TEST_CASE("envelope JSON round-trips losslessly") {
    auto env = sample_table_envelope();
    json j = to_json(env);
    REQUIRE(to_json(envelope_from_json(j)) == j);

    ReportEnvelope verify_env;
    verify_env.command = "verify";
    verify_env.parameters = {{"suite", "stieltjes"}};
    verify_env.generated_at = rfc3339_utc_now();
    verify_env.results = results_json(std::vector<CheckOutcome>{check_product_identity(3)});
    json jv = to_json(verify_env);
    REQUIRE(to_json(envelope_from_json(jv)) == jv);
}

TEST_CASE("CSV and JSON decimal renderings agree character for character") {
    auto env = sample_table_envelope();
    std::string csv = to_csv(env);
    std::istringstream lines(csv);
    std::string line;
    std::vector<std::string> data;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#') data.push_back(line);
    REQUIRE(data.size() == 4);  // header + 3 rows
    REQUIRE(data[0] == "n,exact,decimal,target,abs_error");
    const auto& rows = env.results["rows"];
    for (std::size_t i = 0; i < 3; ++i) {
        std::string expected = std::to_string(rows[i]["n"].get<std::uint64_t>()) + "," +
                               rows[i]["exact"].get<std::string>() + "," +
                               rows[i]["decimal"].get<std::string>() + "," +
                               rows[i]["target"].get<std::string>() + "," +
                               rows[i]["abs_error"].get<std::string>();
        REQUIRE(data[i + 1] == expected);
    }
}

TEST_CASE("CSV escapes commas and quotes") {
    REQUIRE(wallislab::detail::csv_escape("plain") == "plain");
    REQUIRE(wallislab::detail::csv_escape("a,b") == "\"a,b\"");
    REQUIRE(wallislab::detail::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("exit code mapping follows the 0/1/3 contract") {
    REQUIRE(verify_exit_code(0, 0) == 0);
    REQUIRE(verify_exit_code(2, 5) == 1);  // FAILS dominates
    REQUIRE(verify_exit_code(1, 0) == 1);
    REQUIRE(verify_exit_code(0, 3) == 3);
}

TEST_CASE("generated reports validate against the published schema") {
    json schema = load_schema();
    std::string err;

    auto env = sample_table_envelope();
    REQUIRE(schema_check::validate_document(to_json(env), schema, err));

    ReportEnvelope enc_env;
    enc_env.command = "pi";
    enc_env.parameters = {{"terms", "10"}, {"method", "wallis"}};
    enc_env.generated_at = rfc3339_utc_now();
    enc_env.results = results_json(std::vector<Enclosure>{pi_enclosure_wallis(10)}, 10);
    REQUIRE(schema_check::validate_document(to_json(enc_env), schema, err));

    // and the checker catches a broken document
    json broken = to_json(env);
    broken["generated_at"] = "yesterday";
    REQUIRE_FALSE(schema_check::validate_document(broken, schema, err));
    broken = to_json(env);
    broken["results"].erase("rows");
    REQUIRE_FALSE(schema_check::validate_document(broken, schema, err));
}

TEST_CASE("cli: pi subcommand emits a wallis enclosure") {
    auto r = subprocess::run(cli + " pi --terms 1 --method wallis");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j["command"] == "pi");
    REQUIRE(j["results"]["kind"] == "enclosures");
    REQUIRE(j["results"]["items"][0]["lo_exact"] == "8/3");
    REQUIRE(j["results"]["items"][0]["hi_exact"] == "4");
    std::string err;
    REQUIRE(schema_check::validate_document(j, load_schema(), err));
}

TEST_CASE("cli: machin and variation4 methods") {
    auto r = subprocess::run(cli + " pi --method machin --digits 15");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    std::string lo = j["results"]["items"][0]["lo_decimal"];
    REQUIRE(lo.substr(0, 16) == "3.14159265358979");

    auto v = subprocess::run(cli + " pi --method variation4 --terms 100 --digits 8");
    REQUIRE(v.exit_code == 0);
    json jv = json::parse(v.stdout_text);
    REQUIRE(jv["results"]["kind"] == "point_estimate");
    std::string dec = jv["results"]["decimal"];
    REQUIRE(dec.substr(0, 4) == "3.13");  // lower bound, converging from below
}

TEST_CASE("cli: table csv output matches json decimals") {
    auto cj = subprocess::run(cli + " table --sequence a_n --max-n 3 --digits 6");
    REQUIRE(cj.exit_code == 0);
    json j = json::parse(cj.stdout_text);
    auto cc = subprocess::run(cli + " --format csv table --sequence a_n --max-n 3 --digits 6");
    REQUIRE(cc.exit_code == 0);
    REQUIRE(cc.stdout_text.find(
                j["results"]["rows"][2]["decimal"].get<std::string>()) != std::string::npos);
    REQUIRE(cc.stdout_text.find("n,exact,decimal,target,abs_error") != std::string::npos);
}

TEST_CASE("cli: global flags work before or after the subcommand") {
    auto before = subprocess::run(cli + " --format csv table --sequence a_n --max-n 2 --digits 6");
    auto after = subprocess::run(cli + " table --sequence a_n --max-n 2 --digits 6 --format csv");
    REQUIRE(before.exit_code == 0);
    REQUIRE(after.exit_code == 0);
    // identical data rows (comment lines differ by timestamp)
    auto data_rows = [](const std::string& text) {
        std::string out;
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line))
            if (!line.empty() && line[0] != '#') out += line + "\n";
        return out;
    };
    REQUIRE(data_rows(before.stdout_text) == data_rows(after.stdout_text));
}

TEST_CASE("cli: usage errors exit 2") {
    REQUIRE(subprocess::run(cli + " bogus 2>/dev/null").exit_code == 2);
    REQUIRE(subprocess::run(cli + " table --sequence nope --max-n 3 2>/dev/null").exit_code == 2);
    REQUIRE(subprocess::run(cli + " pi --terms 0 2>/dev/null").exit_code == 2);
    REQUIRE(subprocess::run(cli + " erf --t -3 2>/dev/null").exit_code == 2);
    REQUIRE(subprocess::run(cli + " erf --t inf --method borwein 2>/dev/null").exit_code == 2);
    REQUIRE(subprocess::run(cli + " verify --tol 1e-20 2>/dev/null").exit_code == 2);
}

TEST_CASE("cli: verify exit codes for clean and undecided runs") {
    auto ok = subprocess::run(cli + " verify --suite stieltjes --max-n 20 2>/dev/null");
    REQUIRE(ok.exit_code == 0);
    json j = json::parse(ok.stdout_text);
    REQUIRE(j["results"]["summary"]["holds"] == 20);
    REQUIRE(j["results"]["summary"]["fails"] == 0);

    // a hopeless tolerance leaves sandwich margins undecided -> exit 3
    auto und = subprocess::run(cli + " verify --suite sandwich --max-n 3 --tol 10 2>/dev/null");
    REQUIRE(und.exit_code == 3);
    json ju = json::parse(und.stdout_text);
    REQUIRE(ju["results"]["summary"]["undecided"].get<int>() > 0);
}

TEST_CASE("cli: erf direct and borwein methods agree") {
    auto d = subprocess::run(cli + " erf --t 1 --tol 1e-10");
    REQUIRE(d.exit_code == 0);
    json jd = json::parse(d.stdout_text);
    std::string vd = jd["results"]["value"];
    REQUIRE(vd.substr(0, 12) == "0.7468241328");

    auto b = subprocess::run(cli + " erf --t 1 --tol 1e-10 --method borwein");
    REQUIRE(b.exit_code == 0);
    json jb = json::parse(b.stdout_text);
    std::string vb = jb["results"]["value"];
    REQUIRE(vb.substr(0, 10) == vd.substr(0, 10));

    auto inf = subprocess::run(cli + " erf --t inf --tol 1e-10");
    REQUIRE(inf.exit_code == 0);
    json ji = json::parse(inf.stdout_text);
    std::string vi = ji["results"]["value"];
    REQUIRE(vi.substr(0, 12) == "0.8862269254");
}

TEST_CASE("cli: every command's JSON report round-trips and validates") {
    json schema = load_schema();
    for (const std::string& args :
         {std::string("pi --terms 5 --method wallis"), std::string("pi --method machin --digits 8"),
          std::string("pi --method variation4 --terms 4"),
          std::string("table --sequence v2 --max-n 4 --digits 8"),
          std::string("verify --suite stieltjes --max-n 5"),
          std::string("verify --suite squeeze --max-n 5"),
          std::string("verify --suite wallis --max-n 5"),
          std::string("verify --suite disguise --max-n 3"),
          std::string("erf --t 0.5 --tol 1e-10")}) {
        auto r = subprocess::run(cli + " " + args + " 2>/dev/null");
        INFO(args);
        REQUIRE(r.exit_code == 0);
        json j = json::parse(r.stdout_text);
        REQUIRE(to_json(envelope_from_json(j)) == j);  // lossless round-trip
        std::string err;
        INFO(err);
        REQUIRE(schema_check::validate_document(j, schema, err));
    }
}

TEST_CASE("cli: conservation suite emits the detailed payload") {
    auto r = subprocess::run(cli + " verify --suite conservation --tol 1e-9 2>/dev/null");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j["results"]["kind"] == "conservation");
    REQUIRE(j["results"]["items"].size() == 25);
    REQUIRE(j["parameters"]["decimal_policy"] == "round-toward-zero");
    std::string err;
    REQUIRE(schema_check::validate_document(j, load_schema(), err));
}

TEST_CASE("cli: WALLISLAB_MAX_EVALS caps the quadrature budget") {
    auto r = subprocess::run("WALLISLAB_MAX_EVALS=60 " + cli + " erf --t 5 --tol 1e-14 2>/dev/null");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j["results"]["tolerance_met"] == false);
    REQUIRE(j["results"]["evaluations"].get<std::uint64_t>() <= 90);
    // and the same call without the cap reaches tolerance
    auto free_run = subprocess::run(cli + " erf --t 5 --tol 1e-14 2>/dev/null");
    json jf = json::parse(free_run.stdout_text);
    REQUIRE(jf["results"]["tolerance_met"] == true);
}

TEST_CASE("cli: --out writes atomically") {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                       "/wallislab_out_test.json";
    std::remove(path.c_str());
    auto r = subprocess::run(cli + " --out " + path + " pi --terms 2");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.stdout_text.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    json j = json::parse(f);
    REQUIRE(j["results"]["items"][0]["lo_exact"] == "128/45");  // 2 * 64/45
    std::remove(path.c_str());
}
