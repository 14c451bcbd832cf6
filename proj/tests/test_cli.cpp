#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Drives the installed binary end to end: ingestion, exit codes, JSON
// documents, and byte-level determinism.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("corrmetric_cli_" + name);
}

RunResult run_cli(const std::string& args) {
    const fs::path out = temp_file("stdout.txt");
    const fs::path err = temp_file("stderr.txt");
    const std::string cmd =
        std::string(CORRMETRIC_CLI) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path path = temp_file(name);
    std::ofstream file(path);
    file << content;
    return path;
}

const char* kQuarterPi = "0.7853981633974483";
const char* kSixthPi = "0.5235987755982988";

std::string family_matrix_csv() {
    return "1, 0.25, 0.7071067811865476\n"
           "0.25, 1, 0.7071067811865476\n"
           "0.7071067811865476, 0.7071067811865476, 1\n";
}

}  // namespace

TEST_CASE("cli check: exit 0 on a metric, 2 on a violation, 1 on bad input") {
    const auto identity = write_file("identity.csv", "1,0,0\n0,1,0\n0,0,1\n");
    CHECK(run_cli("check --input " + identity.string() + " --matrix").exit_code == 0);

    const auto family = write_file("family.csv", family_matrix_csv());
    const auto violated =
        run_cli("check --input " + family.string() + " --matrix --measure pearson --format json");
    CHECK(violated.exit_code == 2);
    const json doc = json::parse(violated.out);
    CHECK(doc["is_metric"] == false);
    REQUIRE(doc["triangle_violations"].size() == 1);
    CHECK(std::abs(doc["triangle_violations"][0]["margin"].get<double>() -
                   0.16421356237309515) < 1e-12);

    CHECK(run_cli("check --input " + family.string() + " --matrix --measure sqrtpearson")
              .exit_code == 0);

    const auto malformed = write_file("malformed.csv", "a,b\n1,2\n3,oops\n");
    const auto failed = run_cli("check --input " + malformed.string());
    CHECK(failed.exit_code == 1);
    CHECK(failed.err.find(":3:2") != std::string::npos);
}

TEST_CASE("cli check: usage errors exit 1") {
    CHECK(run_cli("check --measure nosuch --input x.csv").exit_code == 1);
    CHECK(run_cli("nosuchcommand").exit_code == 1);
    CHECK(run_cli("check").exit_code == 1);  // no --input
}

TEST_CASE("cli counterexample: single theta document and determinism") {
    const std::string args =
        std::string("counterexample --theta ") + kQuarterPi + " --format json";
    const auto first = run_cli(args);
    CHECK(first.exit_code == 0);
    const auto second = run_cli(args);
    CHECK(first.out == second.out);

    const json doc = json::parse(first.out);
    CHECK(std::abs(doc["margins"]["pearson"].get<double>() - 0.16421356237309515) < 1e-12);
    CHECK(doc["violated"]["pearson"] == true);
    CHECK(doc["violated"]["sqrtpearson"] == false);
    CHECK(std::abs(doc["correlation"][0][2].get<double>() - 0.7071067811865476) < 1e-12);

    // Beyond theta*: no violation.
    const auto beyond = run_cli("counterexample --theta 1.2 --format json");
    const json beyond_doc = json::parse(beyond.out);
    CHECK(beyond_doc["margins"]["pearson"].get<double>() < 0.0);
    CHECK(beyond_doc["violated"]["pearson"] == false);
}

TEST_CASE("cli counterexample: grid sweep writes the table and the boundary") {
    const auto sweep = temp_file("sweep.csv");
    const auto result = run_cli("counterexample --grid 1000 --output " + sweep.string() +
                                " --format json");
    CHECK(result.exit_code == 0);
    const json doc = json::parse(result.out);
    CHECK(std::abs(doc["theta_star"].get<double>() - 0.9959700292793412) < 1e-6);
    CHECK(std::abs(doc["fraction_of_range"].get<double>() - 0.634054) < 1e-3);

    const std::string table = slurp(sweep);
    CHECK(table.rfind("theta,", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 1001);
}

TEST_CASE("cli sample: reproducible data files and empirical audit") {
    const auto data_a = temp_file("sample_a.csv");
    const auto data_b = temp_file("sample_b.csv");
    const auto data_c = temp_file("sample_c.csv");
    const std::string base = std::string("sample --theta ") + kQuarterPi +
                             " --n 20000 --seed 42 --measure pearson --format json";
    const auto first = run_cli(base + " --output " + data_a.string());
    const auto second = run_cli(base + " --output " + data_b.string());
    CHECK(first.exit_code == 0);
    CHECK(slurp(data_a) == slurp(data_b));

    const auto other = run_cli(std::string("sample --theta ") + kQuarterPi +
                               " --n 20000 --seed 43 --format json --output " + data_c.string());
    CHECK(other.exit_code == 0);
    CHECK(slurp(data_a) != slurp(data_c));

    const json doc = json::parse(first.out);
    CHECK(doc["audit"]["is_metric"] == false);
    CHECK(doc["wide_confidence"] == false);

    // The written data file feeds back through the data-ingestion path.
    const auto recheck = run_cli("check --input " + data_a.string() + " --measure pearson");
    CHECK(recheck.exit_code == 2);

    const auto tiny = run_cli(std::string("sample --theta ") + kQuarterPi +
                              " --n 100 --seed 7 --format json");
    const json tiny_doc = json::parse(tiny.out);
    CHECK(tiny_doc["wide_confidence"] == true);
}

TEST_CASE("cli transform: analysis verdicts and post-transform audits") {
    const auto preserved = run_cli(std::string("transform --builtin sqrt --apply-to sqrtpearson "
                                               "--theta ") + kQuarterPi + " --format json");
    CHECK(preserved.exit_code == 0);
    const json ok = json::parse(preserved.out);
    CHECK(ok["analysis"]["prediction"] == "metric_preserving");
    CHECK(ok["applied"]["audit"]["is_metric"] == true);
    CHECK(ok["applied"]["provenance"] == "sqrt(sqrtpearson)");

    const auto broken = run_cli(std::string("transform --builtin square --apply-to sqrtpearson "
                                            "--theta ") + kQuarterPi + " --format json");
    const json bad = json::parse(broken.out);
    CHECK(bad["analysis"]["prediction"] == "not_metric_preserving");
    CHECK(bad["applied"]["audit"]["is_metric"] == false);

    const auto circle = run_cli(std::string("transform --builtin circle_convex --apply-to "
                                            "psquared --theta ") + kSixthPi + " --format json");
    const json circle_doc = json::parse(circle.out);
    CHECK(circle_doc["analysis"]["prediction"] == "not_metric_preserving");
    CHECK(circle_doc["applied"]["audit"]["is_metric"] == false);

    // Sampled transform from a file.
    std::ostringstream grid;
    grid << "0, 0\n";
    for (int i = 1; i <= 32; ++i) {
        const double x = 2.0 * i / 32.0;
        grid << x << ", " << std::sqrt(x) << "\n";
    }
    const auto spec_file = write_file("sampled_sqrt.csv", grid.str());
    const auto sampled = run_cli("transform --transform-file " + spec_file.string() +
                                 " --grid 31 --format json");
    CHECK(sampled.exit_code == 0);
}

TEST_CASE("cli cluster: coherence comparison document") {
    const auto result = run_cli(std::string("cluster --theta ") + kQuarterPi +
                                " --measure pearson --measure-b sqrtpearson --linkage single "
                                "--k 2,3 --format json");
    CHECK(result.exit_code == 0);
    const json doc = json::parse(result.out);
    CHECK(std::abs(doc["coherence_a"]["value"].get<double>() - 1.2803300858899107) < 1e-9);
    CHECK(doc["coherence_b"]["value"].get<double>() <= 1.0);
    CHECK(doc["at_k"].size() == 2);
    CHECK(doc["dendrogram_a"]["leaves"] == json::array({"X", "Y", "Z"}));

    const auto again = run_cli(std::string("cluster --theta ") + kQuarterPi +
                               " --measure pearson --measure-b sqrtpearson --linkage single "
                               "--k 2,3 --format json");
    CHECK(result.out == again.out);
}
