// End-to-end checks through the installed CLI binary.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

const std::string kBin = TRICL_BIN;
const std::string kData = TRICL_DATA_DIR;

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "tricl_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("stats reproduces the worked-example weighted matrix") {
    const auto dir = temp_dir();
    const auto out = dir / "stats";
    const int code = run(kBin + " stats --edges " + kData + "/example_edges.csv" +
                         " --stat weighted_sp --stat unweighted_sp --out " + out.string() +
                         " > " + (dir / "stats.log").string() + " 2>&1");
    REQUIRE(code == 0);
    CHECK(slurp(out / "weighted_sp.csv") ==
          "node,a,b,c,d\n"
          "a,0,9,4,8\n"
          "b,9,0,6,5\n"
          "c,4,6,0,9\n"
          "d,8,5,9,0\n");
    CHECK(slurp(out / "unweighted_sp.csv") ==
          "node,a,b,c,d\n"
          "a,0,2,1,1\n"
          "b,2,0,1,1\n"
          "c,1,1,0,2\n"
          "d,1,1,2,0\n");
    const std::string log = slurp(dir / "stats.log");
    CHECK(log.find("R^2[weighted_sp]") != std::string::npos);
}

TEST_CASE("fit writes a FitResult JSON for the karate network") {
    const auto dir = temp_dir();
    const auto out = dir / "fit_karate.json";
    const int code = run(kBin + " fit --edges " + kData + "/karate_edges.csv --attrs " + kData +
                         "/karate_attrs.csv --model ghype --covariate weighted_sp" +
                         " --covariate match:faction --xi config --out " + out.string() + " > " +
                         (dir / "fit.log").string() + " 2>&1");
    REQUIRE(code == 0);
    const std::string json = slurp(out);
    CHECK(json.find("\"model\": \"ghype\"") != std::string::npos);
    CHECK(json.find("match:faction") != std::string::npos);
}

TEST_CASE("unknown covariate names are usage errors") {
    const auto dir = temp_dir();
    const int code = run(kBin + " fit --edges " + kData +
                         "/example_edges.csv --covariate bogus_name --out " +
                         (dir / "x.json").string() + " > " + (dir / "usage.log").string() +
                         " 2>&1");
    CHECK(code == 2);
}

TEST_CASE("missing input files exit 1 with a parsable prefix") {
    const auto dir = temp_dir();
    const auto log = dir / "missing.log";
    const int code = run(kBin + " stats --edges /nonexistent.csv --stat weighted_sp > " +
                         log.string() + " 2>&1");
    CHECK(code == 1);
    CHECK(slurp(log).find("tricl: error:") != std::string::npos);
}

TEST_CASE("replicate runs are byte-identical across thread counts") {
    const auto dir = temp_dir();
    const auto out1 = dir / "rep1.json";
    const auto out2 = dir / "rep2.json";
    const std::string base = kBin +
                             " replicate --kind triangles --n 14 --m 120 --ntri 5 --seed 7"
                             " --reps 6 --covariate weighted_sp --xi meandeg"
                             " --likelihood multinomial";
    REQUIRE(run(base + " --threads 1 --out " + out1.string() + " > /dev/null 2>&1") == 0);
    REQUIRE(run(base + " --threads 3 --out " + out2.string() + " > /dev/null 2>&1") == 0);
    const std::string a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));
}

TEST_CASE("report handles missing and partial inputs") {
    const auto dir = temp_dir();
    const auto empty = dir / "empty_report_in";
    fs::create_directories(empty);
    const int none = run(kBin + " report --in " + empty.string() + " > " +
                         (dir / "report0.log").string() + " 2>&1");
    CHECK(none == 1);
    CHECK(slurp(dir / "report0.log").find("nothing to report") != std::string::npos);

    // synthetic-only inputs: case-study rows come out skipped
    const auto in_dir = dir / "report_in";
    fs::create_directories(in_dir);
    REQUIRE(run(kBin +
                " replicate --kind triangles --n 14 --m 120 --ntri 5 --seed 7 --reps 4"
                " --covariate weighted_sp --xi meandeg --likelihood multinomial --threads 1"
                " --out " +
                (in_dir / "replicate_triangles.json").string() + " > /dev/null 2>&1") == 0);
    const auto report = dir / "report.md";
    const int some = run(kBin + " report --in " + in_dir.string() + " --out " + report.string() +
                         " > /dev/null 2>&1");
    CHECK(some == 0);
    const std::string doc = slurp(report);
    CHECK(doc.find("synthetic triangles") != std::string::npos);
    CHECK(doc.find("skipped") != std::string::npos);
}

TEST_CASE("synth writes deterministic edge lists") {
    const auto dir = temp_dir();
    const auto out1 = dir / "net1.csv";
    const auto out2 = dir / "net2.csv";
    const std::string base =
        kBin + " synth --kind mixed --n 20 --m 400 --ntri 6 --seed 123 --out ";
    REQUIRE(run(base + out1.string() + " > /dev/null 2>&1") == 0);
    REQUIRE(run(base + out2.string() + " > /dev/null 2>&1") == 0);
    const std::string a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));
}
