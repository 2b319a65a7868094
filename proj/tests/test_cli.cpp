#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cheb/run_config.hpp"
#include "cheb/util.hpp"

using namespace cheb;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(CHEB_LAB_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("RunConfig round trips through its text form") {
    RunConfig cfg;
    cfg.command = "mean-square";
    cfg.set = "residue q=4 classes=3 add= remove=";
    cfg.ref = "pi-half";
    cfg.x_max = 1e7;
    cfg.height = 100.0;
    cfg.grid_step = 0.005;
    cfg.allow_uncertified = true;
    cfg.json = "/tmp/out.json";
    RunConfig back = RunConfig::from_text(cfg.to_text());
    CHECK(back == cfg);

    RunConfig defaults;
    CHECK(RunConfig::from_text(defaults.to_text()) == defaults);
}

TEST_CASE("RunConfig rejects unknown keys and bad values") {
    CHECK_THROWS_AS(RunConfig::from_text("command=zeros\ncolor=red\n"), parse_error);
    CHECK_THROWS_AS(RunConfig::from_text("xmax=banana\n"), parse_error);
    CHECK_THROWS_AS(RunConfig::from_text("no equals sign here\n"), parse_error);
    // comments pass
    RunConfig c = RunConfig::from_text("# a comment\ncommand=catalog\n");
    CHECK(c.command == "catalog");
}

TEST_CASE("exit code 0 on success") {
    CHECK(run("catalog") == 0);
    CHECK(run("zeros --q 4 --index 1 --height 5") == 0);
    CHECK(run("census --ext gauss_i --xmax 2000") == 0);
}

TEST_CASE("exit code 3 when certification fails") {
    // a 5.0 grid step misses most zeros below T=100; the retry halves it
    // once and still fails the count window
    CHECK(run("zeros --q 4 --index 1 --height 100 --grid-step 5.0") == 3);
}

TEST_CASE("exit code 2 on invalid configuration") {
    CHECK(run("mean-square --set \"gibberish q=4\" --xmax 1000") == 2);
    CHECK(run("mean-square --set \"residue q=4 classes=2\" --xmax 1000") == 2);
    CHECK(run("witness --xmax 100") == 2);
    CHECK(run("dirichlet-check --set podd") == 2);
    CHECK(run("dirichlet-check --set \"residue q=4 classes=3\" --s 1.2 --xcut 1000") == 2);
    CHECK(run("census --ext no_such_thing --xmax 1000") == 2);
}

TEST_CASE("config file drives a run; flags override") {
    auto dir = std::filesystem::temp_directory_path();
    auto cfg_path = dir / "chebtest_cli.cfg";
    auto json_path = dir / "chebtest_cli.json";
    RunConfig cfg;
    cfg.command = "census";
    cfg.ext = "gauss_i";
    cfg.x_max = 3000;
    cfg.json = json_path.string();
    std::ofstream(cfg_path) << cfg.to_text();

    CHECK(run("--config " + cfg_path.string()) == 0);
    std::string j = slurp(json_path);
    CHECK(j.find("\"ext\": \"gauss_i\"") != std::string::npos);

    // explicit flag overrides the config value
    CHECK(run("--config " + cfg_path.string() + " census --ext s3_x3m2") == 0);
    j = slurp(json_path);
    CHECK(j.find("\"ext\": \"s3_x3m2\"") != std::string::npos);

    std::filesystem::remove(cfg_path);
    std::filesystem::remove(json_path);
}

TEST_CASE("deterministic outputs for identical configuration") {
    auto dir = std::filesystem::temp_directory_path();
    auto csv1 = dir / "chebtest_ms1.csv";
    auto csv2 = dir / "chebtest_ms2.csv";
    std::string base = "mean-square --set \"residue q=4 classes=3\" --ref pi-half "
                       "--xmax 50000 --height 30 --csv ";
    REQUIRE(run(base + csv1.string()) == 0);
    REQUIRE(run(base + csv2.string()) == 0);
    CHECK(slurp(csv1) == slurp(csv2));
    CHECK(slurp(csv1).rfind("y,empirical,predicted,residual\n", 0) == 0);
    std::filesystem::remove(csv1);
    std::filesystem::remove(csv2);
}

TEST_CASE("quadratic-field and other-set references work through the CLI") {
    auto json_path = std::filesystem::temp_directory_path() / "chebtest_refs.json";
    REQUIRE(run("mean-square --set \"residue q=4 classes=3\" --ref field:-1 "
                "--xmax 100000 --height 40 --json " + json_path.string()) == 0);
    std::string j = slurp(json_path);
    CHECK(j.find("\"ref\": \"field:-1\"") != std::string::npos);
    CHECK(j.find("\"nu\": 0.5") != std::string::npos);

    REQUIRE(run("mean-square --set \"residue q=4 classes=3\" "
                "--ref \"set:residue q=4 classes=1\" --xmax 100000 --height 40 --json " +
                json_path.string()) == 0);
    j = slurp(json_path);
    CHECK(j.find("\"nu\": 1.0") != std::string::npos); // kappa_Q - kappa_P = 1 - 0
    // mismatched densities are rejected
    CHECK(run("mean-square --set \"residue q=4 classes=3\" "
              "--ref \"set:residue q=12 classes=1\" --xmax 100000 --height 40") == 2);
    std::filesystem::remove(json_path);
}

TEST_CASE("witness at 1e6 separates the control from P_odd") {
    auto json_path = std::filesystem::temp_directory_path() / "chebtest_witness.json";
    REQUIRE(run("witness --xmax 1e6 --height 60 --json " + json_path.string()) == 0);
    std::string j = slurp(json_path);
    CHECK(j.find("\"control_alive\": true") != std::string::npos);
    CHECK(j.find("\"podd_quiet\": true") != std::string::npos);
    std::filesystem::remove(json_path);
}

TEST_CASE("prime and zero caches round-trip through the cache dir") {
    auto dir = std::filesystem::temp_directory_path() / "chebtest_cache";
    std::filesystem::remove_all(dir);
    std::string args = "zeros --q 3 --index 1 --height 12 --cache-dir " + dir.string();
    REQUIRE(run(args) == 0);
    std::size_t files = 0;
    for (auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".txt") ++files;
    CHECK(files == 1);
    // second run hits the cache (still succeeds, no new zero files)
    REQUIRE(run(args) == 0);
    std::size_t files2 = 0;
    for (auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".txt") ++files2;
    CHECK(files2 == files);
    std::filesystem::remove_all(dir);
}
