#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI binary (path from NHARM_CLI, set by ctest) and captures stdout.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("NHARM_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "NHARM_CLI not set; run through ctest");
    RunResult r;
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("cli solve: identity and the power family") {
    const auto id = run_cli("solve --n 3 --metric constant --R 2 --R-star 2 --grid 64");
    REQUIRE(id.exit_code == 0);
    const auto j = nlohmann::json::parse(id.out);
    CHECK(std::abs(j["c"].get<double>()) <= 1e-9);
    CHECK(j["R_star"].get<double>() == 2.0);
    CHECK(j["admissible"].get<bool>());

    const auto pw = run_cli("solve --n 3 --metric power:-3 --R 2 --R-star 4 --grid 64");
    REQUIRE(pw.exit_code == 0);
    const auto jp = nlohmann::json::parse(pw.out);
    CHECK(jp["c"].get<double>() == doctest::Approx(-3.0 * std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("cli solve: third-parameter completion and artifacts") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "nharm_cli_test";
    fs::create_directories(dir);
    const std::string out = (dir / "sol.json").string();

    const auto r = run_cli("solve --n 3 --metric constant --c -2 --R-star 2 --grid 64 --out " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream is(out);
    REQUIRE(is.good());
    const auto art = nlohmann::json::parse(is);
    CHECK(art["grid"].size() == 65);
    CHECK(art["c"].get<double>() == -2.0);

    const auto csv = run_cli("solve --n 3 --metric constant --c -2 --R-star 2 --grid 64 "
                             "--format csv --out " + (dir / "sol.csv").string());
    REQUIRE(csv.exit_code == 0);
    std::ifstream cs(dir / "sol.csv");
    std::string header;
    std::getline(cs, header);
    CHECK(header == "t,H,dHdt,eta");
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("solve --n 3 --metric constant --R 4 --R-star 1.0001 --grid 64").exit_code == 2);
    CHECK(run_cli("solve --n 3 --metric constant --R 2").exit_code == 64);
    CHECK(run_cli("solve --n 3 --metric constant --R 2 --R-star 2 --c 0").exit_code == 64);
    CHECK(run_cli("solve --n 2 --metric constant --R 2 --R-star 2").exit_code == 64);
    CHECK(run_cli("frobnicate").exit_code == 64);
    CHECK(run_cli("solve --n 3 --metric power:-5 --R 2 --R-star 2").exit_code == 64);
}

TEST_CASE("cli verify: fresh solve passes, corrupted artifact fails") {
    const auto ok = run_cli("verify --n 3 --metric power:-3 --R 2 --R-star 4 --grid 256");
    REQUIRE(ok.exit_code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["all_pass"].get<bool>());
    CHECK(j["checks"].size() >= 6);

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "nharm_cli_verify";
    fs::create_directories(dir);
    const std::string prof = (dir / "p.json").string();
    REQUIRE(run_cli("solve --n 3 --metric constant --c -2 --R-star 2 --grid 256 --out " + prof)
                .exit_code == 0);
    CHECK(run_cli("verify --profile " + prof).exit_code == 0);

    // corrupt the stored profile values
    std::ifstream is(prof);
    auto art = nlohmann::json::parse(is);
    is.close();
    for (std::size_t i = 60; i < 120; ++i)
        art["grid"][i][1] = art["grid"][i][1].get<double>() * 1.02;
    std::ofstream(prof) << art.dump();
    const auto bad = run_cli("verify --profile " + prof);
    CHECK(bad.exit_code == 1);
    const auto jb = nlohmann::json::parse(bad.out);
    CHECK_FALSE(jb["all_pass"].get<bool>());
    bool first_integral_failed = false;
    for (const auto& c : jb["checks"])
        if (c["name"] == "first_integral" && !c["pass"].get<bool>()) first_integral_failed = true;
    CHECK(first_integral_failed);
    fs::remove_all(dir);
}

TEST_CASE("cli bounds and determinism") {
    const std::string cmd = "bounds --n 4 --metric constant --R 2 --R-star 2";
    const auto a = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == run_cli(cmd).out);  // byte-identical

    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["c_max"].get<double>() == 1.0);
    CHECK(j["c_min"].get<double>() == doctest::Approx(-2.25).epsilon(1e-12));
    CHECK(j["nonminimality_threshold"].get<double>() == doctest::Approx(-64.0).epsilon(1e-12));
    CHECK(j["nitsche_bound"].get<double>() == doctest::Approx(1.55717707846683).epsilon(1e-6));

    const auto j3 = nlohmann::json::parse(run_cli("bounds --n 3 --metric constant --R-star 2").out);
    CHECK(j3["c_min"].get<std::string>() == "-inf");
    CHECK(j3["nonminimality_threshold"].get<std::string>() == "-inf");
    CHECK(j3["nitsche_bound"].is_null());
}

TEST_CASE("cli minimality verdicts") {
    const auto ok = run_cli("minimality --n 3 --metric constant --R 2 --R-star 2 --grid 128");
    REQUIRE(ok.exit_code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["verdict"].get<std::string>() == "radial-minimal-on-tested-families");
    CHECK(j["in_proven_range"].get<bool>());
    CHECK(j["variational_sup_diff"].get<double>() <= 1e-6);

    const auto bad =
        run_cli("minimality --n 4 --metric constant --c -100 --R-star 2 --grid 128");
    REQUIRE(bad.exit_code == 0);
    const auto jb = nlohmann::json::parse(bad.out);
    CHECK(jb["verdict"].get<std::string>() == "non-minimal");
    CHECK(jb["below_threshold"].get<bool>());
    CHECK(jb["witness_lambda"].get<double>() > 1.0);
}
