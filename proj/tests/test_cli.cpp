#include "support.hpp"

#include "perigeo/batch.hpp"
#include "perigeo/set_io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace perigeo;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(PERIGEO_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "perigeo_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string reflected_s15() {
    return write_file("S15_reflected.txt", write_set_text(PeriodicSet::line(15, {4, 3, 1, 0, 14, 12, 10, 9, 7})));
}

}  // namespace

TEST_CASE("batch AMD comparison of the period-15 family") {
    const auto r = batch_compare({support::data_path("S15.txt"), support::data_path("Q15.txt"), reflected_s15()},
                                 BatchMode::Amd, 4);
    REQUIRE(r.names.size() == 3);
    CHECK(r.warnings.empty());
    CHECK(r.matrix(0, 2) < 1e-12);
    CHECK(r.matrix(0, 1) == doctest::Approx(1.0 / 9));
    CHECK(r.matrix(1, 2) == doctest::Approx(1.0 / 9));
    CHECK(r.matrix == r.matrix.transpose());
}

TEST_CASE("batch with a single readable file") {
    const auto bad = write_file("bad.txt", "dim 2\n1 0\n0 1\nmotif 1\n2 0\n");
    const auto r = batch_compare({support::data_path("square.txt"), bad}, BatchMode::Amd, 4);
    CHECK(r.names.size() == 1);
    CHECK(r.matrix.rows() == 1);
    CHECK(r.warnings.size() >= 2);
}

TEST_CASE("batch isoset and EMD modes") {
    const auto r = batch_compare({support::data_path("square.txt"), support::data_path("hexagonal.txt")},
                                 BatchMode::Isoset);
    CHECK(r.matrix(0, 1) == 0);
    CHECK(r.matrix(0, 0) == 1);
    const auto e = batch_compare({support::data_path("square.txt"), support::data_path("hexagonal.txt")},
                                 BatchMode::Emd);
    CHECK(e.matrix(0, 1) > 0.3);
    CHECK(e.matrix(0, 0) == 0);
    CHECK(batch_to_json(e)["schema"] == 1);
    CHECK(batch_to_csv(e).find(',') != std::string::npos);
    CHECK_THROWS_AS(parse_batch_mode("nope"), Error);
}

TEST_CASE("fixture files survive a write and re-read") {
    for (const char* f : {"S15.txt", "S2.txt", "hexagonal.txt", "cubic.txt"}) {
        const auto s = support::load(f);
        const auto back = parse_set(write_set_text(s));
        CHECK((back.cell().basis() - s.cell().basis()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(back.size() == s.size());
        for (int i = 0; i < s.size(); ++i) CHECK((back.point(i) - s.point(i)).norm() < 1e-10);
    }
}

TEST_CASE("command line: amd and exit codes") {
    const auto ok = run_cli("amd " + support::data_path("S15.txt") + " -k 4");
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["schema"] == 1);
    CHECK(j["amd"][3].get<double>() == doctest::Approx(34.0 / 9));

    CHECK(run_cli("amd").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("amd " + support::data_path("S15.txt") + " -k 0").code == 1);
    CHECK(run_cli("amd /nonexistent/file.txt").code == 2);
    CHECK(run_cli("amd " + write_file("empty_motif.txt", "dim 1\n1\nmotif 0\n")).code == 2);
    CHECK(run_cli("amd " + support::data_path("S15.txt") + " -k 2 --format csv").out.find(',') != std::string::npos);
}

TEST_CASE("command line: density, isoset, isotree, compare") {
    const auto d = nlohmann::json::parse(run_cli("density " + support::data_path("S15.txt") + " -k 2").out);
    CHECK(d["method"] == "exact");
    CHECK(d["psi"].size() == 3);

    const auto s = nlohmann::json::parse(
        run_cli("density " + support::data_path("hexagonal.txt") + " -k 1 --samples 500 --grid 0:0.6:3 --seed 7").out);
    CHECK(s["method"] == "sampled");
    CHECK(s["seed"] == 7);

    const auto prefix = (scratch_dir() / "plot").string();
    CHECK(run_cli("density " + support::data_path("S4.txt") + " -k 1 --plot-csv " + prefix).code == 0);
    CHECK(fs::exists(prefix + "_k0.csv"));
    CHECK(fs::exists(prefix + "_k1.csv"));

    const auto iso = nlohmann::json::parse(run_cli("isoset " + support::data_path("S2.txt")).out);
    CHECK(iso["regularity"] == 2);
    CHECK(run_cli("isoset " + support::data_path("S2.txt") + " --alpha 5 --stable").code == 1);

    const auto tree = nlohmann::json::parse(run_cli("isotree " + support::data_path("S4.txt") + " --alpha-max 0.75").out);
    CHECK(tree["split_radii"].size() == 2);
    CHECK(run_cli("isotree " + support::data_path("S4.txt") + " --alpha-max 0.75 --text").out.find("radius") !=
          std::string::npos);

    const auto cmp = nlohmann::json::parse(
        run_cli("compare " + support::data_path("S15.txt") + " " + reflected_s15()).out);
    CHECK(cmp["isometric"] == true);
}

TEST_CASE("command line: emd, dcluster, batch") {
    const auto sq = support::data_path("square.txt");
    const auto hx = support::data_path("hexagonal.txt");
    const auto e = nlohmann::json::parse(run_cli("emd " + sq + " " + hx + " --alpha 2 --dr exact").out);
    CHECK(e["cost"].get<double>() == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-9));
    CHECK(e["engine"] == "exact");
    const auto dc = nlohmann::json::parse(run_cli("dcluster " + sq + " " + hx + " --points 0 0 --alpha 2").out);
    CHECK(dc["d_C"].get<double>() == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-9));
    CHECK(run_cli("dcluster " + sq + " " + hx + " --points 0 3 --alpha 2").code == 1);

    const auto b = nlohmann::json::parse(run_cli("batch " + sq + " " + hx + " --mode isoset").out);
    CHECK(b["schema"] == 1);
    CHECK(b["matrix"][0][1] == false);
    CHECK(run_cli("batch " + sq).code == 1);
}
