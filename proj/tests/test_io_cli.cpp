#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "qplex/io.hpp"

using namespace qplex;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// the CLI sits next to the test tree: <build>/tools/qplex
fs::path cli_path() {
    if (const char* env = std::getenv("QPLEX_CLI")) return env;
    return fs::read_symlink("/proc/self/exe").parent_path().parent_path() / "tools" / "qplex";
}

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = cli_path().string() + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
    result.status = pclose(pipe);
    if (WIFEXITED(result.status)) result.status = WEXITSTATUS(result.status);
    return result;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("qplex_test_" + std::to_string(getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("povm interchange roundtrip") {
    for (const char* name : {"sic-d2", "bipyramid", "two-distance-d5"}) {
        const Povm povm = designs::catalog_build(name).povm;
        const json once = io::povm_to_json(povm);
        const Povm back = io::povm_from_json(once);
        const json twice = io::povm_to_json(back);
        CHECK(once.dump() == twice.dump());  // bit-exact after one hop
        REQUIRE(back.size() == povm.size());
        for (int j = 0; j < povm.size(); ++j)
            CHECK((back.effect(j) - povm.effect(j)).frobenius_norm() == 0.0);
    }
}

TEST_CASE("bloch shorthand") {
    const double s = 1.0 / std::sqrt(3.0);
    json j;
    j["dim"] = 2;
    j["weights"] = json::array();
    j["bloch"] = json::array();
    for (int k = 0; k < 8; ++k) {
        j["bloch"].push_back({(k & 1 ? s : -s), (k & 2 ? s : -s), (k & 4 ? s : -s)});
        j["weights"].push_back(0.25);
    }
    const Povm cube = io::povm_from_json(j);
    CHECK(cube.size() == 8);
    for (const double t : cube.traces()) CHECK(t == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(morphophoricity_report(cube).morphophoric);

    j["bloch"][0] = {1.0, 1.0, 0.0};  // not unit
    CHECK_THROWS_AS(io::povm_from_json(j), std::invalid_argument);
}

TEST_CASE("schema violations") {
    const Povm sic = designs::catalog_build("sic-d2").povm;
    json j = io::povm_to_json(sic);

    json missing = j;
    missing["effects"].erase(3);
    CHECK_THROWS_WITH_AS(static_cast<void>(io::povm_from_json(missing)),
                         doctest::Contains("sum"), std::invalid_argument);

    json nohermit = j;
    nohermit["effects"][0][1] = {0.9, 0.0};
    CHECK_THROWS_WITH_AS(static_cast<void>(io::povm_from_json(nohermit)),
                         doctest::Contains("Hermitian"), std::invalid_argument);

    json baddim = j;
    baddim["dim"] = 3;
    CHECK_THROWS(io::povm_from_json(baddim));

    CHECK_THROWS(io::povm_from_json(json::object()));
}

TEST_CASE("probability vectors and states") {
    const auto bare = io::probability_vector_from_json(json::parse("[0.5, 0.25, 0.25]"));
    CHECK(bare.size() == 3);
    const auto wrapped = io::probability_vector_from_json(json::parse("{\"p\": [1.0]}"));
    CHECK(wrapped.size() == 1);

    Rng rng(71);
    const ComplexMatrix rho = rng.hs_mixed_state(3);
    const ComplexMatrix back = io::state_from_json(io::state_to_json(rho));
    CHECK((back - rho).frobenius_norm() == 0.0);
}

TEST_CASE("graph exports") {
    const auto entry = designs::catalog_build("mub", {2});
    const auto g = graph::build_orthogonality_graph(*entry.design);
    const std::string edges = io::adjacency_list(g);
    CHECK(edges == "0 1\n2 3\n4 5\n");

    const auto params = graph::srg_analysis(g, 2);
    const auto cliques = graph::clique_analysis(g, params);
    const json j = io::graph_params_json(g, params, cliques);
    CHECK(j["n"] == 6);
    CHECK(j["kappa"] == 1);
    CHECK(j["c"] == 1);
}

TEST_CASE("cli catalog, verify and tomography") {
    const fs::path povm_path = temp_file("sic.json");
    const auto made = run_cli("catalog --name sic-d2 --output " + povm_path.string());
    CHECK(made.status == 0);

    const auto verify = run_cli("verify --input " + povm_path.string() + " --format json");
    CHECK(verify.status == 0);
    const json report = json::parse(verify.out);
    CHECK(report["morphophoric"] == true);
    CHECK(report["alpha"].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(report["design_level"] == 2);

    // tomography roundtrip through files
    const Povm sic = io::load_povm(povm_path.string());
    Rng rng(72);
    const ComplexMatrix rho = rng.hs_mixed_state(2);
    const fs::path probs_path = temp_file("probs.json");
    io::write_file(probs_path.string(), json(measurement_map(sic, rho)).dump());
    const auto tomo = run_cli("tomography --input " + povm_path.string() + " --probs " +
                              probs_path.string() + " --format json");
    CHECK(tomo.status == 0);
    const ComplexMatrix recovered = io::state_from_json(json::parse(tomo.out));
    CHECK((recovered - rho).frobenius_norm() < 1e-10);

    // invalid POVM: effects scaled to 0.99 of the identity
    json bad = io::povm_to_json(sic);
    for (auto& effect : bad["effects"])
        for (auto& entry : effect)
            for (auto& part : entry) part = part.get<double>() * 0.99;
    const fs::path bad_path = temp_file("bad.json");
    io::write_file(bad_path.string(), bad.dump());
    const auto broken = run_cli("verify --input " + bad_path.string());
    CHECK(broken.status != 0);
    CHECK(broken.out.find("sum") != std::string::npos);

    fs::remove(povm_path);
    fs::remove(probs_path);
    fs::remove(bad_path);
}

TEST_CASE("cli graph and primal") {
    const auto graph = run_cli("graph --name two-distance-d5 --format json");
    CHECK(graph.status == 0);
    const json row = json::parse(graph.out);
    CHECK(row["n"] == 45);
    CHECK(row["kappa"] == 12);
    CHECK(row["lambda"] == 3);
    CHECK(row["mu"] == 3);
    CHECK(row["d"] == 5);
    CHECK(row["r"] == 3);
    CHECK(row["q"] == 3);
    CHECK(row["psi"] == 1);
    CHECK(row["c"] == 1);
    CHECK(row["maximal_cliques"] == 27);
    CHECK(row["matches_known_table"] == true);

    const fs::path sky = temp_file("sky.json");
    const fs::path ground = temp_file("ground.json");
    run_cli("catalog --name mub --params 2 --output " + sky.string());
    run_cli("catalog --name sic-d2 --output " + ground.string());
    const auto primal = run_cli("primal --sky " + sky.string() + " --ground " + ground.string() +
                                " --format json");
    CHECK(primal.status == 0);
    const json rep = json::parse(primal.out);
    CHECK(rep["morphophoric_sky"] == true);
    CHECK(rep["urgleichung_residual"].get<double>() < 1e-10);

    fs::remove(sky);
    fs::remove(ground);
}

TEST_CASE("cli reports are deterministic") {
    const std::string cmd = "geometry --name bipyramid --samples 60 --seed 24142 --format json";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
    const json rep = json::parse(first.out);
    CHECK(rep["seed"] == 24142);
    CHECK(rep["duality"]["self_dual_failures"] == 0);
}
