#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tqsim/config.hpp"
#include "tqsim/io.hpp"

using namespace tqsim;

namespace {

const char* kMinimalConfig = R"(
# minimal run configuration
[system]
ec = 0.348
ej = 10.158
g = 0.02
omega_r = 6.99
)";

std::filesystem::path temp_dir(const char* tag) {
    auto p = std::filesystem::temp_directory_path() / (std::string("tqsim_test_") + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("minimal config echoes the device parameters") {
    const RunConfig cfg = parse_config(kMinimalConfig);
    CHECK(cfg.params.ec == doctest::Approx(0.348));
    CHECK(cfg.params.ej == doctest::Approx(10.158));
    CHECK(cfg.params.g == doctest::Approx(0.02));
    CHECK(cfg.params.omega_r == doctest::Approx(6.99));
    CHECK(cfg.params.ng == 0.0);
    CHECK(cfg.models.size() == 4);
}

TEST_CASE("missing required key names the field") {
    const char* text = R"(
[system]
ec = 0.348
g = 0.02
omega_r = 6.99
)";
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("'ej'"), ConfigError);
}

TEST_CASE("unknown keys are rejected with their location") {
    const std::string text = std::string(kMinimalConfig) + "\n[rabi-sweep]\nampmax = 1\n";
    CHECK_THROWS_WITH_AS(parse_config(text, "cfg.ini"), doctest::Contains("ampmax"),
                         ConfigError);
    try {
        parse_config(text, "cfg.ini");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("cfg.ini:") != std::string::npos);
    }
}

TEST_CASE("negative duration fails validation naming the field") {
    const std::string text =
        std::string(kMinimalConfig) + "\n[rabi-sweep]\nduration = -5\n";
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("rabi-sweep.duration"),
                         ConfigError);
}

TEST_CASE("malformed lines carry line numbers") {
    const std::string text = std::string(kMinimalConfig) + "\nnot a pair\n";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("unknown experiment name is a usage error") {
    RunConfig cfg = parse_config(kMinimalConfig);
    cfg.experiment = "does-not-exist";
    CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("model list parsing") {
    const std::string text = std::string(kMinimalConfig) + "\n[models]\nlist = gr, r\n";
    const RunConfig cfg = parse_config(text);
    REQUIRE(cfg.models.size() == 2);
    CHECK(cfg.models[0] == ModelVariant::Gr);
    CHECK(cfg.models[1] == ModelVariant::R);
    CHECK_THROWS_AS(variant_from_name("qubit"), std::invalid_argument);
}

TEST_CASE("csv cells round-trip at full precision") {
    const auto dir = temp_dir("csv");
    const std::string path = (dir / "t.csv").string();
    const double value = 0.1234567890123456789;
    {
        CsvWriter csv(path, {"a", "b"});
        csv.row({value, std::string("gr")});
    }
    std::ifstream in(path);
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == "a,b");
    const double parsed = std::stod(line.substr(0, line.find(',')));
    CHECK(parsed == value);
    std::filesystem::remove_all(dir);
}

TEST_CASE("spectra sweep experiment writes its artifacts") {
    RunConfig cfg = parse_config(kMinimalConfig);
    cfg.experiment = "spectra-sweep";
    const auto dir = temp_dir("spectra");
    cfg.out_dir = dir.string();
    CHECK(run_experiment(cfg) == 0);

    std::ifstream csv(dir / "spectra_sweep.csv");
    REQUIRE(csv.good());
    std::string line;
    int rows = -1;  // header
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 7 * 4);  // default n_exp grid times default model list

    std::ifstream sidecar(dir / "spectra-sweep_provenance.json");
    REQUIRE(sidecar.good());
    std::stringstream buf;
    buf << sidecar.rdbuf();
    CHECK(buf.str().find("\"seed\"") != std::string::npos);
    CHECK(buf.str().find("\"rel_tol\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("experiment dispatch rejects unknown names") {
    RunConfig cfg = parse_config(kMinimalConfig);
    cfg.experiment = "spectra-sweep";
    cfg.validate();
    RunConfig bad = cfg;
    bad.experiment = "nope";
    CHECK_THROWS_AS(run_experiment(bad), UsageError);
}
