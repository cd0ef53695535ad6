#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ntf/experiment.hpp"
#include "ntf/io.hpp"
#include "ntf/scenario.hpp"

using namespace ntf;

namespace {

const char* kSampleConfig = R"(# sample configuration
[run]
scenario = gaussian-bump
solver = relaxation
T = 0.5
output_times = 0, 0.25, 0.5
out_dir = /tmp/ntf-test-run

[model]
velocity = greenshields
gamma = 0.1
kernel = exponential
epsilon = 0.05

[grid]
x_left = -8
x_right = 8
n_cells = 200

[scenario]
background = 0.3
amplitude = 0.3
)";

}  // namespace

TEST_CASE("config parsing") {
    const ConfigText text = parse_config(kSampleConfig);
    CHECK(text.get("run.scenario", "") == "gaussian-bump");
    CHECK(text.get_double("model.epsilon", 0.0) == 0.05);
    CHECK(text.get_list("run.output_times") == std::vector<double>{0.0, 0.25, 0.5});
    CHECK(text.get("missing.key", "fallback") == "fallback");
    CHECK_THROWS_AS(parse_config("[run\nx=1"), AdmissibilityError);
    CHECK_THROWS_AS(parse_config("just some text"), AdmissibilityError);
}

TEST_CASE("overrides replace values") {
    ConfigText text = parse_config(kSampleConfig);
    apply_override(text, "model.epsilon=0.1");
    apply_override(text, "grid.n_cells=100");
    const RunConfig c = run_config_from(text);
    CHECK(c.epsilon == 0.1);
    CHECK(c.n_cells == 100);
    CHECK_THROWS_AS(apply_override(text, "no-equals-sign"), AdmissibilityError);
}

TEST_CASE("resolved run configuration") {
    const RunConfig c = run_config_from(parse_config(kSampleConfig));
    CHECK(c.scenario == "gaussian-bump");
    CHECK(c.solver == "relaxation");
    CHECK(c.T == 0.5);
    CHECK(c.gamma == 0.1);
    CHECK(c.n_cells == 200);
    CHECK(c.scenario_knobs.at("background") == 0.3);
    CHECK(validate_run_config(c).empty());
}

TEST_CASE("validation catches bad requests") {
    RunConfig c = run_config_from(parse_config(kSampleConfig));
    c.solver = "spectral";
    CHECK_FALSE(validate_run_config(c).empty());
    c = run_config_from(parse_config(kSampleConfig));
    c.epsilon = -1.0;
    CHECK_FALSE(validate_run_config(c).empty());
    c = run_config_from(parse_config(kSampleConfig));
    c.output_times = {2.0};
    CHECK_FALSE(validate_run_config(c).empty());
}

TEST_CASE("sweep lists must be strictly monotone") {
    ConfigText text = parse_config(kSampleConfig);
    text.entries["sweep.axis"] = "epsilon";
    text.entries["sweep.values"] = "0.1, 0.05, 0.025";
    CHECK_NOTHROW(sweep_config_from(text));
    text.entries["sweep.values"] = "0.1, 0.05, 0.05";
    CHECK_THROWS_AS(sweep_config_from(text), AdmissibilityError);
    text.entries["sweep.values"] = "0.1, 0.2, 0.05";
    CHECK_THROWS_AS(sweep_config_from(text), AdmissibilityError);
}

TEST_CASE("config hash tracks content") {
    const RunConfig a = run_config_from(parse_config(kSampleConfig));
    RunConfig b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.epsilon = 0.07;
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("scenario library") {
    const Scenario bump = make_scenario("gaussian-bump");
    CHECK(bump.profile(0.0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(bump.far_left == 0.3);

    const Scenario smooth = make_scenario("smoothed-riemann");
    CHECK(smooth.profile(-100.0) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(smooth.profile(100.0) == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(smooth.far_left == 0.3);
    CHECK(smooth.far_right == 0.6);

    const Scenario sin = make_scenario("sinusoid");
    CHECK(sin.far_left == 0.4);

    CHECK_THROWS_AS(make_scenario("square-wave"), AdmissibilityError);

    const Grid1D grid = make_grid(-8.0, 8.0, 100, bump);
    CHECK(grid.ext_left == 0.3);
    const std::vector<double> rho0 = discretize(bump, grid);
    CHECK(rho0.size() == 100);
}

TEST_CASE("library-level run execution and artifacts") {
    ConfigText text = parse_config(kSampleConfig);
    apply_override(text, "run.scenario=constant");
    apply_override(text, "scenario.value=0.3");
    apply_override(text, "run.T=0.05");
    apply_override(text, "grid.n_cells=64");
    const RunConfig c = run_config_from(text);

    const RunResult result = execute_run(c);
    CHECK(result.diagnostics.bounds_violation <= 1e-12);
    CHECK(result.diagnostics.tv_spacetime <= 1e-12);
    CHECK(result.diagnostics.q_rho_value <= 1e-12);
    CHECK(std::fabs(result.diagnostics.entropy_min) <= 1e-13);

    const std::string dir = "/tmp/ntf-test-artifacts";
    std::filesystem::remove_all(dir);
    write_run_artifacts(result, dir);
    for (const char* name : {"params.json", "snapshots.csv", "diagnostics.csv",
                             "passfail.json", "telemetry.json", "profile.dat", "plot.gp"}) {
        CHECK(std::filesystem::exists(dir + "/" + std::string(name)));
    }

    // Library-level determinism: a second run writes identical bytes.
    const std::string snapshot_a = read_text_file(dir + "/snapshots.csv");
    const RunResult again = execute_run(c);
    write_run_artifacts(again, dir);
    CHECK(read_text_file(dir + "/snapshots.csv") == snapshot_a);
    std::filesystem::remove_all(dir);
}

TEST_CASE("gamma = 0 run goes through the characteristic solver") {
    ConfigText text = parse_config(kSampleConfig);
    apply_override(text, "run.solver=characteristics");
    apply_override(text, "model.gamma=0");
    apply_override(text, "run.T=0.1");
    apply_override(text, "grid.n_cells=64");
    const RunConfig c = run_config_from(text);
    const RunResult result = execute_run(c);
    CHECK(result.solution.rho.levels() >= 2);
}

TEST_CASE("inadmissible configs raise the admissibility error") {
    ConfigText text = parse_config(kSampleConfig);
    apply_override(text, "model.gamma=0.5");  // threshold for these presets is 1/6
    const RunConfig c = run_config_from(text);
    CHECK_THROWS_AS(execute_run(c), AdmissibilityError);
}
