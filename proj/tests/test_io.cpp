#include "classify.hpp"
#include "helpers.hpp"
#include "json_io.hpp"
#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>

using namespace cpl;
using nlohmann::json;

namespace {

std::string data_path(const std::string& name) { return std::string(CPL_DATA_DIR) + "/" + name; }
std::string schema_path(const std::string& name) {
    return std::string(CPL_SCHEMA_DIR) + "/" + name;
}

json load_schema(const std::string& name) {
    const auto text = cpltest::read_text_file(schema_path(name));
    REQUIRE_FALSE(text.empty());
    return json::parse(text);
}

}  // namespace

TEST_CASE("all shipped inputs parse, validate and match the input schema") {
    const auto schema = load_schema("input.schema.json");
    const struct {
        const char* file;
        const char* model;
        int n;
    } cases[] = {
        {"rlc_feasible.json", "raw", 2},   {"rlc_infeasible.json", "raw", 2},
        {"hvdc_4node.json", "hvdc", 3},    {"microgrid_2node.json", "dc_microgrid", 2},
        {"ac_2bus.json", "ac", 2},         {"scalar_double_root.json", "ac", 1},
    };
    for (const auto& c : cases) {
        INFO(c.file);
        const auto text = cpltest::read_text_file(data_path(c.file));
        REQUIRE_FALSE(text.empty());
        const auto loaded = load_system_json(text);
        CHECK(loaded.model == c.model);
        CHECK(loaded.sys.n() == c.n);
        CHECK(loaded.validation.passed);
        std::string err;
        CHECK(cpltest::schema_check(schema, json::parse(text), err));
        INFO(err);
    }
}

TEST_CASE("raw documents round-trip exactly") {
    const auto sys = cpltest::rlc_system();
    const auto text = system_json(sys);
    const auto loaded = load_system_json(text);
    CHECK((loaded.sys.A - sys.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((loaded.sys.b - sys.b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((loaded.sys.w - sys.w).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(load_system_json("not json at all"), ParseError);
    CHECK_THROWS_AS(load_system_json("[1,2,3]"), ParseError);
    CHECK_THROWS_AS(load_system_json(R"({"n":1})"), ParseError);  // missing model
    CHECK_THROWS_AS(load_system_json(R"({"model":"exotic"})"), ParseError);
    CHECK_THROWS_AS(load_system_json(R"({"model":"raw","n":1,"A":[[1]],"b":[1]})"), ParseError);
    CHECK_THROWS_AS(load_system_json(R"({"model":"raw","n":2,"A":[[1]],"b":[1,1],"w":[0,0]})"),
                    ParseError);
    CHECK_THROWS_AS(
        load_system_json(R"({"model":"raw","n":1,"A":[["x"]],"b":[1],"w":[0]})"), ParseError);
}

TEST_CASE("parser rejects NaN and infinity") {
    // 1e999 overflows double; strict parsing must reject rather than absorb.
    CHECK_THROWS_AS(load_system_json(R"({"model":"raw","n":1,"A":[[1e999]],"b":[1],"w":[0]})"),
                    ParseError);
    CHECK_THROWS_AS(load_system_json(R"({"model":"raw","n":1,"A":[[NaN]],"b":[1],"w":[0]})"),
                    ParseError);
}

TEST_CASE("malformed network specs are parse errors, not validation failures") {
    const char* negative_y = R"({
        "model": "dc_microgrid",
        "nodes": [{"Rt": 1.0, "Y": -0.5, "k": 0.0, "P": 1.0, "u": 3.0}],
        "lines": []
    })";
    CHECK_THROWS_AS(load_system_json(negative_y), ParseError);

    const char* bad_endpoint = R"({
        "model": "hvdc",
        "v_nodes": [{"V": 100.0}],
        "p_nodes": [{"P": 1.0}],
        "lines": [{"from": "V1", "to": "Q9", "r": 1.0}]
    })";
    CHECK_THROWS_AS(load_system_json(bad_endpoint), ParseError);
}

TEST_CASE("validation failures are returned, not thrown") {
    const char* laplacian = R"({
        "model": "raw", "n": 2,
        "A": [[1.0, -1.0], [-1.0, 1.0]],
        "b": [1.0, 1.0], "w": [1.0, 1.0]
    })";
    const auto loaded = load_system_json(laplacian);
    CHECK_FALSE(loaded.validation.passed);
    CHECK(loaded.model == "raw");
}

TEST_CASE("analysis reports are lossless and schema-conform") {
    const auto schema = load_schema("report.schema.json");
    LoadedSystem input;
    input.model = "raw";
    input.sys = cpltest::rlc_system();
    input.validation = validate_system(input.sys);
    const auto analysis = classify(input.sys);

    const auto text = analysis_report_json(input, analysis, std::nullopt, std::nullopt);
    const json parsed = json::parse(text);
    std::string err;
    CHECK(cpltest::schema_check(schema, parsed, err));
    INFO(err);

    // Lossless round trip: serialize -> parse -> serialize is stable and the
    // payload numbers come back bit-exact.
    CHECK(parsed.dump(2) == text);
    REQUIRE(parsed["outcome"]["kind"] == "dominant");
    CHECK(parsed["outcome"]["x_max"][0].get<double>() == analysis.outcome.x_max[0]);
    CHECK(parsed["outcome"]["x_max"][1].get<double>() == analysis.outcome.x_max[1]);
    CHECK(parsed["seed"]["mu"].get<double>() == analysis.seed.mu);

    // Timings included on demand.
    ReportTimings timings{1.5, 1.0};
    const json with = json::parse(analysis_report_json(input, analysis, std::nullopt, timings));
    CHECK(with.contains("timings"));
    const json without = json::parse(analysis_report_json(input, analysis, "traj.csv", std::nullopt));
    CHECK(without["trajectory_file"] == "traj.csv");
}

TEST_CASE("collapse reports use 1-based indices") {
    LoadedSystem input;
    input.model = "raw";
    input.sys = cpltest::rlc_system(3000.0, 1000.0);
    input.validation = validate_system(input.sys);
    const auto analysis = classify(input.sys);
    const json parsed =
        json::parse(analysis_report_json(input, analysis, std::nullopt, std::nullopt));
    REQUIRE(parsed["outcome"]["kind"] == "none");
    CHECK(parsed["outcome"]["collapsed"] == json::array({2}));
    CHECK(parsed["outcome"]["t_collapse"].get<double>() > 0.0);
}

TEST_CASE("zero power coefficients keep the deviation warning through the report") {
    const char* doc = R"({
        "model": "raw", "n": 2,
        "A": [[2.0, -1.0], [-1.0, 2.0]],
        "b": [0.0, 1.0], "w": [3.0, 3.0]
    })";
    const auto loaded = load_system_json(doc);
    REQUIRE(loaded.validation.passed);
    REQUIRE_FALSE(loaded.validation.warnings.empty());

    const auto analysis = classify(loaded.sys);
    CHECK(analysis.outcome.kind == OutcomeKind::Dominant);
    const json report =
        json::parse(analysis_report_json(loaded, analysis, std::nullopt, std::nullopt));
    CHECK_FALSE(report["validation"]["warnings"].empty());
    CHECK(std::string(report["validation"]["warnings"][0]).find("b[1]") != std::string::npos);
}

TEST_CASE("oracle output matches its schema") {
    const auto schema = load_schema("oracle.schema.json");
    std::string err;
    const auto scalar = json::parse(oracle_json(solve_scalar(1.0, 2.0, 3.0)));
    CHECK(cpltest::schema_check(schema, scalar, err));
    CHECK(scalar["case"] == "stable_unstable_pair");
    const auto planar = json::parse(
        oracle_json(enumerate_equilibria_2d(cpltest::symmetric_pair_system(), 150)));
    CHECK(cpltest::schema_check(schema, planar, err));
    INFO(err);
    CHECK_FALSE(planar.contains("case"));
    CHECK(planar["grid_density"] == 150);
}

TEST_CASE("validation report matches its schema") {
    const auto schema = load_schema("validation.schema.json");
    auto sys = cpltest::symmetric_pair_system();
    sys.b[0] = 0.0;
    std::string err;
    CHECK(cpltest::schema_check(schema, json::parse(validation_json(validate_system(sys))), err));
    INFO(err);
}

TEST_CASE("trajectory CSV layout") {
    const auto sys = cpltest::rlc_system();
    const auto analysis = classify(sys);
    const auto csv = trajectory_csv(analysis.trajectory, sys.n());
    REQUIRE(csv.rfind("t,x1,x2\n", 0) == 0);
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(static_cast<std::size_t>(rows) == analysis.trajectory.times.size() + 1);
}
