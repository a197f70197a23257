#include "helpers.hpp"
#include "sweep.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cpl;

namespace {

SweepSpec rlc_sweep(int steps = 3) {
    SweepSpec spec;
    spec.base = cpltest::rlc_system();
    spec.axis_i = 0;
    spec.axis_j = 1;
    spec.lo_i = 500.0;
    spec.hi_i = 3000.0;
    spec.steps_i = steps;
    spec.lo_j = 450.0;
    spec.hi_j = 1000.0;
    spec.steps_j = steps;
    return spec;
}

const SweepCell& cell_at(const RegionMap& map, const SweepSpec& spec, double vi, double vj) {
    for (const auto& cell : map.cells) {
        if (cell.value_i == vi && cell.value_j == vj) return cell;
    }
    (void)spec;
    FAIL("cell not found");
    return map.cells.front();
}

}  // namespace

TEST_CASE("sweep classifies the benchmark anchor cells") {
    const auto spec = rlc_sweep();
    const auto map = sweep(spec, {}, 1);
    REQUIRE(map.cells.size() == 9);
    CHECK(cell_at(map, spec, 500.0, 450.0).kind == OutcomeKind::Dominant);
    CHECK(cell_at(map, spec, 3000.0, 1000.0).kind == OutcomeKind::NoEquilibrium);
    CHECK_FALSE(map.boundary.empty());
}

TEST_CASE("sweep output is independent of the worker count and rerun") {
    const auto spec = rlc_sweep();
    const auto csv1 = region_csv(sweep(spec, {}, 1), spec.base.n());
    const auto csv8 = region_csv(sweep(spec, {}, 8), spec.base.n());
    const auto csv1b = region_csv(sweep(spec, {}, 1), spec.base.n());
    CHECK(csv1 == csv8);
    CHECK(csv1 == csv1b);
    CHECK(csv1.rfind("b_i,b_j,outcome,x1,x2\n", 0) == 0);
}

TEST_CASE("sweep spec validation") {
    auto spec = rlc_sweep();
    spec.axis_j = 0;
    CHECK_THROWS_AS(sweep(spec, {}, 1), std::invalid_argument);
    spec = rlc_sweep();
    spec.steps_i = 1;
    CHECK_THROWS_AS(sweep(spec, {}, 1), std::invalid_argument);
    spec = rlc_sweep();
    spec.hi_i = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sweep(spec, {}, 1), std::invalid_argument);
}

TEST_CASE("zero crossings are recorded as warnings, not aborts") {
    SweepSpec spec;
    spec.base = cpltest::symmetric_pair_system();
    spec.axis_i = 0;
    spec.axis_j = 1;
    spec.lo_i = -1.0;
    spec.hi_i = 1.0;
    spec.steps_i = 3;  // includes b_1 = 0
    spec.lo_j = 0.5;
    spec.hi_j = 1.0;
    spec.steps_j = 2;
    const auto map = sweep(spec, {}, 2);
    REQUIRE(map.cells.size() == 6);
    bool warned = false;
    for (const auto& cell : map.cells) {
        if (cell.value_i == 0.0) {
            CHECK_FALSE(cell.warnings.empty());
            warned = true;
        }
    }
    CHECK(warned);
}

TEST_CASE("bisection finds exactly one transition between the anchor points") {
    const auto base = cpltest::rlc_system();
    const IntegrationOptions opts;

    // Count classification changes along the straight segment.
    auto kind_at = [&](double t) {
        SystemData sys = base;
        sys.b[0] = 500.0 + t * 2500.0;
        sys.b[1] = 450.0 + t * 550.0;
        return classify(sys, opts).outcome.kind;
    };
    int transitions = 0;
    OutcomeKind prev = kind_at(0.0);
    for (int k = 1; k <= 16; ++k) {
        const OutcomeKind kind = kind_at(k / 16.0);
        if (kind != prev) ++transitions;
        prev = kind;
    }
    CHECK(transitions == 1);

    const auto point = bisect_boundary(base, 0, 1, {500.0, 450.0}, {3000.0, 1000.0}, opts);
    // The refined point must separate the two anchors along the segment.
    CHECK(point[0] > 500.0);
    CHECK(point[0] < 3000.0);
    const double t = (point[0] - 500.0) / 2500.0;
    CHECK(point[1] == Catch::Approx(450.0 + t * 550.0).epsilon(1e-9));
}

TEST_CASE("refine_boundary produces one point per boundary pair") {
    const auto spec = rlc_sweep();
    const auto map = sweep(spec, {}, 4);
    const auto points = refine_boundary(spec, map, {});
    CHECK(points.size() == map.boundary.size());
    const auto csv = boundary_csv(points);
    CHECK(csv.rfind("b_i,b_j\n", 0) == 0);
}

TEST_CASE("bisect_boundary rejects identically classified endpoints") {
    const auto base = cpltest::rlc_system();
    CHECK_THROWS_AS(bisect_boundary(base, 0, 1, {500.0, 450.0}, {510.0, 460.0}, {}),
                    std::invalid_argument);
}
