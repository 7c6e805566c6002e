#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridcomp/grid_model.hpp"
#include "gridcomp/steady_state.hpp"
#include "oracle.hpp"

#include <cmath>
#include <cstring>

using namespace gridcomp;

TEST_CASE("canonical grid carries the reference 5-bus parameters") {
    const GridSpec g = canonical_grid();
    REQUIRE(g.size() == 4);
    const double lines[5] = {0.67, 0.49, 0.83, 0.03, 0.81};
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(g.der(k).r_line == lines[k]);
        CHECK(g.der(k).v_ref == 315.0);
        CHECK(g.der(k).r_load == 99.0);
        CHECK(g.der(k).r_droop == 0.1);
    }
}

TEST_CASE("canonical grid is bit-identical across calls") {
    const GridSpec a = canonical_grid();
    const GridSpec b = canonical_grid();
    REQUIRE(a.upstream.size() == b.upstream.size());
    for (std::size_t k = 0; k < a.total(); ++k) {
        CHECK(std::memcmp(&a.der(k), &b.der(k), sizeof(DerSpec)) == 0);
    }
}

TEST_CASE("zero program on the canonical grid validates") {
    const GridSpec g = canonical_grid();
    CHECK(validate(g, ControlProgram::zeros(g.size())).ok());
}

TEST_CASE("droop offset equal to the load resistance is flagged") {
    const GridSpec g = canonical_grid();
    ControlProgram p = ControlProgram::zeros(g.size());
    p.droop_offsets[0] = 98.9; // r_droop + offset == r_load on DER 1
    const auto report = validate(g, p);
    REQUIRE_FALSE(report.ok());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::lambda_near_zero);
    CHECK(report.violations[0].der_number == 1);
}

TEST_CASE("offset nulling the weight denominator is flagged") {
    const GridSpec g = canonical_grid();
    // Root of r_1 * (1 - (r_droop + x) / r_load) - (r_droop + x) in x.
    const DerSpec d = g.upstream[0];
    const double dr = oracle::bisect(
        [&](double x) {
            const double r = d.r_droop + x;
            return d.r_line * (1.0 - r / d.r_load) - r;
        },
        0.0, 1.0);
    ControlProgram p = ControlProgram::zeros(g.size());
    p.droop_offsets[0] = dr;
    const auto report = validate(g, p);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].kind == ViolationKind::weight_denominator_zero);
    CHECK(report.violations[0].der_number == 1);
}

TEST_CASE("dimension mismatches form their own violation class") {
    const GridSpec g = canonical_grid();
    ControlProgram p = ControlProgram::zeros(g.size());
    p.input_steps.push_back(0.0);
    auto report = validate(g, p);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].kind == ViolationKind::dimension_mismatch);

    p = ControlProgram::zeros(g.size());
    p.droop_offsets.pop_back();
    report = validate(g, p);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].kind == ViolationKind::dimension_mismatch);
}

TEST_CASE("bad DER parameters are reported with their DER number") {
    GridSpec g = canonical_grid();
    g.upstream[2].r_line = 0.0;
    g.downstream.v_ref = -1.0;
    const auto report = validate(g, ControlProgram::zeros(g.size()));
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].kind == ViolationKind::bad_parameter);
    CHECK(report.violations[0].der_number == 3);
    CHECK(report.violations[1].der_number == 5);
}

TEST_CASE("validate is total on degenerate input") {
    GridSpec g;
    g.downstream = DerSpec{};
    ControlProgram p; // all vectors empty
    const auto report = validate(g, p);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.to_string().empty());

    GridSpec nan_grid = canonical_grid();
    nan_grid.upstream[1].r_load = std::nan("");
    CHECK_FALSE(validate(nan_grid, ControlProgram::zeros(4)).ok());
}

TEST_CASE("require_valid throws with the report text") {
    const GridSpec g = canonical_grid();
    ControlProgram p = ControlProgram::zeros(g.size());
    CHECK_NOTHROW(require_valid(g, p));
    p.droop_offsets[0] = 98.9;
    CHECK_THROWS_AS(require_valid(g, p), ValidationError);
}
