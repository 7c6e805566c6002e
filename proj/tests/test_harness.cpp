#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridcomp/harness.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gridcomp;

namespace {

std::string csv_of(std::span<const SweepReport> reports) {
    std::ostringstream os;
    emit_csv(reports, os);
    return os.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("config documents round-trip through the parser") {
    const Config c = canonical_config();
    CHECK(config_from_json(config_to_json(c)) == c);

    Config custom = c;
    custom.direction.reset();
    custom.custom_task = WeightTask{{1.0, 2.5, 3.0, 0.5}, 2};
    custom.amplitude = 0.5;
    custom.override_droop_offsets = std::vector<double>{0.1, 0, 0, 0, 0};
    CHECK(config_from_json(config_to_json(custom)) == custom);
}

TEST_CASE("config files load and report problems as ConfigError") {
    const auto path = std::filesystem::path("harness_test_config.json");
    {
        std::ofstream out(path);
        out << config_to_json(canonical_config()).dump(2);
    }
    const Config c = load_config_file(path.string());
    CHECK(c == canonical_config());
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_config_file("does_not_exist.json"), ConfigError);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_config_file(path.string()), ConfigError);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json{{"grid", 7}}), ConfigError);
}

TEST_CASE("run_case examples") {
    const Config config = canonical_config();
    auto c = run_case(config, Image2x2::from_string("0000"), Direction::clockwise);
    CHECK(c.decoded == 0);
    CHECK(c.expected == 0);
    for (double di : c.delta_i) CHECK(std::abs(di) < 1e-9);

    c = run_case(config, Image2x2::from_string("0010"), Direction::clockwise);
    CHECK(c.decoded == 8);
    CHECK(c.expected == 8);
    CHECK(c.residual < 1e-6);

    c = run_case(config, Image2x2::from_string("1111"), Direction::counterclockwise);
    CHECK(c.decoded == 15);
}

TEST_CASE("run_case respects the encoding amplitude") {
    Config config = canonical_config();
    config.amplitude = 0.25;
    const auto c = run_case(config, Image2x2::from_string("0110"), Direction::clockwise);
    CHECK(c.decoded == c.expected);
    CHECK(c.residual < 1e-6);
}

TEST_CASE("sweep decodes all 16 images in both directions") {
    const Config config = canonical_config();
    for (auto direction : {Direction::clockwise, Direction::counterclockwise}) {
        const auto report = sweep(config, direction);
        REQUIRE(report.cases.size() == 16);
        for (int i = 0; i < 16; ++i) {
            CHECK(report.cases[static_cast<std::size_t>(i)].image.index() == i);
            CHECK(report.cases[static_cast<std::size_t>(i)].decoded ==
                  report.cases[static_cast<std::size_t>(i)].expected);
        }
    }
}

TEST_CASE("counterclockwise one-hot responses stand in ratio 2:8:1:4") {
    const Config config = canonical_config();
    const auto report = sweep(config, Direction::counterclockwise);
    const double weights[4] = {2.0, 8.0, 1.0, 4.0};
    const double anchor = report.cases[1 << (3 - 2)].delta_i[4]; // image 0010
    for (std::size_t k = 0; k < 4; ++k) {
        const double response = report.cases[1u << (3 - k)].delta_i[4];
        CHECK(response / anchor == doctest::Approx(weights[k]).epsilon(1e-9));
    }
}

TEST_CASE("sweep works from explicit override vectors") {
    Config config = canonical_config();
    config.override_droop_offsets = std::vector<double>{0.4688, 0, 0.6748, -0.2647, 0};
    config.override_secondary_offsets =
        std::vector<double>{-1.4897, 0, -2.1445, 0.8412, 0};
    const auto report = sweep(config, Direction::clockwise);
    CHECK(report.droop_offsets == *config.override_droop_offsets);
    for (const auto& c : report.cases) CHECK(c.decoded == c.expected);
}

TEST_CASE("a mis-programmed sweep aborts with the failing case's identity") {
    Config config = canonical_config();
    // No offsets at all: the unprogrammed weights cannot express the rotation.
    config.override_droop_offsets = std::vector<double>(5, 0.0);
    config.override_secondary_offsets = std::vector<double>(5, 0.0);
    try {
        sweep(config, Direction::clockwise);
        FAIL("expected the sweep to abort");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("sweep case") != std::string::npos);
    }
}

TEST_CASE("serial and parallel sweeps agree") {
    const Config config = canonical_config();
    const auto a = sweep(config, Direction::clockwise, {}, false);
    const auto b = sweep(config, Direction::clockwise, {}, true);
    for (int i = 0; i < 16; ++i)
        CHECK(a.cases[static_cast<std::size_t>(i)].delta_i ==
              b.cases[static_cast<std::size_t>(i)].delta_i);
}

TEST_CASE("CSV layout: header plus one row per case") {
    const Config config = canonical_config();
    const std::vector<SweepReport> both = {sweep(config, Direction::clockwise),
                                           sweep(config, Direction::counterclockwise)};
    const std::string csv = csv_of(both);
    CHECK(count_lines(csv) == 33); // header + 16 + 16
    CHECK(csv.substr(0, 9) == "direction");
    CHECK(csv.back() == '\n');

    CHECK(count_lines(csv_of({}))== 1); // header only
}

TEST_CASE("emitted documents are deterministic and re-emit after parsing") {
    const Config config = canonical_config();
    const std::vector<SweepReport> reports = {sweep(config, Direction::clockwise)};
    const std::string csv_a = csv_of(reports);
    const std::string csv_b = csv_of(reports);
    CHECK(csv_a == csv_b);

    const auto j = reports_to_json(reports);
    CHECK(j.dump() == reports_to_json(reports).dump());

    const auto parsed = reports_from_json(j);
    REQUIRE(parsed.size() == 1);
    CHECK(reports_to_json(parsed).dump() == j.dump());
    CHECK(csv_of(parsed) == csv_a);
    CHECK(parsed[0].cases.size() == 16);
    CHECK(parsed[0].grid_fingerprint == reports[0].grid_fingerprint);
}

TEST_CASE("grid fingerprints track the parameters") {
    const GridSpec g = canonical_grid();
    CHECK(grid_fingerprint(g) == grid_fingerprint(canonical_grid()));
    GridSpec other = g;
    other.upstream[0].r_line = 0.671;
    CHECK(grid_fingerprint(other) != grid_fingerprint(g));
}

TEST_CASE("nine-significant-digit formatting") {
    CHECK(format_sig9(3.185035389282103) == "3.18503539");
    CHECK(format_sig9(0.0) == "0");
    CHECK(format_sig9(-0.09117613916435385) == "-0.0911761392");
    CHECK(round_sig9(3.185035389282103) == 3.18503539);
}

TEST_CASE("verification battery passes on the canonical config within a second") {
    const auto start = std::chrono::steady_clock::now();
    const auto report = verify(canonical_config());
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    REQUIRE(report.checks.size() == 8);
    for (const auto& check : report.checks) {
        INFO(check.id, " ", check.name, " measured ", check.measured, " detail ",
             check.detail);
        CHECK(check.passed);
    }
    CHECK(report.all_passed());
    CHECK(elapsed < 1.0);
    CHECK(report.to_text().find("all checks passed") != std::string::npos);
}

TEST_CASE("verification reports failures instead of passing them through") {
    Config config = canonical_config();
    config.grid.upstream[0].r_line = 0.9; // not the canonical grid
    const auto report = verify(config);
    CHECK_FALSE(report.all_passed());
    CHECK_FALSE(report.checks[0].passed); // reference vectors cannot match
    CHECK(report.to_text().find("CHECKS FAILED") != std::string::npos);
}
