#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "doctest.h"
#include "pslab/io.hpp"
#include "pslab/scenario.hpp"

using namespace pslab;
namespace fs = std::filesystem;

namespace {

using nlohmann::json;

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("pslab_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json frustum_config() {
    return json{{"kind", "verify-bounds"}, {"family", "cone-frustrum"},
                {"n", 2},                  {"a", 0.5},
                {"rho", 0.5},              {"rho_prime", 0.3},
                {"offset", 0.2}};
}

} // namespace

TEST_CASE("config field diagnostics") {
    CHECK_THROWS_WITH_AS(parse_scenario(json{{"family", "cone-frustrum"}}),
                         "config field 'kind' is missing",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_scenario(json{{"kind", "verify-bounds"}}),
                         "config field 'family' is missing",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_scenario(json{{"kind", "walk"}}),
                         "field 'kind' must be one of rearrange-grid, "
                         "verify-bounds, sweep, oracle-suite",
                         std::invalid_argument);

    auto doc = frustum_config();
    doc["famly"] = "typo";
    CHECK_THROWS_WITH_AS(parse_scenario(doc), "unknown config field 'famly'",
                         std::invalid_argument);

    doc = frustum_config();
    doc["offsets"] = json::array();
    CHECK_THROWS_AS(parse_scenario(doc), std::invalid_argument);

    doc = frustum_config();
    doc["offsets"] = {0.1, 0.2};
    CHECK_THROWS_WITH_AS(parse_scenario(doc),
                         "fields 'offset' and 'offsets' are mutually exclusive",
                         std::invalid_argument);

    doc = frustum_config();
    doc["tolerance"] = 0.0;
    CHECK_THROWS_AS(parse_scenario(doc), std::invalid_argument);
    CHECK_NOTHROW(parse_scenario(
        json{{"kind", "oracle-suite"}, {"tolerance", 0.0}}));

    doc = frustum_config();
    doc["kind"] = "sweep";
    doc["bound"] = "corollary-young";
    auto cfg = parse_scenario(doc);
    CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);

    CHECK_THROWS_WITH_AS(
        parse_scenario(json{{"kind", "verify-bounds"}, {"family", "staircase"}}),
        "config field 'levels' is missing for the staircase family",
        std::invalid_argument);
}

TEST_CASE("malformed config file diagnostics") {
    const auto dir = fresh_dir("badcfg");
    const auto path = (dir / "broken.json").string();
    write_text_file(path, "{\"kind\": \"sweep\",,}");
    try {
        load_scenario(path);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
}

TEST_CASE("verify-bounds scenario on the frustum") {
    auto doc = frustum_config();
    const auto dir = fresh_dir("verify");
    doc["out_dir"] = dir.string();
    const auto res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 0);

    const auto report = json::parse(read_text_file((dir / "reports.json").string()));
    CHECK(report.at("reports").size() == 7);
    CHECK(report.at("skipped").empty());
    for (const auto& r : report.at("reports")) {
        CHECK(r.at("verdict").get<std::string>() != "violated");
        CHECK(r.at("lhs").get<double>() <=
              r.at("rhs").get<double>() * (1.0 + r.at("tolerance").get<double>()) +
                  1e-15);
    }
}

TEST_CASE("verify-bounds skips bounds a jump family cannot satisfy") {
    json doc{{"kind", "verify-bounds"},
             {"family", "staircase"},
             {"n", 2},
             {"levels", {{0.2, 0.9}, {0.5, 0.6}, {0.8, 0.2}}},
             {"centers", {{0.0, 0.0}, {0.3, 0.0}, {0.7, 0.0}}}};
    const auto dir = fresh_dir("verify_stairs");
    doc["out_dir"] = dir.string();
    const auto res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 0);
    const auto report = json::parse(read_text_file((dir / "reports.json").string()));
    // Sobolev-only bounds and the quadratic corollaries drop out.
    CHECK(report.at("reports").size() == 2);
    CHECK(report.at("skipped").size() == 5);
}

TEST_CASE("a caller-supplied constant below the true one is reported") {
    auto doc = frustum_config();
    doc["morrey_constant"] = 1e-6;
    const auto dir = fresh_dir("verify_bad_m");
    doc["out_dir"] = dir.string();
    const auto res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 1);
}

TEST_CASE("sweep determinism across reruns and worker counts") {
    json doc{{"kind", "sweep"},      {"family", "cone-frustrum"},
             {"n", 2},               {"a", 0.5},
             {"rho", 0.5},           {"rho_prime", 0.3},
             {"offsets", {0.0, 0.1, 0.2}},
             {"p_values", {1.5, 2.0}},
             {"bound", "theorem-finite"},
             {"seed", 11}};

    const auto dir_a = fresh_dir("sweep_a");
    const auto dir_b = fresh_dir("sweep_b");
    doc["out_dir"] = dir_a.string();
    auto res_a = run_scenario(parse_scenario(doc));
    doc["out_dir"] = dir_b.string();
    doc["jobs"] = 3;
    auto res_b = run_scenario(parse_scenario(doc));
    CHECK(res_a.exit_code == 0);
    CHECK(res_b.exit_code == 0);

    const auto csv_a = read_text_file((dir_a / "sweep.csv").string());
    const auto csv_b = read_text_file((dir_b / "sweep.csv").string());
    CHECK(csv_a == csv_b);
    CHECK(csv_a.find("violated") == std::string::npos);
    // Header plus one row per (offset, p) tuple.
    CHECK(std::count(csv_a.begin(), csv_a.end(), '\n') == 7);

    CHECK(fs::exists(dir_a / "ratio_vs_offset_p1.5.txt"));
    CHECK(read_text_file((dir_a / "ratio_vs_offset_p2.txt").string()) ==
          read_text_file((dir_b / "ratio_vs_offset_p2.txt").string()));
}

TEST_CASE("oracle suite selection and tolerance override") {
    json doc{{"kind", "oracle-suite"}, {"suite", json::array()}};
    const auto dir = fresh_dir("oracle_empty");
    doc["out_dir"] = dir.string();
    auto res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 0);
    auto summary = json::parse(read_text_file((dir / "oracle_summary.json").string()));
    CHECK(summary.at("checks").empty());
    CHECK(summary.at("all_pass").get<bool>());

    doc["suite"] = {"constants", "symdiff"};
    res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 0);
    summary = json::parse(read_text_file((dir / "oracle_summary.json").string()));
    CHECK(summary.at("checks").size() == 2);
    for (const auto& ck : summary.at("checks"))
        CHECK(ck.at("pass").get<bool>());

    // Zero tolerance is unattainable under quadrature and must be
    // reported as failed with the measured discrepancy.
    doc["tolerance"] = 0.0;
    doc["suite"] = {"constants"};
    res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 1);
    summary = json::parse(read_text_file((dir / "oracle_summary.json").string()));
    CHECK(!summary.at("checks")[0].at("pass").get<bool>());
    CHECK(summary.at("checks")[0].at("discrepancy").get<double>() > 0.0);

    doc["suite"] = {"nonsense"};
    CHECK_THROWS_WITH_AS(run_scenario(parse_scenario(doc)),
                         "field 'suite' names an unknown check 'nonsense'",
                         std::invalid_argument);
}

TEST_CASE("rearrange-grid scenario artifacts") {
    auto doc = frustum_config();
    doc["kind"] = "rearrange-grid";
    doc["grid_cells"] = 48;
    doc["thresholds"] = 12;
    const auto dir = fresh_dir("regrid");
    doc["out_dir"] = dir.string();
    const auto res = run_scenario(parse_scenario(doc));
    CHECK(res.exit_code == 0);

    const auto grid = load_grid_field((dir / "input.field").string());
    const auto star = load_grid_field((dir / "rearranged.field").string());
    CHECK(grid.dims[0] == 48);
    CHECK(star.max_value() <= grid.max_value() + 1e-12);

    const auto plot = read_text_file((dir / "level_symdiff.txt").string());
    CHECK(std::count(plot.begin(), plot.end(), '\n') == 12);
}

TEST_CASE("grid container round trip") {
    const auto u = field_from_function(
        2,
        [](const Point& p) {
            return std::max(0.0, 0.5 - std::hypot(p[0], p[1]));
        },
        {-1.0, -1.0, 0.0}, {1.0, 1.0, 0.0}, 32);
    const auto dir = fresh_dir("gridio");
    const auto path = (dir / "u.field").string();
    save_grid_field(u, path);
    const auto back = load_grid_field(path);
    CHECK(back.n == u.n);
    CHECK(back.h == u.h);
    CHECK(back.dims == u.dims);
    CHECK(back.values == u.values);

    write_text_file(path, read_text_file(path).substr(0, 200));
    CHECK_THROWS_AS(load_grid_field(path), std::runtime_error);
}

TEST_CASE("csv import") {
    const auto dir = fresh_dir("csvio");
    const auto path = (dir / "u.csv").string();
    write_text_file(path, "0,0,0,0\n0,1,2,0\n0,3,4,0\n0,0,0,0\n");
    const auto u = grid_from_csv(path, {0.0, 0.0, 0.0}, 0.5);
    CHECK(u.n == 2);
    CHECK(u.dims[0] == 4);
    CHECK(u.dims[1] == 4);
    CHECK(u.values[size_t(u.flat_index(1, 1, 0))] == 1.0);
    CHECK(u.values[size_t(u.flat_index(2, 2, 0))] == 4.0);

    write_text_file(path, "0,1,2,3,0\n");
    const auto line = grid_from_csv(path, {0.0, 0.0, 0.0}, 1.0);
    CHECK(line.n == 1);
    CHECK(line.dims[0] == 5);

    write_text_file(path, "0,1\n0\n");
    CHECK_THROWS_AS(grid_from_csv(path, {0.0, 0.0, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("spec and young round trips") {
    const auto spec = family_cone_frustrum(2, 0.5, 0.5, 0.3, {0.2, 0.0, 0.0});
    const auto back = spec_from_json(spec_to_json(spec));
    CHECK(back.family == spec.family);
    for (const Point x : {Point{0.3, 0.1, 0.0}, Point{0.25, -0.05, 0.0}})
        CHECK(eval_extremal(back, x) ==
              doctest::Approx(eval_extremal(spec, x)).epsilon(1e-14));

    const auto pow_back = young_from_json(young_to_json(YoungFunction::power(2.5)));
    CHECK(pow_back.is_power());
    CHECK(pow_back.derivative(1.0) == doctest::Approx(2.5).epsilon(1e-14));

    const auto pl = YoungFunction::piecewise_linear(
        {{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}});
    const auto pl_back = young_from_json(young_to_json(pl));
    CHECK(!pl_back.is_power());
    CHECK(pl_back.breakpoints() == pl.breakpoints());
    CHECK_THROWS_AS(young_from_json(json{{"slope", 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("report serialization carries the verdict fields") {
    const auto rep = verify_theorem_main(
        family_cone_frustrum(2, 0.5, 0.5, 0.3, {0.2, 0.0, 0.0}), 1.0);
    const auto doc = report_to_json(rep);
    CHECK(doc.at("bound_id") == "theorem-main");
    CHECK(doc.at("verdict") == "holds");
    CHECK(doc.at("vacuous") == false);
    CHECK(doc.at("params").contains("kn"));
    CHECK(doc.at("lhs").get<double>() == rep.lhs);
    CHECK(doc.at("tolerance").get<double>() == rep.tolerance);
}
