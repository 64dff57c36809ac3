#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "planecode/geometry.hpp"
#include "planecode/io.hpp"
#include "planecode/suite.hpp"

using namespace planecode;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "planecode-test-suite";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("ingestion row accepts a good file and rejects a corrupted one") {
    auto text = plane_to_text(pg2(Field::make(3, 1)));
    const auto good = scratch("good.plane");
    write_file(good, text);

    SuiteOptions opts;
    opts.only = {"ingestion"};
    opts.plane_file = good.string();
    auto report = run_acceptance(opts);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.passed);
    CHECK(report.rows[0].data["order"] == 3);

    // Overwrite the second line with a copy of the first.
    auto second = text.find('\n', text.find('\n') + 1) + 1;
    auto end = text.find('\n', second);
    auto line1 = text.substr(text.find('\n') + 1, second - text.find('\n') - 2);
    text.replace(second, end - second, line1);
    const auto bad = scratch("bad.plane");
    write_file(bad, text);
    opts.plane_file = bad.string();
    report = run_acceptance(opts);
    CHECK_FALSE(report.passed);
    CHECK(report.rows[0].detail.rfind("AxiomViolation", 0) == 0);
    CHECK(format_row(report.rows[0]).find("FAIL") != std::string::npos);

    opts.plane_file = scratch("missing.plane").string();
    std::filesystem::remove(*opts.plane_file);
    CHECK_FALSE(run_acceptance(opts).passed);
}

TEST_CASE("an absurd budget fails the truth table loudly") {
    SuiteOptions opts;
    opts.only = {"7"};
    opts.search_budget = 3;
    auto report = run_acceptance(opts);
    REQUIRE(report.rows.size() == 1);
    CHECK_FALSE(report.passed);
    CHECK(report.rows[0].detail.find("budget-exceeded") != std::string::npos);
    auto j = to_json(report);
    CHECK(j["passed"] == false);
    bool saw_budget = false;
    for (const auto& cell : j["rows"][0]["data"]["cells"]) saw_budget = saw_budget || cell["status"] == "budget-exceeded";
    CHECK(saw_budget);
}

TEST_CASE("row selection and report shape") {
    SuiteOptions opts;
    opts.only = {"4", "9"};
    auto report = run_acceptance(opts);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].id == "4");
    CHECK(report.rows[1].id == "9");
    CHECK(report.passed);
    CHECK(report.experiments.empty());
    CHECK(format_row(report.rows[0]).rfind("criterion 4", 0) == 0);
}

TEST_CASE("random word count is configurable and seeded") {
    SuiteOptions opts;
    opts.only = {"10"};
    opts.random_words = 20;
    auto a = run_acceptance(opts);
    auto b = run_acceptance(opts);
    CHECK(a.passed);
    CHECK(a.rows[0].data == b.rows[0].data);
    CHECK(a.rows[0].data["words"]["random q=25"] == 20);
}
