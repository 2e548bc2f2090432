#include "common.hpp"

#include <sstream>

#include "famedkit/cli.hpp"
#include "famedkit/report.hpp"

TEST_SUITE("cli_reports") {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = fk::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

TEST_CASE("JSON reports round-trip byte for byte") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"parse", "fig8", "--json"},
             {"matrices", "twist_5", "--json"},
             {"famed", "twist_4", "--json"},
             {"solve", "fig8", "--u", "0,0.1", "--json"},
             {"one-loop", "twist_6", "--json"},
             {"qdilog", "--b", "0.7", "--z", "0.2,0.1", "--json"},
         }) {
        auto r = run(args);
        REQUIRE(r.code == 0);
        auto j = fk::json::parse(r.out);
        CHECK(fk::render(j) == r.out);
        auto rep = fk::RunReport::from_json(j);
        CHECK(fk::render(rep.to_json()) == r.out);
        CHECK(j["versions"]["format"] == fk::kReportFormatVersion);
    }
}

TEST_CASE("exit codes") {
    CHECK(run({"famed", "fig8"}).code == 0);
    CHECK(run({"famed", data_path("unpaired_face.tri")}).code == 2);
    CHECK(run({"famed", data_path("singular_A.tri")}).code == 1);
    CHECK(run({"famed", data_path("infeasible.tri")}).code == 1);
    CHECK(run({"matrices", data_path("singular_A.tri")}).code == 1);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"solve", "fig8", "--u", "abc"}).code == 2);
    CHECK(run({"famed", "fig8", "--convention", "nope"}).code == 2);
    CHECK(run({"qdilog", "--b", "0.8", "--z", "0,5"}).code == 2);
    CHECK(run({"partition", "fig8", "--b", "0.8", "--alpha", "1,2"}).code == 2);
    CHECK(run({"accept", "--only", "A9"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("text output flattens the report") {
    auto r = run({"famed", "fig8"});
    CHECK(r.out.find("outputs.famed = true") != std::string::npos);
    CHECK(r.out.find("command = famed") != std::string::npos);
}

TEST_CASE("CSV output") {
    auto v = run({"volume", "fig8", "--slice", "-0.1,0,0.1", "--csv"});
    REQUIRE(v.code == 0);
    CHECK(v.out.rfind("theta,volume,converged\n", 0) == 0);
    CHECK(std::count(v.out.begin(), v.out.end(), '\n') == 4);
    auto s = run({"sweep-u", "fig8", "--from", "0,0", "--to", "0,0.2", "--steps", "4", "--csv"});
    REQUIRE(s.code == 0);
    CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 6);
}

TEST_CASE("threads flag is accepted everywhere") {
    CHECK(run({"parse", "fig8", "--threads", "4"}).code == 0);
    CHECK(run({"parse", "fig8", "--threads", "0"}).code == 2);
}

TEST_CASE("acceptance subset from the CLI") {
    auto r = run({"accept", "--suite", "desk", "--only", "A1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("A1 PASS", 0) == 0);
}

TEST_CASE("complex and matrix JSON helpers") {
    auto c = fk::complex_json(fk::cplx(1.5, -2));
    CHECK(c == fk::json::array({1.5, -2.0}));
    auto m = fk::matrix_json(fk::RatMatrix{{fk::Rational(1, 2), 3}});
    CHECK(m[0][0] == "1/2");
    CHECK(m[0][1] == "3");
}

}
