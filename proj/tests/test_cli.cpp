#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

using Json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(OTK_BIN_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.stdout_text.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Json parse(const RunResult& r) { return Json::parse(r.stdout_text); }

}  // namespace

TEST_CASE("analyze the half-case field") {
    auto r = run("analyze \"x^4-2\"");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["signature"]["s"] == 2);
    CHECK(j["signature"]["t"] == 1);
    CHECK(j["betti1"] == 2);
    CHECK(j["dim_C"] == 3);
    CHECK(j["lck_rank"] == 1);
    CHECK(j["case"] == "half");
    CHECK(j["certificate"]["kind"] == "subfield");
    CHECK(j["certificate"]["data"]["g"] == Json::array({-2, 0, 1}));
}

TEST_CASE("analyze the maximal field with its witnesses") {
    auto r = run("analyze \"x^4+6x^2-5x-17\"");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["lck_rank"] == 2);
    CHECK(j["case"] == "maximal");
    CHECK(j["certificate"]["kind"] == "no_proper_subfield");
    auto w = j["witnesses"];
    REQUIRE(w.size() == 3);
    CHECK(w[0]["p"] == 2);
    CHECK(w[0]["pattern"] == Json::array({4}));
    CHECK(w[1]["p"] == 3);
    CHECK(w[1]["pattern"] == Json::array({1, 3}));
    CHECK(w[2]["p"] == 5);
    CHECK(w[2]["pattern"] == Json::array({1, 1, 2}));
}

TEST_CASE("gate and parse failures") {
    CHECK(run("analyze \"x^2+1\"").exit_code == 3);
    {
        auto r = run("analyze \"x^2+1\"");
        Json j = parse(r);
        CHECK(j["signature"]["s"] == 0);
    }
    CHECK(run("analyze \"x^4-1\"").exit_code == 3);   // reducible
    CHECK(run("analyze \"2x^2-4\"").exit_code == 3);  // not monic
    CHECK(run("analyze \"x^^\"").exit_code == 2);
    CHECK(run("analyze \"x^3+x^2-2x-1\"").exit_code == 3);  // totally real
}

TEST_CASE("construct half") {
    auto r = run("construct half --subfield \"x^2-2\" --q 0");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["constructed"]["poly"] == Json::array({-2, 0, 0, 0, 1}));
    CHECK(j["analysis"]["lck_rank"] == 1);
    CHECK(j["analysis"]["case"] == "half");

    CHECK(run("construct half --subfield \"x^2-2\" --q 2").exit_code == 5);
}

TEST_CASE("construct totally-real") {
    auto r = run("construct totally-real --n 3");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["constructed"]["poly"] == Json::array({-1, -2, 1, 1}));
}

TEST_CASE("construct maximal") {
    auto r = run(
        "construct maximal --n 2 --f1 \"x^4+x+1\" --f2 \"x^4+x+1\" "
        "--f3 \"x^4+x^2-2\" --g \"0\"");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["constructed"]["poly"] == Json::array({-17, -5, 6, 0, 1}));
    CHECK(j["analysis"]["case"] == "maximal");

    auto bad = run(
        "construct maximal --n 2 --f1 \"x^4+x^2+1\" --f2 \"x^4+x+1\" "
        "--f3 \"x^4+x^2-2\"");
    CHECK(bad.exit_code == 5);
}

TEST_CASE("verify-geometry") {
    auto r = run("verify-geometry \"x^4-2\" --samples 200 --seed 7");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["geometry"]["pass"] == true);
    CHECK(j["geometry"]["hessian_positive_definite"] == true);

    // an impossible tolerance fails with exit 6
    auto strict = run("verify-geometry \"x^4-2\" --samples 50 --seed 7 --tol 1e-30 --tol-tight 1e-30");
    CHECK(strict.exit_code == 6);

    auto quintic = run("verify-geometry \"x^5-4x+2\" --samples 200 --seed 7");
    CHECK(quintic.exit_code == 0);
}

TEST_CASE("units command") {
    auto r = run("units \"x^4-2\" --bound 2");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["units"]["positive_unit_rank"]["rank"] == 2);
    bool found = false;
    for (auto& u : j["units"]["units"])
        if (u["coords"] == "(1, 0, 1, 0)") {
            found = true;
            CHECK(u["totally_positive"] == true);
            CHECK(u["norm"] == 1);
        }
    CHECK(found);
}

TEST_CASE("reports are byte-identical for identical inputs and seed") {
    auto a = run("analyze \"x^4-2\" --units-bound 2 --seed 123");
    auto b = run("analyze \"x^4-2\" --units-bound 2 --seed 123");
    CHECK(a.stdout_text == b.stdout_text);

    auto g1 = run("verify-geometry \"x^4-2\" --samples 100 --seed 42");
    auto g2 = run("verify-geometry \"x^4-2\" --samples 100 --seed 42");
    CHECK(g1.stdout_text == g2.stdout_text);
}

TEST_CASE("recheck re-validates every certificate") {
    auto r = run("--recheck analyze \"x^4-2\"");
    CHECK(r.exit_code == 0);
    CHECK(parse(r)["recheck"] == "pass");

    auto m = run("--recheck analyze \"x^4+6x^2-5x-17\"");
    CHECK(m.exit_code == 0);
    CHECK(parse(m)["recheck"] == "pass");
}

TEST_CASE("pretty output parses to the same document") {
    auto compact = run("analyze \"x^4-2\"");
    auto pretty = run("--pretty analyze \"x^4-2\"");
    CHECK(Json::parse(compact.stdout_text) == Json::parse(pretty.stdout_text));
}
