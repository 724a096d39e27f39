#include "rigidcr/io.hpp"
#include "rigidcr/normal_form.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sys/wait.h>

using namespace rcr;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(RIGIDCR_CLI) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
    const int status = pclose(pipe.release());
    return {WEXITSTATUS(status), out};
}

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(RIGIDCR_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("coefficient files round-trip") {
    for (int d : {4, 6}) {
        for (Convention c : {Convention::Monomial, Convention::Taylor}) {
            Hypersurface h = random_rank1(d, d);
            h.convention = c;
            const Json j = hypersurface_to_json(h);
            const Hypersurface back = hypersurface_from_json(Json::parse(j.dump()));
            CHECK(back.F == h.F);
            CHECK(back.degree == h.degree);
            CHECK(back.convention == c);
            CHECK(hypersurface_to_json(back).dump() == j.dump());
        }
    }
}

TEST_CASE("taylor files hold Taylor coefficients") {
    const Json j = Json::parse(R"({"ambient_dim":3,"degree":3,"convention":"taylor","coefficients":[
        {"exp":[1,0,1,0],"re":"1/1","im":"0/1"},
        {"exp":[2,0,1,0],"re":"4/1","im":"0/1"},{"exp":[1,0,2,0],"re":"4/1","im":"0/1"}]})");
    const Hypersurface h = hypersurface_from_json(j);
    CHECK(h.mono({2, 0, 1, 0}) == GaussRat(2));
}

TEST_CASE("non-reduced fractions are canonicalized with a warning") {
    const Json j = Json::parse(R"({"ambient_dim":3,"degree":2,"convention":"monomial",
        "coefficients":[{"exp":[1,0,1,0],"re":"2/2","im":"0/1"}]})");
    std::vector<std::string> warnings;
    const Hypersurface h = hypersurface_from_json(j, &warnings);
    CHECK(h.mono({1, 0, 1, 0}) == GaussRat(1));
    CHECK(warnings.size() == 1);
}

TEST_CASE("malformed files are rejected") {
    const char* bad[] = {
        R"({"ambient_dim":4,"degree":3,"coefficients":[]})",
        R"({"ambient_dim":3,"coefficients":[]})",
        R"({"ambient_dim":3,"degree":3,"convention":"odd","coefficients":[]})",
        R"({"ambient_dim":3,"degree":2,"coefficients":[{"exp":[2,0,1,0],"re":"1"}]})",
        R"({"ambient_dim":3,"degree":3,"coefficients":[{"exp":[1,0,1],"re":"1"}]})",
        R"({"ambient_dim":3,"degree":3,"coefficients":[{"exp":[1,0,1,0],"re":"1/0"}]})",
        R"({"ambient_dim":3,"degree":3,"coefficients":[{"exp":[1,0,1,0],"re":"1"},{"exp":[1,0,1,0],"re":"1"}]})",
        R"({"ambient_dim":3,"degree":99,"coefficients":[]})",
    };
    for (const char* text : bad) {
        INFO(text);
        CHECK_THROWS_AS(hypersurface_from_json(Json::parse(text)), ParseError);
    }
}

TEST_CASE("C2 files use two exponents") {
    const Json j = Json::parse(R"({"ambient_dim":2,"degree":4,"coefficients":[
        {"exp":[1,1],"re":"1/1","im":"0/1"},{"exp":[2,2],"re":"1/3","im":"0/1"}]})");
    const Hypersurface h = hypersurface_from_json(j);
    CHECK(h.ambient_dim == 2);
    CHECK(h.mono({2, 0, 2, 0}) == GaussRat::frac(1, 3));
    CHECK(hypersurface_to_json(h)["coefficients"][0]["exp"].size() == 2);
}

TEST_CASE("cli: model, validate and invariants") {
    const Run gm = run("model gm --degree 6");
    REQUIRE(gm.code == 0);
    const std::string path = temp_file("gm6.json", gm.out);
    CHECK(run("validate " + path).code == 0);
    const Run inv = run("invariants --route both " + path);
    REQUIRE(inv.code == 0);
    const Json doc = Json::parse(inv.out);
    for (const char* route : {"jet", "diff"})
        for (const char* name : {"I0", "V0", "Q0"}) {
            CHECK(doc[route][name]["re"] == "0/1");
            CHECK(doc[route][name]["im"] == "0/1");
        }
    // Deterministic output.
    CHECK(run("invariants --route both " + path).out == inv.out);
    CHECK(run("normalize " + path).out == run("normalize " + path).out);
}

TEST_CASE("cli: random models validate in both conventions") {
    for (const char* conv : {"monomial", "taylor"}) {
        const Run m = run(std::string("model random --degree 5 --seed 4 --convention ") + conv);
        REQUIRE(m.code == 0);
        const std::string path = temp_file(std::string("r5") + conv + ".json", m.out);
        CHECK(run("validate " + path).code == 0);
    }
}

TEST_CASE("cli: exit codes") {
    CHECK(run("validate " + temp_file("bad.json", "{not json")).code == 1);
    CHECK(run("validate /nonexistent/file.json").code == 1);
    CHECK(run("model gm --degree 12").code == 1);  // above the default bound
    CHECK(run("--max-degree 12 model gm --degree 12").code == 0);
    // Levi form vanishing at the origin: a degenerate pivot.
    const std::string flat = temp_file("zero.json", R"({"ambient_dim":3,"degree":5,"coefficients":[
        {"exp":[2,0,2,0],"re":"1/1","im":"0/1"}]})");
    CHECK(run("normalize " + flat).code == 2);
}

TEST_CASE("cli: equivalence always exits 0") {
    const std::string a = temp_file("gm8.json", run("model gm --degree 8").out);
    const std::string b = temp_file("lc8.json", run("model lightcone --degree 8").out);
    const Run r = run("equivalence " + a + " " + b);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["verdict"] == "equivalent-up-to-truncation");
    const Run e = run("equivalence " + a + " /nonexistent.json");
    CHECK(e.code == 0);
    CHECK(Json::parse(e.out)["verdict"] == "error");
}

TEST_CASE("cli: selftest") {
    const Run r = run("selftest --samples 5");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["pass"] == true);
}
