#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "flipcycles/errors.hpp"
#include "flipcycles/harness.hpp"

using namespace flipcycles;
using namespace flipcycles::harness;

namespace {

RunResult cli(const std::string& line) {
    std::vector<std::string> args;
    std::istringstream in(line);
    for (std::string w; in >> w;) args.push_back(w);
    return run(args);
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line) return true;
    return false;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("flipcycles-test-" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("fnv1a test vectors") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
    CHECK(canonical_hash("a") == "af63dc4c8601ec8c");
}

TEST_CASE("command examples") {
    auto r = cli("plabic cyclic 5 1 --kind X --certify");
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "V=5 E=5 F=1 betti1=0 pi1=trivial"));

    r = run({"updown", "--necklace", "[[1,2],[2,3],[3,4],[4,5],[5,1]]", "--dir", "down"});
    CHECK(r.status == 0);
    CHECK(r.out == "[[1],[2],[3],[4],[5]]\n");

    r = cli("tilings 5 3");
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "Z(5,3): 10 vertices, 10 edges, ranks 0..5"));

    r = cli("zcomplex 5 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("betti1=0 pi1=trivial") != std::string::npos);

    r = cli("tcd 2,3,4,5,1");
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "V=5 E=5 F=1 betti1=0 pi1=trivial"));

    r = cli("realize-move --zonotope 5 --index 2 --level 1");
    CHECK(r.status == 0);
    CHECK(r.out.find("verified") != std::string::npos);
    CHECK(r.out.find("FAILED") == std::string::npos);

    r = cli("align --zonotope 5 --from-index 3 --to-index 3 --level 2");
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "alignment at level 2: 0 flips, verified"));
}

TEST_CASE("usage errors exit nonzero") {
    CHECK(cli("").status != 0);
    CHECK(cli("frobnicate").status != 0);
    CHECK(cli("tilings five 3").status != 0);
    CHECK(cli("tilings 5 3 --cap 0").status != 0);
    CHECK(cli("tilings 5 3 --format png").status != 0);
    CHECK(cli("plabic cyclic 5").status != 0);
    CHECK(cli("plabic 2,3,1 --kind Q").status != 0);
    CHECK(run({"updown", "--necklace", "[[1,2],[2,3"}).status != 0);
    CHECK(run({"updown", "--necklace", "[[1,2],[1,3],[3,4],[4,5],[5,1]]"}).status != 0);
    CHECK(cli("cross-section --tiling /nonexistent/file.json --level 2").status != 0);
    CHECK(cli("tcd 1b,2w").status != 0);
    CHECK(cli("tilings 6 3 --cap 10").status == 3);
    CHECK(cli("--help").status == 0);
}

TEST_CASE("outputs are deterministic") {
    for (const std::string cmd : {"tilings 6 2 --emit", "tilings 5 3 --format dot --emit", "export plabic cyclic 6 3 --vertex 40 --emit",
                                  "export plabic cyclic 6 3 --vertex 40 --format svg --strands --emit",
                                  "export tcd 3,4,5,6,1,2 --vertex 5 --emit", "plabic cyclic 6 3 --kind Y --emit",
                                  "plabic cyclic 5 2 --certify --emit"}) {
        auto a = cli(cmd), b = cli(cmd), serial = cli(cmd + " --threads 1");
        CHECK(a.status == 0);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
        CHECK(a.out == serial.out);
    }
}

TEST_CASE("JSON round trips") {
    auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(5, 3));
    for (const auto& t : g.vertices) {
        CHECK(tiling_from_json(json::parse(tiling_json(t).dump())) == t);
        for (int k = 1; k < 5; ++k) {
            auto s = plabic::cross_section(t, k);
            CHECK(triangulation_from_json(json::parse(triangulation_json(s).dump())) == s);
        }
    }
    auto I = combinat::cyclic_necklace(6, 3);
    CHECK(necklace_from_json(6, necklace_json(I)) == I);
    auto bad = tiling_json(g.vertices[0]);
    bad["tiles"][0] = "+++++";
    CHECK_THROWS(tiling_from_json(bad));
    auto s = plabic::cross_section(g.vertices[0], 2);
    auto broken = triangulation_json(s);
    broken["triangles"].erase(0);
    CHECK_THROWS_AS(triangulation_from_json(broken), ValidationError);
    auto p = permutation_json(combinat::DecoratedPermutation::parse("2,1,3b"));
    CHECK(p["image"] == json::array({2, 1, 3}));
    CHECK(p["fixed_colors"]["3"] == "black");
}

TEST_CASE("files and certificates") {
    const auto dir = scratch_dir("files");
    const auto graph = (dir / "z53.json").string();
    auto r = cli("tilings 5 3 -o " + graph);
    REQUIRE(r.status == 0);
    auto j = json::parse(std::ifstream(graph));
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["vertices"].size() == 10);

    r = cli("cross-section --tiling " + graph + " --index 4 --level 2 --emit");
    CHECK(r.status == 0);
    auto s = triangulation_from_json(json::parse(r.out));
    CHECK(s.boundary() == combinat::cyclic_necklace(5, 2));

    r = cli("plabic cyclic 5 2 --kind Y --certify --emit");
    REQUIRE(r.status == 0);
    auto cert = json::parse(r.out);
    CHECK(cert["kind"] == "certificate");
    CHECK(cert["input_hash"] == canonical_hash("plabic Y 3,4,5,1,2"));
    CHECK(cert["V"] == 5);
    CHECK(cert["pi1"] == "trivial");
    CHECK_FALSE(cert.contains("wall_ms"));
    CHECK(json::parse(cli("plabic cyclic 5 2 --kind Y --certify --emit --timing").out).contains("wall_ms"));

    const auto out = scratch_dir("env");
    ::setenv(kOutputDirVariable, out.c_str(), 1);
    r = cli("zcomplex 4 2");
    ::unsetenv(kOutputDirVariable);
    CHECK(r.status == 0);
    CHECK(std::filesystem::exists(out / "zcomplex-certificate.json"));
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(out);
}

TEST_CASE("run configuration") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.vertex_cap = 0;
    CHECK_THROWS_AS(c.validate(), ArgumentError);
    c.vertex_cap = 10;
    c.pi1_budget = 0;
    CHECK_THROWS_AS(c.validate(), ArgumentError);
    CHECK(parse_format("svg") == Format::svg);
    CHECK_THROWS_AS(parse_format("png"), ArgumentError);
}
