#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ms4lab/constructions.hpp"
#include "ms4lab/io.hpp"

#include <filesystem>
#include <regex>

using namespace ms4lab;
using nlohmann::json;

namespace {

int count(const std::string& text, const std::regex& re) {
    return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

const std::regex kNode(R"(\n    n\d+ \[label=)");
const std::regex kBox("subgraph cluster_e");
const std::regex kStrict(R"(n\d+ -> n\d+;)");
const std::regex kClusterLine(R"(n\d+ -> n\d+ \[dir=none)");

}  // namespace

TEST_CASE("json round trip") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& f : enumerate_frames(n)) {
            const auto once = frame_from_json(frame_to_json(f));
            CHECK(once == f);
            CHECK(frame_from_json(json::parse(frame_to_json(once).dump())) == f);
        }
    const auto t = translate(grid_frame(2, 2).s52);
    CHECK(frame_from_json(frame_to_json(t)).labels() == t.labels());
}

TEST_CASE("json input") {
    const json gen = {{"worlds", 3}, {"R", {{0, 1}, {1, 2}}}, {"E", json::array()}, {"close_R", true}, {"close_E", true}};
    CHECK(frame_from_json(gen).r() == chain_frame(3).r().converse());
    const auto f = frame_from_json(gen);
    CHECK(f.r().test(0, 2));
    CHECK(depth(f) == 3);

    const json bad = {{"worlds", 2}, {"R", {{0, 1}}}, {"E", json::array()}};
    CHECK_THROWS_AS(frame_from_json(bad), FrameError);
    CHECK_THROWS(frame_from_json(json{{"worlds", 2}, {"R", {{0, 5}}}}));

    const json s52 = {{"worlds", 4}, {"E1", {{0, 1}, {2, 3}}}, {"E2", {{0, 2}, {1, 3}}}};
    const auto s = s52_from_json(s52);
    CHECK(s.e1() == grid_frame(2, 2).s52.e1());
    CHECK(s.e2() == grid_frame(2, 2).s52.e2());
}

TEST_CASE("recipes") {
    CHECK(frame_from_recipe("chain:3") == chain_frame(3));
    CHECK(frame_from_recipe("grid:2x3") == grid_frame(2, 3).ms4);
    CHECK(frame_from_recipe("product:chain2,k2") == product_frame(chain_frame(2).r(), 2));
    CHECK(frame_from_recipe("random:n=5,seed=42") == random_frame(5, {}, 42));
    CHECK(frame_from_recipe("enum:3:7") == enumerate_frames(3)[7]);
    CHECK_THROWS(frame_from_recipe("nope:1"));
    CHECK_THROWS(frame_from_recipe("chain:x"));

    const auto dir = std::filesystem::temp_directory_path() / "ms4lab_io_test";
    std::filesystem::create_directories(dir);
    const auto s52_path = (dir / "g.json").string();
    write_text_file(s52_path, s52_to_json(grid_frame(2, 2).s52).dump());
    CHECK(frame_from_recipe("translate:" + s52_path) == translate(grid_frame(2, 2).s52));
    const auto frame_path = (dir / "f.json").string();
    write_text_file(frame_path, frame_to_json(chain_frame(4)).dump());
    CHECK(frame_from_recipe("file:" + frame_path) == chain_frame(4));
    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), IoError);
}

TEST_CASE("dot export") {
    const std::string l2 = export_dot(chain_frame(2));
    CHECK(count(l2, kNode) == 2);
    CHECK(count(l2, kStrict) == 1);
    CHECK(l2.find("n1 -> n0;") != std::string::npos);

    const std::string g = export_dot(grid_frame(2, 2).ms4);
    CHECK(count(g, kNode) == 4);
    CHECK(count(g, kBox) == 2);
    CHECK(count(g, kClusterLine) == 2);
    CHECK(count(g, kStrict) == 0);

    // Three layers: bottom rail, the grid, the top rail.
    const auto t = translate(grid_frame(2, 2).s52);
    const std::string td = export_dot(t);
    CHECK(count(td, kNode) == 8);
    CHECK(count(td, kBox) == 2);
    CHECK(count(td, std::regex("fillcolor=\"#fde0c5\"")) == 2);
    CHECK(count(td, std::regex("fillcolor=\"#d7ecd9\"")) == 4);
    CHECK(count(td, std::regex("fillcolor=\"#d6e4f0\"")) == 2);
    CHECK(export_dot(t) == td);
}
