#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ms4lab/ms4lab.h"

#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

struct Frame {
    ms4lab_frame* p = nullptr;
    explicit Frame(const char* recipe) { REQUIRE(ms4lab_frame_from_recipe(recipe, &p) == MS4LAB_OK); }
    ~Frame() { ms4lab_frame_free(p); }
};

struct Phi {
    ms4lab_formula* p = nullptr;
    explicit Phi(const char* axiom) { REQUIRE(ms4lab_formula_axiom(axiom, &p) == MS4LAB_OK); }
    ~Phi() { ms4lab_formula_free(p); }
};

json take(char* s) {
    REQUIRE(s != nullptr);
    json j = json::parse(s);
    ms4lab_string_free(s);
    return j;
}

}  // namespace

TEST_CASE("handles and errors") {
    CHECK(std::string(ms4lab_version()).size() > 0);
    ms4lab_frame* f = nullptr;
    CHECK(ms4lab_frame_from_recipe("chain:0", &f) == MS4LAB_ERR_ARGUMENT);
    CHECK(f == nullptr);
    CHECK(std::string(ms4lab_last_error()).size() > 0);
    CHECK(ms4lab_frame_from_recipe("file:/nonexistent/x.json", &f) == MS4LAB_ERR_IO);
    CHECK(ms4lab_frame_from_json("{\"worlds\":2,\"R\":[[0,1]],\"E\":[]}", &f) == MS4LAB_ERR_FRAME);
    CHECK(ms4lab_frame_from_json("{", &f) == MS4LAB_ERR_PARSE);
    CHECK(ms4lab_frame_from_recipe(nullptr, &f) == MS4LAB_ERR_ARGUMENT);

    ms4lab_formula* phi = nullptr;
    CHECK(ms4lab_formula_parse("p &", &phi) == MS4LAB_ERR_PARSE);
    CHECK(ms4lab_formula_axiom("P0", &phi) != MS4LAB_OK);
    REQUIRE(ms4lab_formula_parse("<>[]q1->[]q1", &phi) == MS4LAB_OK);
    char* text = nullptr;
    REQUIRE(ms4lab_formula_print(phi, &text) == MS4LAB_OK);
    CHECK(std::string(text) == "<>[]q1 -> []q1");
    ms4lab_string_free(text);
    ms4lab_formula_free(phi);

    Frame l3("chain:3");
    CHECK(ms4lab_frame_size(l3.p) == 3);
    char* out = nullptr;
    REQUIRE(ms4lab_frame_to_json(l3.p, &out) == MS4LAB_OK);
    ms4lab_frame* back = nullptr;
    REQUIRE(ms4lab_frame_from_json(out, &back) == MS4LAB_OK);
    ms4lab_string_free(out);
    CHECK(ms4lab_frame_size(back) == 3);
    ms4lab_frame_free(back);
}

TEST_CASE("check reports countermodels") {
    Frame l2("chain:2");
    Phi p1("P1");
    ms4lab_verdict v;
    char* out = nullptr;
    REQUIRE(ms4lab_check(l2.p, p1.p, nullptr, &v, &out) == MS4LAB_OK);
    CHECK(v == MS4LAB_INVALID);
    const json r = take(out);
    CHECK(r["verdict"] == "invalid");
    CHECK(r.contains("countermodel"));
    CHECK(r["agrees"] == true);

    ms4lab_budget tiny;
    ms4lab_budget_default(&tiny);
    tiny.max_valuations = 4;
    Frame g("grid:2x3");
    Phi p3("P3");
    REQUIRE(ms4lab_check(g.p, p3.p, &tiny, &v, &out) == MS4LAB_OK);
    CHECK(v == MS4LAB_BUDGET_EXCEEDED);
    CHECK(!take(out).contains("agrees"));
}

TEST_CASE("check verdicts agree with the condition checkers") {
    const char* axioms[] = {"ms4", "bar", "ed", "sc", "grz", "mcas", "P1", "P2", "P0_1", "P0_2", "rp1"};
    for (int i = 0; i < 115; i += 3) {
        const std::string recipe = "enum:3:" + std::to_string(i);
        Frame f(recipe.c_str());
        for (const char* a : axioms) {
            Phi phi(a);
            char* out = nullptr;
            ms4lab_verdict v;
            REQUIRE(ms4lab_check(f.p, phi.p, nullptr, &v, &out) == MS4LAB_OK);
            const json r = take(out);
            INFO(recipe << " " << a);
            CHECK(r["agrees"] == true);
        }
    }
}

TEST_CASE("reports") {
    Frame g("grid:2x2");
    char* out = nullptr;
    REQUIRE(ms4lab_layers(g.p, &out) == MS4LAB_OK);
    const json l = take(out);
    CHECK(l["depth"] == 1);
    CHECK(l["si"] == "simple");

    REQUIRE(ms4lab_path(g.p, 0, nullptr, &out) == MS4LAB_OK);
    CHECK(take(out)["length"] == 2);

    REQUIRE(ms4lab_classify(g.p, nullptr, &out) == MS4LAB_OK);
    const auto classes = take(out)["classes"].get<std::vector<std::string>>();
    CHECK(std::find(classes.begin(), classes.end(), "MS4_S") != classes.end());

    REQUIRE(ms4lab_export_dot(g.p, &out) == MS4LAB_OK);
    CHECK(std::string(out).rfind("digraph", 0) == 0);
    ms4lab_string_free(out);

    Frame l3("chain:3");
    Phi p2("P2");
    REQUIRE(ms4lab_filtrate(l3.p, p2.p, nullptr, nullptr, &out) == MS4LAB_OK);
    const json fl = take(out);
    CHECK(fl["m"] == 3);
    CHECK(fl["agreement"] == true);
    CHECK(ms4lab_filtrate(g.p, p2.p, "{\"q1\":[],\"q2\":[]}", nullptr, &out) == MS4LAB_ERR_PRECONDITION);

    REQUIRE(ms4lab_fmp(l3.p, p2.p, nullptr, &out) == MS4LAB_OK);
    const json fm = take(out);
    CHECK(fm["depth_result"].get<int>() <= fm["depth_source"].get<int>());
    CHECK(fm["identity_failures"].empty());
    Frame l1("chain:1");
    Phi p1("P1");
    CHECK(ms4lab_fmp(l1.p, p1.p, nullptr, &out) == MS4LAB_ERR_ALREADY_VALID);

    REQUIRE(ms4lab_staircase_growth(2, 4, &out) == MS4LAB_OK);
    CHECK(std::string(out) == "k,size,atoms\n2,16,4\n3,512,9\n4,65536,16\n");
    ms4lab_string_free(out);
    REQUIRE(ms4lab_growth("chain:1..2", 2, 5, 1, &out) == MS4LAB_OK);
    CHECK(std::string(out).rfind("k,max_size,trials\n", 0) == 0);
    ms4lab_string_free(out);
}

TEST_CASE("translate and verify") {
    ms4lab_frame* t = nullptr;
    REQUIRE(ms4lab_frame_translate_json("{\"worlds\":4,\"E1\":[[0,1],[2,3]],\"E2\":[[0,2],[1,3]]}", &t) == MS4LAB_OK);
    CHECK(ms4lab_frame_size(t) == 8);
    ms4lab_frame_free(t);

    ms4lab_suite_options o;
    ms4lab_suite_options_default(&o);
    int passed = 0;
    char* out = nullptr;
    REQUIRE(ms4lab_verify("minimal", &o, &passed, &out) == MS4LAB_OK);
    CHECK(passed == 1);
    CHECK(take(out)["failures"] == 0);
    CHECK(ms4lab_verify("nope", &o, &passed, nullptr) == MS4LAB_ERR_ARGUMENT);
}
