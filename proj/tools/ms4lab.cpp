// ms4lab command-line front end. Talks to the library only through ms4lab.h.

#include "ms4lab/ms4lab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

const char* status_name(ms4lab_status s) {
    switch (s) {
        case MS4LAB_OK: return "ok";
        case MS4LAB_ERR_ARGUMENT: return "argument";
        case MS4LAB_ERR_PARSE: return "parse";
        case MS4LAB_ERR_FRAME: return "frame";
        case MS4LAB_ERR_IO: return "io";
        case MS4LAB_ERR_BUDGET: return "budget";
        case MS4LAB_ERR_PRECONDITION: return "precondition";
        case MS4LAB_ERR_ALREADY_VALID: return "already-valid";
        case MS4LAB_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

/// Library failure: reported as JSON on stdout, exit code 2.
struct Failure {
    ms4lab_status status;
    std::string message;
};

void ok(ms4lab_status s) {
    if (s != MS4LAB_OK) throw Failure{s, ms4lab_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    ms4lab_string_free(s);
    return out;
}

using FramePtr = std::unique_ptr<ms4lab_frame, decltype(&ms4lab_frame_free)>;
using FormulaPtr = std::unique_ptr<ms4lab_formula, decltype(&ms4lab_formula_free)>;

FramePtr load_frame(const std::string& spec) {
    ms4lab_frame* f = nullptr;
    ok(ms4lab_frame_from_recipe(spec.c_str(), &f));
    return FramePtr(f, ms4lab_frame_free);
}

FormulaPtr load_formula(const std::string& axiom, const std::string& text) {
    ms4lab_formula* phi = nullptr;
    if (!axiom.empty())
        ok(ms4lab_formula_axiom(axiom.c_str(), &phi));
    else
        ok(ms4lab_formula_parse(text.c_str(), &phi));
    return FormulaPtr(phi, ms4lab_formula_free);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{MS4LAB_ERR_IO, "cannot open '" + path + "'"};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Failure{MS4LAB_ERR_IO, "cannot write '" + path + "'"};
    out << text;
}

std::string sets(const json& j) {
    std::string s;
    for (const auto& x : j) s += (s.empty() ? "" : " ") + x.dump();
    return s;
}

void human_check(const json& r) {
    std::cout << "formula   " << r["formula"].get<std::string>() << "\n";
    std::cout << "verdict   " << r["verdict"].get<std::string>() << "  (" << r["valuations_checked"] << " valuations)\n";
    if (r.contains("countermodel")) {
        const auto& cm = r["countermodel"];
        std::cout << "world     " << cm["world"] << " (" << cm["world_label"].get<std::string>() << ")\n";
        for (const auto& [k, v] : cm["valuation"].items()) std::cout << "  " << k << " = " << v.dump() << "\n";
    }
    if (r.contains("condition")) {
        const auto& c = r["condition"];
        std::cout << "condition " << c["name"].get<std::string>() << " " << (c["holds"].get<bool>() ? "holds" : "fails");
        if (c.contains("witness")) std::cout << "  witness " << c["witness"].dump();
        std::cout << "\n";
    }
}

void human_report(const std::string& cmd, const json& r) {
    if (cmd == "check") return human_check(r);
    if (cmd == "classify") {
        for (const auto& c : r["classes"]) std::cout << c.get<std::string>() << "\n";
        for (const auto& c : r["undetermined"]) std::cout << c.get<std::string>() << " (undetermined)\n";
        std::cout << "si: " << r["si"].get<std::string>() << "\n";
        return;
    }
    if (cmd == "layers") {
        int i = 1;
        for (const auto& d : r["layers"]) std::cout << "D" << i++ << "  " << d.dump() << "\n";
        std::cout << "depth " << r["depth"] << ", q-depth " << r["q_depth"] << ", Q-roots " << r["q_roots"].dump()
                  << ", " << r["si"].get<std::string>() << "\n";
        return;
    }
    if (cmd == "path") {
        std::cout << "length " << r["length"] << (r["capped"].get<bool>() ? " (capped)" : "") << "\n";
        const auto& w = r["witness"];
        for (std::size_t i = 0; i < w["labels"].size(); ++i) {
            if (i) std::cout << " -" << w["steps"][i - 1].get<std::string>() << "-> ";
            std::cout << w["labels"][i].get<std::string>();
        }
        std::cout << "\n";
        return;
    }
    if (cmd == "verify") {
        std::cout << r["suite"].get<std::string>() << ": " << (r["passed"].get<bool>() ? "PASS" : "FAIL") << "  "
                  << r["checks"] << " checks, " << r["failures"] << " failures, " << r["seconds"] << " s\n";
        for (const auto& [k, v] : r["counters"].items()) std::cout << "  " << k << " = " << v << "\n";
        for (const auto& s : r["failure_samples"]) std::cout << "  ! " << s.get<std::string>() << "\n";
        return;
    }
    if (cmd == "fmp") {
        std::cout << "atoms " << sets(r["atoms"]) << "\n";
        std::cout << "world " << r["world"] << ", depth " << r["depth_result"] << " <= " << r["depth_source"] << "\n";
        return;
    }
    if (cmd == "filtrate") {
        std::cout << "L_" << r["m"] << " from " << r["selected"].dump() << ", falsified at " << r["world"]
                  << ", agreement " << (r["agreement"].get<bool>() ? "yes" : "no") << "\n";
        return;
    }
    std::cout << r.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workbench for finite MS4 frames and their dual algebras"};
    app.require_subcommand(1);
    bool human = false;
    app.add_flag("--human", human, "Readable tables instead of JSON");

    ms4lab_budget budget;
    ms4lab_budget_default(&budget);
    auto add_budget = [&](CLI::App* c) {
        c->add_option("--max-valuations", budget.max_valuations, "Valuation budget for brute-force validity");
        c->add_option("--cluster-cap", budget.cluster_cap, "Max E-clusters for the M+Cas condition");
        c->add_option("--path-cap", budget.path_cap, "Stop the path search at this length");
        c->add_option("--threads", budget.threads, "Worker threads (default MS4LAB_THREADS)");
    };

    std::string frame_spec;
    std::string axiom;
    std::string formula;
    auto add_formula = [&](CLI::App* c) {
        auto* a = c->add_option("--axiom", axiom, "Named axiom: ms4 bar mcas grz sc ed P<n> P0_<n> rp<m>");
        auto* f = c->add_option("--formula", formula, "Formula text");
        a->excludes(f);
        f->excludes(a);
    };

    auto* check = app.add_subcommand("check", "Validity of an axiom or formula on a frame");
    check->add_option("--frame", frame_spec, "Frame recipe")->required();
    add_formula(check);
    add_budget(check);

    auto* classify = app.add_subcommand("classify", "Named classes the frame belongs to");
    classify->add_option("--frame", frame_spec, "Frame recipe")->required();
    add_budget(classify);

    auto* layers = app.add_subcommand("layers", "Layer decomposition, depths, Q-roots");
    layers->add_option("--frame", frame_spec, "Frame recipe")->required();

    bool proper = false;
    auto* path = app.add_subcommand("path", "Longest irreducible S-path");
    path->add_option("--frame", frame_spec, "Frame recipe")->required();
    path->add_flag("--proper", proper, "Exclude steps inside R and E");
    add_budget(path);

    std::string in_path;
    std::string out_path;
    auto* translate = app.add_subcommand("translate", "Depth-3 MS4 frame from an S5_2 frame file");
    translate->add_option("--in", in_path, "S5_2 frame JSON")->required();
    translate->add_option("--out", out_path, "Output frame JSON (stdout if omitted)");

    std::string valuation;
    auto* filtrate = app.add_subcommand("filtrate", "Selective filtration onto a chain");
    filtrate->add_option("--frame", frame_spec, "Frame recipe")->required();
    add_formula(filtrate);
    filtrate->add_option("--valuation", valuation, "JSON valuation; default is the first countermodel");
    add_budget(filtrate);

    auto* fmp = app.add_subcommand("fmp", "Finite countermodel via approximate exists");
    fmp->add_option("--frame", frame_spec, "Frame recipe")->required();
    add_formula(fmp);
    add_budget(fmp);

    std::string family;
    std::string staircase;
    int k_max = 3;
    int trials = 100;
    std::uint64_t seed = 1;
    auto* growth = app.add_subcommand("growth", "Generated subalgebra sizes (CSV)");
    auto* fam = growth->add_option("--family", family, "Recipes separated by ';' (chain:A..B, grid:A..B ranges)");
    auto* stair = growth->add_option("--staircase", staircase, "Grid range A..B with the staircase generator");
    fam->excludes(stair);
    growth->add_option("--k-max", k_max, "Largest generator count");
    growth->add_option("--trials", trials, "Sampled generator tuples");
    growth->add_option("--seed", seed, "Sampling seed");

    ms4lab_suite_options sopts;
    ms4lab_suite_options_default(&sopts);
    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run a property suite (exit 1 on violation)");
    verify->add_option("suite", suite, "correspondence structure translation fmp paths grid filtration minimal all");
    verify->add_option("--max-worlds", sopts.max_worlds, "Exhaustive frame size bound");
    verify->add_option("--random-frames", sopts.random_frames, "Seeded random frames");
    verify->add_option("--random-max-worlds", sopts.random_max_worlds, "Random frame size bound");
    verify->add_option("--seed", sopts.seed, "Suite seed");
    verify->add_option("--count", sopts.count, "Item count for sampled suites");
    verify->add_option("--max-valuations", sopts.max_valuations, "Per-formula valuation budget");
    verify->add_option("--cluster-cap", sopts.cluster_cap, "Max E-clusters for the M+Cas condition");
    verify->add_option("--threads", sopts.threads, "Worker threads");

    std::string dot_path;
    auto* exp = app.add_subcommand("export", "Graphviz rendering of a frame");
    exp->add_option("--frame", frame_spec, "Frame recipe")->required();
    exp->add_option("--dot", dot_path, "Write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        auto need_formula = [&] {
            if (axiom.empty() && formula.empty()) throw Failure{MS4LAB_ERR_ARGUMENT, "one of --axiom or --formula is required"};
        };
        auto emit = [&](const std::string& text) {
            if (human)
                human_report(cmd, json::parse(text));
            else
                std::cout << text << "\n";
        };
        char* out = nullptr;

        if (cmd == "check") {
            need_formula();
            const auto f = load_frame(frame_spec);
            const auto phi = load_formula(axiom, formula);
            ms4lab_verdict v;
            ok(ms4lab_check(f.get(), phi.get(), &budget, &v, &out));
            emit(take(out));
        } else if (cmd == "classify") {
            const auto f = load_frame(frame_spec);
            ok(ms4lab_classify(f.get(), &budget, &out));
            emit(take(out));
        } else if (cmd == "layers") {
            const auto f = load_frame(frame_spec);
            ok(ms4lab_layers(f.get(), &out));
            emit(take(out));
        } else if (cmd == "path") {
            const auto f = load_frame(frame_spec);
            ok(ms4lab_path(f.get(), proper ? 1 : 0, &budget, &out));
            emit(take(out));
        } else if (cmd == "translate") {
            const std::string text = read_file(in_path);
            ms4lab_frame* raw = nullptr;
            ok(ms4lab_frame_translate_json(text.c_str(), &raw));
            const FramePtr f(raw, ms4lab_frame_free);
            ok(ms4lab_frame_to_json(f.get(), &out));
            const std::string frame_json = json::parse(take(out)).dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << frame_json;
            } else {
                write_file(out_path, frame_json);
                std::cout << json{{"written", out_path}, {"worlds", ms4lab_frame_size(f.get())}}.dump() << "\n";
            }
        } else if (cmd == "filtrate") {
            need_formula();
            const auto f = load_frame(frame_spec);
            const auto phi = load_formula(axiom, formula);
            ok(ms4lab_filtrate(f.get(), phi.get(), valuation.empty() ? nullptr : valuation.c_str(), &budget, &out));
            emit(take(out));
        } else if (cmd == "fmp") {
            need_formula();
            const auto f = load_frame(frame_spec);
            const auto phi = load_formula(axiom, formula);
            ok(ms4lab_fmp(f.get(), phi.get(), &budget, &out));
            emit(take(out));
        } else if (cmd == "growth") {
            if (!staircase.empty()) {
                const auto dots = staircase.find("..");
                if (dots == std::string::npos) throw Failure{MS4LAB_ERR_ARGUMENT, "--staircase expects A..B"};
                ok(ms4lab_staircase_growth(std::atoi(staircase.substr(0, dots).c_str()),
                                           std::atoi(staircase.substr(dots + 2).c_str()), &out));
            } else {
                if (family.empty()) throw Failure{MS4LAB_ERR_ARGUMENT, "one of --family or --staircase is required"};
                ok(ms4lab_growth(family.c_str(), k_max, trials, seed, &out));
            }
            std::cout << take(out);
        } else if (cmd == "verify") {
            const char* all[] = {"correspondence", "structure", "translation", "fmp",
                                 "paths",          "grid",      "filtration",  "minimal"};
            std::vector<std::string> names;
            if (suite == "all")
                names.assign(std::begin(all), std::end(all));
            else
                names.push_back(suite);
            bool all_passed = true;
            json reports = json::array();
            for (const auto& name : names) {
                int passed = 0;
                ok(ms4lab_verify(name.c_str(), &sopts, &passed, &out));
                const json r = json::parse(take(out));
                all_passed = all_passed && passed;
                if (human)
                    human_report("verify", r);
                else
                    reports.push_back(r);
            }
            if (!human) std::cout << (names.size() == 1 ? reports[0] : reports).dump() << "\n";
            return all_passed ? 0 : 1;
        } else if (cmd == "export") {
            const auto f = load_frame(frame_spec);
            ok(ms4lab_export_dot(f.get(), &out));
            const std::string dot = take(out);
            if (dot_path.empty())
                std::cout << dot;
            else
                write_file(dot_path, dot);
        }
        return 0;
    } catch (const Failure& e) {
        std::cout << json{{"error", {{"status", status_name(e.status)}, {"message", e.message}}}}.dump() << "\n";
        return 2;
    }
}
