#include "ms4lab/ms4lab.h"

#include "ms4lab/algebra.hpp"
#include "ms4lab/conditions.hpp"
#include "ms4lab/constructions.hpp"
#include "ms4lab/io.hpp"
#include "ms4lab/suites.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <optional>

using nlohmann::json;
using namespace ms4lab;

struct ms4lab_frame {
    MS4Frame frame;
};

struct ms4lab_formula {
    Formula phi;
    std::optional<AxiomName> axiom;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
ms4lab_status guard(F&& body) {
    try {
        last_error.clear();
        body();
        return MS4LAB_OK;
    } catch (const ParseError& e) {
        last_error = e.what();
        return MS4LAB_ERR_PARSE;
    } catch (const json::parse_error& e) {
        last_error = e.what();
        return MS4LAB_ERR_PARSE;
    } catch (const FrameError& e) {
        last_error = e.what();
        return MS4LAB_ERR_FRAME;
    } catch (const PreconditionFailed& e) {
        last_error = e.what();
        return MS4LAB_ERR_PRECONDITION;
    } catch (const NotFalsified& e) {
        last_error = e.what();
        return MS4LAB_ERR_PRECONDITION;
    } catch (const AlreadyValid& e) {
        last_error = e.what();
        return MS4LAB_ERR_ALREADY_VALID;
    } catch (const NotSubalgebra& e) {
        last_error = e.what();
        return MS4LAB_ERR_ARGUMENT;
    } catch (const IoError& e) {
        last_error = e.what();
        return MS4LAB_ERR_IO;
    } catch (const GiveUp& e) {
        last_error = e.what();
        return MS4LAB_ERR_BUDGET;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return MS4LAB_ERR_ARGUMENT;
    } catch (const std::out_of_range& e) {
        last_error = e.what();
        return MS4LAB_ERR_ARGUMENT;
    } catch (const json::exception& e) {
        last_error = e.what();
        return MS4LAB_ERR_ARGUMENT;
    } catch (const std::logic_error& e) {
        last_error = e.what();
        return MS4LAB_ERR_INTERNAL;
    } catch (const std::runtime_error& e) {
        // UnboundVariable and budget overruns both land here.
        last_error = e.what();
        return dynamic_cast<const UnboundVariable*>(&e) ? MS4LAB_ERR_ARGUMENT : MS4LAB_ERR_BUDGET;
    } catch (const std::exception& e) {
        last_error = e.what();
        return MS4LAB_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string(what) + " is null");
}

ms4lab_budget budget_or_default(const ms4lab_budget* b) {
    ms4lab_budget out;
    ms4lab_budget_default(&out);
    return b ? *b : out;
}

ValidityOptions validity(const ms4lab_budget& b) { return ValidityOptions{b.max_valuations, std::max(1, b.threads)}; }

json set_json(WorldSet s) { return s.members(); }

json valuation_json(const Valuation& v) {
    json out = json::object();
    for (const auto& [k, s] : v) out[k] = set_json(s);
    return out;
}

json witness_labels(const MS4Frame& f, const std::vector<int>& ws) {
    json out = json::array();
    for (int x : ws) out.push_back(f.label(x));
    return out;
}

json report_json(const ConditionReport& r) {
    json j{{"name", r.name}, {"holds", r.holds}, {"budget_exceeded", r.budget_exceeded}};
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (r.witness_set) j["witness_set"] = set_json(*r.witness_set);
    return j;
}

/// Frame condition paired with a named axiom.
ConditionReport condition_for(const MS4Frame& f, const AxiomName& a, int cluster_cap) {
    using K = AxiomName::Kind;
    ConditionReport r;
    switch (a.kind) {
        case K::MS4Ax: r.name = "MS4-frame"; return r;
        case K::Bar: return check_barcan(f);
        case K::Ed: return check_ed(f);
        case K::Sc: return check_sc(f);
        case K::Grz: return check_grz_finite(f);
        case K::MCasPlus: return check_mcas_semantic(f, cluster_cap);
        case K::P: {
            r.name = "depth<=" + std::to_string(a.index);
            const int d = depth(f);
            r.holds = d <= a.index;
            if (!r.holds) r.witness = {d};
            return r;
        }
        case K::P0: {
            r.name = "q-depth<=" + std::to_string(a.index);
            const int d = q_depth(f);
            r.holds = d <= a.index;
            if (!r.holds) r.witness = {d};
            return r;
        }
        case K::Rp: return check_rp(f, a.index);
    }
    return r;
}

std::vector<MS4Frame> parse_family(std::string_view spec) {
    std::vector<MS4Frame> out;
    while (!spec.empty()) {
        const auto semi = spec.find(';');
        const std::string_view item = spec.substr(0, semi);
        spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
        const auto dots = item.find("..");
        const auto colon = item.find(':');
        if (dots != std::string_view::npos && colon != std::string_view::npos) {
            const std::string kind(item.substr(0, colon));
            const int lo = std::stoi(std::string(item.substr(colon + 1, dots - colon - 1)));
            const int hi = std::stoi(std::string(item.substr(dots + 2)));
            if (lo > hi) throw std::invalid_argument("empty range in family");
            for (int k = lo; k <= hi; ++k) {
                if (kind == "chain")
                    out.push_back(chain_frame(k));
                else if (kind == "grid")
                    out.push_back(grid_frame(k, k).ms4);
                else
                    throw std::invalid_argument("ranges are supported for chain and grid only");
            }
        } else if (!item.empty()) {
            out.push_back(frame_from_recipe(item));
        }
    }
    if (out.empty()) throw std::invalid_argument("empty frame family");
    return out;
}

}  // namespace

extern "C" {

const char* ms4lab_version(void) { return "0.1.0"; }

const char* ms4lab_last_error(void) { return last_error.c_str(); }

void ms4lab_string_free(char* s) { std::free(s); }

void ms4lab_budget_default(ms4lab_budget* out) {
    if (!out) return;
    out->max_valuations = kDefaultValuationBudget;
    out->cluster_cap = kDefaultClusterCap;
    out->path_cap = kMaxWorlds;
    out->threads = default_thread_count();
}

void ms4lab_suite_options_default(ms4lab_suite_options* out) {
    if (!out) return;
    const SuiteOptions d;
    out->max_worlds = d.max_worlds;
    out->random_frames = d.random_frames;
    out->random_max_worlds = d.random_max_worlds;
    out->seed = d.seed;
    out->max_valuations = d.max_valuations;
    out->cluster_cap = d.cluster_cap;
    out->threads = default_thread_count();
    out->count = d.count;
}

ms4lab_status ms4lab_frame_from_recipe(const char* spec, ms4lab_frame** out) {
    return guard([&] {
        need(spec, "recipe");
        need(out, "output");
        *out = new ms4lab_frame{frame_from_recipe(spec)};
    });
}

ms4lab_status ms4lab_frame_from_json(const char* text, ms4lab_frame** out) {
    return guard([&] {
        need(text, "json");
        need(out, "output");
        *out = new ms4lab_frame{frame_from_json(json::parse(text))};
    });
}

ms4lab_status ms4lab_frame_translate_json(const char* s52_json, ms4lab_frame** out) {
    return guard([&] {
        need(s52_json, "json");
        need(out, "output");
        *out = new ms4lab_frame{translate(s52_from_json(json::parse(s52_json)))};
    });
}

ms4lab_status ms4lab_frame_to_json(const ms4lab_frame* f, char** out) {
    return guard([&] {
        need(f, "frame");
        need(out, "output");
        *out = dup(frame_to_json(f->frame).dump());
    });
}

int ms4lab_frame_size(const ms4lab_frame* f) { return f ? f->frame.size() : -1; }

void ms4lab_frame_free(ms4lab_frame* f) { delete f; }

ms4lab_status ms4lab_formula_parse(const char* text, ms4lab_formula** out) {
    return guard([&] {
        need(text, "formula text");
        need(out, "output");
        *out = new ms4lab_formula{parse(text), std::nullopt};
    });
}

ms4lab_status ms4lab_formula_axiom(const char* name, ms4lab_formula** out) {
    return guard([&] {
        need(name, "axiom name");
        need(out, "output");
        const AxiomName a = parse_axiom_name(name);
        *out = new ms4lab_formula{build_axiom(a), a};
    });
}

ms4lab_status ms4lab_formula_print(const ms4lab_formula* phi, char** out) {
    return guard([&] {
        need(phi, "formula");
        need(out, "output");
        *out = dup(print(phi->phi));
    });
}

void ms4lab_formula_free(ms4lab_formula* phi) { delete phi; }

ms4lab_status ms4lab_check(const ms4lab_frame* f, const ms4lab_formula* phi, const ms4lab_budget* budget,
                           ms4lab_verdict* verdict, char** report) {
    return guard([&] {
        need(f, "frame");
        need(phi, "formula");
        const ms4lab_budget b = budget_or_default(budget);
        const auto t0 = std::chrono::steady_clock::now();
        const ValidityResult v = valid(f->frame, phi->phi, validity(b));
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        json j{{"formula", print(phi->phi)},
               {"worlds", f->frame.size()},
               {"verdict", to_string(v.verdict)},
               {"valuations_checked", v.valuations_checked},
               {"seconds", seconds}};
        if (phi->axiom) j["axiom"] = to_string(*phi->axiom);
        if (v.countermodel) {
            j["countermodel"] = {{"valuation", valuation_json(v.countermodel->valuation)},
                                 {"world", v.countermodel->world},
                                 {"world_label", f->frame.label(v.countermodel->world)}};
        }
        if (phi->axiom) {
            const ConditionReport c = condition_for(f->frame, *phi->axiom, b.cluster_cap);
            j["condition"] = report_json(c);
            if (v.verdict != Verdict::BudgetExceeded && !c.budget_exceeded)
                j["agrees"] = c.holds == (v.verdict == Verdict::Valid);
        }
        if (verdict)
            *verdict = v.verdict == Verdict::Valid     ? MS4LAB_VALID
                       : v.verdict == Verdict::Invalid ? MS4LAB_INVALID
                                                       : MS4LAB_BUDGET_EXCEEDED;
        if (report) *report = dup(j.dump());
    });
}

ms4lab_status ms4lab_classify(const ms4lab_frame* f, const ms4lab_budget* budget, char** report) {
    return guard([&] {
        need(f, "frame");
        need(report, "output");
        const ms4lab_budget b = budget_or_default(budget);
        const Classification c = classify(f->frame, b.cluster_cap);
        json j{{"classes", c.classes}, {"undetermined", c.undetermined}, {"si", to_string(classify_si(f->frame))}};
        json conds = json::array();
        for (const auto& r : {check_barcan(f->frame), check_ed(f->frame), check_sc(f->frame),
                              check_grz_finite(f->frame), check_mcas_semantic(f->frame, b.cluster_cap)})
            conds.push_back(report_json(r));
        j["conditions"] = conds;
        *report = dup(j.dump());
    });
}

ms4lab_status ms4lab_layers(const ms4lab_frame* f, char** report) {
    return guard([&] {
        need(f, "frame");
        need(report, "output");
        const MS4Frame& fr = f->frame;
        json layers_j = json::array();
        for (WorldSet d : layers(fr).layers) layers_j.push_back(set_json(d));
        json pd = json::array();
        for (int x = 0; x < fr.size(); ++x) pd.push_back(point_depth(fr, x));
        json e_cl = json::array();
        for (WorldSet c : fr.e().classes()) e_cl.push_back(set_json(c));
        json r_cl = json::array();
        for (WorldSet c : er_relation(fr).classes()) r_cl.push_back(set_json(c));
        json j{{"worlds", fr.size()},          {"layers", layers_j},
               {"depth", depth(fr)},           {"q_depth", q_depth(fr)},
               {"point_depth", pd},            {"q_roots", set_json(q_roots(fr))},
               {"si", to_string(classify_si(fr))}, {"e_clusters", e_cl},
               {"r_clusters", r_cl}};
        *report = dup(j.dump());
    });
}

ms4lab_status ms4lab_path(const ms4lab_frame* f, int proper, const ms4lab_budget* budget, char** report) {
    return guard([&] {
        need(f, "frame");
        need(report, "output");
        const ms4lab_budget b = budget_or_default(budget);
        const PathResult p = longest_irreducible_path(f->frame, proper != 0, b.path_cap);
        json steps = json::array();
        for (StepTag t : p.witness.steps) steps.push_back(to_string(t));
        json j{{"proper", proper != 0},
               {"cap", b.path_cap},
               {"length", p.length},
               {"capped", p.capped},
               {"witness",
                {{"worlds", p.witness.worlds},
                 {"labels", witness_labels(f->frame, p.witness.worlds)},
                 {"steps", steps},
                 {"proper", p.witness.proper}}}};
        *report = dup(j.dump());
    });
}

ms4lab_status ms4lab_filtrate(const ms4lab_frame* f, const ms4lab_formula* phi, const char* valuation_json_text,
                              const ms4lab_budget* budget, char** report) {
    return guard([&] {
        need(f, "frame");
        need(phi, "formula");
        need(report, "output");
        Valuation v;
        if (valuation_json_text) {
            const json j = json::parse(valuation_json_text);
            if (!j.is_object()) throw std::invalid_argument("valuation must be a JSON object");
            for (const auto& [name, worlds] : j.items()) {
                WorldSet s;
                for (int x : worlds.get<std::vector<int>>()) {
                    if (x < 0 || x >= f->frame.size()) throw std::invalid_argument("valuation world out of range");
                    s.insert(x);
                }
                v[name] = s;
            }
        } else {
            const ValidityResult r = valid(f->frame, phi->phi, validity(budget_or_default(budget)));
            if (r.verdict == Verdict::Valid) throw NotFalsified();
            if (r.verdict == Verdict::BudgetExceeded) throw std::runtime_error("validity check exceeded the valuation budget");
            v = r.countermodel->valuation;
        }
        const FiltrationResult r = selective_filtration(f->frame, phi->phi, v);
        json j{{"m", r.chain.size()},
               {"chain", frame_to_json(r.chain)},
               {"selected", r.selected},
               {"valuation", valuation_json(r.valuation)},
               {"source_valuation", valuation_json(v)},
               {"world", r.world},
               {"agreement", r.disagreements.empty()},
               {"disagreements", r.disagreements}};
        *report = dup(j.dump());
    });
}

ms4lab_status ms4lab_fmp(const ms4lab_frame* f, const ms4lab_formula* phi, const ms4lab_budget* budget, char** report) {
    return guard([&] {
        need(f, "frame");
        need(phi, "formula");
        need(report, "output");
        const FmpResult r = fmp_countermodel(f->frame, phi->phi, validity(budget_or_default(budget)));
        json atoms = json::array();
        for (WorldSet a : r.atoms) atoms.push_back(set_json(a));
        json j{{"frame", frame_to_json(r.frame)},
               {"valuation", valuation_json(r.valuation)},
               {"world", r.world},
               {"source", {{"valuation", valuation_json(r.source.valuation)}, {"world", r.source.world}}},
               {"atoms", atoms},
               {"depth_source", depth(f->frame)},
               {"depth_result", depth(r.frame)},
               {"identity_failures", r.identity_failures}};
        *report = dup(j.dump());
    });
}

ms4lab_status ms4lab_growth(const char* family, int k_max, int trials, uint64_t seed, char** csv) {
    return guard([&] {
        need(family, "family");
        need(csv, "output");
        *csv = dup(growth_csv(growth_probe(parse_family(family), k_max, trials, seed)));
    });
}

ms4lab_status ms4lab_staircase_growth(int k_lo, int k_hi, char** csv) {
    return guard([&] {
        need(csv, "output");
        if (k_lo < 1 || k_hi < k_lo || k_hi > 8) throw std::invalid_argument("grid range must lie in 1..8");
        std::string out = "k,size,atoms\n";
        for (int k = k_lo; k <= k_hi; ++k) {
            const MS4Frame g = grid_frame(k, k).ms4;
            const int atoms =
                generated_subalgebra(g, {staircase(k, k)}, Signature::of({Operator::Dia, Operator::Ex})).atom_count();
            out += std::to_string(k) + "," + pow2_string(atoms) + "," + std::to_string(atoms) + "\n";
        }
        *csv = dup(out);
    });
}

ms4lab_status ms4lab_verify(const char* suite, const ms4lab_suite_options* opts, int* passed, char** report) {
    return guard([&] {
        need(suite, "suite");
        SuiteOptions o;
        if (opts) {
            o.max_worlds = opts->max_worlds;
            o.random_frames = opts->random_frames;
            o.random_max_worlds = opts->random_max_worlds;
            o.seed = opts->seed;
            o.max_valuations = opts->max_valuations;
            o.cluster_cap = opts->cluster_cap;
            o.threads = std::max(1, opts->threads);
            o.count = opts->count;
        }
        const SuiteReport r = run_suite(suite, o);
        if (passed) *passed = r.passed ? 1 : 0;
        if (report) {
            json j{{"suite", r.name},
                   {"passed", r.passed},
                   {"checks", r.checks},
                   {"failures", r.failures},
                   {"failure_samples", r.failure_samples},
                   {"counters", r.counters},
                   {"seconds", r.seconds}};
            *report = dup(j.dump());
        }
    });
}

ms4lab_status ms4lab_export_dot(const ms4lab_frame* f, char** dot) {
    return guard([&] {
        need(f, "frame");
        need(dot, "output");
        *dot = dup(export_dot(f->frame));
    });
}

}  // extern "C"
