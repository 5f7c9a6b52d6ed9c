#include "ms4lab/io.hpp"

#include "ms4lab/constructions.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace ms4lab {

using nlohmann::json;

namespace {

Relation relation_from_json(int n, const json& pairs, const char* key) {
    if (!pairs.is_array()) throw std::invalid_argument(std::string("\"") + key + "\" must be an array of pairs");
    std::vector<std::pair<int, int>> out;
    for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw std::invalid_argument(std::string("\"") + key + "\" entries must be [i, j]");
        out.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    try {
        return Relation::from_pairs(n, out);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument(std::string("\"") + key + "\" refers to a world outside 0.." + std::to_string(n - 1));
    }
}

json relation_to_json(const Relation& r) {
    json out = json::array();
    for (auto [x, y] : r.pairs()) out.push_back({x, y});
    return out;
}

int world_count(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("frame must be a JSON object");
    if (!j.contains("worlds") || !j["worlds"].is_number_integer())
        throw std::invalid_argument("frame needs an integer \"worlds\"");
    const int n = j["worlds"].get<int>();
    if (n < 1 || n > kMaxWorlds) throw std::invalid_argument("\"worlds\" must be in 1..64");
    return n;
}

int to_int(std::string_view s, const char* what) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

MS4Frame frame_from_json(const json& j) {
    const int n = world_count(j);
    const json empty = json::array();
    const Relation r = relation_from_json(n, j.contains("R") ? j["R"] : empty, "R");
    const Relation e = relation_from_json(n, j.contains("E") ? j["E"] : empty, "E");
    const bool close_r = j.value("close_R", false);
    const bool close_e = j.value("close_E", false);
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return validate(r, e, close_r, close_e, std::move(labels));
}

json frame_to_json(const MS4Frame& f) {
    json j;
    j["worlds"] = f.size();
    if (!f.labels().empty()) j["labels"] = f.labels();
    j["R"] = relation_to_json(f.r());
    j["E"] = relation_to_json(f.e());
    j["close_R"] = false;
    j["close_E"] = false;
    return j;
}

S52Frame s52_from_json(const json& j) {
    const int n = world_count(j);
    const json empty = json::array();
    const char* k1 = j.contains("E1") ? "E1" : "R";
    const char* k2 = j.contains("E2") ? "E2" : "E";
    const Relation e1 = relation_from_json(n, j.contains(k1) ? j[k1] : empty, k1);
    const Relation e2 = relation_from_json(n, j.contains(k2) ? j[k2] : empty, k2);
    return S52Frame(e1.equivalence_closure(), e2.equivalence_closure());
}

json s52_to_json(const S52Frame& f) {
    return json{{"worlds", f.size()}, {"E1", relation_to_json(f.e1())}, {"E2", relation_to_json(f.e2())}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
}

MS4Frame frame_from_recipe(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("frame recipe needs a kind: '" + std::string(spec) + "'");
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view arg = spec.substr(colon + 1);

    if (kind == "chain") return chain_frame(to_int(arg, "chain length"));
    if (kind == "grid") {
        const auto x = arg.find('x');
        if (x == std::string_view::npos) throw std::invalid_argument("grid recipe is grid:RxC");
        return grid_frame(to_int(arg.substr(0, x), "rows"), to_int(arg.substr(x + 1), "columns")).ms4;
    }
    if (kind == "product") {
        const auto comma = arg.find(',');
        if (comma == std::string_view::npos || !arg.starts_with("chain") || arg.substr(comma + 1, 1) != "k")
            throw std::invalid_argument("product recipe is product:chainN,kK");
        const MS4Frame base = chain_frame(to_int(arg.substr(5, comma - 5), "chain length"));
        return product_frame(base.r(), to_int(arg.substr(comma + 2), "cluster size"));
    }
    if (kind == "translate") return translate(s52_from_json(read_json_file(std::string(arg))));
    if (kind == "file") return frame_from_json(read_json_file(std::string(arg)));
    if (kind == "random") {
        int n = 0;
        std::uint64_t seed = 0;
        RandomFrameParams params;
        std::string_view rest = arg;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) throw std::invalid_argument("random recipe items are key=value");
            const std::string_view key = item.substr(0, eq);
            const std::string value(item.substr(eq + 1));
            if (key == "n")
                n = to_int(value, "world count");
            else if (key == "seed")
                seed = std::stoull(value);
            else if (key == "r")
                params.r_density = std::stod(value);
            else if (key == "e")
                params.e_density = std::stod(value);
            else
                throw std::invalid_argument("unknown random recipe key '" + std::string(key) + "'");
        }
        return random_frame(n, params, seed);
    }
    if (kind == "enum") {
        const auto c2 = arg.find(':');
        if (c2 == std::string_view::npos) throw std::invalid_argument("enum recipe is enum:N:I");
        const auto all = enumerate_frames(to_int(arg.substr(0, c2), "world count"));
        const int i = to_int(arg.substr(c2 + 1), "frame index");
        if (i < 0 || i >= static_cast<int>(all.size()))
            throw std::invalid_argument("enum index out of range (0.." + std::to_string(all.size() - 1) + ")");
        return all[static_cast<std::size_t>(i)];
    }
    throw std::invalid_argument("unknown frame recipe kind '" + std::string(kind) + "'");
}

std::string export_dot(const MS4Frame& f) {
    static const char* palette[] = {"#fde0c5", "#d7ecd9", "#d6e4f0", "#eadcf0", "#f5f0c8", "#e0e0e0"};
    const auto layer_list = layers(f).layers;
    std::vector<int> layer_of(static_cast<std::size_t>(f.size()), 0);
    for (std::size_t i = 0; i < layer_list.size(); ++i)
        layer_list[i].for_each([&](int x) { layer_of[x] = static_cast<int>(i); });

    std::ostringstream out;
    out << "digraph frame {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=circle, style=filled];\n";
    const auto e_classes = f.e().classes();
    for (std::size_t c = 0; c < e_classes.size(); ++c) {
        out << "  subgraph cluster_e" << c << " {\n";
        out << "    style=rounded; color=blue;\n";
        e_classes[c].for_each([&](int x) {
            out << "    n" << x << " [label=\"" << f.label(x) << "\", fillcolor=\"" << palette[layer_of[x] % 6]
                << "\"];\n";
        });
        out << "  }\n";
    }

    const auto r_clusters = er_relation(f).classes();
    for (WorldSet c : r_clusters) {
        const auto m = c.members();
        for (std::size_t i = 0; i + 1 < m.size(); ++i)
            out << "  n" << m[i] << " -> n" << m[i + 1] << " [dir=none, style=bold];\n";
    }
    // Hasse diagram of the strict order on R-clusters.
    auto strictly_below = [&](WorldSet a, WorldSet b) {
        return f.r().test(a.first(), b.first()) && !f.r().test(b.first(), a.first());
    };
    for (WorldSet a : r_clusters)
        for (WorldSet b : r_clusters) {
            if (!strictly_below(a, b)) continue;
            bool covered = true;
            for (WorldSet c : r_clusters)
                if (strictly_below(a, c) && strictly_below(c, b)) covered = false;
            if (covered) out << "  n" << a.first() << " -> n" << b.first() << ";\n";
        }
    out << "}\n";
    return out.str();
}

}  // namespace ms4lab
