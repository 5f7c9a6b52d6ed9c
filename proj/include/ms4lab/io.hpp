#pragma once

#include "ms4lab/frame.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ms4lab {

/// {"worlds": n, "labels": [...], "R": [[i,j],...], "E": [[i,j],...],
///  "close_R": bool, "close_E": bool}. Throws std::invalid_argument / FrameError.
MS4Frame frame_from_json(const nlohmann::json& j);
/// Full relations (no closure flags needed on reload).
nlohmann::json frame_to_json(const MS4Frame& f);

/// {"worlds": n, "E1": [...], "E2": [...]}; generators are closed to equivalences.
S52Frame s52_from_json(const nlohmann::json& j);
nlohmann::json s52_to_json(const S52Frame& f);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Throw IoError when the file cannot be opened; std::invalid_argument on bad JSON.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Frame recipes:
///   chain:N   grid:RxC   product:chainN,kK   translate:<s52 json file>
///   random:n=5,seed=42[,r=0.25,e=0.25]   enum:N:I (I-th labeled frame)   file:<path>
MS4Frame frame_from_recipe(std::string_view spec);

/// Graphviz text: E-classes as boxed clusters, R-clusters as undirected bold
/// lines, strict R as arrows between R-clusters (transitively reduced), nodes
/// shaded by layer.
std::string export_dot(const MS4Frame& f);

}  // namespace ms4lab
