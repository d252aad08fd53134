#include "nplan/io/model_file.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nplan::io {

using nlohmann::json;

std::string to_json(const ModelFile& model) {
    json j;
    j["format_version"] = model.format_version;

    json table = json::array();
    for (const auto& [key, id] : model.ccwl_model.table.entries())
        table.push_back(json::array({key, id}));
    j["ccwl"] = {{"L", model.ccwl_model.iterations},
                 {"pooling", ccwl::pooling_name(model.ccwl_model.pooling)},
                 {"continuous_dim", model.ccwl_model.continuous_dim},
                 {"color_table", std::move(table)}};

    j["heuristic"] = {{"method", model.heuristic.method},
                      {"weights", model.heuristic.weights},
                      {"bias", model.heuristic.bias},
                      {"objective", model.heuristic.objective},
                      {"iterations", model.heuristic.iterations},
                      {"converged", model.heuristic.converged}};

    j["provenance"] = {{"domain", model.domain_name},
                       {"training_instances", model.training_instances},
                       {"config", model.config}};
    return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
    json j = json::parse(text);
    ModelFile model;
    model.format_version = j.at("format_version").get<int>();
    if (model.format_version != 1)
        throw std::runtime_error("unsupported model format version " +
                                 std::to_string(model.format_version));

    const json& ccwl_j = j.at("ccwl");
    model.ccwl_model.iterations = ccwl_j.at("L").get<int>();
    model.ccwl_model.pooling = ccwl::pooling_from_name(ccwl_j.at("pooling").get<std::string>());
    model.ccwl_model.continuous_dim = ccwl_j.value("continuous_dim", 1);
    std::vector<std::pair<std::string, int>> entries;
    for (const json& entry : ccwl_j.at("color_table"))
        entries.emplace_back(entry.at(0).get<std::string>(), entry.at(1).get<int>());
    model.ccwl_model.table = ccwl::ColorTable::from_entries(entries);

    const json& h = j.at("heuristic");
    model.heuristic.method = h.at("method").get<std::string>();
    model.heuristic.weights = h.at("weights").get<std::vector<double>>();
    model.heuristic.bias = h.at("bias").get<double>();
    model.heuristic.objective = h.value("objective", 0.0);
    model.heuristic.iterations = h.value("iterations", 0);
    model.heuristic.converged = h.value("converged", true);
    if (model.heuristic.weights.size() != model.ccwl_model.feature_length())
        throw std::runtime_error(
            "model file is inconsistent: " + std::to_string(model.heuristic.weights.size()) +
            " weights for feature length " + std::to_string(model.ccwl_model.feature_length()));

    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        model.domain_name = p.value("domain", "");
        if (p.contains("training_instances"))
            model.training_instances = p.at("training_instances").get<std::vector<std::string>>();
        if (p.contains("config"))
            model.config = p.at("config").get<std::map<std::string, std::string>>();
    }
    return model;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

void save_model(const ModelFile& model, const std::string& path) {
    write_file_atomic(path, to_json(model));
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

}  // namespace nplan::io
