#pragma once

#include <map>
#include <string>
#include <vector>

#include "nplan/ccwl/ccwl.hpp"
#include "nplan/training/trainers.hpp"

namespace nplan::io {

// Persisted trained model: the CCWL feature space plus the linear heuristic
// over it. JSON on disk; reals round-trip exactly.
struct ModelFile {
    int format_version = 1;
    ccwl::CcwlModel ccwl_model;
    training::LinearHeuristic heuristic;
    std::string domain_name;
    std::vector<std::string> training_instances;
    std::map<std::string, std::string> config;
};

std::string to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);

// Atomic write (temp file + rename).
void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

// Atomic text-file write used by every command that produces output files.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace nplan::io
