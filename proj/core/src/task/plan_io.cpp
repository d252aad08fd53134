#include "nplan/task/plan_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nplan::task {

std::vector<std::string> parse_plan_text(const std::string& text) {
    std::vector<std::string> plan;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == ';') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        std::string trimmed = line.substr(begin, end - begin + 1);
        if (trimmed.front() != '(' || trimmed.back() != ')')
            throw std::runtime_error("plan line " + std::to_string(lineno) +
                                     ": expected (name obj ...)");
        std::istringstream tokens(trimmed.substr(1, trimmed.size() - 2));
        std::string token, signature;
        while (tokens >> token) {
            for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (!signature.empty()) signature += " ";
            signature += token;
        }
        if (signature.empty())
            throw std::runtime_error("plan line " + std::to_string(lineno) + ": empty action");
        plan.push_back(std::move(signature));
    }
    return plan;
}

std::vector<std::string> read_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_plan_text(buffer.str());
}

std::string format_plan(const std::vector<std::string>& signatures, double cost) {
    std::ostringstream os;
    for (const std::string& sig : signatures) os << "(" << sig << ")\n";
    if (cost == static_cast<std::int64_t>(cost))
        os << "; cost = " << static_cast<std::int64_t>(cost) << "\n";
    else
        os << "; cost = " << cost << "\n";
    return os.str();
}

}  // namespace nplan::task
