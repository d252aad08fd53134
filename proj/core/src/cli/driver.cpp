#include "nplan/cli/driver.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nplan/benchgen/generators.hpp"
#include "nplan/ccwl/ccwl.hpp"
#include "nplan/io/model_file.hpp"
#include "nplan/nilg/graph.hpp"
#include "nplan/pddl/parser.hpp"
#include "nplan/search/search.hpp"
#include "nplan/task/grounder.hpp"
#include "nplan/task/plan_io.hpp"
#include "nplan/training/dataset.hpp"
#include "nplan/training/trace.hpp"
#include "nplan/training/trainers.hpp"

namespace nplan::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

task::GroundTask load_task(const std::string& domain_path, const std::string& problem_path,
                           std::ostream& err) {
    std::vector<std::string> warnings;
    pddl::LiftedDomain domain = pddl::parse_domain(read_text_file(domain_path), &warnings);
    pddl::LiftedProblem problem =
        pddl::parse_problem(read_text_file(problem_path), domain, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    return task::ground(domain, problem);
}

std::unique_ptr<search::Heuristic> make_heuristic(const std::string& spec) {
    if (spec == "blind") return std::make_unique<search::BlindHeuristic>();
    if (spec == "goal-count") return std::make_unique<search::GoalCountHeuristic>();
    if (spec.rfind("model:", 0) == 0) {
        io::ModelFile model = io::load_model(spec.substr(6));
        return std::make_unique<search::LearnedHeuristic>(
            std::move(model.ccwl_model), std::move(model.heuristic.weights),
            model.heuristic.bias);
    }
    throw std::runtime_error("unknown heuristic '" + spec + "' (blind|goal-count|model:PATH)");
}

json stats_to_json(const search::SearchResult& result) {
    json j;
    j["outcome"] = search::outcome_name(result.outcome);
    j["expansions"] = result.stats.expansions;
    j["evaluations"] = result.stats.evaluations;
    j["generated"] = result.stats.generated;
    j["peak_open"] = result.stats.peak_open;
    j["wall_seconds"] = result.stats.wall_seconds;
    if (result.outcome == search::Outcome::plan_found) {
        j["plan_length"] = result.plan.size();
        j["plan_cost"] = result.cost;
    }
    return j;
}

int finish_search(const task::GroundTask& task, const search::SearchResult& result,
                  const std::string& plan_out, const std::string& stats_out, std::ostream& out) {
    if (!stats_out.empty()) io::write_file_atomic(stats_out, stats_to_json(result).dump(2) + "\n");
    switch (result.outcome) {
        case search::Outcome::plan_found: {
            std::string text = task::format_plan(result.plan_signatures(task), result.cost);
            if (!plan_out.empty()) io::write_file_atomic(plan_out, text);
            out << "plan found: length " << result.plan.size() << ", cost " << result.cost
                << ", expansions " << result.stats.expansions << "\n";
            return 0;
        }
        case search::Outcome::unsolvable:
            out << "unsolvable (explored " << result.stats.expansions << " expansions)\n";
            return 1;
        case search::Outcome::resource_limit:
            out << "resource limit reached after " << result.stats.expansions << " expansions\n";
            return 2;
    }
    return 3;
}

struct GenSize {
    std::vector<int> values;
};

benchgen::GeneratedInstance generate(const std::string& domain, const GenSize& size,
                                     std::uint64_t seed) {
    const std::vector<int>& v = size.values;
    if (domain == "ccblocksworld") {
        if (v.size() != 3)
            throw std::runtime_error("ccblocksworld sizes are blocks,bases,capacity");
        return benchgen::gen_ccblocksworld(v[0], v[1], v[2], seed);
    }
    if (domain == "ferry") {
        if (v.size() != 3) throw std::runtime_error("ferry sizes are cars,locations,capacity");
        return benchgen::gen_ferry(v[0], v[1], v[2], seed);
    }
    if (domain == "spanner") {
        if (v.size() != 3) throw std::runtime_error("spanner sizes are spanners,nuts,locations");
        return benchgen::gen_spanner(v[0], v[1], v[2], seed);
    }
    throw std::runtime_error("unknown domain '" + domain + "' (ccblocksworld|ferry|spanner)");
}

GenSize parse_size(const std::string& text) {
    GenSize size;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ',')) size.values.push_back(std::stoi(part));
    return size;
}

int cmd_gen(const std::string& domain, const std::string& out_dir,
            const std::vector<std::string>& sizes, std::uint64_t seed, std::ostream& out) {
    fs::create_directories(out_dir);
    json manifest;
    manifest["domain"] = domain;
    manifest["seed"] = seed;
    manifest["instances"] = json::array();

    std::string domain_text;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        GenSize size = parse_size(sizes[i]);
        std::uint64_t instance_seed = seed + i;
        benchgen::GeneratedInstance instance = generate(domain, size, instance_seed);
        domain_text = instance.domain_pddl;
        std::ostringstream name;
        name << "problem" << std::setw(2) << std::setfill('0') << i + 1 << ".pddl";
        io::write_file_atomic((fs::path(out_dir) / name.str()).string(), instance.problem_pddl);
        manifest["instances"].push_back(
            {{"file", name.str()}, {"sizes", size.values}, {"seed", instance_seed}});
    }
    io::write_file_atomic((fs::path(out_dir) / "domain.pddl").string(), domain_text);
    io::write_file_atomic((fs::path(out_dir) / "manifest.json").string(),
                          manifest.dump(2) + "\n");
    out << "generated " << sizes.size() << " instance(s) in " << out_dir << "\n";
    return 0;
}

task::State state_from_plan_prefix(const task::GroundTask& task, const std::string& spec) {
    std::size_t colon = spec.find_last_of(':');
    if (colon == std::string::npos)
        throw std::runtime_error("--state-from-plan expects FILE:STEP");
    std::string path = spec.substr(0, colon);
    int steps = std::stoi(spec.substr(colon + 1));
    std::vector<std::string> plan = task::read_plan_file(path);
    if (steps < 0 || static_cast<std::size_t>(steps) > plan.size())
        throw std::runtime_error("plan prefix length out of range");
    task::State state = task.initial_state;
    for (int i = 0; i < steps; ++i) {
        int action = task.find_action(plan[static_cast<std::size_t>(i)]);
        if (action < 0) throw std::runtime_error("unknown action '" + plan[i] + "'");
        std::optional<task::State> next =
            task::apply(task, state, task.actions[static_cast<std::size_t>(action)]);
        if (!next)
            throw std::runtime_error("plan step " + std::to_string(i + 1) + " is inapplicable");
        state = std::move(*next);
    }
    return state;
}

int cmd_train(const std::string& domain_path, const std::string& problems_dir,
              const std::string& plans_dir, const std::string& method, int iterations,
              double lambda, double epsilon, const std::string& pooling, const std::string& out_path,
              const std::string& dump_path, std::ostream& out, std::ostream& err) {
    std::vector<std::string> warnings;
    pddl::LiftedDomain domain = pddl::parse_domain(read_text_file(domain_path), &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";

    std::vector<fs::path> problem_files;
    for (const fs::directory_entry& entry : fs::directory_iterator(problems_dir)) {
        if (entry.path().extension() == ".pddl" && entry.path().filename() != "domain.pddl")
            problem_files.push_back(entry.path());
    }
    std::sort(problem_files.begin(), problem_files.end());
    if (problem_files.empty()) throw std::runtime_error("no .pddl problems in " + problems_dir);

    std::deque<task::GroundTask> tasks;
    std::vector<const task::GroundTask*> task_ptrs;
    std::vector<std::vector<std::string>> plans;
    std::vector<std::string> instance_names;
    for (const fs::path& problem_file : problem_files) {
        fs::path plan_file = fs::path(plans_dir) / (problem_file.stem().string() + ".plan");
        if (!fs::exists(plan_file)) {
            err << "warning: skipping " << problem_file.filename().string() << " (no "
                << plan_file.filename().string() << ")\n";
            continue;
        }
        pddl::LiftedProblem problem =
            pddl::parse_problem(read_text_file(problem_file.string()), domain, nullptr);
        tasks.push_back(task::ground(domain, problem));
        task_ptrs.push_back(&tasks.back());
        plans.push_back(task::read_plan_file(plan_file.string()));
        instance_names.push_back(problem_file.filename().string());
    }
    if (tasks.empty()) throw std::runtime_error("no (problem, plan) pairs to train on");

    std::vector<training::PlanTrace> traces = training::build_traces(task_ptrs, plans);

    std::vector<nilg::NilgGraph> graphs;
    for (const training::PlanTrace& trace : traces) {
        for (const task::State& state : trace.states)
            graphs.push_back(nilg::build_nilg(*trace.task, state));
    }

    ccwl::CcwlModel model;
    model.iterations = iterations;
    model.pooling = ccwl::pooling_from_name(pooling);
    model.table = ccwl::fit_colors(graphs, iterations);

    io::ModelFile file;
    file.ccwl_model = std::move(model);
    file.domain_name = domain.name;
    file.training_instances = instance_names;
    file.config["method"] = method;
    file.config["iterations"] = std::to_string(iterations);
    file.config["lambda"] = std::to_string(lambda);
    file.config["pooling"] = pooling;

    if (method == "cost") {
        training::CostDataset dataset = training::build_cost_dataset(traces, file.ccwl_model);
        if (!dump_path.empty()) io::write_file_atomic(dump_path, training::to_csv(dataset));
        training::CostTrainConfig config;
        config.lambda = lambda;
        config.epsilon = epsilon;
        file.heuristic = training::train_cost_to_go(dataset, config);
        out << "trained cost model on " << dataset.features.size() << " states, objective "
            << file.heuristic.objective << "\n";
    } else if (method == "rank") {
        training::RankingConstraintSet constraints =
            training::build_ranking_constraints(traces, file.ccwl_model);
        if (!dump_path.empty()) io::write_file_atomic(dump_path, training::to_csv(constraints));
        training::RankTrainConfig config;
        config.l1_weight = lambda;
        training::RankTrainResult result = training::train_ranking(constraints, config);
        file.heuristic = std::move(result.model);
        if (!file.heuristic.converged) err << "warning: ranking trainer hit the iteration limit\n";
        out << "trained rank model on " << constraints.constraints.size()
            << " constraints, objective " << file.heuristic.objective << "\n";
    } else {
        throw std::runtime_error("unknown method '" + method + "' (cost|rank)");
    }

    io::save_model(file, out_path);
    out << "model written to " << out_path << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numeric planning with learned graph heuristics"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate benchmark instances");
    std::string gen_domain, gen_out;
    std::vector<std::string> gen_sizes;
    std::uint64_t gen_seed = 0;
    gen->add_option("--domain", gen_domain, "ccblocksworld|ferry|spanner")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--sizes", gen_sizes, "Size tuples, e.g. 6,3,3")->required();
    gen->add_option("--seed", gen_seed, "Base seed; instance k uses seed+k");

    // solve-opt
    auto* solve = app.add_subcommand("solve-opt", "Find an optimal plan with blind A*");
    std::string solve_domain, solve_problem, solve_out, solve_stats;
    search::SearchLimits solve_limits;
    solve->add_option("--domain", solve_domain)->required();
    solve->add_option("--problem", solve_problem)->required();
    solve->add_option("--out", solve_out, "Plan file to write");
    solve->add_option("--stats", solve_stats, "Statistics JSON to write");
    solve->add_option("--max-expansions", solve_limits.max_expansions);
    solve->add_option("--max-seconds", solve_limits.max_seconds);

    // featurize
    auto* feat = app.add_subcommand("featurize", "Embed a state with a trained model");
    std::string feat_domain, feat_problem, feat_model, feat_state, feat_out;
    feat->add_option("--domain", feat_domain)->required();
    feat->add_option("--problem", feat_problem)->required();
    feat->add_option("--model", feat_model)->required();
    feat->add_option("--state-from-plan", feat_state, "PLAN:k embeds the state after k steps");
    feat->add_option("--out", feat_out, "CSV file (default: stdout)");

    // train
    auto* train = app.add_subcommand("train", "Fit a linear heuristic from optimal plans");
    std::string train_domain, train_problems, train_plans, train_method = "rank";
    std::string train_pooling = "sum", train_out, train_dump;
    int train_iterations = 1;
    double train_lambda = -1.0, train_epsilon = 0.1;
    train->add_option("--domain", train_domain)->required();
    train->add_option("--problems", train_problems, "Directory of .pddl problems")->required();
    train->add_option("--plans", train_plans, "Directory of matching .plan files")->required();
    train->add_option("--method", train_method, "cost|rank");
    train->add_option("--iterations", train_iterations, "CCWL iterations L");
    train->add_option("--lambda", train_lambda, "Regularization weight");
    train->add_option("--epsilon", train_epsilon, "Epsilon-insensitive band (cost method)");
    train->add_option("--pooling", train_pooling, "sum|mean|max");
    train->add_option("--out", train_out, "Model JSON path")->required();
    train->add_option("--dump", train_dump, "Dump the training dataset as CSV");

    // plan
    auto* plan = app.add_subcommand("plan", "Search for a plan");
    std::string plan_domain, plan_problem, plan_heuristic = "blind", plan_search = "gbfs";
    std::string plan_out, plan_stats;
    search::SearchLimits plan_limits;
    plan->add_option("--domain", plan_domain)->required();
    plan->add_option("--problem", plan_problem)->required();
    plan->add_option("--heuristic", plan_heuristic, "blind|goal-count|model:PATH");
    plan->add_option("--search", plan_search, "gbfs|astar");
    plan->add_option("--out", plan_out, "Plan file to write");
    plan->add_option("--stats", plan_stats, "Statistics JSON to write");
    plan->add_option("--max-expansions", plan_limits.max_expansions);
    plan->add_option("--max-seconds", plan_limits.max_seconds);

    // validate
    auto* validate = app.add_subcommand("validate", "Check a plan against a task");
    std::string val_domain, val_problem, val_plan;
    validate->add_option("--domain", val_domain)->required();
    validate->add_option("--problem", val_problem)->required();
    validate->add_option("--plan", val_plan)->required();

    std::vector<const char*> argv;
    argv.push_back("nplan");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream message;
        int code = app.exit(e, out, message);
        err << message.str();
        return code == 0 ? 0 : 3;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_domain, gen_out, gen_sizes, gen_seed, out);

        if (solve->parsed()) {
            task::GroundTask task = load_task(solve_domain, solve_problem, err);
            search::SearchResult result = search::astar(task, solve_limits);
            return finish_search(task, result, solve_out, solve_stats, out);
        }

        if (feat->parsed()) {
            task::GroundTask task = load_task(feat_domain, feat_problem, err);
            io::ModelFile model = io::load_model(feat_model);
            task::State state = feat_state.empty() ? task.initial_state
                                                   : state_from_plan_prefix(task, feat_state);
            std::vector<double> features =
                ccwl::featurize(nilg::build_nilg(task, state), model.ccwl_model);
            std::ostringstream csv;
            csv.precision(17);
            for (std::size_t i = 0; i < features.size(); ++i)
                csv << (i ? "," : "") << "feature_" << i;
            csv << "\n";
            for (std::size_t i = 0; i < features.size(); ++i)
                csv << (i ? "," : "") << features[i];
            csv << "\n";
            if (feat_out.empty())
                out << csv.str();
            else
                io::write_file_atomic(feat_out, csv.str());
            return 0;
        }

        if (train->parsed()) {
            if (train_lambda < 0.0) train_lambda = train_method == "rank" ? 0.01 : 1e-4;
            return cmd_train(train_domain, train_problems, train_plans, train_method,
                             train_iterations, train_lambda, train_epsilon, train_pooling,
                             train_out, train_dump, out, err);
        }

        if (plan->parsed()) {
            task::GroundTask task = load_task(plan_domain, plan_problem, err);
            std::unique_ptr<search::Heuristic> h = make_heuristic(plan_heuristic);
            search::SearchResult result;
            if (plan_search == "gbfs")
                result = search::gbfs(task, *h, plan_limits);
            else if (plan_search == "astar")
                result = search::astar(task, *h, plan_limits);
            else
                throw std::runtime_error("unknown search '" + plan_search + "' (gbfs|astar)");
            return finish_search(task, result, plan_out, plan_stats, out);
        }

        if (validate->parsed()) {
            task::GroundTask task = load_task(val_domain, val_problem, err);
            std::vector<std::string> plan_steps = task::read_plan_file(val_plan);
            task::ValidationResult result = task::validate_plan(task, plan_steps);
            if (result.valid) {
                out << "valid, cost " << result.cost << "\n";
                return 0;
            }
            out << "invalid at step " << result.failed_step << ": " << result.reason << "\n";
            return 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

}  // namespace nplan::cli
