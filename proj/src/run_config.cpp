#include "solwave/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace solwave {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown config key '" + path + it.key() + "'");
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
    return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

template <typename T>
T require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError("missing config key '" + path + key + "'");
    return obj.at(key).get<T>();
}

SymbolSpec parse_symbol(const json& sym) {
    reject_unknown_keys(sym, {"name", "T", "alpha", "file", "s", "s_prime", "allow_weak_tension"},
                        "model.symbol.");
    const std::string name = require<std::string>(sym, "name", "model.symbol.");
    if (name == "whitham")
        return whitham_symbol(get_or(sym, "T", 1.0 / 3.0),
                              get_or(sym, "allow_weak_tension", false));
    if (name == "fkdv") return fkdv_symbol(require<double>(sym, "alpha", "model.symbol."));
    if (name == "tabulated") {
        const std::string file = require<std::string>(sym, "file", "model.symbol.");
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot open symbol table '" + file + "'");
        std::vector<std::pair<double, double>> table;
        double xi, value;
        while (in >> xi >> value) table.emplace_back(xi, value);
        return tabulated_symbol("tabulated:" + file, std::move(table),
                                require<double>(sym, "s", "model.symbol."),
                                require<double>(sym, "s_prime", "model.symbol."));
    }
    throw ConfigError("unknown symbol name '" + name + "' (expected whitham, fkdv or tabulated)");
}

NonlinearitySpec parse_nonlinearity(const json& nl) {
    reject_unknown_keys(nl, {"form", "c", "p", "remainder"}, "model.nonlinearity.");
    const std::string form_name = require<std::string>(nl, "form", "model.nonlinearity.");
    NonlinearityForm form;
    if (form_name == "a1")
        form = NonlinearityForm::A1;
    else if (form_name == "a2")
        form = NonlinearityForm::A2;
    else
        throw ConfigError("nonlinearity form must be 'a1' or 'a2', got '" + form_name + "'");

    std::optional<RemainderSpec> remainder;
    if (nl.contains("remainder")) {
        const json& rem = nl.at("remainder");
        reject_unknown_keys(rem, {"kind", "coef", "exponent"}, "model.nonlinearity.remainder.");
        const std::string kind = require<std::string>(rem, "kind", "model.nonlinearity.remainder.");
        if (kind != "power")
            throw ConfigError("only 'power' remainders can be declared in configs, got '" + kind +
                              "'");
        remainder = power_remainder(get_or(rem, "coef", 1.0),
                                    require<int>(rem, "exponent", "model.nonlinearity.remainder."));
    }
    return make_nonlinearity(form, require<double>(nl, "c", "model.nonlinearity."),
                             require<double>(nl, "p", "model.nonlinearity."), std::move(remainder));
}

}  // namespace

SolveConfig RunConfig::solve_config(double mu) const {
    SolveConfig cfg;
    cfg.mu = mu;
    cfg.symbol = solve_symbol();
    cfg.nonlinearity = solve_nonlinearity();
    cfg.modes = modes;
    cfg.domain_factor = domain_factor;
    cfg.grad_tol_factor = grad_tol_factor;
    cfg.e_tol = e_tol;
    cfg.max_iters = max_iters;
    cfg.pad_factor = padding_factor;
    cfg.precondition = precondition;
    cfg.use_symmetrize = symmetrize_flag;
    cfg.b_search = b_search;
    return cfg;
}

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config parse error: ") + err.what());
    }
    reject_unknown_keys(root, {"model", "numerics", "task", "output", "seed"}, "");

    RunConfig cfg;
    const json& model = root.contains("model") ? root.at("model") : json::object();
    reject_unknown_keys(model, {"symbol", "nonlinearity", "normalize"}, "model.");
    if (!model.contains("symbol")) throw ConfigError("missing config key 'model.symbol'");
    if (!model.contains("nonlinearity")) throw ConfigError("missing config key 'model.nonlinearity'");
    cfg.symbol = parse_symbol(model.at("symbol"));
    cfg.nonlinearity = parse_nonlinearity(model.at("nonlinearity"));
    cfg.normalize = get_or(model, "normalize", true);

    if (root.contains("numerics")) {
        const json& num = root.at("numerics");
        reject_unknown_keys(num,
                            {"modes", "domain_factor", "grad_tol_factor", "e_tol", "max_iters",
                             "padding_factor", "precondition", "symmetrize", "b_min", "b_max",
                             "b_points"},
                            "numerics.");
        cfg.modes = get_or(num, "modes", cfg.modes);
        cfg.domain_factor = get_or(num, "domain_factor", cfg.domain_factor);
        cfg.grad_tol_factor = get_or(num, "grad_tol_factor", cfg.grad_tol_factor);
        cfg.e_tol = get_or(num, "e_tol", cfg.e_tol);
        cfg.max_iters = get_or(num, "max_iters", cfg.max_iters);
        cfg.padding_factor = get_or(num, "padding_factor", cfg.padding_factor);
        cfg.precondition = get_or(num, "precondition", cfg.precondition);
        cfg.symmetrize_flag = get_or(num, "symmetrize", cfg.symmetrize_flag);
        cfg.b_search.b_min = get_or(num, "b_min", cfg.b_search.b_min);
        cfg.b_search.b_max = get_or(num, "b_max", cfg.b_search.b_max);
        cfg.b_search.points = get_or(num, "b_points", cfg.b_search.points);
        if (cfg.modes < 8 || cfg.modes % 2 != 0)
            throw ConfigError("numerics.modes must be an even integer >= 8");
        if (!(cfg.domain_factor > 0.0)) throw ConfigError("numerics.domain_factor must be positive");
        if (cfg.padding_factor < 1) throw ConfigError("numerics.padding_factor must be >= 1");
    }

    if (!root.contains("task")) throw ConfigError("missing config key 'task'");
    const json& task = root.at("task");
    reject_unknown_keys(task, {"type", "mu", "mu_list", "xi_max", "samples", "t_end", "dt", "snapshots"},
                        "task.");
    const std::string type = require<std::string>(task, "type", "task.");
    if (type == "check") {
        cfg.task.type = TaskType::Check;
        cfg.task.xi_max = get_or(task, "xi_max", cfg.task.xi_max);
        cfg.task.samples = get_or(task, "samples", cfg.task.samples);
    } else if (type == "solve") {
        cfg.task.type = TaskType::Solve;
        cfg.task.mu = require<double>(task, "mu", "task.");
        if (!(cfg.task.mu > 0.0)) throw ConfigError("task.mu must be positive");
    } else if (type == "sweep") {
        cfg.task.type = TaskType::Sweep;
        cfg.task.mu_list = require<std::vector<double>>(task, "mu_list", "task.");
        if (cfg.task.mu_list.empty()) throw ConfigError("task.mu_list must not be empty");
    } else if (type == "evolve") {
        cfg.task.type = TaskType::Evolve;
        cfg.task.mu = require<double>(task, "mu", "task.");
        cfg.task.t_end = require<double>(task, "t_end", "task.");
        cfg.task.dt = get_or(task, "dt", 0.0);
        cfg.task.snapshots = get_or(task, "snapshots", cfg.task.snapshots);
        if (!(cfg.task.t_end > 0.0)) throw ConfigError("task.t_end must be positive");
    } else {
        throw ConfigError("unknown task.type '" + type + "' (expected check, solve, sweep or evolve)");
    }

    if (root.contains("output")) {
        const json& out = root.at("output");
        reject_unknown_keys(out, {"directory", "write_profile", "write_plot_data"}, "output.");
        cfg.output.directory = get_or<std::string>(out, "directory", cfg.output.directory);
        cfg.output.write_profile = get_or(out, "write_profile", cfg.output.write_profile);
        cfg.output.write_plot_data = get_or(out, "write_plot_data", cfg.output.write_plot_data);
    }
    cfg.seed = get_or<std::uint64_t>(root, "seed", cfg.seed);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

std::string effective_config_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["model"] = {{"symbol", cfg.symbol.id},
                  {"s", cfg.symbol.s},
                  {"s_prime", cfg.symbol.s_prime},
                  {"m0", cfg.symbol.m0},
                  {"form", cfg.nonlinearity.form == NonlinearityForm::A1 ? "a1" : "a2"},
                  {"c", cfg.nonlinearity.c},
                  {"p", cfg.nonlinearity.p},
                  {"r", cfg.nonlinearity.has_remainder() ? cfg.nonlinearity.remainder->r : 0.0},
                  {"normalize", cfg.normalize}};
    j["numerics"] = {{"modes", cfg.modes},
                     {"domain_factor", cfg.domain_factor},
                     {"grad_tol_factor", cfg.grad_tol_factor},
                     {"e_tol", cfg.e_tol},
                     {"max_iters", cfg.max_iters},
                     {"padding_factor", cfg.padding_factor},
                     {"precondition", cfg.precondition},
                     {"symmetrize", cfg.symmetrize_flag},
                     {"b_min", cfg.b_search.b_min},
                     {"b_max", cfg.b_search.b_max},
                     {"b_points", cfg.b_search.points}};
    j["seed"] = cfg.seed;
    return j.dump(2);
}

}  // namespace solwave
