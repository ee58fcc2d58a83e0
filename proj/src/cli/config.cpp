#include "parobs/cli/config.hpp"

#include "parobs/core/error.hpp"
#include "parobs/core/serialize.hpp"

#include <cstdlib>
#include <sstream>

namespace parobs {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ConfigInvalid, path + ": " + what);
}

void expect_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) invalid(path.empty() ? "$" : path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) invalid(path.empty() ? key : path + "." + key, "unknown key");
    }
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) invalid(path, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& path, int lo) {
    if (!j.is_number_integer()) invalid(path, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > 1'000'000'000) invalid(path, "out of range");
    return static_cast<int>(v);
}

double get_positive(const json& j, const std::string& path) {
    const double v = get_number(j, path);
    if (!(v > 0.0)) invalid(path, "must be positive");
    return v;
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::Solve: return "solve";
        case Command::Sweep: return "sweep";
        case Command::Diagnose: return "diagnose";
        case Command::Verify: return "verify";
    }
    return "verify";
}

Command command_from_string(const std::string& name) {
    if (name == "solve") return Command::Solve;
    if (name == "sweep") return Command::Sweep;
    if (name == "diagnose") return Command::Diagnose;
    if (name == "verify") return Command::Verify;
    invalid("command", "expected one of solve, sweep, diagnose, verify");
}

void problem_from_json(const json& j, const std::string& path, std::string& test, BuiltinOptions& o) {
    if (j.is_string()) {
        test = j.get<std::string>();
    } else {
        expect_keys(j, path, {"test", "n_space", "n_time", "eps", "scale", "s", "alpha"});
        if (!j.contains("test")) invalid(join(path, "test"), "missing");
        if (!j["test"].is_string()) invalid(join(path, "test"), "expected a string");
        test = j["test"].get<std::string>();
        if (j.contains("n_space")) o.n_space = get_int(j["n_space"], join(path, "n_space"), 3);
        if (j.contains("n_time")) o.n_time = get_int(j["n_time"], join(path, "n_time"), 3);
        if (j.contains("eps")) o.eps = get_positive(j["eps"], join(path, "eps"));
        if (j.contains("scale")) o.scale = get_positive(j["scale"], join(path, "scale"));
        if (j.contains("s")) o.s = get_positive(j["s"], join(path, "s"));
        if (j.contains("alpha")) o.alpha = get_positive(j["alpha"], join(path, "alpha"));
    }
    if (!is_builtin(test)) invalid(j.is_string() ? path : join(path, "test"), "unknown built-in '" + test + "'");
}

json problem_to_json(const std::string& test, const BuiltinOptions& o) {
    json j;
    j["test"] = test;
    if (o.n_space) j["n_space"] = *o.n_space;
    if (o.n_time) j["n_time"] = *o.n_time;
    if (o.eps) j["eps"] = *o.eps;
    if (o.scale) j["scale"] = *o.scale;
    if (o.s) j["s"] = *o.s;
    if (o.alpha) j["alpha"] = *o.alpha;
    return j;
}

RunConfig config_from_json(const json& j) {
    expect_keys(j, "", {"command", "problem", "grid", "eps_list", "output", "input", "jobs", "seed"});
    RunConfig c;
    if (j.contains("command")) {
        if (!j["command"].is_string()) invalid("command", "expected a string");
        c.command = command_from_string(j["command"].get<std::string>());
    }
    if (j.contains("problem")) problem_from_json(j["problem"], "problem", c.test, c.options);
    if (j.contains("grid")) {
        const json& g = j["grid"];
        expect_keys(g, "grid", {"n_space", "n_time"});
        if (g.contains("n_space")) c.options.n_space = get_int(g["n_space"], "grid.n_space", 3);
        if (g.contains("n_time")) c.options.n_time = get_int(g["n_time"], "grid.n_time", 3);
    }
    if (j.contains("eps_list")) {
        if (!j["eps_list"].is_array()) invalid("eps_list", "expected an array");
        for (std::size_t i = 0; i < j["eps_list"].size(); ++i)
            c.eps_list.push_back(get_positive(j["eps_list"][i], "eps_list[" + std::to_string(i) + "]"));
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) invalid("output", "expected a string");
        c.output = j["output"].get<std::string>();
    }
    if (j.contains("input")) {
        if (!j["input"].is_string()) invalid("input", "expected a string");
        c.input = std::filesystem::path(j["input"].get<std::string>());
    }
    if (j.contains("jobs")) c.jobs = get_int(j["jobs"], "jobs", 1);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) invalid("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw Error(ErrorKind::ConfigInvalid, "$: " + std::string(e.what()));
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        invalid("$", std::string("not valid JSON (") + e.what() + ")");
    }
    return config_from_json(j);
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size() || !(v > 0.0))
            invalid("eps_list", "cannot parse '" + item + "' as a positive number");
        out.push_back(v);
    }
    if (out.empty()) invalid("eps_list", "empty list");
    return out;
}

}  // namespace parobs
