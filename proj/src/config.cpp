#include "cbm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cbm/errors.hpp"

namespace cbm {

using nlohmann::json;

namespace {

// Typed field access on one JSON object that remembers which keys were read,
// so leftovers can be reported as unknown.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError(where() + " must be an object");
    }

    bool has(const std::string& key) {
        used_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    double number(const std::string& key) {
        if (!has(key)) throw ConfigError("missing required field '" + field(key) + "'");
        return as_number(j_.at(key), field(key));
    }
    double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    long integer(const std::string& key, long fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError("field '" + field(key) + "' must be an integer");
        return v.get<long>();
    }

    std::uint64_t seed(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_unsigned()) throw ConfigError("field '" + field(key) + "' must be a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) throw ConfigError("field '" + field(key) + "' must be a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        if (!has(key)) throw ConfigError("missing required field '" + field(key) + "'");
        const json& v = j_.at(key);
        if (!v.is_array()) throw ConfigError("field '" + field(key) + "' must be an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], field(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    const json& child(const std::string& key) {
        used_.insert(key);
        return j_.at(key);
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void reject_unknown() const {
        for (const auto& item : j_.items()) {
            if (!used_.count(item.key())) throw ConfigError("unknown key '" + field(item.key()) + "'");
        }
    }

private:
    std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

    static double as_number(const json& v, const std::string& name) {
        if (!v.is_number()) throw ConfigError("field '" + name + "' must be a number");
        return v.get<double>();
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

ComponentParams parse_component(const json& j, const std::string& path) {
    Fields f(j, path);
    ComponentParams c;
    c.name = f.string("name", path);
    c.h1 = f.number("h1");
    c.d = f.number("d");
    c.alpha = f.number("alpha");
    c.beta = f.number("beta");
    c.y_alpha = f.number("y_alpha");
    c.y_beta = f.number("y_beta");
    c.w_mu = f.number("w_mu");
    c.w_sigma = f.number("w_sigma");
    f.reject_unknown();
    return c;
}

SystemModel parse_system(const json& j) {
    Fields f(j, "system");
    SystemModel m;
    m.lambda = f.number("lambda");
    if (!f.has("components")) throw ConfigError("missing required field 'system.components'");
    const json& list = f.child("components");
    if (!list.is_array()) throw ConfigError("field 'system.components' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        m.components.push_back(parse_component(list[i], "system.components[" + std::to_string(i) + "]"));
    }
    f.reject_unknown();
    return m;
}

CostParams parse_costs(const json& j) {
    Fields f(j, "costs");
    CostParams c;
    c.c_i = f.number("c_i");
    c.c_rho = f.number("c_rho");
    c.c_r = f.number("c_r");
    f.reject_unknown();
    return c;
}

Policy parse_policy(const json& j) {
    Fields f(j, "policy");
    Policy p;
    p.tau = f.number("tau");
    p.h2.values = f.numbers("h2");
    f.reject_unknown();
    return p;
}

OptimizerConfig parse_optimizer(const json& j) {
    Fields f(j, "optimizer");
    OptimizerConfig o;
    o.multistart_count = static_cast<int>(f.integer("multistart_count", o.multistart_count));
    o.max_iterations = static_cast<int>(f.integer("max_iterations", o.max_iterations));
    o.x_tol = f.number("x_tol", o.x_tol);
    o.f_tol = f.number("f_tol", o.f_tol);
    if (f.has("tau_bounds")) {
        const auto b = f.numbers("tau_bounds");
        if (b.size() != 2) throw ConfigError("field 'optimizer.tau_bounds' must have two entries");
        o.tau_min = b[0];
        o.tau_max = b[1];
    }
    o.seed = f.seed("seed", o.seed);
    o.threads = static_cast<int>(f.integer("threads", o.threads));
    f.reject_unknown();
    return o;
}

SimulationConfig parse_simulation(const json& j, std::optional<FirstPassageRequest>& first_passage) {
    Fields f(j, "simulation");
    SimulationConfig s;
    s.replications = f.integer("replications", s.replications);
    s.seed = f.seed("seed", s.seed);
    if (f.has("sub_step")) s.sub_step = f.number("sub_step");
    s.horizon_cap = f.integer("horizon_cap", s.horizon_cap);
    s.threads = static_cast<int>(f.integer("threads", s.threads));
    if (f.has("first_passage")) {
        Fields fp(f.child("first_passage"), "simulation.first_passage");
        first_passage = FirstPassageRequest{fp.number("t_max"), static_cast<int>(fp.integer("steps", 0))};
        fp.reject_unknown();
    }
    f.reject_unknown();
    return s;
}

ReliabilityRequest parse_reliability(const json& j) {
    Fields f(j, "reliability");
    ReliabilityRequest r;
    r.t_max = f.number("t_max");
    r.steps = static_cast<int>(f.integer("steps", 0));
    f.reject_unknown();
    return r;
}

TruncationConfig parse_truncation(const json& j) {
    Fields f(j, "truncation");
    TruncationConfig t;
    t.poisson_tail_eps = f.number("poisson_tail_eps", t.poisson_tail_eps);
    t.m_max_cap = static_cast<int>(f.integer("m_max_cap", t.m_max_cap));
    t.quadrature.rel_tol = f.number("rel_tol", t.quadrature.rel_tol);
    t.quadrature.abs_tol = f.number("abs_tol", t.quadrature.abs_tol);
    t.quadrature.max_subdivisions = static_cast<int>(f.integer("max_subdivisions", t.quadrature.max_subdivisions));
    f.reject_unknown();
    return t;
}

SeriesTailConfig parse_tail(const json& j) {
    Fields f(j, "tail");
    SeriesTailConfig t;
    t.k_tail_eps = f.number("k_tail_eps", t.k_tail_eps);
    t.k_max_cap = f.integer("k_max_cap", t.k_max_cap);
    f.reject_unknown();
    return t;
}

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

template <class Fn>
void as_config_error(Fn&& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

void RunConfig::validate() const {
    as_config_error([&] {
        system.validate();
        costs.validate();
        if (policy) {
            if (!(policy->tau > 0.0) || !std::isfinite(policy->tau)) {
                throw DomainError("policy.tau must be finite and > 0");
            }
            try {
                policy->validate(system);
            } catch (const DomainError& e) {
                throw DomainError(std::string("policy: ") + e.what());
            }
        }
        optimizer.validate();
        if (simulation) simulation->validate();
        if (first_passage) {
            if (!(first_passage->t_max > 0.0)) throw DomainError("simulation.first_passage.t_max must be > 0");
            if (first_passage->steps < 2) throw DomainError("simulation.first_passage.steps must be >= 2");
        }
        if (reliability) {
            if (!(reliability->t_max > 0.0)) throw DomainError("reliability.t_max must be > 0");
            if (reliability->steps < 2) throw DomainError("reliability.steps must be >= 2");
        }
        truncation.validate();
        tail.validate();
    });
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": " + line_column(text, e.byte) + ": malformed JSON (" + e.what() + ")");
    }

    RunConfig c;
    try {
        Fields f(j, "");
        if (!f.has("system")) throw ConfigError("missing required field 'system'");
        c.system = parse_system(f.child("system"));
        if (!f.has("costs")) throw ConfigError("missing required field 'costs'");
        c.costs = parse_costs(f.child("costs"));
        if (f.has("policy")) c.policy = parse_policy(f.child("policy"));
        if (f.has("optimizer")) c.optimizer = parse_optimizer(f.child("optimizer"));
        if (f.has("simulation")) c.simulation = parse_simulation(f.child("simulation"), c.first_passage);
        if (f.has("reliability")) c.reliability = parse_reliability(f.child("reliability"));
        if (f.has("truncation")) c.truncation = parse_truncation(f.child("truncation"));
        if (f.has("tail")) c.tail = parse_tail(f.child("tail"));
        f.reject_unknown();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

json config_to_json(const RunConfig& c) {
    json system;
    system["lambda"] = c.system.lambda;
    system["components"] = json::array();
    for (const auto& p : c.system.components) {
        system["components"].push_back({{"name", p.name},
                                        {"h1", p.h1},
                                        {"d", p.d},
                                        {"alpha", p.alpha},
                                        {"beta", p.beta},
                                        {"y_alpha", p.y_alpha},
                                        {"y_beta", p.y_beta},
                                        {"w_mu", p.w_mu},
                                        {"w_sigma", p.w_sigma}});
    }
    json j;
    j["system"] = system;
    j["costs"] = {{"c_i", c.costs.c_i}, {"c_rho", c.costs.c_rho}, {"c_r", c.costs.c_r}};
    if (c.policy) j["policy"] = {{"tau", c.policy->tau}, {"h2", c.policy->h2.values}};
    j["optimizer"] = {{"multistart_count", c.optimizer.multistart_count},
                      {"max_iterations", c.optimizer.max_iterations},
                      {"x_tol", c.optimizer.x_tol},
                      {"f_tol", c.optimizer.f_tol},
                      {"tau_bounds", {c.optimizer.tau_min, c.optimizer.tau_max}},
                      {"seed", c.optimizer.seed},
                      {"threads", c.optimizer.threads}};
    if (c.simulation) {
        json s = {{"replications", c.simulation->replications},
                  {"seed", c.simulation->seed},
                  {"sub_step", c.simulation->sub_step ? json(*c.simulation->sub_step) : json(nullptr)},
                  {"horizon_cap", c.simulation->horizon_cap},
                  {"threads", c.simulation->threads}};
        if (c.first_passage) s["first_passage"] = {{"t_max", c.first_passage->t_max}, {"steps", c.first_passage->steps}};
        j["simulation"] = s;
    }
    if (c.reliability) j["reliability"] = {{"t_max", c.reliability->t_max}, {"steps", c.reliability->steps}};
    j["truncation"] = {{"poisson_tail_eps", c.truncation.poisson_tail_eps},
                       {"m_max_cap", c.truncation.m_max_cap},
                       {"rel_tol", c.truncation.quadrature.rel_tol},
                       {"abs_tol", c.truncation.quadrature.abs_tol},
                       {"max_subdivisions", c.truncation.quadrature.max_subdivisions}};
    j["tail"] = {{"k_tail_eps", c.tail.k_tail_eps}, {"k_max_cap", c.tail.k_max_cap}};
    return j;
}

}  // namespace cbm
