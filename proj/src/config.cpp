#include "mixedp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mixedp/util.hpp"

namespace mixedp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw std::runtime_error("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw std::runtime_error("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::runtime_error("config: key '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(to_double(key, tok));
    }
    return out;
}

std::string list_to_string(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double_exact(v[i]);
    }
    return out;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not of the form key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " + std::to_string(lineno));
        map[key] = val;
    }
    return map;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ConfigMap& map, const std::string& assignment) {
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("config: override '" + assignment + "' is not key=value");
    map[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

std::string serialize_config(const ConfigMap& map) {
    std::string out;
    for (const auto& [k, v] : map) out += k + " = " + v + "\n";
    return out;
}

RunConfig RunConfig::defaults() {
    RunConfig c;
    c.params.N = 1;
    c.params.p = 2.0;
    c.params.s = 0.4;
    c.params.theta = 0.7;
    c.params.mu = 0.0;
    c.shape = ShapeSpec::make_interval(0.0, 1.0, 64);
    return c;
}

RunConfig RunConfig::from_map(const ConfigMap& map) {
    RunConfig c = defaults();
    for (const auto& [key, v] : map) {
        if (key == "params.N") c.params.N = static_cast<int>(to_int(key, v));
        else if (key == "params.p") c.params.p = to_double(key, v);
        else if (key == "params.s") c.params.s = to_double(key, v);
        else if (key == "params.theta") c.params.theta = to_double(key, v);
        else if (key == "params.mu") c.params.mu = to_double(key, v);
        else if (key == "params.mu_frac") c.mu_frac = to_double(key, v);
        else if (key == "params.a_loc") c.params.a_loc = to_double(key, v);
        else if (key == "params.a_nl") c.params.a_nl = to_double(key, v);
        else if (key == "shape.kind") {
            if (v == "interval") c.shape.kind = ShapeSpec::Kind::interval;
            else if (v == "rectangle") c.shape.kind = ShapeSpec::Kind::rectangle;
            else if (v == "disk") c.shape.kind = ShapeSpec::Kind::disk;
            else if (v == "two_disks") c.shape.kind = ShapeSpec::Kind::two_disks;
            else throw std::runtime_error("config: unknown shape.kind '" + v + "'");
        } else if (key == "shape.a") c.shape.a = to_double(key, v);
        else if (key == "shape.b") c.shape.b = to_double(key, v);
        else if (key == "shape.x0") c.shape.bounds[0] = to_double(key, v);
        else if (key == "shape.x1") c.shape.bounds[1] = to_double(key, v);
        else if (key == "shape.y0") c.shape.bounds[2] = to_double(key, v);
        else if (key == "shape.y1") c.shape.bounds[3] = to_double(key, v);
        else if (key == "shape.cx") c.shape.center[0] = to_double(key, v);
        else if (key == "shape.cy") c.shape.center[1] = to_double(key, v);
        else if (key == "shape.c1x") c.shape.center[0] = to_double(key, v);
        else if (key == "shape.c1y") c.shape.center[1] = to_double(key, v);
        else if (key == "shape.c2x") c.shape.center2[0] = to_double(key, v);
        else if (key == "shape.c2y") c.shape.center2[1] = to_double(key, v);
        else if (key == "shape.r") c.shape.radius = to_double(key, v);
        else if (key == "shape.resolution") c.shape.resolution = static_cast<int>(to_int(key, v));
        else if (key == "shape.dim") c.shape.dim_override = static_cast<int>(to_int(key, v));
        else if (key == "shape.center_origin") c.center_origin = to_bool(key, v);
        else if (key == "solver.tol_residual") c.solver.tol_residual = to_double(key, v);
        else if (key == "solver.max_iters") c.solver.max_iters = static_cast<int>(to_int(key, v));
        else if (key == "solver.step0") c.solver.step0 = to_double(key, v);
        else if (key == "solver.shrink") c.solver.shrink = to_double(key, v);
        else if (key == "solver.armijo") c.solver.armijo = to_double(key, v);
        else if (key == "solver.restarts") c.solver.restarts = static_cast<int>(to_int(key, v));
        else if (key == "path.points") c.path.points = static_cast<int>(to_int(key, v));
        else if (key == "path.max_sweeps") c.path.max_sweeps = static_cast<int>(to_int(key, v));
        else if (key == "path.tol_defect") c.path.tol_defect = to_double(key, v);
        else if (key == "path.perturb") c.path.perturb = to_double(key, v);
        else if (key == "path.seeds") c.path.seeds = static_cast<int>(to_int(key, v));
        else if (key == "path.climb") c.path.climb = to_bool(key, v);
        else if (key == "path.reparam_every") c.path.reparam_every = static_cast<int>(to_int(key, v));
        else if (key == "fucik.d_grid") c.d_grid = to_list(key, v);
        else if (key == "fucik.d_lambda1_multiples") c.d_lambda1_multiples = to_list(key, v);
        else if (key == "fk.volume") c.fk_volume = to_double(key, v);
        else if (key == "fk.resolution") c.fk_resolution = static_cast<int>(to_int(key, v));
        else if (key == "hks.radius") c.hks_radius = to_double(key, v);
        else if (key == "hks.separations") c.hks_separations = to_list(key, v);
        else if (key == "hks.resolution") c.hks_resolution = static_cast<int>(to_int(key, v));
        else if (key == "hardy.trials") c.hardy_trials = static_cast<int>(to_int(key, v));
        else if (key == "hardy.tol_rel") c.hardy_tol_rel = to_double(key, v);
        else if (key == "check.picone_trials") c.check_picone_trials = static_cast<int>(to_int(key, v));
        else if (key == "check.sigma_trials") c.check_sigma_trials = static_cast<int>(to_int(key, v));
        else if (key == "check.pathlemma_trials")
            c.check_pathlemma_trials = static_cast<int>(to_int(key, v));
        else if (key == "check.grad_fields") c.check_grad_fields = static_cast<int>(to_int(key, v));
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, v));
        else if (key == "threads") c.threads = static_cast<int>(to_int(key, v));
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

ConfigMap RunConfig::to_map() const {
    ConfigMap m;
    m["params.N"] = std::to_string(params.N);
    m["params.p"] = format_double_exact(params.p);
    m["params.s"] = format_double_exact(params.s);
    m["params.theta"] = format_double_exact(params.theta);
    m["params.mu"] = format_double_exact(params.mu);
    if (mu_frac >= 0.0) m["params.mu_frac"] = format_double_exact(mu_frac);
    m["params.a_loc"] = format_double_exact(params.a_loc);
    m["params.a_nl"] = format_double_exact(params.a_nl);
    switch (shape.kind) {
        case ShapeSpec::Kind::interval:
            m["shape.kind"] = "interval";
            m["shape.a"] = format_double_exact(shape.a);
            m["shape.b"] = format_double_exact(shape.b);
            break;
        case ShapeSpec::Kind::rectangle:
            m["shape.kind"] = "rectangle";
            m["shape.x0"] = format_double_exact(shape.bounds[0]);
            m["shape.x1"] = format_double_exact(shape.bounds[1]);
            m["shape.y0"] = format_double_exact(shape.bounds[2]);
            m["shape.y1"] = format_double_exact(shape.bounds[3]);
            break;
        case ShapeSpec::Kind::disk:
            m["shape.kind"] = "disk";
            m["shape.cx"] = format_double_exact(shape.center[0]);
            m["shape.cy"] = format_double_exact(shape.center[1]);
            m["shape.r"] = format_double_exact(shape.radius);
            break;
        case ShapeSpec::Kind::two_disks:
            m["shape.kind"] = "two_disks";
            m["shape.c1x"] = format_double_exact(shape.center[0]);
            m["shape.c1y"] = format_double_exact(shape.center[1]);
            m["shape.c2x"] = format_double_exact(shape.center2[0]);
            m["shape.c2y"] = format_double_exact(shape.center2[1]);
            m["shape.r"] = format_double_exact(shape.radius);
            m["shape.dim"] = std::to_string(shape.dim());
            break;
    }
    m["shape.resolution"] = std::to_string(shape.resolution);
    m["shape.center_origin"] = center_origin ? "true" : "false";
    m["solver.tol_residual"] = format_double_exact(solver.tol_residual);
    m["solver.max_iters"] = std::to_string(solver.max_iters);
    m["solver.step0"] = format_double_exact(solver.step0);
    m["solver.shrink"] = format_double_exact(solver.shrink);
    m["solver.armijo"] = format_double_exact(solver.armijo);
    m["solver.restarts"] = std::to_string(solver.restarts);
    m["path.points"] = std::to_string(path.points);
    m["path.max_sweeps"] = std::to_string(path.max_sweeps);
    m["path.tol_defect"] = format_double_exact(path.tol_defect);
    m["path.perturb"] = format_double_exact(path.perturb);
    m["path.seeds"] = std::to_string(path.seeds);
    m["path.climb"] = path.climb ? "true" : "false";
    m["path.reparam_every"] = std::to_string(path.reparam_every);
    m["fucik.d_grid"] = list_to_string(d_grid);
    if (!d_lambda1_multiples.empty())
        m["fucik.d_lambda1_multiples"] = list_to_string(d_lambda1_multiples);
    m["fk.volume"] = format_double_exact(fk_volume);
    m["fk.resolution"] = std::to_string(fk_resolution);
    m["hks.radius"] = format_double_exact(hks_radius);
    m["hks.separations"] = list_to_string(hks_separations);
    m["hks.resolution"] = std::to_string(hks_resolution);
    m["hardy.trials"] = std::to_string(hardy_trials);
    m["hardy.tol_rel"] = format_double_exact(hardy_tol_rel);
    m["check.picone_trials"] = std::to_string(check_picone_trials);
    m["check.sigma_trials"] = std::to_string(check_sigma_trials);
    m["check.pathlemma_trials"] = std::to_string(check_pathlemma_trials);
    m["check.grad_fields"] = std::to_string(check_grad_fields);
    m["seed"] = std::to_string(seed);
    m["threads"] = std::to_string(threads);
    return m;
}

void RunConfig::validate() const {
    shape.validate();
    solver.validate();
    path.validate();
    if (shape.dim() != params.N)
        throw std::runtime_error("config: shape dimension does not match params.N");
    if (mu_frac >= 0.0 && params.mu != 0.0)
        throw std::runtime_error("config: set either params.mu or params.mu_frac, not both");
    if (hardy_trials < 1 || check_picone_trials < 1 || check_sigma_trials < 1 ||
        check_pathlemma_trials < 1 || check_grad_fields < 1)
        throw std::runtime_error("config: trial counts must be positive");
    if (threads < 1) throw std::runtime_error("config: threads must be positive");
}

}  // namespace mixedp
