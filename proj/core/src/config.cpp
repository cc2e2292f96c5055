#include "smb/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "smb/expr.hpp"
#include "smb/validation.hpp"

namespace smb {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& v, const std::string& path) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(path + ": not a number: '" + v + "'");
    }
}

int parse_int(const std::string& v, const std::string& path) {
    try {
        std::size_t used = 0;
        const int i = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return i;
    } catch (const std::exception&) {
        throw ConfigError(path + ": not an integer: '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& path) {
    try {
        std::size_t used = 0;
        const std::uint64_t u = std::stoull(v, &used, 0);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return u;
    } catch (const std::exception&) {
        throw ConfigError(path + ": not an unsigned integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& path) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(path + ": not a boolean: '" + v + "'");
}

/// Splits "name(a, b, ...)" into name and raw argument list (top-level commas).
struct Preset {
    std::string name;
    std::vector<std::string> args;
};

Preset parse_preset(const std::string& text, const std::string& path) {
    const std::string t = trim(text);
    const std::size_t open = t.find('(');
    Preset p;
    if (open == std::string::npos) {
        p.name = t;
        return p;
    }
    if (t.back() != ')') throw ConfigError(path + ": malformed preset '" + t + "'");
    p.name = trim(t.substr(0, open));
    const std::string inner = t.substr(open + 1, t.size() - open - 2);
    int depth = 0;
    std::string cur;
    for (char ch : inner) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            p.args.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !p.args.empty()) p.args.push_back(trim(cur));
    return p;
}

double preset_arg(const Preset& p, std::size_t i, const std::string& path) {
    if (i >= p.args.size())
        throw ConfigError(path + ": preset '" + p.name + "' is missing argument " +
                          std::to_string(i + 1));
    return parse_double(p.args[i], path);
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::single: return "single";
        case RunMode::ensemble: return "ensemble";
        case RunMode::validate: return "validate";
        case RunMode::benchmark: return "benchmark";
    }
    return "single";
}

std::string to_string(Scheme s) {
    return s == Scheme::exponential_euler ? "exponential_euler" : "semi_implicit_euler";
}

ModelCoefficients RunConfig::make_coefficients(bool lenient) const {
    const Preset p = parse_preset(model_preset, "model.preset");
    ModelCoefficients mc;
    if (p.name == "stefan") {
        mc = ModelCoefficients::stefan(preset_arg(p, 0, "model.preset"));
    } else if (p.name == "stefan_mult") {
        mc = ModelCoefficients::stefan_multiplicative(preset_arg(p, 0, "model.preset"),
                                                      preset_arg(p, 1, "model.preset"));
    } else if (p.name == "burgers") {
        mc = ModelCoefficients::burgers(p.args.empty() ? 1.0 : preset_arg(p, 0, "model.preset"));
    } else if (p.name == "reaction") {
        if (p.args.empty()) throw ConfigError("model.preset: reaction needs an expression in y");
        const Expr f = Expr::compile(p.args[0], {"y"});
        mc = ModelCoefficients::reaction([f](double y) { return f.eval1(y); },
                                         p.args.size() > 1 ? preset_arg(p, 1, "model.preset") : 1.0);
    } else if (p.name == "custom") {
        const Expr mup = Expr::compile(mu_plus_expr, {"x", "y", "z"});
        const Expr mum = Expr::compile(mu_minus_expr, {"x", "y", "z"});
        const Expr sip = Expr::compile(sigma_plus_expr, {"x", "y"});
        const Expr sim = Expr::compile(sigma_minus_expr, {"x", "y"});
        const Expr rho = Expr::compile(rho_expr, {"g1", "g2"});
        mc.mu_plus = [mup](double x, double y, double z) { return mup.eval3(x, y, z); };
        mc.mu_minus = [mum](double x, double y, double z) { return mum.eval3(x, y, z); };
        mc.sigma_plus = [sip](double x, double y) { return sip.eval2(x, y); };
        mc.sigma_minus = [sim](double x, double y) { return sim.eval2(x, y); };
        mc.rho = [rho](double g1, double g2) { return rho.eval2(g1, g2); };
        mc.preset_name = "custom";
        if (sigma_affine) {
            const Expr s1p = Expr::compile(sigma1_plus_expr, {"x"});
            const Expr s2p = Expr::compile(sigma2_plus_expr, {"x"});
            const Expr s1m = Expr::compile(sigma1_minus_expr, {"x"});
            const Expr s2m = Expr::compile(sigma2_minus_expr, {"x"});
            ModelCoefficients::AffineSigma aff;
            aff.s1_plus = [s1p](double x) { return s1p.eval1(x); };
            aff.s2_plus = [s2p](double x) { return s2p.eval1(x); };
            aff.s1_minus = [s1m](double x) { return s1m.eval1(x); };
            aff.s2_minus = [s2m](double x) { return s2m.eval1(x); };
            mc.affine_sigma = aff;
        }
    } else {
        throw ConfigError("model.preset: unknown preset '" + p.name + "'");
    }
    mc.eta_plus = eta_plus;
    mc.eta_minus = eta_minus;
    mc.c = c;
    mc.rho_bounded = rho_bounded;
    if (!lenient) {
        try {
            mc.check();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }
    return mc;
}

NoiseKernel RunConfig::make_kernel() const {
    const Preset p = parse_preset(kernel_preset, "kernel.preset");
    if (p.name == "gaussian") {
        const double width = preset_arg(p, 0, "kernel.preset");
        if (!(width > 0)) throw ConfigError("kernel.preset: gaussian width must be positive");
        const double reach = 1.25 * grid_L + 8.0 * width;
        const double lo = y_min.value_or(-reach);
        const double hi = y_max.value_or(reach);
        return NoiseKernel::gaussian(width, lo, hi, m_y);
    }
    if (p.name == "indicator") {
        const double a = preset_arg(p, 0, "kernel.preset");
        const double b = preset_arg(p, 1, "kernel.preset");
        const double lo = y_min.value_or(a);
        const double hi = y_max.value_or(b);
        return NoiseKernel::indicator(a, b, lo, hi, m_y);
    }
    throw ConfigError("kernel.preset: unknown preset '" + p.name + "'");
}

Grid1D RunConfig::make_grid() const {
    try {
        return Grid1D::with_length(grid_n, grid_L);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

SolverConfig RunConfig::make_solver() const {
    SolverConfig sc;
    sc.dt = dt;
    sc.t_end = t_end;
    sc.truncation_N = truncation_N;
    sc.blowup_threshold = blowup_threshold;
    sc.boundary_threshold = boundary_threshold;
    sc.seed = seed;
    sc.scheme = scheme;
    sc.state_stride = profile_stride;
    try {
        sc.check();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

SystemState RunConfig::make_initial(const Grid1D& grid) const {
    const Preset p = parse_preset(initial_preset, "initial.preset");
    if (p.name == "zero") {
        SystemState s = SystemState::zero(grid);
        s.xstar = xstar0;
        return s;
    }
    if (p.name == "similarity") {
        const double t0 = preset_arg(p, 0, "initial.preset");
        const double amplitude = preset_arg(p, 1, "initial.preset");
        const Preset model = parse_preset(model_preset, "model.preset");
        if (model.name != "stefan" && model.name != "stefan_mult" && model.name != "burgers")
            throw ConfigError("initial.preset: similarity requires a stefan-type model preset");
        const double varrho = preset_arg(model, 0, "model.preset");
        const StefanSimilarity ss =
            StefanSimilarity::make(eta_plus, varrho, amplitude, t0, xstar0);
        return stefan_profile(ss, 0.0, grid);
    }
    if (p.name == "bump") {
        const double a1 = preset_arg(p, 0, "initial.preset");
        const double w1 = preset_arg(p, 1, "initial.preset");
        const double a2 = p.args.size() > 2 ? preset_arg(p, 2, "initial.preset") : 0.0;
        const double w2 = p.args.size() > 3 ? preset_arg(p, 3, "initial.preset") : w1;
        if (!(w1 > 0) || !(w2 > 0)) throw ConfigError("initial.preset: bump widths must be positive");
        SystemState s = SystemState::zero(grid);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.node(j);
            s.u1.values[static_cast<std::size_t>(j)] = a1 * x * std::exp(-x * x / (w1 * w1));
            s.u2.values[static_cast<std::size_t>(j)] = a2 * x * std::exp(-x * x / (w2 * w2));
        }
        s.xstar = xstar0;
        return s;
    }
    if (p.name == "expr") {
        const Expr e1 = Expr::compile(u1_expr, {"x"});
        const Expr e2 = Expr::compile(u2_expr, {"x"});
        SystemState s = SystemState::zero(grid);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.node(j);
            s.u1.values[static_cast<std::size_t>(j)] = e1.eval1(x);
            s.u2.values[static_cast<std::size_t>(j)] = e2.eval1(x);
        }
        s.xstar = xstar0;
        if (!s.valid()) throw ConfigError("initial: expressions produced non-finite values");
        return s;
    }
    throw ConfigError("initial.preset: unknown preset '" + p.name + "'");
}

std::string RunConfig::canonical_text() const {
    std::ostringstream os;
    os << "[model]\n";
    os << "preset = " << model_preset << "\n";
    os << "eta_plus = " << fmt(eta_plus) << "\n";
    os << "eta_minus = " << fmt(eta_minus) << "\n";
    os << "c = " << fmt(c) << "\n";
    os << "mu_plus = \"" << mu_plus_expr << "\"\n";
    os << "mu_minus = \"" << mu_minus_expr << "\"\n";
    os << "sigma_plus = \"" << sigma_plus_expr << "\"\n";
    os << "sigma_minus = \"" << sigma_minus_expr << "\"\n";
    os << "rho = \"" << rho_expr << "\"\n";
    os << "sigma_affine = " << (sigma_affine ? "true" : "false") << "\n";
    os << "sigma1_plus = \"" << sigma1_plus_expr << "\"\n";
    os << "sigma2_plus = \"" << sigma2_plus_expr << "\"\n";
    os << "sigma1_minus = \"" << sigma1_minus_expr << "\"\n";
    os << "sigma2_minus = \"" << sigma2_minus_expr << "\"\n";
    os << "rho_bounded = " << (rho_bounded ? "true" : "false") << "\n";
    os << "\n[kernel]\n";
    os << "preset = " << kernel_preset << "\n";
    // resolve the window so the echo is self-contained
    const NoiseKernel k = make_kernel();
    os << "y_min = " << fmt(k.y_min) << "\n";
    os << "y_max = " << fmt(k.y_max) << "\n";
    os << "m_y = " << m_y << "\n";
    os << "\n[grid]\n";
    os << "n = " << grid_n << "\n";
    os << "L = " << fmt(grid_L) << "\n";
    os << "\n[solver]\n";
    os << "dt = " << fmt(dt) << "\n";
    os << "t_end = " << fmt(t_end) << "\n";
    os << "truncation_N = " << (truncation_N ? fmt(*truncation_N) : std::string("none")) << "\n";
    os << "blowup_threshold = " << fmt(blowup_threshold) << "\n";
    os << "boundary_threshold = " << fmt(boundary_threshold) << "\n";
    os << "seed = " << seed << "\n";
    os << "scheme = " << to_string(scheme) << "\n";
    os << "\n[initial]\n";
    os << "preset = " << initial_preset << "\n";
    os << "u1 = \"" << u1_expr << "\"\n";
    os << "u2 = \"" << u2_expr << "\"\n";
    os << "xstar = " << fmt(xstar0) << "\n";
    os << "\n[output]\n";
    os << "dir = " << out_dir << "\n";
    os << "format = " << to_string(format) << "\n";
    os << "profile_stride = " << profile_stride << "\n";
    os << "fail_on_blowup = " << (fail_on_blowup ? "true" : "false") << "\n";
    os << "\n[run]\n";
    os << "mode = " << to_string(mode) << "\n";
    os << "n_paths = " << n_paths << "\n";
    os << "workers = " << workers << "\n";
    os << "\n[validate]\n";
    os << "x_max = " << fmt(probe_box.x_max) << "\n";
    os << "y_max = " << fmt(probe_box.y_max) << "\n";
    os << "z_max = " << fmt(probe_box.z_max) << "\n";
    os << "points = " << probe_box.points_per_axis << "\n";
    return os.str();
}

std::uint64_t RunConfig::hash() const {
    const std::string text = canonical_text();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool RunConfig::operator==(const RunConfig& o) const {
    auto opt_eq = [](const std::optional<double>& a, const std::optional<double>& b) {
        if (a.has_value() != b.has_value()) return false;
        return !a.has_value() || *a == *b;
    };
    return model_preset == o.model_preset && eta_plus == o.eta_plus &&
           eta_minus == o.eta_minus && c == o.c && mu_plus_expr == o.mu_plus_expr &&
           mu_minus_expr == o.mu_minus_expr && sigma_plus_expr == o.sigma_plus_expr &&
           sigma_minus_expr == o.sigma_minus_expr && rho_expr == o.rho_expr &&
           sigma_affine == o.sigma_affine && sigma1_plus_expr == o.sigma1_plus_expr &&
           sigma2_plus_expr == o.sigma2_plus_expr && sigma1_minus_expr == o.sigma1_minus_expr &&
           sigma2_minus_expr == o.sigma2_minus_expr && rho_bounded == o.rho_bounded &&
           kernel_preset == o.kernel_preset && opt_eq(y_min, o.y_min) &&
           opt_eq(y_max, o.y_max) && m_y == o.m_y && grid_n == o.grid_n && grid_L == o.grid_L &&
           dt == o.dt && t_end == o.t_end && opt_eq(truncation_N, o.truncation_N) &&
           blowup_threshold == o.blowup_threshold &&
           boundary_threshold == o.boundary_threshold && seed == o.seed && scheme == o.scheme &&
           initial_preset == o.initial_preset && u1_expr == o.u1_expr && u2_expr == o.u2_expr &&
           xstar0 == o.xstar0 && out_dir == o.out_dir && format == o.format &&
           profile_stride == o.profile_stride && fail_on_blowup == o.fail_on_blowup &&
           mode == o.mode && n_paths == o.n_paths && workers == o.workers &&
           probe_box.x_max == o.probe_box.x_max && probe_box.y_max == o.probe_box.y_max &&
           probe_box.z_max == o.probe_box.z_max &&
           probe_box.points_per_axis == o.probe_box.points_per_axis;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    bool y_min_seen = false, y_max_seen = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        // comments start with # or ; outside quotes
        std::string line;
        bool quoted = false;
        for (char ch : raw) {
            if (ch == '"') quoted = !quoted;
            if (!quoted && (ch == '#' || ch == ';')) break;
            line += ch;
        }
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = origin + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "kernel" && section != "grid" &&
                section != "solver" && section != "initial" && section != "output" &&
                section != "run" && section != "validate")
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key = value (column " +
                              std::to_string(line.size() + 1) + ")");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = strip_quotes(trim(line.substr(eq + 1)));
        if (section.empty()) throw ConfigError(where + ": key outside of any section");
        const std::string path = section + "." + key;

        auto unknown = [&]() -> ConfigError {
            return ConfigError(where + ": unknown key '" + path + "'");
        };

        if (section == "model") {
            if (key == "preset") cfg.model_preset = value;
            else if (key == "eta_plus") cfg.eta_plus = parse_double(value, path);
            else if (key == "eta_minus") cfg.eta_minus = parse_double(value, path);
            else if (key == "c") cfg.c = parse_double(value, path);
            else if (key == "mu_plus") cfg.mu_plus_expr = value;
            else if (key == "mu_minus") cfg.mu_minus_expr = value;
            else if (key == "sigma_plus") cfg.sigma_plus_expr = value;
            else if (key == "sigma_minus") cfg.sigma_minus_expr = value;
            else if (key == "rho") cfg.rho_expr = value;
            else if (key == "sigma_affine") cfg.sigma_affine = parse_bool(value, path);
            else if (key == "sigma1_plus") cfg.sigma1_plus_expr = value;
            else if (key == "sigma2_plus") cfg.sigma2_plus_expr = value;
            else if (key == "sigma1_minus") cfg.sigma1_minus_expr = value;
            else if (key == "sigma2_minus") cfg.sigma2_minus_expr = value;
            else if (key == "rho_bounded") cfg.rho_bounded = parse_bool(value, path);
            else throw unknown();
        } else if (section == "kernel") {
            if (key == "preset") cfg.kernel_preset = value;
            else if (key == "y_min") { cfg.y_min = parse_double(value, path); y_min_seen = true; }
            else if (key == "y_max") { cfg.y_max = parse_double(value, path); y_max_seen = true; }
            else if (key == "m_y") cfg.m_y = parse_int(value, path);
            else throw unknown();
        } else if (section == "grid") {
            if (key == "n") cfg.grid_n = parse_int(value, path);
            else if (key == "L") cfg.grid_L = parse_double(value, path);
            else throw unknown();
        } else if (section == "solver") {
            if (key == "dt") cfg.dt = parse_double(value, path);
            else if (key == "t_end") cfg.t_end = parse_double(value, path);
            else if (key == "truncation_N") {
                if (value == "none") cfg.truncation_N.reset();
                else cfg.truncation_N = parse_double(value, path);
            } else if (key == "blowup_threshold") cfg.blowup_threshold = parse_double(value, path);
            else if (key == "boundary_threshold") cfg.boundary_threshold = parse_double(value, path);
            else if (key == "seed") cfg.seed = parse_u64(value, path);
            else if (key == "scheme") {
                if (value == "exponential_euler") cfg.scheme = Scheme::exponential_euler;
                else if (value == "semi_implicit_euler") cfg.scheme = Scheme::semi_implicit_euler;
                else throw ConfigError(path + ": unknown scheme '" + value + "'");
            } else throw unknown();
        } else if (section == "initial") {
            if (key == "preset") cfg.initial_preset = value;
            else if (key == "u1") cfg.u1_expr = value;
            else if (key == "u2") cfg.u2_expr = value;
            else if (key == "xstar") cfg.xstar0 = parse_double(value, path);
            else throw unknown();
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = value;
            else if (key == "format") {
                if (value == "csv") cfg.format = OutputFormat::csv;
                else if (value == "json") cfg.format = OutputFormat::json;
                else throw ConfigError(path + ": unknown format '" + value + "'");
            } else if (key == "profile_stride") cfg.profile_stride = parse_int(value, path);
            else if (key == "fail_on_blowup") cfg.fail_on_blowup = parse_bool(value, path);
            else throw unknown();
        } else if (section == "run") {
            if (key == "mode") {
                if (value == "single") cfg.mode = RunMode::single;
                else if (value == "ensemble") cfg.mode = RunMode::ensemble;
                else if (value == "validate") cfg.mode = RunMode::validate;
                else if (value == "benchmark") cfg.mode = RunMode::benchmark;
                else throw ConfigError(path + ": unknown mode '" + value + "'");
            } else if (key == "n_paths") cfg.n_paths = parse_int(value, path);
            else if (key == "workers") cfg.workers = parse_int(value, path);
            else throw unknown();
        } else if (section == "validate") {
            if (key == "x_max") cfg.probe_box.x_max = parse_double(value, path);
            else if (key == "y_max") cfg.probe_box.y_max = parse_double(value, path);
            else if (key == "z_max") cfg.probe_box.z_max = parse_double(value, path);
            else if (key == "points") cfg.probe_box.points_per_axis = parse_int(value, path);
            else throw unknown();
        }
    }

    // validation with field paths
    if (!(cfg.eta_plus > 0)) throw ConfigError("model.eta_plus: must be positive");
    if (!(cfg.eta_minus > 0)) throw ConfigError("model.eta_minus: must be positive");
    if (!(cfg.c >= 0)) throw ConfigError("model.c: must be non-negative");
    if (cfg.m_y < 1) throw ConfigError("kernel.m_y: must be at least 1");
    if (cfg.grid_n < 2) throw ConfigError("grid.n: must be at least 2");
    if (!(cfg.grid_L > 0)) throw ConfigError("grid.L: must be positive");
    if (!(cfg.dt > 0)) throw ConfigError("solver.dt: must be positive");
    if (!(cfg.t_end >= cfg.dt)) throw ConfigError("solver.t_end: must be at least solver.dt");
    if (cfg.truncation_N && !(*cfg.truncation_N > 0))
        throw ConfigError("solver.truncation_N: must be positive");
    if (!(cfg.blowup_threshold > 0)) throw ConfigError("solver.blowup_threshold: must be positive");
    if (!(cfg.boundary_threshold > 0))
        throw ConfigError("solver.boundary_threshold: must be positive");
    if (cfg.profile_stride < 0) throw ConfigError("output.profile_stride: must be >= 0");
    if (cfg.n_paths < 1) throw ConfigError("run.n_paths: must be at least 1");
    if (cfg.workers < 1) throw ConfigError("run.workers: must be at least 1");
    if (cfg.probe_box.points_per_axis < 3) throw ConfigError("validate.points: must be at least 3");
    if (y_min_seen != y_max_seen)
        throw ConfigError("kernel.y_min/kernel.y_max: set both or neither");
    if (cfg.y_min && cfg.y_max && !(*cfg.y_max > *cfg.y_min))
        throw ConfigError("kernel.y_max: must exceed kernel.y_min");

    // construct the pieces once so malformed presets fail at load time;
    // validate mode stays lenient so broken coefficients reach the validator
    try {
        const NoiseKernel k = cfg.make_kernel();
        cfg.y_min = k.y_min;  // resolve the window into the echoed config
        cfg.y_max = k.y_max;
        (void)cfg.make_coefficients(cfg.mode == RunMode::validate);
        const Grid1D g = cfg.make_grid();
        (void)cfg.make_solver();
        (void)cfg.make_initial(g);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace smb
