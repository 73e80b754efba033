#include "utmheat/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "utmheat/errors.hpp"

namespace utmheat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_real(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + s);
    }
}

int parse_int(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + s);
    }
}

std::vector<double> parse_reals(const std::string& key, const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split_ws(s)) out.push_back(parse_real(key, tok));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

DataFamily parse_family(const std::string& key, const std::string& s) {
    const std::vector<std::string> toks = split_ws(s);
    if (toks.empty()) throw ConfigError("empty family for '" + key + "'");
    const std::string& kind = toks[0];
    auto arg = [&](std::size_t i) {
        if (i >= toks.size())
            throw ConfigError("missing parameter " + std::to_string(i) + " for '" + key +
                              "' family " + kind);
        return parse_real(key, toks[i]);
    };
    auto expect_argc = [&](std::size_t n) {
        if (toks.size() != n + 1)
            throw ConfigError("family " + kind + " for '" + key + "' takes " +
                              std::to_string(n) + " parameters");
    };
    try {
    if (kind == "expdecay") {
        expect_argc(2);
        return DataFamily::exp_decay(arg(1), arg(2));
    }
    if (kind == "gaussian") {
        expect_argc(2);
        return DataFamily::gaussian(arg(1), arg(2));
    }
    if (kind == "constant") {
        expect_argc(1);
        return DataFamily::constant(arg(1));
    }
    if (kind == "expgrow") {
        expect_argc(2);
        return DataFamily::exp_grow(arg(1), arg(2));
    }
    if (kind == "polyexp") {
        if (toks.size() < 3)
            throw ConfigError("family polyexp for '" + key + "' needs b and coefficients");
        std::vector<double> coeffs;
        for (std::size_t i = 2; i < toks.size(); ++i) coeffs.push_back(arg(i));
        return DataFamily::poly_exp(std::move(coeffs), arg(1));
    }
    if (kind == "poly") {
        if (toks.size() < 2)
            throw ConfigError("family poly for '" + key + "' needs coefficients");
        std::vector<double> coeffs;
        for (std::size_t i = 1; i < toks.size(); ++i) coeffs.push_back(arg(i));
        return DataFamily::poly(std::move(coeffs));
    }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid family parameters: ") + e.what());
    }
    throw ConfigError("unknown family '" + kind + "' for '" + key + "'");
}

RepresentationKind parse_representation(const std::string& s) {
    if (s == "contour") return RepresentationKind::Contour;
    if (s == "ehrenpreis") return RepresentationKind::Ehrenpreis;
    if (s == "gauss") return RepresentationKind::GaussKernel;
    if (s == "sine") return RepresentationKind::SineTransform;
    throw ConfigError("unknown representation '" + s +
                      "' (expected contour|ehrenpreis|gauss|sine)");
}

}  // namespace

const char* representation_name(RepresentationKind kind) {
    switch (kind) {
        case RepresentationKind::Contour: return "contour";
        case RepresentationKind::Ehrenpreis: return "ehrenpreis";
        case RepresentationKind::GaussKernel: return "gauss";
        case RepresentationKind::SineTransform: return "sine";
    }
    return "?";
}

double RunConfig::effective_horizon() const {
    if (horizon > 0.0) return horizon;
    double tmax = 0.0;
    for (double t : ts) tmax = std::max(tmax, t);
    for (const TraceSpec& tr : traces)
        if (tr.x_to_zero) tmax = std::max(tmax, tr.anchor);
    return tmax + 1.0;
}

EvalOptions RunConfig::eval_options() const {
    EvalOptions opt;
    opt.quad = quad;
    opt.radius_override = radius_override;
    return opt;
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    bool have_u0 = false, have_g0 = false;
    DataFamily u0 = DataFamily::constant(0.0), g0 = DataFamily::constant(0.0);
    std::string label;
    std::string section;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::vector<TraceSpec> traces;
    bool traces_given = false;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "problem" && section != "quadrature" && section != "experiment")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' outside any section");

        if (section == "problem") {
            if (key == "label") label = value;
            else if (key == "u0") { u0 = parse_family(key, value); have_u0 = true; }
            else if (key == "g0") { g0 = parse_family(key, value); have_g0 = true; }
            else throw ConfigError("unknown key '" + key + "' in [problem]");
        } else if (section == "quadrature") {
            if (key == "abs_tol") cfg.quad.abs_tol = parse_real(key, value);
            else if (key == "rel_tol") cfg.quad.rel_tol = parse_real(key, value);
            else if (key == "max_panels") cfg.quad.max_panels = parse_int(key, value);
            else if (key == "gl_order") cfg.quad.gl_order = parse_int(key, value);
            else if (key == "nodes_per_unit") cfg.quad.nodes_per_unit = parse_int(key, value);
            else if (key == "ibp_depth") cfg.quad.ibp_depth = parse_int(key, value);
            else if (key == "radius") cfg.radius_override = parse_real(key, value);
            else throw ConfigError("unknown key '" + key + "' in [quadrature]");
        } else {  // experiment
            if (key == "xs") cfg.xs = parse_reals(key, value);
            else if (key == "ts") cfg.ts = parse_reals(key, value);
            else if (key == "representations") {
                cfg.representations.clear();
                for (const std::string& tok : split_ws(value))
                    cfg.representations.push_back(parse_representation(tok));
            } else if (key == "horizon") cfg.horizon = parse_real(key, value);
            else if (key == "out") cfg.out_path = value;
            else if (key == "trace") {
                // e.g. "x_to_0 2 1.0" or "t_to_0 0 0.5"
                const auto toks = split_ws(value);
                if (toks.size() != 3)
                    throw ConfigError("trace expects: direction order anchor");
                TraceSpec spec;
                if (toks[0] == "x_to_0") spec.x_to_zero = true;
                else if (toks[0] == "t_to_0") spec.x_to_zero = false;
                else throw ConfigError("trace direction must be x_to_0 or t_to_0");
                spec.order = parse_int(key, toks[1]);
                spec.anchor = parse_real(key, toks[2]);
                traces.push_back(spec);
                traces_given = true;
            } else if (key == "corner_orders") {
                cfg.corner_orders.clear();
                for (const std::string& tok : split_ws(value))
                    cfg.corner_orders.push_back(parse_int(key, tok));
            } else if (key == "conv_x") cfg.conv_x = parse_real(key, value);
            else if (key == "conv_t") cfg.conv_t = parse_real(key, value);
            else if (key == "conv_doublings") cfg.conv_doublings = parse_int(key, value);
            else throw ConfigError("unknown key '" + key + "' in [experiment]");
        }
    }

    if (!have_u0 || !have_g0)
        throw ConfigError("[problem] must define both u0 and g0");
    try {
        cfg.problem = make_problem(std::move(u0), std::move(g0),
                                   label.empty() ? "unnamed" : label);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (traces_given) cfg.traces = std::move(traces);

    // Range validation before any computation.
    if (cfg.quad.abs_tol < 1e-14) throw ConfigError("abs_tol must be >= 1e-14");
    if (cfg.quad.rel_tol <= 0.0) throw ConfigError("rel_tol must be > 0");
    if (cfg.quad.max_panels < 16) throw ConfigError("max_panels must be >= 16");
    if (cfg.quad.gl_order < 4 || cfg.quad.gl_order > 64)
        throw ConfigError("gl_order must be in [4, 64]");
    if (cfg.quad.nodes_per_unit < 1) throw ConfigError("nodes_per_unit must be >= 1");
    if (cfg.quad.ibp_depth < 0 || cfg.quad.ibp_depth > 12)
        throw ConfigError("ibp_depth must be in [0, 12]");
    if (cfg.radius_override < 0.0) throw ConfigError("radius must be >= 0");
    for (double x : cfg.xs)
        if (!(x > 0.0)) throw ConfigError("grid xs must be > 0");
    for (double t : cfg.ts)
        if (!(t > 0.0)) throw ConfigError("grid ts must be > 0");
    if (cfg.representations.empty()) throw ConfigError("no representations selected");
    double tmax = 0.0;
    for (double t : cfg.ts) tmax = std::max(tmax, t);
    // the horizon form and the time-derivative (PDE residual) column both
    // need T strictly beyond every evaluation time
    if (cfg.horizon > 0.0 && cfg.horizon <= tmax)
        throw ConfigError("horizon must exceed every evaluation time (T > t)");
    for (const TraceSpec& tr : cfg.traces) {
        if (tr.order < 0 || tr.order > 6) throw ConfigError("trace order must be in [0, 6]");
        if (!tr.x_to_zero && tr.order > 3)
            throw ConfigError("t-trace order must be in [0, 3]");
        if (!(tr.anchor > 0.0)) throw ConfigError("trace anchor must be > 0");
    }
    for (int k : cfg.corner_orders)
        if (k < 0 || k > 6) throw ConfigError("corner order must be in [0, 6]");
    if (!(cfg.conv_x > 0.0) || !(cfg.conv_t > 0.0))
        throw ConfigError("convergence point must have x > 0, t > 0");
    if (cfg.conv_doublings < 1 || cfg.conv_doublings > 8)
        throw ConfigError("conv_doublings must be in [1, 8]");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace utmheat
