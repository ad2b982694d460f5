#include "cgoscat/scenario.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cgoscat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("scenario: " + path + ": " + what);
}

void require_keys(const json& j, const std::string& path, const std::set<std::string>& known) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& kv : j.items())
        if (!known.count(kv.key())) fail(path + "." + kv.key(), "unknown key");
}

double get_num(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + key, "missing");
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

double get_num_or(const json& j, const std::string& path, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

int get_int_or(const json& j, const std::string& path, const char* key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
    return j.at(key).get<int>();
}

Vec3 get_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) fail(path, "expected [x, y, z]");
    return Vec3{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

Complex get_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
    return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
}

Descriptor parse_descriptor(const json& j, const std::string& path) {
    require_keys(j, path, {"terms"});
    if (!j.contains("terms") || !j.at("terms").is_array()) fail(path + ".terms", "missing term list");
    Descriptor d;
    std::size_t idx = 0;
    for (const json& t : j.at("terms")) {
        const std::string tp = path + ".terms[" + std::to_string(idx++) + "]";
        if (!t.is_object() || !t.contains("kind")) fail(tp, "term needs a kind");
        const std::string kind = t.at("kind").get<std::string>();
        if (kind == "gaussian") {
            require_keys(t, tp, {"kind", "amplitude", "sigma", "center"});
            GaussianTerm g;
            g.amplitude = get_num(t, tp, "amplitude");
            g.sigma = get_num(t, tp, "sigma");
            if (g.sigma <= 0.0) fail(tp + ".sigma", "must be positive");
            g.center = t.contains("center") ? get_vec3(t.at("center"), tp + ".center") : Vec3{};
            d.terms.push_back(g);
        } else if (kind == "expbump") {
            require_keys(t, tp, {"kind", "amplitude", "gamma0", "r0"});
            ExpBumpTerm e;
            e.amplitude = get_num(t, tp, "amplitude");
            e.gamma0 = get_num(t, tp, "gamma0");
            e.r0 = get_num(t, tp, "r0");
            if (e.gamma0 <= 0.0) fail(tp + ".gamma0", "must be positive");
            if (e.r0 <= 0.0) fail(tp + ".r0", "must be positive");
            d.terms.push_back(e);
        } else if (kind == "planewave") {
            require_keys(t, tp, {"kind", "rho"});
            if (!t.contains("rho") || !t.at("rho").is_array() || t.at("rho").size() != 3)
                fail(tp + ".rho", "expected three [re, im] pairs");
            PlaneWaveTerm p;
            p.rho.x = get_complex(t.at("rho").at(0), tp + ".rho[0]");
            p.rho.y = get_complex(t.at("rho").at(1), tp + ".rho[1]");
            p.rho.z = get_complex(t.at("rho").at(2), tp + ".rho[2]");
            d.terms.push_back(p);
        } else {
            fail(tp + ".kind", "unknown descriptor kind '" + kind + "'");
        }
    }
    return d;
}

json descriptor_json(const Descriptor& d) {
    json terms = json::array();
    for (const DescriptorTerm& t : d.terms) {
        json jt;
        if (const auto* g = std::get_if<GaussianTerm>(&t)) {
            jt["kind"] = "gaussian";
            jt["amplitude"] = g->amplitude;
            jt["sigma"] = g->sigma;
            jt["center"] = {g->center.x, g->center.y, g->center.z};
        } else if (const auto* e = std::get_if<ExpBumpTerm>(&t)) {
            jt["kind"] = "expbump";
            jt["amplitude"] = e->amplitude;
            jt["gamma0"] = e->gamma0;
            jt["r0"] = e->r0;
        } else if (const auto* p = std::get_if<PlaneWaveTerm>(&t)) {
            jt["kind"] = "planewave";
            jt["rho"] = {{p->rho.x.real(), p->rho.x.imag()},
                         {p->rho.y.real(), p->rho.y.imag()},
                         {p->rho.z.real(), p->rho.z.imag()}};
        }
        terms.push_back(jt);
    }
    return json{{"terms", terms}};
}

Scenario parse_scenario(const json& j) {
    require_keys(j, "$",
                 {"name", "grid", "lambda", "gamma0", "k_max", "potential", "potential_prime",
                  "t_schedule", "shell", "zeta_samples", "scan", "lowfreq", "solver", "seed", "out"});
    Scenario s;
    if (!j.contains("name") || !j.at("name").is_string()) fail("$.name", "missing scenario name");
    s.name = j.at("name").get<std::string>();

    if (!j.contains("grid")) fail("$.grid", "missing");
    const json& g = j.at("grid");
    require_keys(g, "$.grid", {"L", "N"});
    s.L = get_num(g, "$.grid", "L");
    s.N = get_int_or(g, "$.grid", "N", 0);
    if (s.N == 0) fail("$.grid.N", "missing");

    s.lambda = get_num(j, "$", "lambda");
    s.gamma0 = get_num(j, "$", "gamma0");
    s.k_max = get_int_or(j, "$", "k_max", 4);

    if (!j.contains("potential")) fail("$.potential", "missing potential block");
    s.potential = parse_descriptor(j.at("potential"), "$.potential");
    if (j.contains("potential_prime"))
        s.potential_prime = parse_descriptor(j.at("potential_prime"), "$.potential_prime");

    if (j.contains("t_schedule")) {
        if (!j.at("t_schedule").is_array()) fail("$.t_schedule", "expected an array");
        for (const json& t : j.at("t_schedule")) s.t_schedule.push_back(t.get<double>());
    }
    if (j.contains("shell")) {
        const json& sh = j.at("shell");
        require_keys(sh, "$.shell", {"abs_zeta", "n_points"});
        ShellConfig sc;
        sc.abs_zeta = get_num(sh, "$.shell", "abs_zeta");
        sc.n_points = get_int_or(sh, "$.shell", "n_points", 24);
        s.shell = sc;
    }
    if (j.contains("zeta_samples")) {
        if (!j.at("zeta_samples").is_array()) fail("$.zeta_samples", "expected an array");
        std::size_t idx = 0;
        for (const json& z : j.at("zeta_samples"))
            s.zeta_samples.push_back(get_vec3(z, "$.zeta_samples[" + std::to_string(idx++) + "]"));
    }
    if (j.contains("scan")) {
        const json& sc = j.at("scan");
        require_keys(sc, "$.scan", {"z", "rho_perp", "probes", "threshold"});
        ScanConfig cfg;
        if (!sc.contains("z") || !sc.at("z").is_array()) fail("$.scan.z", "missing z samples");
        std::size_t idx = 0;
        for (const json& z : sc.at("z"))
            cfg.z.push_back(get_complex(z, "$.scan.z[" + std::to_string(idx++) + "]"));
        if (!sc.contains("rho_perp") || !sc.at("rho_perp").is_array())
            fail("$.scan.rho_perp", "missing rho_perp samples");
        idx = 0;
        for (const json& rp : sc.at("rho_perp")) {
            const std::string p = "$.scan.rho_perp[" + std::to_string(idx++) + "]";
            if (!rp.is_array() || rp.size() != 2) fail(p, "expected two in-plane coordinates");
            cfg.rho_perp.push_back({rp.at(0).get<double>(), rp.at(1).get<double>()});
        }
        cfg.probes = get_int_or(sc, "$.scan", "probes", 4);
        cfg.threshold = get_num_or(sc, "$.scan", "threshold", 1e-3);
        s.scan = cfg;
    }
    if (j.contains("lowfreq")) {
        const json& lf = j.at("lowfreq");
        require_keys(lf, "$.lowfreq", {"n_widths", "reg_weight", "width_lo", "width_hi"});
        s.lowfreq.n_widths = get_int_or(lf, "$.lowfreq", "n_widths", 8);
        s.lowfreq.reg_weight = get_num_or(lf, "$.lowfreq", "reg_weight", 1e-2);
        s.lowfreq.width_lo = get_num_or(lf, "$.lowfreq", "width_lo", 0.5);
        s.lowfreq.width_hi = get_num_or(lf, "$.lowfreq", "width_hi", 1.8);
    }
    if (j.contains("solver")) {
        const json& sv = j.at("solver");
        require_keys(sv, "$.solver",
                     {"cgo_tol", "cgo_max_iter", "restart", "poisson_tol", "poisson_max_iter"});
        s.solver.cgo_tol = get_num_or(sv, "$.solver", "cgo_tol", 1e-8);
        s.solver.cgo_max_iter = get_int_or(sv, "$.solver", "cgo_max_iter", 400);
        s.solver.restart = get_int_or(sv, "$.solver", "restart", 30);
        s.solver.poisson_tol = get_num_or(sv, "$.solver", "poisson_tol", 1e-8);
        s.solver.poisson_max_iter = get_int_or(sv, "$.solver", "poisson_max_iter", 200);
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            fail("$.seed", "expected an unsigned integer");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("out")) s.out_dir = j.at("out").get<std::string>();

    s.validate();
    return s;
}

}  // namespace

void Scenario::validate() const {
    if (name.empty()) throw ConfigError("scenario: $.name: must be non-empty");
    if (!(L > 0.0)) throw ConfigError("scenario: $.grid.L: must be positive");
    if (N < 8 || N % 2 != 0) throw ConfigError("scenario: $.grid.N: must be even and at least 8");
    if (!(lambda > 0.0)) throw ConfigError("scenario: $.lambda: must be positive");
    if (!(gamma0 > 0.0)) throw ConfigError("scenario: $.gamma0: must be positive");
    if (k_max < 0) throw ConfigError("scenario: $.k_max: must be non-negative");
    for (double t : t_schedule)
        if (!(t > 0.0)) throw ConfigError("scenario: $.t_schedule: entries must be positive");
    if (shell) {
        if (shell->abs_zeta < 0.0) throw ConfigError("scenario: $.shell.abs_zeta: must be non-negative");
        if (shell->n_points <= 0) throw ConfigError("scenario: $.shell.n_points: must be positive");
    }
    if (scan) {
        for (const Complex& z : scan->z)
            if (z.imag() == 0.0)
                throw ConfigError("scenario: $.scan.z: samples must have a nonzero imaginary part");
        if (scan->probes <= 0) throw ConfigError("scenario: $.scan.probes: must be positive");
    }
    if (!(solver.cgo_tol > 0.0) || !(solver.poisson_tol > 0.0))
        throw ConfigError("scenario: $.solver: tolerances must be positive");
    if (solver.cgo_max_iter <= 0 || solver.poisson_max_iter <= 0 || solver.restart <= 0)
        throw ConfigError("scenario: $.solver: iteration limits must be positive");
    if (lowfreq.n_widths < 1 || !(lowfreq.width_lo > 0.0) || !(lowfreq.width_hi > lowfreq.width_lo))
        throw ConfigError("scenario: $.lowfreq: bad width ladder");
}

Scenario parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: not valid JSON: ") + e.what());
    }
    return parse_scenario(j);
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("scenario: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string normalized_scenario(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["grid"] = {{"L", s.L}, {"N", s.N}};
    j["lambda"] = s.lambda;
    j["gamma0"] = s.gamma0;
    j["k_max"] = s.k_max;
    j["potential"] = descriptor_json(s.potential);
    if (s.potential_prime) j["potential_prime"] = descriptor_json(*s.potential_prime);
    if (!s.t_schedule.empty()) j["t_schedule"] = s.t_schedule;
    if (s.shell) j["shell"] = {{"abs_zeta", s.shell->abs_zeta}, {"n_points", s.shell->n_points}};
    if (!s.zeta_samples.empty()) {
        json zs = json::array();
        for (const Vec3& z : s.zeta_samples) zs.push_back({z.x, z.y, z.z});
        j["zeta_samples"] = zs;
    }
    if (s.scan) {
        json z = json::array(), rp = json::array();
        for (const Complex& c : s.scan->z) z.push_back({c.real(), c.imag()});
        for (const auto& p : s.scan->rho_perp) rp.push_back({p[0], p[1]});
        j["scan"] = {{"z", z}, {"rho_perp", rp}, {"probes", s.scan->probes},
                     {"threshold", s.scan->threshold}};
    }
    j["lowfreq"] = {{"n_widths", s.lowfreq.n_widths},
                    {"reg_weight", s.lowfreq.reg_weight},
                    {"width_lo", s.lowfreq.width_lo},
                    {"width_hi", s.lowfreq.width_hi}};
    j["solver"] = {{"cgo_tol", s.solver.cgo_tol},
                   {"cgo_max_iter", s.solver.cgo_max_iter},
                   {"restart", s.solver.restart},
                   {"poisson_tol", s.solver.poisson_tol},
                   {"poisson_max_iter", s.solver.poisson_max_iter}};
    j["seed"] = s.seed;
    if (!s.out_dir.empty()) j["out"] = s.out_dir;
    return j.dump(2) + "\n";
}

// --- CSV --------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string shell_scan_csv(const std::vector<ShellScan>& scans) {
    std::string out = "zeta1,zeta2,zeta3,abs_zeta,t,re,im,err\n";
    for (const ShellScan& scan : scans)
        for (const ShellPoint& pt : scan.points) {
            if (!pt.ok) continue;
            out += fmt(pt.zeta.x) + "," + fmt(pt.zeta.y) + "," + fmt(pt.zeta.z) + "," +
                   fmt(norm(pt.zeta)) + "," + fmt(pt.t) + "," + fmt(pt.value.real()) + "," +
                   fmt(pt.value.imag()) + "," + fmt(pt.err) + "\n";
        }
    return out;
}

std::string norm_decay_csv(const std::vector<NormDecaySample>& samples, const Frame& frame) {
    std::string out = "re_z,im_z,rho_perp_1,rho_perp_2,norm_estimate\n";
    for (const NormDecaySample& s : samples)
        out += fmt(s.z.real()) + "," + fmt(s.z.imag()) + "," + fmt(dot(s.rho_perp, frame[1])) +
               "," + fmt(dot(s.rho_perp, frame[2])) + "," + fmt(s.estimate) + "\n";
    return out;
}

std::string exceptional_scan_csv(const ExceptionalScan& scan, const Frame& frame) {
    std::string out = "re_z,im_z,rho_perp_1,rho_perp_2,indicator,flagged\n";
    for (const ScanPoint& p : scan.points)
        out += fmt(p.z.real()) + "," + fmt(p.z.imag()) + "," + fmt(dot(p.rho_perp, frame[1])) +
               "," + fmt(dot(p.rho_perp, frame[2])) + "," + fmt(p.indicator) + "," +
               (p.flagged ? "1" : "0") + "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("write_text_file: cannot open " + path);
    os << text;
    if (!os) throw IoError("write_text_file: stream failure on " + path);
}

}  // namespace cgoscat
