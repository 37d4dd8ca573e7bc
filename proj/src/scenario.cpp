#include "ncqm/scenario.hpp"

#include "ncqm/classical.hpp"
#include "ncqm/fock.hpp"
#include "ncqm/peierls.hpp"
#include "ncqm/phase_reps.hpp"
#include "ncqm/star.hpp"
#include "ncqm/table.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <set>

namespace ncqm {

using nlohmann::json;

namespace {

const char* kVersion = "0.1.0";

std::string join_lines(const std::vector<std::string>& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : "\n") + x;
    return s;
}

const std::set<std::string> kCommands{"spectrum", "star", "sw", "trajectory", "peierls", "check-algebra"};

struct Reader {
    const json& raw;
    std::vector<std::string>& errs;

    const json* get(const char* key) const {
        auto it = raw.find(key);
        return it == raw.end() || it->is_null() ? nullptr : &*it;
    }
    void num(const char* key, double& out) const {
        if (auto* v = get(key)) {
            if (!v->is_number()) return errs.push_back(std::string(key) + ": expected a number");
            double d = v->get<double>();
            if (!std::isfinite(d)) return errs.push_back(std::string(key) + ": must be finite");
            out = d;
        }
    }
    void opt_num(const char* key, std::optional<double>& out) const {
        if (get(key)) {
            double d = 0;
            size_t before = errs.size();
            num(key, d);
            if (errs.size() == before) out = d;
        }
    }
    template <class I>
    void integer(const char* key, I& out, long long lo, long long hi) const {
        if (auto* v = get(key)) {
            if (!v->is_number_integer()) return errs.push_back(std::string(key) + ": expected an integer");
            long long x = v->get<long long>();
            if (x < lo || x > hi)
                return errs.push_back(std::string(key) + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            out = static_cast<I>(x);
        }
    }
    void choice(const char* key, std::string& out, const std::set<std::string>& allowed) const {
        if (auto* v = get(key)) {
            if (!v->is_string()) return errs.push_back(std::string(key) + ": expected a string");
            auto s = v->get<std::string>();
            if (!allowed.empty() && !allowed.count(s)) {
                std::string opts;
                for (auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
                return errs.push_back(std::string(key) + ": '" + s + "' is not one of " + opts);
            }
            out = s;
        }
    }
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> items) : std::runtime_error(join_lines(items)), items_(std::move(items)) {}

ScenarioConfig validate_config(const std::string& text) {
    json raw;
    try {
        raw = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config: not valid JSON (") + e.what() + ")"});
    }
    return validate_config(raw);
}

ScenarioConfig validate_config(const json& raw) {
    if (!raw.is_object()) throw ConfigError({"config: expected a JSON object"});
    static const std::set<std::string> known{
        "command", "theta",  "B",  "e",     "m",      "hbar",         "c",    "n_max", "k",    "gauge",  "T",
        "h",       "N",      "potential", "lambda", "curlyB", "Bbar", "a",   "branch", "x0",   "prescription",
        "mode",    "seed",   "format", "out"};
    std::vector<std::string> errs;
    for (auto it = raw.begin(); it != raw.end(); ++it)
        if (!known.count(it.key())) errs.push_back(it.key() + ": unknown key");

    ScenarioConfig c;
    Reader r{raw, errs};
    if (!r.get("command"))
        errs.push_back("command: required");
    else
        r.choice("command", c.command, kCommands);
    r.num("theta", c.params.theta);
    r.num("B", c.params.B);
    r.num("e", c.params.e);
    r.num("m", c.params.m);
    r.num("hbar", c.params.hbar);
    r.num("c", c.params.c);
    r.integer("n_max", c.n_max, 4, 200);
    r.integer("k", c.k, 1, 1000);
    r.choice("gauge", c.gauge, {"symmetric", "landau"});
    r.num("T", c.T);
    r.num("h", c.h);
    r.integer("N", c.N, 0, 50);
    r.num("lambda", c.lambda);
    r.opt_num("curlyB", c.curlyB);
    r.opt_num("Bbar", c.Bbar);
    r.num("a", c.a);
    r.choice("branch", c.branch, {"plus", "minus"});
    r.choice("prescription", c.prescription, {"weyl", "normal", "antinormal"});
    r.choice("mode", c.mode, {"commutators", "spectrum"});
    r.integer("seed", c.seed, std::numeric_limits<long long>::min(), std::numeric_limits<long long>::max());
    r.choice("format", c.format, {"csv", "json"});
    r.choice("out", c.out, {});

    if (auto* v = r.get("potential")) {
        if (!v->is_array()) {
            errs.push_back("potential: expected a list of [i, j, coefficient] terms");
        } else {
            for (size_t t = 0; t < v->size(); ++t) {
                const json& term = (*v)[t];
                const std::string where = "potential[" + std::to_string(t) + "]";
                if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() || !term[1].is_number_integer() ||
                    !term[2].is_number()) {
                    errs.push_back(where + ": expected [i, j, coefficient] with integer exponents");
                    continue;
                }
                long long i = term[0], j = term[1];
                double co = term[2];
                if (i < 0 || j < 0 || i + j > 8) errs.push_back(where + ": exponents must be >= 0 with total degree <= 8");
                else if (!std::isfinite(co)) errs.push_back(where + ": coefficient must be finite");
                else c.potential.push_back({double(i), double(j), co});
            }
        }
    }
    if (auto* v = r.get("x0")) {
        if (!v->is_array() || v->size() != 4) {
            errs.push_back("x0: expected four numbers (x1, x2, p1, p2)");
        } else {
            for (int i = 0; i < 4; ++i) {
                if (!(*v)[i].is_number() || !std::isfinite((*v)[i].get<double>()))
                    errs.push_back("x0[" + std::to_string(i) + "]: expected a finite number");
                else
                    c.x0[i] = (*v)[i];
            }
        }
    }

    if (c.params.m <= 0) errs.push_back("m: must be positive");
    if (c.params.hbar <= 0) errs.push_back("hbar: must be positive");
    if (c.params.c <= 0) errs.push_back("c: must be positive");
    if (c.h <= 0) errs.push_back("h: must be positive");
    if (c.T < c.h) errs.push_back("T: must be at least h");
    if (c.command == "sw" && !c.curlyB) errs.push_back("curlyB: required for sw");
    if (!errs.empty()) throw ConfigError(errs);
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["command"] = c.command;
    j["theta"] = c.params.theta;
    j["B"] = c.params.B;
    j["e"] = c.params.e;
    j["m"] = c.params.m;
    j["hbar"] = c.params.hbar;
    j["c"] = c.params.c;
    j["n_max"] = c.n_max;
    j["k"] = c.k;
    j["gauge"] = c.gauge;
    j["T"] = c.T;
    j["h"] = c.h;
    j["N"] = c.N;
    json pot = json::array();
    for (auto& t : c.potential) pot.push_back({(long long)t[0], (long long)t[1], t[2]});
    j["potential"] = pot;
    j["lambda"] = c.lambda;
    j["curlyB"] = c.curlyB ? json(*c.curlyB) : json(nullptr);
    j["Bbar"] = c.Bbar ? json(*c.Bbar) : json(nullptr);
    j["a"] = c.a;
    j["branch"] = c.branch;
    j["x0"] = c.x0;
    j["prescription"] = c.prescription;
    j["mode"] = c.mode;
    j["seed"] = c.seed;
    j["format"] = c.format;
    j["out"] = c.out;
    return j;
}

Poly potential_poly(const ScenarioConfig& c) {
    Poly V(2);
    for (auto& t : c.potential) V.add_term({int(t[0]), int(t[1]), 0, 0}, t[2]);
    return V;
}

int exit_code_for(ErrorCode code) {
    if (is_domain_error(code)) return 3;
    if (code == ErrorCode::InvalidArgument) return 2;
    return 1;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Output {
    Table table;
    json results = json::object();
    json tolerances = json::object();
    std::vector<std::string> warnings;
};

std::vector<long long> iota_ll(size_t n) {
    std::vector<long long> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = (long long)i;
    return v;
}

std::vector<double> padded(std::vector<double> v, size_t n) {
    v.resize(n, kNaN);
    return v;
}

Output run_spectrum(const ScenarioConfig& c) {
    Output o;
    Branch b = c.branch == "plus" ? Branch::Plus : Branch::Minus;
    SpectrumResult s = deformed_landau_spectrum(c.params, c.n_max, c.k, c.a, b);
    std::vector<long long> mult;
    std::vector<double> E, spread;
    double dev = 0;
    for (size_t n = 0; n < s.clusters.size(); ++n) {
        E.push_back(s.clusters[n].mean);
        mult.push_back(s.clusters[n].multiplicity);
        spread.push_back(s.clusters[n].spread);
        dev = std::max(dev, std::abs(s.clusters[n].mean - s.omega_B * (n + 0.5)));
    }
    if ((int)s.clusters.size() < c.k)
        o.warnings.push_back("only " + std::to_string(s.clusters.size()) + " levels resolved; raise n_max");
    o.table.add_int("n", iota_ll(E.size())).add("E_n", E).add_int("multiplicity", mult).add("spread", spread);
    o.results = {{"omega_B", s.omega_B}, {"n_resolved", s.n_resolved}, {"kappa", c.params.kappa()},
                 {"max_deviation_from_closed_form", dev}};
    SpectrumOptions so;
    o.tolerances = {{"degeneracy", so.degeneracy_tol}, {"leakage", so.leak_tol}, {"cluster", so.cluster_tol}};
    return o;
}

json eff_json(const EffectiveLandauParams& e) {
    return {{"Bbar", e.Bbar},       {"Lambda_bar", e.Lambda_bar}, {"m_star", e.m_star}, {"e_star", e.e_star},
            {"B_check", e.B_check}, {"m_check", e.m_check},       {"m_SW", e.m_SW},     {"e_SW", e.e_SW}};
}

void add_level_columns(Table& t, const std::vector<double>& closed, const SpectrumResult& f) {
    std::vector<double> fm;
    for (auto& cl : f.clusters) fm.push_back(cl.mean);
    const size_t n = std::max(closed.size(), fm.size());
    t.add_int("n", iota_ll(n)).add("E_closed", padded(closed, n)).add("E_fock", padded(fm, n));
}

Output run_star(const ScenarioConfig& c) {
    Output o;
    StarSpectrumOptions opt;
    opt.n_max = c.n_max;
    const double Bbar = c.Bbar ? *c.Bbar : bbar_of_B(c.params.B, c.params).Bbar;
    StarLandauSpectrum s = star_landau_spectrum(c.params, Bbar, c.k, opt);
    add_level_columns(o.table, s.E_closed, s.fock);
    o.results = {{"effective", eff_json(s.eff)}, {"max_deviation", s.max_deviation}};
    o.tolerances = {{"fock_cross_check", opt.tol}};
    if (s.fock.clusters.empty()) o.warnings.push_back("Fock cross-check skipped (needs hbar = c = 1)");
    return o;
}

Output run_sw(const ScenarioConfig& c) {
    Output o;
    StarSpectrumOptions opt;
    opt.n_max = c.n_max;
    SWConstantField s = sw_constant_field(*c.curlyB, c.params, c.k, opt);
    add_level_columns(o.table, s.E_closed, s.fock);
    o.results = {{"effective", eff_json(s.eff)},
                 {"field_strength_check", s.field_strength_check},
                 {"max_deviation", s.max_deviation}};
    o.tolerances = {{"field_strength", 1e-12}, {"fock_cross_check", opt.tol}};
    return o;
}

Output run_trajectory(const ScenarioConfig& c) {
    Output o;
    Trajectory tr;
    if (c.curlyB) {
        Gauge g = c.gauge == "symmetric" ? Gauge::Symmetric : Gauge::Landau;
        tr = minimal_coupling_trajectory(c.params, g, *c.curlyB, c.x0, c.T, c.h);
        const double F = effective_field(g, *c.curlyB, c.params.theta);
        o.results["F12"] = F;
        o.results["omega_expected"] = std::abs(F) / c.params.m;
    } else {
        c.params.validate();
        Poly V = potential_poly(c);
        Poly H = (p1() * p1() + p2() * p2()) * (1.0 / (2 * c.params.m)) + V.lift4() * c.lambda;
        tr = integrate(symplectic_matrix(c.params, Variant::Standard), H, c.x0, c.T, c.h);
        EomResidual r = eom_residual(tr, c.params, V * c.lambda);
        o.results["eom_residual_max"] = r.max_residual;
    }
    o.results["energy_drift"] = tr.energy_drift;
    try {
        FrequencyFit f = dominant_frequency(tr);
        o.results["omega_fit"] = f.omega;
        o.results["fit_residual_rms"] = f.residual_rms;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientData) throw;
        o.warnings.push_back(std::string("no frequency fit: ") + e.what());
        o.results["omega_fit"] = nullptr;
    }
    for (auto& w : tr.warnings) o.warnings.push_back(w);
    o.table = trajectory_table(tr);
    o.tolerances = {{"energy_drift_bound", IntegrateOptions{}.drift_bound}};
    return o;
}

Prescription prescription_of(const std::string& s) {
    if (s == "weyl") return Prescription::Weyl;
    if (s == "normal") return Prescription::Normal;
    return Prescription::AntiNormal;
}

Output run_peierls(const ScenarioConfig& c) {
    Output o;
    if (c.mode == "spectrum") {
        Poly V = potential_poly(c);
        if (c.potential.empty()) V = x1() * x1() + x2() * x2();
        PeierlsOptions opt;
        opt.n_max_full = c.n_max;
        opt.prescription = prescription_of(c.prescription);
        PeierlsResult r = peierls_spectrum(V, c.lambda, c.params, c.k, opt);
        const size_t n = std::max(r.epsilon_n.size(), r.full_E_n.size());
        o.table.add_int("n", iota_ll(n)).add("epsilon_n", padded(r.epsilon_n, n)).add("full_E_n", padded(r.full_E_n, n));
        o.results = {{"omega_B", r.omega_B}, {"deviation", r.deviation},
                     {"guiding_center_theta", guiding_center_theta(c.params)}};
        return o;
    }
    FockSpace s = landau_space(c.params, c.n_max);
    ProjectorSet ps = landau_projectors(c.params, s, c.N);
    auto ops = canonical_ops(s);
    std::vector<TruncatedCommutators> rows;
    for (int n = 0; n <= c.N; ++n) rows.push_back(truncated_commutators(ps, n, ops, c.params));
    o.table = truncated_commutator_table(rows);
    const auto idx = projector_interior(s);
    json sinc = json::array();
    for (int n = 0; n <= c.N; ++n) {
        Eigen::MatrixXcd f = projector_sinc(ps.H, n, ps.level_energies[n]);
        sinc.push_back((interior_block(f, idx) - interior_block(ps.projectors[n], idx)).cwiseAbs().maxCoeff());
    }
    o.results = {{"level_energies", ps.level_energies}, {"projector_sinc_mismatch", sinc}};
    return o;
}

Output run_check_algebra(const ScenarioConfig& c) {
    Output o;
    const NCParams& p = c.params;
    p.validate();
    const double k = p.kappa();
    if (k == 0.0) o.warnings.push_back("kappa = 0: degenerate (singular) noncommutative phase space");
    Eigen::Matrix4d target = target_table(p);
    Eigen::Matrix4d lan = commutator_table(landau_gauge_rep(p));
    Eigen::Matrix4d sym[2];
    bool have_sym = true;
    try {
        sym[0] = commutator_table(symmetric_rep_any_theta(p, c.a, Branch::Plus));
        sym[1] = commutator_table(symmetric_rep_any_theta(p, c.a, Branch::Minus));
    } catch (const Error& e) {
        if (!is_domain_error(e.code())) throw;
        have_sym = false;
        o.warnings.push_back(std::string("symmetric gauge rep unavailable: ") + e.what());
    }
    if (p.theta == 0.0) sym[1] = sym[0];
    std::vector<long long> I, J;
    std::vector<double> tv, lv, sp, sm;
    double dev = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            I.push_back(i);
            J.push_back(j);
            tv.push_back(target(i, j));
            lv.push_back(lan(i, j));
            sp.push_back(have_sym ? sym[0](i, j) : kNaN);
            sm.push_back(have_sym ? sym[1](i, j) : kNaN);
            dev = std::max(dev, std::abs(lan(i, j) - target(i, j)));
            if (have_sym) dev = std::max({dev, std::abs(sym[0](i, j) - target(i, j)), std::abs(sym[1](i, j) - target(i, j))});
        }
    o.table.add_int("I", I).add_int("J", J).add("target", tv).add("landau", lv).add("symmetric_plus", sp).add(
        "symmetric_minus", sm);

    // Jacobi at seeded random points for the standard structure and, when
    // kappa != 0, the exotic one (constant B makes both vanish identically)
    std::mt19937_64 rng(static_cast<unsigned long long>(c.seed));
    std::uniform_real_distribution<double> U(-1, 1);
    PoissonStructure st = standard_structure(p.theta, Poly::constant(2, p.B));
    double jst = 0, jex = kNaN;
    std::optional<PoissonStructure> ex;
    if (k != 0.0) {
        ex = exotic_structure(p.theta, Poly::constant(2, p.B));
        jex = 0;
    }
    for (int t = 0; t < 10; ++t) {
        std::array<double, 4> xi{U(rng), U(rng), U(rng), U(rng)};
        jst = std::max(jst, max_abs(jacobi_residual(st, xi)));
        if (ex) jex = std::max(jex, max_abs(jacobi_residual(*ex, xi)));
    }
    o.results = {{"kappa", k},
                 {"det_landau", landau_gauge_rep(p).det()},
                 {"max_table_deviation", dev},
                 {"jacobi_standard_max", jst},
                 {"jacobi_exotic_max", std::isnan(jex) ? json(nullptr) : json(jex)},
                 {"singular", k == 0.0}};
    o.tolerances = {{"table", 1e-12}};
    return o;
}

} // namespace

RunOutcome run_scenario(const ScenarioConfig& c) {
    RunOutcome out;
    try {
        c.params.validate();
        Output o;
        if (c.command == "spectrum") o = run_spectrum(c);
        else if (c.command == "star") o = run_star(c);
        else if (c.command == "sw") o = run_sw(c);
        else if (c.command == "trajectory") o = run_trajectory(c);
        else if (c.command == "peierls") o = run_peierls(c);
        else if (c.command == "check-algebra") o = run_check_algebra(c);
        else throw ConfigError({"command: '" + c.command + "' is not a command"});

        std::filesystem::create_directories(c.out);
        const std::string name = c.command + "." + c.format;
        const std::string path = (std::filesystem::path(c.out) / name).string();
        write_atomic(path, c.format == "csv" ? o.table.csv() : o.table.json());
        json manifest = {{"tool", "ncqm"},
                         {"version", kVersion},
                         {"command", c.command},
                         {"config", config_to_json(c)},
                         {"output", name},
                         {"columns", o.table.names()},
                         {"rows", o.table.rows()},
                         {"tolerances", o.tolerances},
                         {"results", o.results},
                         {"warnings", o.warnings}};
        const std::string mpath = (std::filesystem::path(c.out) / "manifest.json").string();
        write_atomic(mpath, manifest.dump(2) + "\n");
        out.files = {path, mpath};
        out.warnings = o.warnings;
    } catch (const ConfigError& e) {
        out.exit_code = 2;
        out.message = e.what();
    } catch (const Error& e) {
        out.exit_code = exit_code_for(e.code());
        out.message = e.what();
    } catch (const std::exception& e) {
        out.exit_code = 1;
        out.message = e.what();
    }
    return out;
}

} // namespace ncqm
