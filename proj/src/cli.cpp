#include "besselmu/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "besselmu/bounds.hpp"
#include "besselmu/exit.hpp"
#include "besselmu/grid.hpp"
#include "besselmu/kernels.hpp"
#include "besselmu/lemmas.hpp"
#include "besselmu/simulate.hpp"
#include "besselmu/supremum.hpp"

namespace besselmu {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
    double mu = 1.0;
    double r0 = 1.0;
    double tol = 1e-12;
    std::string rep = "auto";
    int max_terms = 10'000;
    double crossover = 0.25;
    std::string format = "json";

    EvalConfig config() const
    {
        EvalConfig c;
        c.abs_tol = tol;
        c.rep_policy = parse_representation(rep);
        c.max_terms = max_terms;
        c.crossover_ratio = crossover;
        validate_config(c);
        return c;
    }

    Json config_json() const
    {
        return {{"abs_tol", tol}, {"rep", rep}, {"max_terms", max_terms}, {"crossover_ratio", crossover}};
    }
};

void add_common(CLI::App* sub, Common& c, bool with_r0 = true, bool with_eval = true)
{
    sub->add_option("--mu", c.mu, "drift mu >= 0");
    if (with_r0) sub->add_option("--r0", c.r0, "barrier r0 > 0");
    if (with_eval) {
        sub->add_option("--tol", c.tol, "absolute truncation tolerance");
        sub->add_option("--rep", c.rep, "series representation")
            ->check(CLI::IsMember({"auto", "spectral", "image"}));
        sub->add_option("--max-terms", c.max_terms, "series length cap");
        sub->add_option("--crossover", c.crossover, "auto uses image below this t/r0^2");
    }
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

std::string csv_cell(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_float()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    return v.dump();
}

/// A single-point result: inputs and outputs, emitted as one JSON object or
/// as a CSV header plus one row (inputs first, then outputs).
void emit_record(std::ostream& out, const Common& c, const std::string& command, const Json& inputs,
                 const Json& outputs, bool with_config = true)
{
    if (c.format == "csv") {
        std::string header = "command";
        std::string row = command;
        for (const auto* obj : {&inputs, &outputs})
            for (auto it = obj->begin(); it != obj->end(); ++it) {
                header += "," + it.key();
                row += "," + csv_cell(it.value());
            }
        out << header << '\n' << row << '\n';
        return;
    }
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    if (with_config) j["config"] = c.config_json();
    out << j.dump(2) << '\n';
}

Json density_json(const DensityResult& d)
{
    return {{"value", d.value},
            {"raw", d.raw},
            {"log_value", std::isfinite(d.log_value) ? Json(d.log_value) : Json(nullptr)},
            {"err_bound", d.err_bound},
            {"rep_used", std::string(to_string(d.rep_used))},
            {"terms_used", d.terms_used}};
}

void apply_grid(AuditGrid& g, const std::string& spec)
{
    for (auto& [name, axis] : parse_grid(spec)) {
        if (name == "mu") g.mu = axis;
        else if (name == "r0") g.r0 = axis;
        else if (name == "t") g.t = axis;
        else if (name == "x") g.x = axis;
        else if (name == "y") g.y = axis;
        else throw GridError("unknown grid axis '" + name + "' (expected mu, r0, t, x, y)");
    }
}

/// "survival=0.5,1;exit-hist=50;sup-hist=40,2;marginal=1,20,2[,free]"
void apply_estimators(SimulationSpec& spec, const std::string& text)
{
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        const std::string name = item.substr(0, eq);
        const std::string args = eq == std::string::npos ? "" : item.substr(eq + 1);
        std::vector<std::string> parts;
        std::stringstream as(args);
        std::string p;
        while (std::getline(as, p, ',')) parts.push_back(p);
        auto num = [&](std::size_t i) {
            if (i >= parts.size()) throw ConfigError("estimator '" + name + "' is missing arguments");
            try {
                return std::stod(parts[i]);
            } catch (const std::exception&) {
                throw ConfigError("estimator '" + name + "': bad number '" + parts[i] + "'");
            }
        };
        if (name == "survival") {
            spec.survival_times.clear();
            for (std::size_t i = 0; i < parts.size(); ++i) spec.survival_times.push_back(num(i));
        } else if (name == "exit-hist") {
            spec.exit_time_bins = static_cast<int>(num(0));
        } else if (name == "sup-hist") {
            spec.sup_bins = static_cast<int>(num(0));
            if (parts.size() > 1) spec.sup_max = num(1);
        } else if (name == "marginal") {
            MarginalSpec m;
            m.t = num(0);
            if (parts.size() > 1) m.bins = static_cast<int>(num(1));
            if (parts.size() > 2) m.y_max = num(2);
            if (parts.size() > 3) m.killed = parts[3] != "free";
            spec.marginal = m;
        } else if (name != "mean") {
            throw ConfigError("unknown estimator '" + name + "'");
        }
    }
}

Json audit_json(const AuditReport& r, const std::string& grid, const Common& c)
{
    Json regions = Json::array();
    for (const auto& g : r.regions)
        regions.push_back({{"region", g.region}, {"count", g.count}, {"min_ratio", g.min_ratio},
                           {"max_ratio", g.max_ratio}});
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json jr = {{"mu", row.point.mu}, {"r0", row.point.r0}, {"t", row.point.t},
                   {"x", row.point.x},   {"y", row.point.y},   {"exact", row.exact},
                   {"envelope", row.envelope}, {"ratio", row.ratio}, {"pass", row.pass},
                   {"region", row.region}};
        if (!row.error.empty()) jr["error"] = row.error;
        rows.push_back(jr);
    }
    Json j;
    j["command"] = "bounds-audit";
    j["inputs"] = {{"theorem", std::string(to_string(r.id))}, {"grid", grid}};
    j["config"] = c.config_json();
    j["summary"] = {{"points", r.rows.size()},   {"pass", r.n_pass},
                    {"fail", r.n_fail},          {"error", r.n_error},
                    {"domain_error", r.n_domain_error},
                    {"lo", r.interval.lo},       {"hi", std::isfinite(r.interval.hi) ? Json(r.interval.hi) : Json(nullptr)},
                    {"min_ratio", r.min_ratio},  {"max_ratio", r.max_ratio},
                    {"regions", regions}};
    j["rows"] = rows;
    return j;
}

Json lemma_case_json(const LemmaCase& lc)
{
    return {{"lemma", lc.lemma_id}, {"a", lc.a}, {"b", lc.b}, {"c", lc.c},
            {"integral", lc.integral}, {"integral_error", lc.integral_error},
            {"envelope", lc.envelope}, {"ratio", lc.ratio}};
}

void write_error(std::ostream& err, const char* kind, const std::string& msg)
{
    err << Json{{"error", kind}, {"message", msg}}.dump() << '\n';
}

}  // namespace

int audit_exit_code(const AuditReport& report)
{
    if (report.n_error > report.n_domain_error) return kExitNumerical;
    if (report.n_domain_error > 0) return kExitDomain;
    return report.n_fail > 0 ? kExitAudit : kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Laws of the Bessel process of drifting Brownian motion killed at a barrier"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");
    app.footer(
        "Densities are with respect to the speed measure sinh^2(mu y) dy (y^2 dy at mu = 0).\n"
        "Exit codes: 0 ok, 1 domain or usage error, 2 truncation or quadrature failure,\n"
        "3 audit failure. BESSELMU_THREADS caps the worker count.");

    Common c;
    double t = 1.0;
    double x = 0.5;
    double y = 0.5;
    std::string kind = "killed";
    bool fd_check = false;

    auto* density = app.add_subcommand("density", "free or killed transition density");
    density->add_option("kind", kind, "free|killed")->check(CLI::IsMember({"free", "killed"}));
    density->add_option("--t", t, "time")->required();
    density->add_option("--x", x, "start")->required();
    density->add_option("--y", y, "end point")->required();
    add_common(density, c);

    auto* surv = app.add_subcommand("survival", "P^x(tau > t) = P^x(M_t < r0)");
    surv->add_option("--t", t, "time")->required();
    surv->add_option("--x", x, "start in [0, r0)")->required();
    add_common(surv, c);

    auto* exitd = app.add_subcommand("exit-density", "density of the exit time tau_{r0}");
    exitd->add_option("--t", t, "time")->required();
    exitd->add_option("--x", x, "start in [0, r0)")->required();
    add_common(exitd, c);

    auto* mean = app.add_subcommand("mean-exit", "E^x tau_{r0}, closed form");
    mean->add_option("--x", x, "start in [0, r0)")->required();
    add_common(mean, c, true, false);

    auto* sup = app.add_subcommand("sup-density", "density of M_t = sup_{s<=t} Z_s at level y");
    sup->add_option("--t", t, "time")->required();
    sup->add_option("--x", x, "start, 0 < x < y")->required();
    sup->add_option("--y", y, "level")->required();
    sup->add_flag("--fd-check", fd_check, "also report the finite-difference oracle");
    add_common(sup, c, false);

    std::string theorem;
    std::string grid = "default";
    auto* audit_cmd = app.add_subcommand("bounds-audit", "ratio audit of an elementary estimate");
    audit_cmd->add_option("--theorem", theorem, "7|8|9|10|11|cor1|ss")->required();
    audit_cmd->add_option("--grid", grid,
                          "'default' or axis overrides, e.g. 't=log:1e-3:0.25:10;x=lin:0.1:0.9:9;mu=0.1,1'");
    add_common(audit_cmd, c, false);

    int lemma = 1;
    int sweep = 100;
    std::uint64_t seed = kDefaultSweepSeed;
    double la = 0.0, lb = 0.0, lc = 0.0;
    auto* lemma_cmd = app.add_subcommand("lemma-check", "quadrature check of an integral lemma");
    lemma_cmd->add_option("--lemma", lemma, "1|2|3|4")->check(CLI::Range(1, 4));
    lemma_cmd->add_option("--sweep", sweep, "randomized cases; 0 evaluates --a --b --c");
    lemma_cmd->add_option("--seed", seed, "sweep seed");
    lemma_cmd->add_option("--a", la, "a");
    lemma_cmd->add_option("--b", lb, "b");
    lemma_cmd->add_option("--c", lc, "c");
    lemma_cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));

    SimulationSpec sim;
    std::string estimators = "survival=0.5;mean";
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo of |W_t + mu t e3|");
    sim_cmd->add_option("--x0", sim.x0, "start radius in [0, r0)");
    sim_cmd->add_option("--paths", sim.n_paths, "number of paths");
    sim_cmd->add_option("--dt", sim.dt, "time step");
    sim_cmd->add_option("--horizon", sim.horizon, "simulated time span");
    sim_cmd->add_option("--seed", sim.seed, "base seed");
    sim_cmd->add_option("--threads", sim.threads, "worker threads, 0 = BESSELMU_THREADS or all");
    sim_cmd->add_option("--estimators", estimators,
                        "'survival=T1,T2;exit-hist=BINS;sup-hist=BINS[,YMAX];marginal=T,BINS[,YMAX[,free]]'");
    add_common(sim_cmd, c, true, false);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return kExitDomain;
    }

    try {
        const ProcessParams params{c.mu, c.r0};
        if (density->parsed()) {
            const auto cfg = c.config();
            const auto d = kind == "free" ? free_density(params, t, x, y) : killed_density(params, t, x, y, cfg);
            Json in = {{"kind", kind}, {"mu", c.mu}, {"r0", c.r0}, {"t", t}, {"x", x}, {"y", y}};
            emit_record(out, c, "density", in, density_json(d));
        } else if (surv->parsed()) {
            const auto s = survival(params, t, x, c.config());
            Json o = {{"survival", s.value},        {"raw", s.raw},
                      {"exit_probability", s.exit_probability}, {"err_bound", s.err_bound},
                      {"rep_used", std::string(to_string(s.rep_used))}, {"terms_used", s.terms_used}};
            emit_record(out, c, "survival", {{"mu", c.mu}, {"r0", c.r0}, {"t", t}, {"x", x}}, o);
        } else if (exitd->parsed()) {
            const auto d = exit_density(params, t, x, c.config());
            emit_record(out, c, "exit-density", {{"mu", c.mu}, {"r0", c.r0}, {"t", t}, {"x", x}},
                        density_json(d));
        } else if (mean->parsed()) {
            const double v = mean_exit_time(params, x);
            emit_record(out, c, "mean-exit", {{"mu", c.mu}, {"r0", c.r0}, {"x", x}},
                        {{"value", v}, {"err_bound", 0.0}}, false);
        } else if (sup->parsed()) {
            const auto p = sup_density(params, t, x, y, c.config(), fd_check);
            Json o = {{"value", p.density},
                      {"raw", p.raw},
                      {"err_bound", p.err_bound},
                      {"rep_used", std::string(to_string(p.rep_used))},
                      {"terms_used", p.terms_used},
                      {"estimate", sup_density_estimate(params, t, x, y)}};
            if (fd_check) o["fd_value"] = p.fd_density;
            emit_record(out, c, "sup-density", {{"mu", c.mu}, {"t", t}, {"x", x}, {"y", y}}, o);
        } else if (audit_cmd->parsed()) {
            const auto id = parse_envelope(theorem);
            auto g = default_grid(id);
            apply_grid(g, grid);
            const auto report = audit(id, g, c.config());
            if (c.format == "csv")
                write_audit_csv(out, report);
            else
                out << audit_json(report, grid, c).dump(2) << '\n';
            return audit_exit_code(report);
        } else if (lemma_cmd->parsed()) {
            if (sweep > 0) {
                const auto s = lemma_sweep(lemma, sweep, seed);
                if (c.format == "csv") {
                    write_lemma_csv(out, s);
                } else {
                    Json cases = Json::array();
                    for (const auto& lcase : s.cases) cases.push_back(lemma_case_json(lcase));
                    Json j;
                    j["command"] = "lemma-check";
                    j["inputs"] = {{"lemma", lemma}, {"sweep", sweep}, {"seed", seed}};
                    j["summary"] = {{"min_ratio", s.min_ratio}, {"max_ratio", s.max_ratio}};
                    if (lemma == 1)
                        j["summary"]["within_constants"] = s.within_constants();
                    j["cases"] = cases;
                    out << j.dump(2) << '\n';
                }
                return (lemma == 1 && !s.within_constants()) ? kExitAudit : kExitOk;
            }
            const auto lcase = lemma_check(lemma, la, lb, lc);
            emit_record(out, c, "lemma-check", {{"lemma", lemma}, {"a", la}, {"b", lb}, {"c", lc}},
                        {{"integral", lcase.integral},
                         {"integral_error", lcase.integral_error},
                         {"envelope", lcase.envelope},
                         {"ratio", lcase.ratio}},
                        false);
            if (lemma == 1 && !(lcase.ratio >= kLemma1Lo && lcase.ratio <= kLemma1Hi)) return kExitAudit;
        } else if (sim_cmd->parsed()) {
            sim.params = params;
            apply_estimators(sim, estimators);
            const auto s = run(sim);
            if (c.format == "csv")
                write_summary_csv(out, s);
            else
                out << summary_json(s) << '\n';
        }
    } catch (const DomainError& e) {
        write_error(err, "domain", e.what());
        return kExitDomain;
    } catch (const ConfigError& e) {
        write_error(err, "config", e.what());
        return kExitDomain;
    } catch (const GridError& e) {
        write_error(err, "grid", e.what());
        return kExitDomain;
    } catch (const TruncationError& e) {
        write_error(err, "truncation", e.what());
        return kExitNumerical;
    } catch (const QuadratureError& e) {
        write_error(err, "quadrature", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace besselmu
