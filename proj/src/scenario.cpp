#include "gamow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gamow/coherent.hpp"
#include "gamow/decoherence.hpp"
#include "gamow/dynamics.hpp"
#include "gamow/resolvent.hpp"

namespace gamow {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- parsing

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

bool parse_complex(const json& j, Complex& out) {
    if (j.is_number()) {
        out = Complex(j.get<double>(), 0.0);
        return true;
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        out = Complex(j[0].get<double>(), j[1].get<double>());
        return true;
    }
    return false;
}

struct Collector {
    std::vector<std::string>& errors;
    void add(const std::string& msg) { errors.push_back(msg); }
};

std::optional<FormFactor> parse_form_factor(const json& j, Collector& errs) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        errs.add("model.form_factor: object with a string 'kind' required");
        return std::nullopt;
    }
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "rational_squared") {
            const double amplitude = j.value("amplitude", 1.0);
            const double scale = j.value("scale", 1.0);
            const int power = j.value("power", 2);
            return FormFactor::rational_squared(amplitude, scale, power);
        }
        if (kind == "gaussian_cutoff") {
            const double amplitude = j.value("amplitude", 1.0);
            const double scale = j.value("scale", 1.0);
            return FormFactor::gaussian_cutoff(amplitude, scale);
        }
        if (kind == "tabulated") {
            if (!j.contains("omega") || !j.contains("f")) {
                errs.add("model.form_factor: tabulated kind needs 'omega' and 'f' arrays");
                return std::nullopt;
            }
            return FormFactor::tabulated(j["omega"].get<std::vector<double>>(),
                                         j["f"].get<std::vector<double>>());
        }
        errs.add("model.form_factor.kind: unknown kind '" + kind + "'");
    } catch (const std::exception& e) {
        errs.add(std::string("model.form_factor: ") + e.what());
    }
    return std::nullopt;
}

const std::map<std::string, Task>& task_names() {
    static const std::map<std::string, Task> names{
        {"find_pole", Task::FindPole},   {"echo", Task::Echo},
        {"overlaps", Task::Overlaps},    {"decoherence", Task::Decoherence},
        {"compare", Task::Compare}};
    return names;
}

bool has_task(const ScenarioConfig& c, Task t) {
    return std::find(c.tasks.begin(), c.tasks.end(), t) != c.tasks.end();
}

std::optional<int> state_n_max(const InitialStateSpec& spec) {
    if (const auto* g = std::get_if<GamowStateSpec>(&spec))
        return static_cast<int>(g->coefficients.size()) - 1;
    if (const auto* q = std::get_if<QuasiCoherentSpec>(&spec)) return q->n_max;
    if (const auto* s = std::get_if<SuperpositionSpec>(&spec)) return s->n_max;
    return std::nullopt;
}

}  // namespace

ValidationResult validate_config(const std::string& json_text) {
    ValidationResult result;
    Collector errs{result.errors};

    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        errs.add(std::string("config is not valid JSON: ") + e.what());
        return result;
    }
    if (!doc.is_object()) {
        errs.add("config root must be a JSON object");
        return result;
    }

    static const std::set<std::string> known_keys{
        "model", "spectrum", "initial_state", "time_grid", "hbar", "tasks", "find_pole"};
    for (const auto& [key, _] : doc.items())
        if (!known_keys.count(key)) errs.add("unknown top-level key '" + key + "'");

    ScenarioConfig cfg;

    // --- model
    if (doc.contains("model")) {
        const json& m = doc["model"];
        if (!m.is_object()) {
            errs.add("model: object required");
        } else {
            const double omega0 = m.value("omega0", 0.0);
            const double lambda = m.value("lambda", std::numeric_limits<double>::quiet_NaN());
            if (!m.contains("omega0") || !(omega0 > 0.0))
                errs.add("model.omega0: required and must be > 0");
            if (!m.contains("lambda") || !std::isfinite(lambda))
                errs.add("model.lambda: required and must be finite");
            std::optional<FormFactor> ff;
            if (!m.contains("form_factor"))
                errs.add("model.form_factor: required");
            else
                ff = parse_form_factor(m["form_factor"], errs);
            if (ff && m.contains("omega0") && omega0 > 0.0 && std::isfinite(lambda)) {
                try {
                    cfg.model.emplace(omega0, lambda, *ff);
                } catch (const std::exception& e) {
                    errs.add(std::string("model: ") + e.what());
                }
            }
        }
    }

    // --- spectrum directives
    if (doc.contains("spectrum")) {
        const json& s = doc["spectrum"];
        if (!s.is_object()) {
            errs.add("spectrum: object required");
        } else {
            if (s.contains("ladder") && s.contains("poles"))
                errs.add("spectrum: 'ladder' and 'poles' are mutually exclusive");
            if (s.contains("ladder")) {
                const json& l = s["ladder"];
                const double e_r = l.value("e_r", 0.0);
                const double gamma = l.value("gamma", -1.0);
                if (!l.contains("gamma") || gamma < 0.0 || !std::isfinite(gamma))
                    errs.add("spectrum.ladder.gamma: required and must be >= 0");
                if (!std::isfinite(e_r)) errs.add("spectrum.ladder.e_r: must be finite");
                std::optional<int> n_max;
                if (l.contains("n_max")) {
                    n_max = l["n_max"].get<int>();
                    if (*n_max < 1) errs.add("spectrum.ladder.n_max: must be >= 1");
                }
                if (std::isfinite(e_r) && gamma >= 0.0)
                    cfg.ladder = LadderDirective{ResonancePole(e_r, gamma), n_max};
            }
            if (s.contains("poles")) {
                const json& p = s["poles"];
                if (!p.is_array() || p.empty()) {
                    errs.add("spectrum.poles: nonempty array required");
                } else {
                    std::vector<ResonancePole> poles;
                    bool ok = true;
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        const double e_r = p[i].value("e_r", 0.0);
                        const double gamma = p[i].value("gamma", 0.0);
                        if (gamma < 0.0) {
                            errs.add("spectrum.poles[" + std::to_string(i) +
                                     "]: negative gamma");
                            ok = false;
                            continue;
                        }
                        if (!std::isfinite(e_r) || !std::isfinite(gamma)) {
                            errs.add("spectrum.poles[" + std::to_string(i) +
                                     "]: non-finite entry");
                            ok = false;
                            continue;
                        }
                        poles.emplace_back(e_r, gamma);
                    }
                    if (ok) cfg.explicit_poles = std::move(poles);
                }
            }
        }
    }

    // exactly one spectrum source
    {
        std::vector<std::string> sources;
        if (cfg.model) sources.push_back("model (solved pole)");
        if (cfg.ladder) sources.push_back("spectrum.ladder");
        if (cfg.explicit_poles) sources.push_back("spectrum.poles");
        if (sources.empty() && result.errors.empty()) {
            errs.add("exactly one spectrum source required (model, spectrum.ladder, "
                     "or spectrum.poles); found none");
        } else if (sources.size() > 1) {
            std::string msg = "exactly one spectrum source required; found: ";
            for (std::size_t i = 0; i < sources.size(); ++i)
                msg += (i ? ", " : "") + sources[i];
            errs.add(msg);
        }
    }

    // --- initial state
    if (doc.contains("initial_state")) {
        const json& st = doc["initial_state"];
        const int kinds = int(st.contains("gamow")) + int(st.contains("quasi_coherent")) +
                          int(st.contains("superposition"));
        if (!st.is_object() || kinds != 1) {
            errs.add("initial_state: exactly one of gamow / quasi_coherent / "
                     "superposition required");
        } else if (st.contains("gamow")) {
            const json& g = st["gamow"];
            if (!g.contains("coefficients") || !g["coefficients"].is_array() ||
                g["coefficients"].empty()) {
                errs.add("initial_state.gamow.coefficients: nonempty array required");
            } else {
                GamowStateSpec spec;
                bool ok = true;
                for (std::size_t i = 0; i < g["coefficients"].size(); ++i) {
                    Complex c;
                    if (!parse_complex(g["coefficients"][i], c)) {
                        errs.add("initial_state.gamow.coefficients[" + std::to_string(i) +
                                 "]: number or [re, im] required");
                        ok = false;
                        continue;
                    }
                    spec.coefficients.push_back(c);
                }
                if (ok) cfg.initial_state = spec;
            }
        } else if (st.contains("quasi_coherent")) {
            const json& q = st["quasi_coherent"];
            QuasiCoherentSpec spec;
            bool ok = true;
            if (!q.contains("alpha") || !parse_complex(q["alpha"], spec.alpha)) {
                errs.add("initial_state.quasi_coherent.alpha: number or [re, im] required");
                ok = false;
            }
            spec.n_max = q.value("n_max", -1);
            if (spec.n_max < 1) {
                errs.add("initial_state.quasi_coherent.n_max: required and must be >= 1");
                ok = false;
            }
            if (ok) cfg.initial_state = spec;
        } else {
            const json& sp = st["superposition"];
            SuperpositionSpec spec;
            bool ok = true;
            for (const char* key : {"a", "b", "alpha1", "alpha2"}) {
                Complex c;
                if (!sp.contains(key) || !parse_complex(sp[key], c)) {
                    errs.add(std::string("initial_state.superposition.") + key +
                             ": number or [re, im] required");
                    ok = false;
                    continue;
                }
                if (std::string(key) == "a") spec.a = c;
                else if (std::string(key) == "b") spec.b = c;
                else if (std::string(key) == "alpha1") spec.alpha1 = c;
                else spec.alpha2 = c;
            }
            spec.n_max = sp.value("n_max", -1);
            if (spec.n_max < 1) {
                errs.add("initial_state.superposition.n_max: required and must be >= 1");
                ok = false;
            }
            spec.normalize = sp.value("normalize", true);
            if (ok) cfg.initial_state = spec;
        }
    }

    // --- time grid
    if (doc.contains("time_grid")) {
        const json& tg = doc["time_grid"];
        TimeGridSpec grid;
        grid.t_start = tg.value("t_start", 0.0);
        grid.t_end = tg.value("t_end", 0.0);
        grid.samples = tg.value("samples", 0);
        if (grid.samples < 2) errs.add("time_grid.samples: must be >= 2");
        if (!(grid.t_start >= 0.0)) errs.add("time_grid.t_start: must be >= 0");
        if (!(grid.t_end > grid.t_start)) errs.add("time_grid.t_end: must exceed t_start");
        cfg.time_grid = grid;
    }

    // --- hbar
    cfg.hbar = doc.value("hbar", 1.0);
    if (!(cfg.hbar > 0.0)) errs.add("hbar: must be > 0");

    // --- tasks
    if (doc.contains("tasks")) {
        if (!doc["tasks"].is_array()) {
            errs.add("tasks: array of task names required");
        } else {
            for (const json& t : doc["tasks"]) {
                if (!t.is_string()) {
                    errs.add("tasks: entries must be strings");
                    continue;
                }
                auto it = task_names().find(t.get<std::string>());
                if (it == task_names().end())
                    errs.add("tasks: unknown task '" + t.get<std::string>() + "'");
                else if (!has_task(cfg, it->second))
                    cfg.tasks.push_back(it->second);
            }
        }
    }

    // --- pole solve options
    if (doc.contains("find_pole")) {
        const json& fp = doc["find_pole"];
        if (fp.contains("lambda_sweep")) {
            if (!fp["lambda_sweep"].is_array()) {
                errs.add("find_pole.lambda_sweep: array of couplings required");
            } else {
                for (const json& v : fp["lambda_sweep"]) {
                    const double l = v.get<double>();
                    if (!std::isfinite(l)) {
                        errs.add("find_pole.lambda_sweep: non-finite coupling");
                        continue;
                    }
                    cfg.pole_options.lambda_sweep.push_back(l);
                }
            }
        }
        cfg.pole_options.tolerance = fp.value("tolerance", 1e-12);
        cfg.pole_options.max_iterations = fp.value("max_iterations", 60);
        if (!(cfg.pole_options.tolerance > 0.0))
            errs.add("find_pole.tolerance: must be > 0");
        if (cfg.pole_options.max_iterations < 1)
            errs.add("find_pole.max_iterations: must be >= 1");
    }

    // --- cross-field requirements
    const bool needs_grid = has_task(cfg, Task::Echo) || has_task(cfg, Task::Overlaps) ||
                            has_task(cfg, Task::Decoherence) || has_task(cfg, Task::Compare);
    if (needs_grid && !cfg.time_grid)
        errs.add("time_grid: required by the requested tasks");

    if (has_task(cfg, Task::FindPole) && !cfg.model)
        errs.add("find_pole task requires a model");
    if (!cfg.pole_options.lambda_sweep.empty() && !cfg.model)
        errs.add("find_pole.lambda_sweep requires a model");

    if (has_task(cfg, Task::Echo) && !cfg.initial_state)
        errs.add("echo task requires an initial_state");
    for (Task t : {Task::Overlaps, Task::Decoherence, Task::Compare}) {
        if (!has_task(cfg, t)) continue;
        const char* name = (t == Task::Overlaps)      ? "overlaps"
                           : (t == Task::Decoherence) ? "decoherence"
                                                      : "compare";
        if (!cfg.initial_state ||
            !std::holds_alternative<SuperpositionSpec>(*cfg.initial_state)) {
            errs.add(std::string(name) + " task requires a superposition initial_state");
        } else {
            const auto& sp = std::get<SuperpositionSpec>(*cfg.initial_state);
            if (sp.alpha1.imag() != 0.0 || sp.alpha2.imag() != 0.0)
                errs.add(std::string(name) + " task requires real alpha labels");
        }
    }

    // mode-count consistency between the state and a fully specified spectrum
    if (cfg.initial_state) {
        const std::optional<int> n = state_n_max(*cfg.initial_state);
        if (n && cfg.ladder && cfg.ladder->n_max && *cfg.ladder->n_max != *n)
            errs.add("spectrum.ladder.n_max (" + std::to_string(*cfg.ladder->n_max) +
                     ") does not match the initial state (n_max " + std::to_string(*n) + ")");
        if (n && cfg.explicit_poles &&
            static_cast<int>(cfg.explicit_poles->size()) != *n + 1)
            errs.add("spectrum.poles has " + std::to_string(cfg.explicit_poles->size()) +
                     " entries but the initial state has " + std::to_string(*n + 1) +
                     " modes");
        if (n && *n < 1 && !cfg.explicit_poles)
            errs.add("initial_state must span at least two modes when the spectrum "
                     "is a ladder or solved from the model");
    }

    if (result.errors.empty()) result.config = std::move(cfg);
    return result;
}

ValidationResult validate_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        ValidationResult r;
        r.errors.push_back("cannot open config file: " + path.string());
        return r;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return validate_config(ss.str());
}

// ------------------------------------------------------------- execution

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

json pole_to_json(const ResonancePole& p) {
    return json{{"e_r", p.e_r()}, {"gamma", p.gamma()}};
}

struct SchemaBuilder {
    json files = json::object();

    void csv(const std::string& name, const std::string& description,
             const std::vector<std::pair<std::string, std::string>>& columns) {
        json cols = json::array();
        for (const auto& [cname, cdesc] : columns)
            cols.push_back(json{{"name", cname}, {"description", cdesc}});
        files[name] = json{{"format", "csv"}, {"description", description},
                           {"columns", cols}};
    }
    void file(const std::string& name, const std::string& description, json fields) {
        files[name] = json{{"format", "json"}, {"description", description},
                           {"fields", std::move(fields)}};
    }
};

struct TaskContext {
    const ScenarioConfig& cfg;
    std::filesystem::path out_dir;
    RunResult& result;
    SchemaBuilder& schema;

    std::optional<GamowSpectrum> spectrum;
    std::optional<PoleSearchReport> solved;
    std::vector<double> grid;

    void emit(const std::string& name, const std::string& content) {
        atomic_write(out_dir / name, content);
        result.files_written.push_back(name);
    }
};

int required_n_max(const ScenarioConfig& cfg) {
    if (cfg.initial_state) {
        const std::optional<int> n = state_n_max(*cfg.initial_state);
        if (n) return std::max(*n, 1);
    }
    return 1;
}

const GamowSpectrum& resolve_spectrum(TaskContext& ctx) {
    if (ctx.spectrum) return *ctx.spectrum;
    const ScenarioConfig& cfg = ctx.cfg;
    if (cfg.explicit_poles) {
        ctx.spectrum = GamowSpectrum::from_poles(*cfg.explicit_poles,
                                                 Provenance::UserSupplied);
    } else if (cfg.ladder) {
        const int n_max = cfg.ladder->n_max ? *cfg.ladder->n_max : required_n_max(cfg);
        ctx.spectrum = GamowSpectrum::ladder(cfg.ladder->base, n_max);
    } else {
        // solved from the model: base pole from the Newton search, ladder above it
        PoleSearchReport rep = find_pole(*cfg.model, cfg.pole_options.tolerance,
                                         cfg.pole_options.max_iterations);
        ctx.solved = rep;
        ctx.spectrum = GamowSpectrum::ladder(rep.pole, required_n_max(cfg),
                                             Provenance::Solved);
    }
    return *ctx.spectrum;
}

GamowState resolve_echo_state(const ScenarioConfig& cfg, RunResult& result) {
    const InitialStateSpec& spec = *cfg.initial_state;
    if (const auto* g = std::get_if<GamowStateSpec>(&spec)) {
        GamowState st{g->coefficients};
        if (!st.is_normalized(1e-12))
            result.warnings.push_back(
                "echo: initial gamow coefficients are not l2-normalized (sum |a_n|^2 = " +
                fmt17(st.norm_squared()) + ")");
        return st;
    }
    if (const auto* q = std::get_if<QuasiCoherentSpec>(&spec))
        return make_quasi_coherent(q->alpha, q->n_max).state;
    const auto& s = std::get<SuperpositionSpec>(spec);
    const QuasiCoherentState s1 = make_quasi_coherent(s.alpha1, s.n_max);
    const QuasiCoherentState s2 = make_quasi_coherent(s.alpha2, s.n_max);
    const Superposition sup = s.normalize ? normalized_superposition(s.a, s.b, s1, s2)
                                          : make_superposition(s.a, s.b, s1, s2);
    if (!sup.normalized)
        result.warnings.push_back("echo: superposition is not normalized");
    return expand(sup);
}

Superposition resolve_superposition(const ScenarioConfig& cfg) {
    const auto& s = std::get<SuperpositionSpec>(*cfg.initial_state);
    const QuasiCoherentState s1 = make_quasi_coherent(s.alpha1, s.n_max);
    const QuasiCoherentState s2 = make_quasi_coherent(s.alpha2, s.n_max);
    return s.normalize ? normalized_superposition(s.a, s.b, s1, s2)
                       : make_superposition(s.a, s.b, s1, s2);
}

void run_find_pole(TaskContext& ctx) {
    const ScenarioConfig& cfg = ctx.cfg;
    std::vector<double> lambdas = cfg.pole_options.lambda_sweep;
    if (lambdas.empty()) lambdas.push_back(cfg.model->lambda);

    json results = json::array();
    for (double lambda : lambdas) {
        FriedrichsModelSpec model(cfg.model->omega0, lambda, cfg.model->form_factor);
        PoleSearchReport rep = find_pole(model, cfg.pole_options.tolerance,
                                         cfg.pole_options.max_iterations);
        json entry{{"lambda", lambda},
                   {"e_r", rep.pole.e_r()},
                   {"gamma", rep.pole.gamma()},
                   {"newton_iterations", rep.newton_iterations},
                   {"final_residual", rep.final_residual}};
        entry["argument_principle_count"] =
            rep.argument_principle_count ? json(*rep.argument_principle_count) : json();
        results.push_back(std::move(entry));
    }
    json doc{{"omega0", cfg.model->omega0}, {"results", results}};
    ctx.emit("poles.json", doc.dump(2) + "\n");
    ctx.schema.file("poles.json", "solved resonance poles per coupling",
                    json{{"omega0", "bound-state energy of the model"},
                         {"results", "per-lambda pole: e_r, gamma, newton_iterations, "
                                     "final_residual, argument_principle_count "
                                     "(null when not certified)"}});
}

void run_echo(TaskContext& ctx) {
    const GamowSpectrum& spectrum = resolve_spectrum(ctx);
    const GamowState state = resolve_echo_state(ctx.cfg, ctx.result);
    if (state.mode_count() != spectrum.mode_count())
        throw std::runtime_error("echo: state/spectrum mode count mismatch");

    std::ostringstream out;
    out << "tau,amplitude,probability";
    for (std::size_t n = 0; n < spectrum.mode_count(); ++n) out << ",mode_" << n;
    out << "\n";
    for (double tau : ctx.grid) {
        const EchoResult r = echo(state, spectrum, tau, ctx.cfg.hbar);
        out << fmt17(tau) << ',' << fmt17(r.amplitude.real()) << ','
            << fmt17(r.probability);
        for (double w : r.per_mode_contributions) out << ',' << fmt17(w);
        out << "\n";
    }
    ctx.emit("echo.csv", out.str());

    std::vector<std::pair<std::string, std::string>> cols{
        {"tau", "elapsed forward (and backward) evolution time"},
        {"amplitude", "echo matrix element sum_n e^{-tau gamma_n/hbar} |a_n|^2"},
        {"probability", "squared magnitude of the amplitude"},
        {"mode_n", "per-mode contribution e^{-tau gamma_n/hbar} |a_n|^2 "
                   "(one column per mode)"}};
    ctx.schema.csv("echo.csv", "Loschmidt echo of the initial state", cols);
}

void run_overlaps(TaskContext& ctx) {
    const GamowSpectrum& spectrum = resolve_spectrum(ctx);
    const Superposition sup = resolve_superposition(ctx.cfg);
    const double hbar = ctx.cfg.hbar;

    const TimeSeries o11 = time_overlap_curve(sup.s1, sup.s1, spectrum, ctx.grid, hbar);
    const TimeSeries o12 = time_overlap_curve(sup.s1, sup.s2, spectrum, ctx.grid, hbar);
    const TimeSeries o21 = time_overlap_curve(sup.s2, sup.s1, spectrum, ctx.grid, hbar);
    const TimeSeries o22 = time_overlap_curve(sup.s2, sup.s2, spectrum, ctx.grid, hbar);

    std::ostringstream out;
    out << "t,o11_re,o11_im,o12_re,o12_im,o21_re,o21_im,o22_re,o22_im\n";
    for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
        out << fmt17(ctx.grid[i]);
        for (const TimeSeries* ts : {&o11, &o12, &o21, &o22})
            out << ',' << fmt17(ts->values[i].real()) << ','
                << fmt17(ts->values[i].imag());
        out << "\n";
    }
    ctx.emit("overlaps.csv", out.str());
    ctx.schema.csv(
        "overlaps.csv", "time overlaps <alpha_i(0)|alpha_j(t)> of the two components",
        {{"t", "evolution time"},
         {"o11_re/o11_im", "overlap of alpha1(0) with the evolved alpha1(t)"},
         {"o12_re/o12_im", "overlap of alpha1(0) with the evolved alpha2(t)"},
         {"o21_re/o21_im", "overlap of alpha2(0) with the evolved alpha1(t)"},
         {"o22_re/o22_im", "overlap of alpha2(0) with the evolved alpha2(t)"}});
}

void run_decoherence(TaskContext& ctx) {
    const GamowSpectrum& spectrum = resolve_spectrum(ctx);
    const Superposition sup = resolve_superposition(ctx.cfg);
    const double hbar = ctx.cfg.hbar;

    const OffDiagonalTrace exact = off_diagonal(sup, spectrum, ctx.grid, hbar);
    if (!exact.macroscopic)
        ctx.result.warnings.push_back(
            "decoherence: labels are not quasi-orthogonal (separation too small); "
            "the preferred-basis projection is unreliable");

    const bool approximants = sup.s1.alpha == Complex(0.0, 0.0) &&
                              spectrum.mode_count() >= 2;
    std::optional<OffDiagonalTrace> sum, single;
    if (approximants) {
        sum = off_diagonal_poisson_sum(sup, spectrum, ctx.grid, hbar);
        single = off_diagonal_single_pole(sup, spectrum, ctx.grid, hbar);
    }

    std::ostringstream out;
    out << "t,abs_rho12,arg_rho12,abs_rho21";
    if (approximants) out << ",abs_rho12_sum,abs_rho12_single_pole";
    out << "\n";
    for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
        const Complex r12 = exact.rho12.values[i];
        out << fmt17(ctx.grid[i]) << ',' << fmt17(std::abs(r12)) << ','
            << fmt17(std::arg(r12)) << ',' << fmt17(std::abs(exact.rho21.values[i]));
        if (approximants)
            out << ',' << fmt17(std::abs(sum->rho12.values[i])) << ','
                << fmt17(std::abs(single->rho12.values[i]));
        out << "\n";
    }
    ctx.emit("decoherence.csv", out.str());

    std::vector<std::pair<std::string, std::string>> cols{
        {"t", "evolution time"},
        {"abs_rho12", "magnitude of the off-diagonal entry rho12(t), exact evaluation"},
        {"arg_rho12", "phase of rho12(t)"},
        {"abs_rho21", "magnitude of rho21(t) (conjugate of rho12 for real labels)"}};
    if (approximants) {
        cols.push_back({"abs_rho12_sum",
                        "Poisson-sum approximation of |rho12| (keeps the constant mode)"});
        cols.push_back({"abs_rho12_single_pole",
                        "single-pole truncation of |rho12| (decays to zero)"});
    }
    ctx.schema.csv("decoherence.csv",
                   "off-diagonal density-matrix decay in the frozen preferred basis", cols);
}

void run_compare(TaskContext& ctx) {
    const GamowSpectrum& spectrum = resolve_spectrum(ctx);
    const Superposition sup = resolve_superposition(ctx.cfg);
    const CompareReport rep = compare_times(sup, spectrum, ctx.grid, ctx.cfg.hbar);

    json poles = json::array();
    for (const ResonancePole& p : spectrum.poles()) poles.push_back(pole_to_json(p));
    json doc{{"poles", poles},
             {"gamma_over_hbar", rep.gamma_over_hbar},
             {"echo_initial_rate", rep.echo_initial_rate},
             {"decoherence_time", std::isfinite(rep.decoherence_time)
                                      ? json(rep.decoherence_time)
                                      : json()}};
    ctx.emit("compare.json", doc.dump(2) + "\n");
    ctx.schema.file(
        "compare.json",
        "echo vs decoherence characteristic quantities from one shared spectrum",
        json{{"poles", "the shared pole list"},
             {"gamma_over_hbar", "per-mode echo decay rates gamma_n/hbar"},
             {"echo_initial_rate", "initial slope -d/dtau ln(echo amplitude) at tau = 0"},
             {"decoherence_time",
              "1/e crossing time of |rho12 - asymptote| (null when never reached)"}});
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
    RunResult result;
    if (config.tasks.empty()) return result;  // nothing requested, nothing written

    std::filesystem::create_directories(out_dir);
    SchemaBuilder schema;
    TaskContext ctx{config, out_dir, result, schema, {}, {}, {}};
    if (config.time_grid)
        ctx.grid = uniform_grid(config.time_grid->t_start, config.time_grid->t_end,
                                static_cast<std::size_t>(config.time_grid->samples));

    // canonical order; later tasks may reuse the spectrum resolved earlier
    const std::pair<Task, void (*)(TaskContext&)> steps[] = {
        {Task::FindPole, run_find_pole},
        {Task::Echo, run_echo},
        {Task::Overlaps, run_overlaps},
        {Task::Decoherence, run_decoherence},
        {Task::Compare, run_compare}};

    for (const auto& [task, fn] : steps) {
        if (!has_task(config, task)) continue;
        try {
            fn(ctx);
        } catch (const std::exception& e) {
            static const std::map<Task, std::string> names{
                {Task::FindPole, "find_pole"}, {Task::Echo, "echo"},
                {Task::Overlaps, "overlaps"},  {Task::Decoherence, "decoherence"},
                {Task::Compare, "compare"}};
            result.errors.push_back(names.at(task) + ": " + e.what());
        }
    }

    if (!result.files_written.empty()) {
        json doc{{"files", schema.files}};
        atomic_write(out_dir / "schema.json", doc.dump(2) + "\n");
        result.files_written.push_back("schema.json");
    }
    if (!result.errors.empty()) {
        json doc{{"errors", result.errors}};
        atomic_write(out_dir / "error.json", doc.dump(2) + "\n");
        result.files_written.push_back("error.json");
        result.exit_code = 2;
    }
    return result;
}

std::vector<std::string> seed_example_configs(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    const json lambda_sweep{
        {"model",
         {{"omega0", 1.0},
          {"lambda", 0.05},
          {"form_factor",
           {{"kind", "rational_squared"}, {"amplitude", 1.0}, {"scale", 1.0}, {"power", 2}}}}},
        {"tasks", {"find_pole"}},
        {"find_pole",
         {{"lambda_sweep", {0.05, 0.025, 0.0125, 0.01}},
          {"tolerance", 1e-12},
          {"max_iterations", 60}}},
        {"hbar", 1.0}};

    const json poisson_echo{
        {"spectrum", {{"ladder", {{"e_r", 1.0}, {"gamma", 0.2}, {"n_max", 120}}}}},
        {"initial_state", {{"quasi_coherent", {{"alpha", 2.0}, {"n_max", 120}}}}},
        {"time_grid", {{"t_start", 0.0}, {"t_end", 20.0}, {"samples", 401}}},
        {"hbar", 1.0},
        {"tasks", {"echo"}}};

    const json decoherence_compare{
        {"spectrum", {{"ladder", {{"e_r", 1.0}, {"gamma", 0.2}, {"n_max", 76}}}}},
        {"initial_state",
         {{"superposition",
           {{"a", 0.7071067811865476},
            {"b", 0.7071067811865476},
            {"alpha1", 0.0},
            {"alpha2", 4.0},
            {"n_max", 76},
            {"normalize", true}}}}},
        {"time_grid", {{"t_start", 0.0}, {"t_end", 1000.0}, {"samples", 4001}}},
        {"hbar", 1.0},
        {"tasks", {"echo", "overlaps", "decoherence", "compare"}}};

    const std::vector<std::pair<std::string, const json*>> files{
        {"lambda_sweep.json", &lambda_sweep},
        {"poisson_echo.json", &poisson_echo},
        {"decoherence_compare.json", &decoherence_compare}};

    std::vector<std::string> written;
    for (const auto& [name, doc] : files) {
        atomic_write(dir / name, doc->dump(2) + "\n");
        written.push_back(name);
    }
    return written;
}

}  // namespace gamow
