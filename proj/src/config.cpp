#include "tqsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tqsim {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line{0};
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Entry> tokenize(const std::string& text, const std::string& origin) {
    std::vector<Entry> entries;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value (column " +
                              std::to_string(line.find_first_not_of(" \t") + 1) + ")");
        entries.push_back({section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), lineno});
    }
    return entries;
}

class Extractor {
public:
    Extractor(std::vector<Entry> entries, std::string origin)
        : entries_(std::move(entries)), origin_(std::move(origin)) {}

    const Entry* find(const std::string& section, const std::string& key) {
        for (const Entry& e : entries_)
            if (e.section == section && e.key == key) {
                used_.insert(&e - entries_.data());
                return &e;
            }
        return nullptr;
    }

    bool get(const std::string& sec, const std::string& key, double& out) {
        const Entry* e = find(sec, key);
        if (!e) return false;
        try {
            std::size_t pos = 0;
            out = std::stod(e->value, &pos);
            if (pos != e->value.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": key '" + sec + "." +
                              key + "' is not a number: '" + e->value + "'");
        }
        return true;
    }

    bool get(const std::string& sec, const std::string& key, int& out) {
        double v;
        if (!get(sec, key, v)) return false;
        out = static_cast<int>(v);
        return true;
    }

    bool get(const std::string& sec, const std::string& key, std::uint64_t& out) {
        double v;
        if (!get(sec, key, v)) return false;
        out = static_cast<std::uint64_t>(v);
        return true;
    }

    bool get(const std::string& sec, const std::string& key, std::string& out) {
        const Entry* e = find(sec, key);
        if (!e) return false;
        out = e->value;
        return true;
    }

    bool get_list(const std::string& sec, const std::string& key, std::vector<double>& out) {
        const Entry* e = find(sec, key);
        if (!e) return false;
        out.clear();
        std::istringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stod(trim(item)));
            } catch (const std::exception&) {
                throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": key '" + sec +
                                  "." + key + "' has a non-numeric list item: '" + item + "'");
            }
        }
        return true;
    }

    void require(const std::string& sec, const std::string& key, double& out) {
        if (!get(sec, key, out))
            throw ConfigError("config: [" + sec + "] missing required key '" + key + "'");
    }

    void reject_unknown() const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!used_.count(i))
                throw ConfigError(origin_ + ":" + std::to_string(entries_[i].line) +
                                  ": unknown key '" + entries_[i].key + "' in section [" +
                                  entries_[i].section + "]");
    }

private:
    std::vector<Entry> entries_;
    std::string origin_;
    std::set<std::size_t> used_;
};

std::vector<ModelVariant> parse_models(const std::string& csv) {
    std::vector<ModelVariant> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(variant_from_name(trim(item)));
    if (out.empty()) throw ConfigError("config: [models] list is empty");
    return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{
        "spectra-sweep", "rabi-sweep",   "pi2-optimize", "calibrate", "detuning-map",
        "gr3-compare",   "landscape",    "goat-ensemble", "converge-dims", "bench"};
    return names;
}

void RunConfig::validate() const {
    params.validate();
    solver.validate();
    if (!experiment.empty()) {
        const auto& names = experiment_names();
        if (std::find(names.begin(), names.end(), experiment) == names.end())
            throw UsageError("unknown experiment '" + experiment + "'");
    }
    if (models.empty()) throw ConfigError("config: models list is empty");
    if (threads < 1) throw ConfigError("config: field 'run.threads' must be >= 1");
    if (!(sigma_ratio > 0.0)) throw ConfigError("config: field 'pulse.sigma_ratio' must be > 0");
    const auto positive = [](double v, const char* field) {
        if (!(v > 0.0))
            throw ConfigError(std::string("config: field '") + field + "' must be > 0");
    };
    positive(rabi.duration, "rabi-sweep.duration");
    positive(pi2.duration, "pi2-optimize.duration");
    positive(pi2.amp_max, "pi2-optimize.amp_max");
    positive(calibrate.amplitude, "calibrate.amplitude");
    positive(detuning.duration, "detuning-map.duration");
    positive(detuning.amplitude, "detuning-map.amplitude");
    positive(gr3.duration, "gr3-compare.duration");
    positive(goat.duration, "goat-ensemble.duration");
    positive(converge.tol, "converge-dims.tol");
    positive(converge.duration, "converge-dims.duration");
    positive(bench.amplitude, "bench.amplitude");
    if (rabi.points < 2) throw ConfigError("config: field 'rabi-sweep.points' must be >= 2");
    if (rabi.amp_max <= rabi.amp_min)
        throw ConfigError("config: field 'rabi-sweep.amp_max' must exceed amp_min");
    if (goat.trajectories < 1)
        throw ConfigError("config: field 'goat-ensemble.trajectories' must be >= 1");
    if (bench.repeats < 1) throw ConfigError("config: field 'bench.repeats' must be >= 1");
    if (landscape.amp_points < 1 || landscape.t_points < 1)
        throw ConfigError("config: landscape grid must have at least one point per axis");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    Extractor ex(tokenize(text, origin), origin);
    RunConfig cfg;

    // [system] is mandatory when present in any form; all four energies required.
    ex.require("system", "ec", cfg.params.ec);
    ex.require("system", "ej", cfg.params.ej);
    ex.require("system", "g", cfg.params.g);
    ex.require("system", "omega_r", cfg.params.omega_r);
    ex.get("system", "ng", cfg.params.ng);

    ex.get("run", "experiment", cfg.experiment);
    ex.get("run", "out_dir", cfg.out_dir);
    ex.get("run", "seed", cfg.seed);
    ex.get("run", "threads", cfg.threads);

    std::string models_csv;
    if (ex.get("models", "list", models_csv)) cfg.models = parse_models(models_csv);

    ex.get("solver", "rel_tol", cfg.solver.rel_tol);
    ex.get("solver", "abs_tol", cfg.solver.abs_tol);
    ex.get("solver", "output_points", cfg.solver.output_points);
    ex.get("solver", "resonator_levels", cfg.resonator_levels);
    ex.get("pulse", "sigma_ratio", cfg.sigma_ratio);

    ex.get("spectra-sweep", "mode", cfg.spectra.mode);
    ex.get_list("spectra-sweep", "n_exp", cfg.spectra.n_exp);

    ex.get("rabi-sweep", "duration", cfg.rabi.duration);
    ex.get("rabi-sweep", "amp_min", cfg.rabi.amp_min);
    ex.get("rabi-sweep", "amp_max", cfg.rabi.amp_max);
    ex.get("rabi-sweep", "points", cfg.rabi.points);

    ex.get("pi2-optimize", "duration", cfg.pi2.duration);
    ex.get("pi2-optimize", "amp_max", cfg.pi2.amp_max);

    ex.get("calibrate", "model_a", cfg.calibrate.model_a);
    ex.get("calibrate", "model_b", cfg.calibrate.model_b);
    ex.get("calibrate", "amplitude", cfg.calibrate.amplitude);
    ex.get("calibrate", "probe_cycles", cfg.calibrate.probe_cycles);
    ex.get("calibrate", "window", cfg.calibrate.window);

    ex.get("detuning-map", "ratio_min", cfg.detuning.ratio_min);
    ex.get("detuning-map", "ratio_max", cfg.detuning.ratio_max);
    ex.get("detuning-map", "ratio_points", cfg.detuning.ratio_points);
    ex.get("detuning-map", "det_min", cfg.detuning.det_min);
    ex.get("detuning-map", "det_max", cfg.detuning.det_max);
    ex.get("detuning-map", "det_points", cfg.detuning.det_points);
    ex.get("detuning-map", "duration", cfg.detuning.duration);
    ex.get("detuning-map", "amplitude", cfg.detuning.amplitude);

    ex.get("gr3-compare", "duration", cfg.gr3.duration);
    ex.get("gr3-compare", "amp_max", cfg.gr3.amp_max);
    ex.get("gr3-compare", "points", cfg.gr3.points);

    ex.get("landscape", "amp_min", cfg.landscape.amp_min);
    ex.get("landscape", "amp_max", cfg.landscape.amp_max);
    ex.get("landscape", "amp_points", cfg.landscape.amp_points);
    ex.get("landscape", "t_min", cfg.landscape.t_min);
    ex.get("landscape", "t_max", cfg.landscape.t_max);
    ex.get("landscape", "t_points", cfg.landscape.t_points);
    ex.get("landscape", "resonator_levels", cfg.landscape.resonator_levels);

    ex.get("goat-ensemble", "trajectories", cfg.goat.trajectories);
    ex.get("goat-ensemble", "duration", cfg.goat.duration);

    ex.get("converge-dims", "tol", cfg.converge.tol);
    ex.get("converge-dims", "duration", cfg.converge.duration);
    ex.get("converge-dims", "amplitude", cfg.converge.amplitude);

    ex.get_list("bench", "durations", cfg.bench.durations);
    ex.get("bench", "amplitude", cfg.bench.amplitude);
    ex.get("bench", "repeats", cfg.bench.repeats);

    ex.reject_unknown();
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace tqsim
