#include "qwell/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwell/analysis.hpp"
#include "qwell/discretize.hpp"
#include "qwell/eigensolve.hpp"
#include "qwell/potential.hpp"
#include "qwell/semiclassical.hpp"
#include "qwell/variational.hpp"

namespace qwell {

namespace {

// ---------------------------------------------------------------------------
// report formatting

// All report numerics go through one formatter so the JSON and CSV encodings
// of a run agree digit for digit.
std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("report: non-finite numeric value");
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class JsonWriter {
public:
    JsonWriter& begin_object() { separator(); buf_ += '{'; fresh_.push_back(true); return *this; }
    JsonWriter& end_object() { buf_ += '}'; fresh_.pop_back(); return *this; }
    JsonWriter& begin_array() { separator(); buf_ += '['; fresh_.push_back(true); return *this; }
    JsonWriter& end_array() { buf_ += ']'; fresh_.pop_back(); return *this; }
    JsonWriter& key(std::string_view k) { separator(); quoted(k); buf_ += ':'; keyed_ = true; return *this; }
    JsonWriter& value(double v) { separator(); buf_ += format_number(v); return *this; }
    JsonWriter& value(int v) { separator(); buf_ += std::to_string(v); return *this; }
    JsonWriter& value(bool v) { separator(); buf_ += (v ? "true" : "false"); return *this; }
    JsonWriter& value(std::string_view s) { separator(); quoted(s); return *this; }
    std::string take() { buf_ += '\n'; return std::move(buf_); }

private:
    void separator() {
        if (keyed_) { keyed_ = false; return; }
        if (!fresh_.empty()) {
            if (!fresh_.back()) buf_ += ',';
            fresh_.back() = false;
        }
    }
    void quoted(std::string_view s) {
        buf_ += '"';
        for (char c : s) {
            if (c == '"' || c == '\\') { buf_ += '\\'; buf_ += c; }
            else if (static_cast<unsigned char>(c) < 0x20) {
                char esc[8];
                std::snprintf(esc, sizeof esc, "\\u%04x", c);
                buf_ += esc;
            } else buf_ += c;
        }
        buf_ += '"';
    }
    std::string buf_;
    std::vector<bool> fresh_;
    bool keyed_ = false;
};

class CsvWriter {
public:
    CsvWriter& cell(const std::string& s) {
        if (!line_fresh_) buf_ += ',';
        line_fresh_ = false;
        buf_ += s;
        return *this;
    }
    CsvWriter& cell(double v) { return cell(format_number(v)); }
    CsvWriter& cell(int v) { return cell(std::to_string(v)); }
    CsvWriter& endrow() { buf_ += '\n'; line_fresh_ = true; return *this; }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
    bool line_fresh_ = true;
};

// ---------------------------------------------------------------------------
// sweep parallelism

std::size_t sweep_worker_count(std::size_t tasks) {
    if (tasks <= 1) return 1;
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* env = std::getenv("QWELL_THREADS"); env && *env) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end && *end == '\0' && cap >= 0) workers = (cap == 0) ? 1 : static_cast<std::size_t>(cap);
    }
    return std::min(workers, tasks);
}

// Runs fn(0..count-1), possibly across worker threads; results must be stored
// by index so output order never depends on scheduling.
template <typename Fn>
void for_each_index(std::size_t count, Fn&& fn) {
    const std::size_t workers = sweep_worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// shared option handling

PotentialKind parse_kind(const std::string& name) {
    if (name == "gaussian-well") return PotentialKind::GaussianWell;
    if (name == "gaussian-barrier") return PotentialKind::GaussianBarrier;
    if (name == "double-gaussian-well") return PotentialKind::DoubleGaussianWell;
    if (name == "half-gaussian") return PotentialKind::HalfGaussianRadial;
    throw std::invalid_argument("unknown potential kind '" + name +
                                "' (expected gaussian-well, gaussian-barrier, "
                                "double-gaussian-well or half-gaussian)");
}

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    nlohmann::json cfg = nlohmann::json::parse(in);
    if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    return cfg;
}

// Config-file values fill in only the flags the command line left untouched.
template <typename T>
void layer(const nlohmann::json& cfg, const CLI::Option* opt, const char* key, T& field) {
    if (opt && opt->count() > 0) return;
    if (!cfg.contains(key)) return;
    try {
        field = cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
    }
}

struct GridOptions {
    double xmin = std::numeric_limits<double>::quiet_NaN();
    double xmax = std::numeric_limits<double>::quiet_NaN();
    int mesh = 0;  // 0 = default
};

Grid make_grid(const PotentialSpec& spec, const GridOptions& opts) {
    const DomainChoice d = default_domain(spec);
    const bool has_min = !std::isnan(opts.xmin);
    const bool has_max = !std::isnan(opts.xmax);
    if (has_min != has_max)
        throw std::invalid_argument("--xmin and --xmax must be given together");
    const double x_min = has_min ? opts.xmin : d.x_min;
    const double x_max = has_max ? opts.xmax : d.x_max;
    const int r = opts.mesh > 0 ? opts.mesh : d.r;
    return build_grid(x_min, x_max, r);
}

int auto_state_count(const TridiagonalOperator& op, int minimum) {
    const int negatives = sturm_count_below(op, 0.0);
    const int capped = std::min(negatives + 2, 128);
    return std::clamp(capped, std::min<int>(minimum, static_cast<int>(op.dim())),
                      static_cast<int>(op.dim()));
}

void emit_grid(JsonWriter& w, const Grid& grid) {
    w.key("grid").begin_object();
    w.key("x_min").value(grid.x_min);
    w.key("x_max").value(grid.x_max);
    w.key("mesh").value(grid.r);
    w.key("delta").value(grid.delta);
    w.end_object();
}

void emit_warnings(JsonWriter& w, const std::vector<std::string>& warnings) {
    w.key("warnings").begin_array();
    for (const std::string& s : warnings) w.value(s);
    w.end_array();
}

std::vector<std::string> edge_warnings(const Spectrum& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.states.size(); ++i)
        if (s.bound[i] && s.boundary_contaminated[i])
            out.push_back("state " + std::to_string(i) +
                          ": amplitude at the box edge exceeds 1e-06 of its peak; "
                          "the energy may be box-limited");
    return out;
}

void emit_wavefunctions_json(JsonWriter& w, const Spectrum& s, std::size_t count) {
    w.key("wavefunctions").begin_object();
    w.key("x").begin_array();
    for (double x : s.grid.points) w.value(x);
    w.end_array();
    w.key("psi_plus_e").begin_array();
    for (std::size_t i = 0; i < count; ++i) {
        w.begin_array();
        for (double psi : s.states[i]) w.value(psi + s.energies[i]);
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

std::string wavefunction_csv(const Spectrum& s, std::size_t count, int first_label) {
    CsvWriter csv;
    csv.cell(std::string("x"));
    for (std::size_t i = 0; i < count; ++i) {
        const int label = first_label + static_cast<int>(i);
        csv.cell("psi" + std::to_string(label) + "_plus_e" + std::to_string(label));
    }
    csv.endrow();
    for (std::size_t k = 0; k < s.grid.points.size(); ++k) {
        csv.cell(s.grid.points[k]);
        for (std::size_t i = 0; i < count; ++i) csv.cell(s.states[i][k] + s.energies[i]);
        csv.endrow();
    }
    return csv.take();
}

void deliver(const std::string& report, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << report;
        return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + output_path + "'");
    file << report;
    if (!file) throw std::runtime_error("failed to write output file '" + output_path + "'");
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
    std::string kind = "gaussian-well";
    double v0 = 1.0;
    double alpha = 1.0;
    int l = 0;
    GridOptions grid;
    int states = 0;  // 0 = automatic
    bool wavefunctions = false;
    std::string format = "json";
    std::string output;
    std::string config;
};

std::string run_solve(const SolveOptions& opts) {
    PotentialSpec spec{parse_kind(opts.kind), opts.v0, opts.alpha, opts.l};
    validate(spec);
    const Grid grid = make_grid(spec, opts.grid);
    const TridiagonalOperator op = build_hamiltonian(spec, grid);
    const int n_states = opts.states > 0 ? opts.states : auto_state_count(op, 3);
    const Spectrum spectrum = solve_schrodinger(spec, grid, n_states);
    const std::vector<StateDescriptor> described = describe_states(spectrum);
    const std::vector<std::string> warnings = edge_warnings(spectrum);

    if (opts.format == "csv") {
        if (opts.wavefunctions) return wavefunction_csv(spectrum, spectrum.states.size(), 0);
        CsvWriter csv;
        csv.cell(std::string("index")).cell(std::string("energy")).cell(std::string("nodes"))
            .cell(std::string("parity")).cell(std::string("bound"))
            .cell(std::string("boundary_contaminated")).endrow();
        for (const StateDescriptor& d : described)
            csv.cell(d.index).cell(d.energy).cell(d.nodes).cell(std::string(parity_name(d.parity)))
                .cell(std::string(d.bound ? "true" : "false"))
                .cell(std::string(spectrum.boundary_contaminated[d.index] ? "true" : "false"))
                .endrow();
        return csv.take();
    }

    JsonWriter w;
    w.begin_object();
    w.key("params").begin_object();
    w.key("command").value(std::string_view("solve"));
    w.key("kind").value(std::string_view(kind_name(spec.kind)));
    w.key("v0").value(spec.v0);
    w.key("alpha").value(spec.alpha);
    w.key("l").value(spec.l);
    w.key("states").value(n_states);
    w.end_object();
    emit_grid(w, grid);
    w.key("results").begin_object();
    w.key("bound_count").value(spectrum.bound_count);
    w.key("states").begin_array();
    for (const StateDescriptor& d : described) {
        w.begin_object();
        w.key("index").value(d.index);
        w.key("energy").value(d.energy);
        w.key("nodes").value(d.nodes);
        w.key("parity").value(std::string_view(parity_name(d.parity)));
        w.key("bound").value(d.bound);
        w.key("boundary_contaminated").value(bool(spectrum.boundary_contaminated[d.index]));
        w.end_object();
    }
    w.end_array();
    if (opts.wavefunctions) emit_wavefunctions_json(w, spectrum, spectrum.states.size());
    w.end_object();
    emit_warnings(w, warnings);
    w.end_object();
    return w.take();
}

// ---------------------------------------------------------------------------
// compare

struct CompareOptions {
    std::vector<double> v0_list;
    std::vector<double> alpha_list;
    GridOptions grid;
    std::string format = "json";
    std::string output;
    std::string config;
};

struct CompareRow {
    double v0;
    double alpha;
    double b_star;
    double variational_energy;
    double numeric_ground;
    double relative_gap;
    double wkb_n_real;
    int wkb_levels;
    int bound_count;
    double x_min;
    double x_max;
    int mesh;
};

std::string run_compare(const CompareOptions& opts) {
    if (opts.v0_list.empty()) throw std::invalid_argument("compare: --v0-list is empty");
    std::vector<double> alphas = opts.alpha_list;
    if (alphas.empty()) alphas.assign(opts.v0_list.size(), 1.0);
    else if (alphas.size() == 1) alphas.assign(opts.v0_list.size(), alphas[0]);
    else if (alphas.size() != opts.v0_list.size())
        throw std::invalid_argument("compare: --alpha-list must have one entry or match --v0-list");

    std::vector<CompareRow> rows(opts.v0_list.size());
    for_each_index(rows.size(), [&](std::size_t i) {
        const double v0 = opts.v0_list[i];
        const double alpha = alphas[i];
        PotentialSpec spec{PotentialKind::GaussianWell, v0, alpha, 0};
        validate(spec);
        const VariationalResult var = solve_optimal_b(v0, alpha);
        const WkbCount wkb = wkb_count(v0, alpha);
        const Grid grid = make_grid(spec, opts.grid);
        const TridiagonalOperator op = build_hamiltonian(spec, grid);
        const Spectrum s = solve_schrodinger(spec, grid, auto_state_count(op, 3));
        const double e0 = s.energies[0];
        rows[i] = {v0,
                   alpha,
                   var.b_star,
                   var.energy_bound,
                   e0,
                   (var.energy_bound - e0) / std::abs(e0),
                   wkb.n_real,
                   wkb.n_levels,
                   s.bound_count,
                   grid.x_min,
                   grid.x_max,
                   grid.r};
    });

    if (opts.format == "csv") {
        CsvWriter csv;
        csv.cell(std::string("v0")).cell(std::string("alpha")).cell(std::string("b_star"))
            .cell(std::string("variational_energy")).cell(std::string("numeric_ground_energy"))
            .cell(std::string("relative_gap")).cell(std::string("wkb_n_real"))
            .cell(std::string("wkb_level_estimate")).cell(std::string("bound_count")).endrow();
        for (const CompareRow& r : rows)
            csv.cell(r.v0).cell(r.alpha).cell(r.b_star).cell(r.variational_energy)
                .cell(r.numeric_ground).cell(r.relative_gap).cell(r.wkb_n_real)
                .cell(r.wkb_levels).cell(r.bound_count).endrow();
        return csv.take();
    }

    JsonWriter w;
    w.begin_object();
    w.key("params").begin_object();
    w.key("command").value(std::string_view("compare"));
    w.key("v0_list").begin_array();
    for (double v : opts.v0_list) w.value(v);
    w.end_array();
    w.key("alpha_list").begin_array();
    for (double a : alphas) w.value(a);
    w.end_array();
    w.end_object();
    w.key("grid").begin_object();
    w.key("mesh").value(opts.grid.mesh > 0 ? opts.grid.mesh : 4000);
    w.key("domain").value(std::string_view("auto"));
    w.end_object();
    w.key("results").begin_object();
    w.key("rows").begin_array();
    for (const CompareRow& r : rows) {
        w.begin_object();
        w.key("v0").value(r.v0);
        w.key("alpha").value(r.alpha);
        w.key("b_star").value(r.b_star);
        w.key("variational_energy").value(r.variational_energy);
        w.key("numeric_ground_energy").value(r.numeric_ground);
        w.key("relative_gap").value(r.relative_gap);
        w.key("wkb_n_real").value(r.wkb_n_real);
        w.key("wkb_level_estimate").value(r.wkb_levels);
        w.key("bound_count").value(r.bound_count);
        w.key("x_min").value(r.x_min);
        w.key("x_max").value(r.x_max);
        w.key("mesh").value(r.mesh);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    emit_warnings(w, {});
    w.end_object();
    return w.take();
}

// ---------------------------------------------------------------------------
// transmit

struct TransmitOptions {
    double v0 = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double e = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    std::string beta_range;
    double v0_over_alpha = std::numeric_limits<double>::quiet_NaN();
    bool stm = false;
    std::string format = "json";
    std::string output;
    std::string config;
};

std::vector<double> parse_beta_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3)
        throw std::invalid_argument("--beta-range must look like lo:hi:count");
    std::size_t used = 0;
    double lo = 0.0, hi = 0.0;
    long n = 0;
    try {
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        n = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("--beta-range must look like lo:hi:count");
    }
    if (n < 1) throw std::invalid_argument("--beta-range needs at least one point");
    if (!(lo <= hi)) throw std::invalid_argument("--beta-range needs lo <= hi");
    std::vector<double> betas(static_cast<std::size_t>(n));
    if (n == 1) betas[0] = lo;
    else
        for (long i = 0; i < n; ++i) betas[i] = lo + (hi - lo) * i / (n - 1);
    return betas;
}

std::string run_transmit(const TransmitOptions& opts) {
    const bool has_v0 = !std::isnan(opts.v0);
    const bool has_alpha = !std::isnan(opts.alpha);
    const bool has_e = !std::isnan(opts.e);
    const bool has_beta = !std::isnan(opts.beta);
    const bool has_range = !opts.beta_range.empty();
    const bool has_ratio = !std::isnan(opts.v0_over_alpha);

    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (has_ratio) ratio = opts.v0_over_alpha;
    else if (has_v0 && has_alpha) {
        if (!(opts.alpha > 0.0)) throw std::invalid_argument("transmit: alpha must be > 0");
        ratio = opts.v0 / opts.alpha;
    }

    std::vector<double> betas;
    if (has_range) betas = parse_beta_range(opts.beta_range);
    else if (has_beta) betas.push_back(opts.beta);
    else if (has_e) {
        if (!(has_v0 && has_alpha))
            throw std::invalid_argument("transmit: --e needs --v0 and --alpha");
        if (!(opts.e > 0.0) || !(opts.e < opts.v0))
            throw std::invalid_argument("transmit: need 0 < e < v0");
        betas.push_back(opts.v0 / opts.e);
    }

    if (betas.empty() && !opts.stm)
        throw std::invalid_argument("transmit: give --e, --beta, --beta-range or --stm");
    for (double b : betas)
        if (!(b > 1.0)) throw std::invalid_argument("transmit: every beta must exceed 1");
    if (!betas.empty() && std::isnan(ratio))
        throw std::invalid_argument("transmit: give --v0-over-alpha (or --v0 with --alpha)");
    if (opts.stm && std::isnan(ratio))
        throw std::invalid_argument("transmit: --stm needs --v0-over-alpha (or --v0 with --alpha)");

    // T depends only on beta and v0/alpha, so rows are computed at alpha = 1
    // unless explicit (v0, alpha) were given.
    const double row_v0 = (has_v0 && has_alpha) ? opts.v0 : ratio;
    const double row_alpha = (has_v0 && has_alpha) ? opts.alpha : 1.0;

    std::vector<TransmissionResult> rows(betas.size());
    for_each_index(betas.size(), [&](std::size_t i) {
        rows[i] = transmission(row_v0, row_alpha, row_v0 / betas[i]);
    });
    const double stm_value = opts.stm ? stm_paper_formula(ratio) : 0.0;

    if (opts.format == "csv") {
        CsvWriter csv;
        if (!rows.empty()) {
            csv.cell(std::string("beta")).cell(std::string("t_exact")).cell(std::string("t_approx"))
                .cell(std::string("theta_exact")).cell(std::string("theta_approx")).endrow();
            for (const TransmissionResult& r : rows)
                csv.cell(r.beta).cell(r.t_exact).cell(r.t_approx).cell(r.theta_exact)
                    .cell(r.theta_approx).endrow();
        }
        if (opts.stm) {
            if (!rows.empty()) csv.endrow();
            csv.cell(std::string("v0_over_alpha")).cell(std::string("stm_transmission")).endrow();
            csv.cell(ratio).cell(stm_value).endrow();
        }
        return csv.take();
    }

    JsonWriter w;
    w.begin_object();
    w.key("params").begin_object();
    w.key("command").value(std::string_view("transmit"));
    if (has_v0 && has_alpha) {
        w.key("v0").value(opts.v0);
        w.key("alpha").value(opts.alpha);
    }
    if (!std::isnan(ratio)) w.key("v0_over_alpha").value(ratio);
    w.end_object();
    w.key("grid").begin_object().end_object();
    w.key("results").begin_object();
    w.key("rows").begin_array();
    for (const TransmissionResult& r : rows) {
        w.begin_object();
        w.key("beta").value(r.beta);
        w.key("t_exact").value(r.t_exact);
        w.key("t_approx").value(r.t_approx);
        w.key("theta_exact").value(r.theta_exact);
        w.key("theta_approx").value(r.theta_approx);
        w.key("turning_point_left").value(r.turning_point_left);
        w.key("turning_point_right").value(r.turning_point_right);
        w.end_object();
    }
    w.end_array();
    if (opts.stm) {
        w.key("stm").begin_object();
        w.key("v0_over_alpha").value(ratio);
        w.key("transmission").value(stm_value);
        w.end_object();
    }
    w.end_object();
    emit_warnings(w, {});
    w.end_object();
    return w.take();
}

// ---------------------------------------------------------------------------
// doublewell

struct DoubleWellOptions {
    double v0 = 3.0;
    double alpha = 1.0;
    GridOptions grid;
    int states = 0;  // 0 = automatic (at least 4)
    bool wavefunctions = false;
    std::string format = "json";
    std::string output;
    std::string config;
};

std::string run_doublewell(const DoubleWellOptions& opts) {
    PotentialSpec spec{PotentialKind::DoubleGaussianWell, opts.v0, opts.alpha, 0};
    validate(spec);
    const Grid grid = make_grid(spec, opts.grid);
    const TridiagonalOperator op = build_hamiltonian(spec, grid);
    const int n_states = opts.states > 0 ? opts.states : auto_state_count(op, 4);
    if (n_states < 2) throw std::invalid_argument("doublewell: need at least 2 states");
    const Spectrum spectrum = solve_schrodinger(spec, grid, n_states);
    const DoubleWellReport report = summarize_double_well(spectrum);
    const Parity parity_1 = classify_parity(spectrum.states[0], grid);
    const Parity parity_2 = classify_parity(spectrum.states[1], grid);
    const std::vector<std::string> warnings = edge_warnings(spectrum);

    if (opts.format == "csv") {
        if (opts.wavefunctions) return wavefunction_csv(spectrum, 2, 1);
        CsvWriter csv;
        csv.cell(std::string("e1")).cell(std::string("e2")).cell(std::string("e3"))
            .cell(std::string("delta_e")).cell(std::string("period"))
            .cell(std::string("decoupling_ratio")).cell(std::string("parity_1"))
            .cell(std::string("parity_2")).cell(std::string("bound_count")).endrow();
        csv.cell(report.e1).cell(report.e2);
        csv.cell(report.e3 ? format_number(*report.e3) : std::string());
        csv.cell(report.delta_e).cell(report.period);
        csv.cell(report.decoupling_ratio ? format_number(*report.decoupling_ratio) : std::string());
        csv.cell(std::string(parity_name(parity_1))).cell(std::string(parity_name(parity_2)));
        csv.cell(spectrum.bound_count).endrow();
        return csv.take();
    }

    JsonWriter w;
    w.begin_object();
    w.key("params").begin_object();
    w.key("command").value(std::string_view("doublewell"));
    w.key("v0").value(opts.v0);
    w.key("alpha").value(opts.alpha);
    w.key("states").value(n_states);
    w.end_object();
    emit_grid(w, grid);
    w.key("results").begin_object();
    w.key("e1").value(report.e1);
    w.key("e2").value(report.e2);
    if (report.e3) w.key("e3").value(*report.e3);
    w.key("delta_e").value(report.delta_e);
    w.key("period").value(report.period);
    if (report.decoupling_ratio) w.key("decoupling_ratio").value(*report.decoupling_ratio);
    w.key("parities").begin_array();
    w.value(std::string_view(parity_name(parity_1)));
    w.value(std::string_view(parity_name(parity_2)));
    w.end_array();
    w.key("bound_count").value(spectrum.bound_count);
    if (opts.wavefunctions) emit_wavefunctions_json(w, spectrum, 2);
    w.end_object();
    emit_warnings(w, warnings);
    w.end_object();
    return w.take();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"1D Schroedinger spectral toolkit for Gaussian-family potentials"};
    app.name("qwell");
    app.require_subcommand(1);

    SolveOptions solve_opts;
    CompareOptions compare_opts;
    TransmitOptions transmit_opts;
    DoubleWellOptions dw_opts;

    CLI::App* solve = app.add_subcommand("solve", "Solve one potential for its lowest levels");
    auto* so_kind = solve->add_option("--kind", solve_opts.kind, "Potential kind");
    auto* so_v0 = solve->add_option("--v0", solve_opts.v0, "Well depth / barrier height");
    auto* so_alpha = solve->add_option("--alpha", solve_opts.alpha, "Inverse squared width");
    auto* so_l = solve->add_option("--l", solve_opts.l, "Angular momentum (half-gaussian)");
    auto* so_xmin = solve->add_option("--xmin", solve_opts.grid.xmin, "Box lower edge");
    auto* so_xmax = solve->add_option("--xmax", solve_opts.grid.xmax, "Box upper edge");
    auto* so_mesh = solve->add_option("--mesh", solve_opts.grid.mesh, "Mesh step count");
    auto* so_states = solve->add_option("--states", solve_opts.states, "States to compute");
    auto* so_wf = solve->add_flag("--wavefunctions", solve_opts.wavefunctions,
                                  "Emit wavefunction columns offset by their energies");
    auto* so_format = solve->add_option("--format", solve_opts.format, "json or csv");
    auto* so_output = solve->add_option("--output", solve_opts.output, "Write the report here");
    solve->add_option("--config", solve_opts.config, "JSON config file mirroring the flags");

    CLI::App* compare = app.add_subcommand(
        "compare", "Variational, numerical and WKB results over a parameter sweep");
    auto* co_v0 = compare->add_option("--v0-list", compare_opts.v0_list, "Well depths")
                      ->delimiter(',');
    auto* co_alpha = compare->add_option("--alpha-list", compare_opts.alpha_list,
                                         "Inverse squared widths (one value or one per v0)")
                         ->delimiter(',');
    auto* co_mesh = compare->add_option("--mesh", compare_opts.grid.mesh, "Mesh step count");
    auto* co_format = compare->add_option("--format", compare_opts.format, "json or csv");
    auto* co_output = compare->add_option("--output", compare_opts.output, "Write the report here");
    compare->add_option("--config", compare_opts.config, "JSON config file mirroring the flags");

    CLI::App* transmit = app.add_subcommand("transmit", "Gaussian-barrier transmission");
    auto* tr_v0 = transmit->add_option("--v0", transmit_opts.v0, "Barrier height");
    auto* tr_alpha = transmit->add_option("--alpha", transmit_opts.alpha, "Inverse squared width");
    auto* tr_e = transmit->add_option("--e", transmit_opts.e, "Particle energy");
    auto* tr_beta = transmit->add_option("--beta", transmit_opts.beta, "v0/e ratio");
    auto* tr_range = transmit->add_option("--beta-range", transmit_opts.beta_range,
                                          "Sweep lo:hi:count over beta");
    auto* tr_ratio = transmit->add_option("--v0-over-alpha", transmit_opts.v0_over_alpha,
                                          "Barrier strength ratio v0/alpha");
    auto* tr_stm = transmit->add_flag("--stm", transmit_opts.stm,
                                      "Also report the tunneling-microscope rule of thumb");
    auto* tr_format = transmit->add_option("--format", transmit_opts.format, "json or csv");
    auto* tr_output = transmit->add_option("--output", transmit_opts.output, "Write the report here");
    transmit->add_option("--config", transmit_opts.config, "JSON config file mirroring the flags");

    CLI::App* doublewell = app.add_subcommand("doublewell", "Double Gaussian well level splitting");
    auto* dw_v0 = doublewell->add_option("--v0", dw_opts.v0, "Well strength");
    auto* dw_alpha = doublewell->add_option("--alpha", dw_opts.alpha, "Inverse squared width");
    auto* dw_xmin = doublewell->add_option("--xmin", dw_opts.grid.xmin, "Box lower edge");
    auto* dw_xmax = doublewell->add_option("--xmax", dw_opts.grid.xmax, "Box upper edge");
    auto* dw_mesh = doublewell->add_option("--mesh", dw_opts.grid.mesh, "Mesh step count");
    auto* dw_states = doublewell->add_option("--states", dw_opts.states, "States to compute");
    auto* dw_wf = doublewell->add_flag("--wavefunctions", dw_opts.wavefunctions,
                                       "Emit the two lowest wavefunctions");
    auto* dw_format = doublewell->add_option("--format", dw_opts.format, "json or csv");
    auto* dw_output = doublewell->add_option("--output", dw_opts.output, "Write the report here");
    doublewell->add_option("--config", dw_opts.config, "JSON config file mirroring the flags");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::string report;
        std::string output_path;
        if (solve->parsed()) {
            const nlohmann::json cfg = load_config(solve_opts.config);
            layer(cfg, so_kind, "kind", solve_opts.kind);
            layer(cfg, so_v0, "v0", solve_opts.v0);
            layer(cfg, so_alpha, "alpha", solve_opts.alpha);
            layer(cfg, so_l, "l", solve_opts.l);
            layer(cfg, so_xmin, "xmin", solve_opts.grid.xmin);
            layer(cfg, so_xmax, "xmax", solve_opts.grid.xmax);
            layer(cfg, so_mesh, "mesh", solve_opts.grid.mesh);
            layer(cfg, so_states, "states", solve_opts.states);
            layer(cfg, so_wf, "wavefunctions", solve_opts.wavefunctions);
            layer(cfg, so_format, "format", solve_opts.format);
            layer(cfg, so_output, "output", solve_opts.output);
            if (solve_opts.format != "json" && solve_opts.format != "csv")
                throw std::invalid_argument("--format must be json or csv");
            report = run_solve(solve_opts);
            output_path = solve_opts.output;
        } else if (compare->parsed()) {
            const nlohmann::json cfg = load_config(compare_opts.config);
            layer(cfg, co_v0, "v0-list", compare_opts.v0_list);
            layer(cfg, co_alpha, "alpha-list", compare_opts.alpha_list);
            layer(cfg, co_mesh, "mesh", compare_opts.grid.mesh);
            layer(cfg, co_format, "format", compare_opts.format);
            layer(cfg, co_output, "output", compare_opts.output);
            if (compare_opts.format != "json" && compare_opts.format != "csv")
                throw std::invalid_argument("--format must be json or csv");
            report = run_compare(compare_opts);
            output_path = compare_opts.output;
        } else if (transmit->parsed()) {
            const nlohmann::json cfg = load_config(transmit_opts.config);
            layer(cfg, tr_v0, "v0", transmit_opts.v0);
            layer(cfg, tr_alpha, "alpha", transmit_opts.alpha);
            layer(cfg, tr_e, "e", transmit_opts.e);
            layer(cfg, tr_beta, "beta", transmit_opts.beta);
            layer(cfg, tr_range, "beta-range", transmit_opts.beta_range);
            layer(cfg, tr_ratio, "v0-over-alpha", transmit_opts.v0_over_alpha);
            layer(cfg, tr_stm, "stm", transmit_opts.stm);
            layer(cfg, tr_format, "format", transmit_opts.format);
            layer(cfg, tr_output, "output", transmit_opts.output);
            if (transmit_opts.format != "json" && transmit_opts.format != "csv")
                throw std::invalid_argument("--format must be json or csv");
            report = run_transmit(transmit_opts);
            output_path = transmit_opts.output;
        } else if (doublewell->parsed()) {
            const nlohmann::json cfg = load_config(dw_opts.config);
            layer(cfg, dw_v0, "v0", dw_opts.v0);
            layer(cfg, dw_alpha, "alpha", dw_opts.alpha);
            layer(cfg, dw_xmin, "xmin", dw_opts.grid.xmin);
            layer(cfg, dw_xmax, "xmax", dw_opts.grid.xmax);
            layer(cfg, dw_mesh, "mesh", dw_opts.grid.mesh);
            layer(cfg, dw_states, "states", dw_opts.states);
            layer(cfg, dw_wf, "wavefunctions", dw_opts.wavefunctions);
            layer(cfg, dw_format, "format", dw_opts.format);
            layer(cfg, dw_output, "output", dw_opts.output);
            if (dw_opts.format != "json" && dw_opts.format != "csv")
                throw std::invalid_argument("--format must be json or csv");
            report = run_doublewell(dw_opts);
            output_path = dw_opts.output;
        }
        deliver(report, output_path, out);
        return 0;
    } catch (const nlohmann::json::exception& e) {
        err << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qwell
