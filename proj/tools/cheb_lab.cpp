// cheb-lab: command-line front end for prime-set discrepancy experiments.
//
// Subcommands: catalog, zeros, census, witness, mean-square, dirichlet-check.
// Exit codes: 0 success, 2 invalid configuration or parse error,
// 3 uncertified analytic data, 4 assertion failure in an exact identity.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "json.hpp"

#include "cheb/explicit_formula.hpp"
#include "cheb/run_config.hpp"

using namespace cheb;
using ordered_json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Caches: content-hash keyed files, atomic writes under an advisory lock.
// ---------------------------------------------------------------------------
std::string cache_root(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("CHEB_CACHE_DIR")) return env;
    return "";
}

class ScopedFileLock {
public:
    explicit ScopedFileLock(const std::string& path) {
        fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ >= 0) ::flock(fd_, LOCK_EX);
    }
    ~ScopedFileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }

private:
    int fd_ = -1;
};

std::string hash_name(const std::string& prefix, const std::string& params, const std::string& suffix) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(params)));
    return prefix + "_" + buf + suffix;
}

PrimeTable load_table(std::uint64_t x_max, const std::string& cache_dir) {
    if (cache_dir.empty()) return build_table(x_max);
    std::filesystem::create_directories(cache_dir);
    std::string params = "primes x_max=" + std::to_string(x_max);
    std::filesystem::path path = std::filesystem::path(cache_dir) / hash_name("primes", params, ".bin");
    PrimeTable table;
    if (read_prime_cache(path.string(), x_max, table)) return table;
    table = build_table(x_max);
    ScopedFileLock lock(path.string() + ".lock");
    std::string tmp = path.string() + ".tmp";
    write_prime_cache(tmp, table);
    std::filesystem::rename(tmp, path);
    return table;
}

const ZeroSet& ensure_zeros_cached(ZeroDatabase& db, const DirichletCharacter& chi, double T,
                                   double grid_step, const std::string& cache_dir) {
    if (const ZeroSet* zs = db.find(chi.descriptor());
        zs && zs->height_limit >= T && zs->certified)
        return *zs;
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        char params[128];
        std::snprintf(params, sizeof(params), "zeros q=%llu index=%llu T=%.6f step=%.6f",
                      static_cast<unsigned long long>(chi.modulus()),
                      static_cast<unsigned long long>(chi.index()), T, grid_step);
        std::filesystem::path path =
            std::filesystem::path(cache_dir) / hash_name("zeros", params, ".txt");
        ZeroSet cached;
        if (read_zero_file(path.string(), cached) && cached.q == chi.modulus() &&
            cached.index == chi.index() && cached.height_limit >= T && cached.certified) {
            db.add(std::move(cached));
            return *db.find(chi.descriptor());
        }
        ZeroSearchOptions opt;
        opt.grid_step = grid_step;
        ZeroSet zs = find_zeros(chi, T, opt);
        {
            ScopedFileLock lock(path.string() + ".lock");
            std::string tmp = path.string() + ".tmp";
            write_zero_file(tmp, zs);
            std::filesystem::rename(tmp, path);
        }
        db.add(std::move(zs));
        return *db.find(chi.descriptor());
    }
    ZeroSearchOptions opt;
    opt.grid_step = grid_step;
    db.add(find_zeros(chi, T, opt));
    return *db.find(chi.descriptor());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_cplx(cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

void emit_json(const RunConfig& cfg, const ordered_json& j) {
    if (cfg.json.empty()) return;
    write_text_file(cfg.json, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------
int cmd_catalog() {
    for (const auto& e : extension_catalog()) {
        std::printf("%-12s |G|=%-3llu classes:", e.id.c_str(),
                    static_cast<unsigned long long>(e.group.order));
        for (std::size_t i = 0; i < e.group.class_ids.size(); ++i)
            std::printf(" %s(%llu)", e.group.class_ids[i].c_str(),
                        static_cast<unsigned long long>(e.group.class_sizes[i]));
        std::printf("  ramified:");
        for (auto p : e.ramified) std::printf(" %llu", static_cast<unsigned long long>(p));
        std::printf("  %s\n", e.description.c_str());
    }
    return 0;
}

int cmd_zeros(const RunConfig& cfg) {
    auto requested = character_from_index(cfg.q, cfg.index);
    auto chi = requested.conductor_and_inducer().second;
    if (!requested.is_primitive())
        std::printf("note: %llu:%llu is induced by %s; computing the inducer's zeros\n",
                    static_cast<unsigned long long>(cfg.q),
                    static_cast<unsigned long long>(cfg.index), chi.descriptor().c_str());

    ZeroDatabase db;
    const ZeroSet& zs = ensure_zeros_cached(db, chi, cfg.height, cfg.grid_step, cache_root(cfg));

    ZeroSet out = zs;
    out.q = cfg.q;
    out.index = cfg.index;
    out.conductor = chi.modulus();
    if (!cfg.out.empty()) {
        write_zero_file(cfg.out, out);
        std::printf("wrote %zu ordinates to %s\n", out.ordinates.size(), cfg.out.c_str());
    }
    std::printf("character %llu:%llu conductor=%llu parity=%d T=%s certified=%s residual=%.3g\n",
                static_cast<unsigned long long>(cfg.q),
                static_cast<unsigned long long>(cfg.index),
                static_cast<unsigned long long>(out.conductor), out.parity,
                fmt(out.height_limit).c_str(), out.certified ? "true" : "false",
                out.residual_bound);
    std::printf("count=%zu (both signs %zu) estimate=%s  %s\n", out.ordinates.size(),
                out.count_both_signs(), fmt(zero_count_estimate(out.conductor, out.height_limit)).c_str(),
                out.diagnostics.c_str());
    return out.certified ? 0 : 3;
}

int cmd_census(const RunConfig& cfg) {
    const auto& ext = extension_by_id(cfg.ext);
    PrimeTable table = load_table(static_cast<std::uint64_t>(cfg.x_max), cache_root(cfg));
    std::vector<std::uint64_t> counts(ext.group.class_ids.size(), 0);
    std::uint64_t total = 0;
    for (std::uint64_t p : table.primes) {
        if (ext.is_ramified(p)) continue;
        ++counts[ext.group.class_index(ext.classify(p))];
        ++total;
    }
    ordered_json jclasses = ordered_json::array();
    std::printf("extension %s at x=%s: %llu unramified primes\n", cfg.ext.c_str(),
                fmt(cfg.x_max).c_str(), static_cast<unsigned long long>(total));
    double worst = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double expected = static_cast<double>(ext.group.class_sizes[i]) /
                          static_cast<double>(ext.group.order);
        double freq = total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0;
        double dev = freq - expected;
        worst = std::max(worst, std::abs(dev));
        std::printf("  %-14s count=%-9llu freq=%-12s |C|/|G|=%-10s deviation=%+.6f\n",
                    ext.group.class_ids[i].c_str(), static_cast<unsigned long long>(counts[i]),
                    fmt(freq).c_str(), fmt(expected).c_str(), dev);
        jclasses.push_back({{"class", ext.group.class_ids[i]},
                            {"count", counts[i]},
                            {"frequency", freq},
                            {"expected", expected},
                            {"deviation", dev}});
    }
    if (total < 100) std::printf("  (small sample: no density statement intended)\n");
    emit_json(cfg, ordered_json{{"command", "census"},
                                {"ext", cfg.ext},
                                {"xmax", cfg.x_max},
                                {"unramified", total},
                                {"worst_deviation", worst},
                                {"classes", jclasses}});
    return 0;
}

struct MeanSquareReport {
    DiscrepancyModel model;
    SmoothedMeanSquare smoothed;
    UnsmoothedMeanSquare unsmoothed;
    // running extremes of Delta over the y-grid; recorded, never asserted
    double delta_min = 0.0;
    double delta_max = 0.0;
};

MeanSquareReport run_mean_square(const PrimeSetSpec& set, const ReferenceSpec& ref,
                                 const PrimeTable& table, ZeroDatabase& db, const RunConfig& cfg,
                                 bool predictions) {
    MeanSquareReport rep;
    double Y = std::log(cfg.x_max);
    if (predictions) {
        for (const auto& [desc, c] : character_coefficient_map(set, ref)) {
            (void)c;
            ensure_zeros_cached(db, character_from_descriptor(desc), cfg.height, cfg.grid_step,
                                cache_root(cfg));
        }
        rep.model = build_model(set, ref, table, db, cfg.height, cfg.allow_uncertified);
    } else {
        rep.model = build_empirical_model(set, ref, table);
    }
    rep.smoothed = mean_square_smoothed(rep.model, Y);
    rep.unsmoothed = mean_square_unsmoothed(rep.model, Y, cfg.height);
    for (double y = std::log(2.0); y <= Y + 1e-12; y += 1e-3) {
        double d = delta(rep.model, std::min(std::exp(std::min(y, Y)), cfg.x_max));
        rep.delta_min = std::min(rep.delta_min, d);
        rep.delta_max = std::max(rep.delta_max, d);
    }
    return rep;
}

ordered_json report_json(const MeanSquareReport& rep, const RunConfig& cfg) {
    const auto& m = rep.model;
    ordered_json chars = ordered_json::object();
    for (const auto& [desc, c] : m.character_coefficients)
        chars[desc] = {{"re", c.real()}, {"im", c.imag()}};
    ordered_json j{
        {"set", m.set.to_string()},
        {"ref", m.reference.to_string()},
        {"xmax", cfg.x_max},
        {"T", m.T},
        {"nu", m.nu.real()},
        {"kappa", m.kappa.value()},
        // headline statistic: the unsmoothed mean square
        {"prediction", rep.unsmoothed.prediction ? ordered_json(*rep.unsmoothed.prediction)
                                                 : ordered_json(nullptr)},
        {"empirical", rep.unsmoothed.empirical},
        {"ratio", rep.unsmoothed.prediction && *rep.unsmoothed.prediction > 0
                      ? ordered_json(rep.unsmoothed.empirical / *rep.unsmoothed.prediction)
                      : ordered_json(nullptr)},
        {"certified", m.certified},
        {"zero_terms", m.zero_terms.size()},
        {"merged_ordinates", m.merged_ordinates},
        {"c_chi", chars},
        {"smoothed",
         {{"empirical", rep.smoothed.empirical},
          {"prediction", rep.smoothed.prediction ? ordered_json(*rep.smoothed.prediction)
                                                 : ordered_json(nullptr)},
          {"ratio", rep.smoothed.prediction && *rep.smoothed.prediction > 0
                        ? ordered_json(rep.smoothed.empirical / *rep.smoothed.prediction)
                        : ordered_json(nullptr)}}},
        {"delta_min", rep.delta_min},
        {"delta_max", rep.delta_max},
        {"unsmoothed",
         {{"empirical", rep.unsmoothed.empirical},
          {"prediction", rep.unsmoothed.prediction ? ordered_json(*rep.unsmoothed.prediction)
                                                   : ordered_json(nullptr)},
          {"ratio", rep.unsmoothed.prediction && *rep.unsmoothed.prediction > 0
                        ? ordered_json(rep.unsmoothed.empirical / *rep.unsmoothed.prediction)
                        : ordered_json(nullptr)},
          {"residual_mean_square",
           rep.unsmoothed.residual_mean_square ? ordered_json(*rep.unsmoothed.residual_mean_square)
                                               : ordered_json(nullptr)},
          {"lemma_hypothesis_ok", rep.unsmoothed.lemma_hypothesis_ok}}},
        {"diagnostics", m.diagnostics},
    };
    return j;
}

void write_mean_square_csv(const MeanSquareReport& rep, const RunConfig& cfg) {
    if (cfg.csv.empty()) return;
    std::string out = "y,empirical,predicted,residual\n";
    double Y = std::log(cfg.x_max);
    for (double y = std::log(2.0); y <= Y + 1e-12; y += 0.01) {
        double yy = std::min(y, Y);
        double emp = delta(rep.model, std::min(std::exp(yy), cfg.x_max));
        double pred = 0.0;
        if (rep.model.has_predictions)
            pred = (zero_sum_value(rep.model, yy, rep.model.T) + rep.model.nu).real();
        out += fmt(yy);
        out += ",";
        out += fmt(emp);
        out += ",";
        out += fmt(pred);
        out += ",";
        out += fmt(emp - pred);
        out += "\n";
    }
    write_text_file(cfg.csv, out);
}

void print_mean_square(const MeanSquareReport& rep) {
    const auto& m = rep.model;
    std::printf("set: %s\nref: %s\n", m.set.to_string().c_str(),
                m.reference.to_string().c_str());
    if (m.has_predictions) {
        std::printf("model: nu=%s kappa=%s T=%s zero_terms=%zu certified=%s\n",
                    fmt(m.nu.real()).c_str(), fmt(m.kappa.value()).c_str(), fmt(m.T).c_str(),
                    m.zero_terms.size(), m.certified ? "true" : "false");
        for (const auto& [desc, c] : m.character_coefficients)
            std::printf("  c_chi[%s] = %s\n", desc.c_str(), fmt_cplx(c).c_str());
        if (m.character_coefficients.empty() && std::abs(m.nu) == 0.0)
            std::printf("  degenerate model: the discrepancy is identically zero and every\n"
                        "  coefficient vanishes; positivity arguments do not apply here\n");
    } else {
        std::printf("model: empirical only (no L-function structure); predictions undefined\n");
    }
    for (const auto& d : m.diagnostics) std::printf("  note: %s\n", d.c_str());
    auto ratio = [](double emp, const std::optional<double>& pred) {
        if (!pred || *pred <= 0.0) return std::string("n/a");
        return std::string(fmt(emp / *pred));
    };
    std::printf("smoothed:   empirical=%-14s prediction=%-14s ratio=%s\n",
                fmt(rep.smoothed.empirical).c_str(),
                rep.smoothed.prediction ? fmt(*rep.smoothed.prediction).c_str() : "none",
                ratio(rep.smoothed.empirical, rep.smoothed.prediction).c_str());
    std::printf("unsmoothed: empirical=%-14s prediction=%-14s ratio=%s\n",
                fmt(rep.unsmoothed.empirical).c_str(),
                rep.unsmoothed.prediction ? fmt(*rep.unsmoothed.prediction).c_str() : "none",
                ratio(rep.unsmoothed.empirical, rep.unsmoothed.prediction).c_str());
    if (rep.unsmoothed.residual_mean_square)
        std::printf("residual:   mean square=%s (lemma hypothesis %s)\n",
                    fmt(*rep.unsmoothed.residual_mean_square).c_str(),
                    rep.unsmoothed.lemma_hypothesis_ok ? "satisfied" : "VIOLATED");
    std::printf("delta range on the grid: [%s, %s]\n", fmt(rep.delta_min).c_str(),
                fmt(rep.delta_max).c_str());
}

int cmd_mean_square(const RunConfig& cfg) {
    if (cfg.set.empty()) {
        std::fprintf(stderr, "mean-square: --set is required\n");
        return 2;
    }
    PrimeSetSpec set = parse_set_spec(cfg.set);
    ReferenceSpec ref = parse_reference_spec(cfg.ref);
    PrimeTable table = load_table(static_cast<std::uint64_t>(cfg.x_max), cache_root(cfg));
    ZeroDatabase db;
    MeanSquareReport rep = run_mean_square(set, ref, table, db, cfg, true);
    print_mean_square(rep);
    write_mean_square_csv(rep, cfg);
    ordered_json j = report_json(rep, cfg);
    j["command"] = "mean-square";
    emit_json(cfg, j);
    return rep.model.certified ? 0 : 3;
}

int cmd_witness(const RunConfig& cfg) {
    if (cfg.x_max < 1e4) {
        std::fprintf(stderr, "witness: xmax must be at least 1e4\n");
        return 2;
    }
    PrimeTable table = load_table(static_cast<std::uint64_t>(cfg.x_max), cache_root(cfg));

    // exact parity identity at every integer x <= x_max
    std::uint64_t xmax = static_cast<std::uint64_t>(cfg.x_max);
    std::uint64_t total = 0, podd_count = 0;
    std::size_t ip = 0;
    for (std::uint64_t x = 2; x <= xmax; ++x) {
        while (ip < table.primes.size() && table.primes[ip] <= x) {
            ++total;
            if (total % 2 == 1) ++podd_count;
            ++ip;
        }
        double diff = static_cast<double>(podd_count) - static_cast<double>(total) / 2.0;
        double expected = (total % 2 == 1) ? 0.5 : 0.0;
        if (diff != expected)
            throw identity_violation("P_odd(x) - pi(x)/2 parity identity failed at x = " +
                                     std::to_string(x));
    }
    std::printf("P_odd identity: PASS at every x <= %llu (%llu primes)\n",
                static_cast<unsigned long long>(xmax), static_cast<unsigned long long>(total));

    ZeroDatabase db;
    PrimeSetSpec control = parse_set_spec(cfg.control);
    ReferenceSpec control_ref = ReferenceSpec::pi_scaled();
    MeanSquareReport control_rep = run_mean_square(control, control_ref, table, db, cfg, true);

    PrimeSetSpec podd = PrimeSetSpec::podd();
    ReferenceSpec podd_ref = ReferenceSpec::pi_scaled(Rat64(1, 2));
    MeanSquareReport podd_rep = run_mean_square(podd, podd_ref, table, db, cfg, false);

    std::printf("\n--- control: %s ---\n", cfg.control.c_str());
    print_mean_square(control_rep);
    std::printf("\n--- P_odd vs pi/2 ---\n");
    print_mean_square(podd_rep);

    double control_ms = control_rep.unsmoothed.empirical;
    double podd_un = podd_rep.unsmoothed.empirical;
    double podd_sm = podd_rep.smoothed.empirical;
    bool control_alive = control_ms > 0.05;
    bool podd_quiet = podd_un < 0.01 && podd_sm < 0.01;
    std::printf("\nwitness: control mean square %s %s 0.05; "
                "P_odd unsmoothed %s, smoothed %s %s 0.01\n",
                fmt(control_ms).c_str(), control_alive ? ">" : "<=",
                fmt(podd_un).c_str(), fmt(podd_sm).c_str(), podd_quiet ? "<" : ">=");
    std::printf("verdict: %s\n",
                control_alive && podd_quiet
                    ? "P_odd is too quiet to be a union of residue or Frobenius classes"
                    : "INCONCLUSIVE at this range");

    if (!cfg.csv.empty()) {
        std::string out = "y,control_delta,podd_delta\n";
        double Y = std::log(cfg.x_max);
        for (double y = std::log(2.0); y <= Y + 1e-12; y += 0.01) {
            double yy = std::min(y, Y);
            double x = std::min(std::exp(yy), cfg.x_max);
            out += fmt(yy);
            out += ",";
            out += fmt(delta(control_rep.model, x));
            out += ",";
            out += fmt(delta(podd_rep.model, x));
            out += "\n";
        }
        write_text_file(cfg.csv, out);
    }
    ordered_json jc = report_json(control_rep, cfg);
    ordered_json jp = report_json(podd_rep, cfg);
    emit_json(cfg, ordered_json{{"command", "witness"},
                                {"xmax", cfg.x_max},
                                {"identity_checked_to", xmax},
                                {"control", jc},
                                {"podd", jp},
                                {"control_alive", control_alive},
                                {"podd_quiet", podd_quiet}});
    return control_rep.model.certified ? 0 : 3;
}

int cmd_dirichlet_check(const RunConfig& cfg) {
    if (cfg.set.empty()) {
        std::fprintf(stderr, "dirichlet-check: --set is required\n");
        return 2;
    }
    PrimeSetSpec set = parse_set_spec(cfg.set);
    if (set.kind() != PrimeSetSpec::Kind::residue_union) {
        std::fprintf(stderr, "dirichlet-check: only residue sets have this identity\n");
        return 2;
    }
    PrimeTable table = load_table(static_cast<std::uint64_t>(cfg.x_cut), cache_root(cfg));
    auto check = dirichlet_integral_check(set.as_residue(), cplx{cfg.s_real, 0.0}, cfg.x_cut,
                                          table);
    std::printf("s=%s xcut=%s\nlhs = %s\nrhs = %s\ngap = %s (truncation tail bound %s)\n",
                fmt(cfg.s_real).c_str(), fmt(cfg.x_cut).c_str(), fmt_cplx(check.lhs).c_str(),
                fmt_cplx(check.rhs).c_str(), fmt(check.gap).c_str(),
                fmt(check.tail_bound).c_str());
    emit_json(cfg, ordered_json{{"command", "dirichlet-check"},
                                {"set", set.to_string()},
                                {"s", cfg.s_real},
                                {"xcut", cfg.x_cut},
                                {"lhs_re", check.lhs.real()},
                                {"lhs_im", check.lhs.imag()},
                                {"rhs_re", check.rhs.real()},
                                {"rhs_im", check.rhs.imag()},
                                {"gap", check.gap},
                                {"tail_bound", check.tail_bound}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // a config file provides defaults; explicit flags override
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) {
                std::fprintf(stderr, "cannot open config file %s\n", argv[i + 1]);
                return 2;
            }
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            try {
                cfg = RunConfig::from_text(text);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "config error: %s\n", e.what());
                return 2;
            }
        }
    }

    CLI::App app{"cheb-lab: discrepancies of prime sets against their L-function predictions"};
    app.require_subcommand(0, 1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (flags override)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (or $CHEB_CACHE_DIR)");
        sub->add_option("--json", cfg.json, "write a JSON summary here");
        sub->add_option("--csv", cfg.csv, "write per-point CSV here");
    };

    CLI::App* sc_catalog = app.add_subcommand("catalog", "list the extension catalog");

    CLI::App* sc_zeros = app.add_subcommand("zeros", "isolate L-function zeros");
    sc_zeros->add_option("--q", cfg.q, "character modulus");
    sc_zeros->add_option("--index", cfg.index, "character index");
    sc_zeros->add_option("--height", cfg.height, "ordinate height T");
    sc_zeros->add_option("--grid-step", cfg.grid_step, "scan grid step");
    sc_zeros->add_option("--out", cfg.out, "zero-database file to write");
    add_common(sc_zeros);

    CLI::App* sc_census = app.add_subcommand("census", "Frobenius class frequencies");
    sc_census->add_option("--ext", cfg.ext, "extension id");
    sc_census->add_option("--xmax", cfg.x_max, "census bound");
    add_common(sc_census);

    CLI::App* sc_witness = app.add_subcommand("witness", "P_odd vs a control residue set");
    sc_witness->add_option("--xmax", cfg.x_max, "sieve bound");
    sc_witness->add_option("--height", cfg.height, "zero height for the control model");
    sc_witness->add_option("--control", cfg.control, "control set spec");
    sc_witness->add_option("--grid-step", cfg.grid_step, "zero scan grid step");
    sc_witness->add_flag("--allow-uncertified", cfg.allow_uncertified,
                         "use uncertified zero sets");
    add_common(sc_witness);

    CLI::App* sc_ms = app.add_subcommand("mean-square", "discrepancy mean squares vs prediction");
    sc_ms->add_option("--set", cfg.set, "set specification");
    sc_ms->add_option("--ref", cfg.ref, "reference: pi, pi-half, li, field:<d>, set:<spec>");
    sc_ms->add_option("--xmax", cfg.x_max, "sieve bound (Y = log xmax)");
    sc_ms->add_option("--height", cfg.height, "zero truncation height T");
    sc_ms->add_option("--grid-step", cfg.grid_step, "zero scan grid step");
    sc_ms->add_flag("--allow-uncertified", cfg.allow_uncertified, "use uncertified zero sets");
    add_common(sc_ms);

    CLI::App* sc_di = app.add_subcommand("dirichlet-check", "Dirichlet-integral identity");
    sc_di->add_option("--set", cfg.set, "residue set specification");
    sc_di->add_option("--s", cfg.s_real, "evaluation point (real, >= 1.5)");
    sc_di->add_option("--xcut", cfg.x_cut, "integral truncation");
    add_common(sc_di);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_catalog->parsed()) return cmd_catalog();
        if (sc_zeros->parsed()) return cmd_zeros(cfg);
        if (sc_census->parsed()) return cmd_census(cfg);
        if (sc_witness->parsed()) return cmd_witness(cfg);
        if (sc_ms->parsed()) return cmd_mean_square(cfg);
        if (sc_di->parsed()) return cmd_dirichlet_check(cfg);
        if (!cfg.command.empty()) {
            if (cfg.command == "catalog") return cmd_catalog();
            if (cfg.command == "zeros") return cmd_zeros(cfg);
            if (cfg.command == "census") return cmd_census(cfg);
            if (cfg.command == "witness") return cmd_witness(cfg);
            if (cfg.command == "mean-square") return cmd_mean_square(cfg);
            if (cfg.command == "dirichlet-check") return cmd_dirichlet_check(cfg);
            std::fprintf(stderr, "unknown command '%s'\n", cfg.command.c_str());
            return 2;
        }
        std::puts(app.help().c_str());
        return 0;
    } catch (const identity_violation& e) {
        std::fprintf(stderr, "exact identity violated: %s\n", e.what());
        return 4;
    } catch (const uncertified_error& e) {
        std::fprintf(stderr, "uncertified analytic data: %s\n", e.what());
        return 3;
    } catch (const parse_error& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
