#include "ltlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "ltlab/local_time.hpp"
#include "ltlab/lt_integrals.hpp"
#include "ltlab/parallel.hpp"
#include "ltlab/simulate.hpp"
#include "ltlab/variation.hpp"

namespace ltlab {
namespace {

constexpr const char* kNone = "none";

ReportRow base_row(const ExperimentConfig& c, std::uint64_t path_id, const SpaceGrid& space) {
    ReportRow row;
    row.experiment = to_string(c.experiment);
    row.process = process_kind(c.process);
    row.base_seed = c.base_seed;
    row.path_id = path_id;
    row.t_end = c.t_end;
    row.n_steps = c.n_steps;
    row.n_bins = space.n_bins();
    return row;
}

void fill(ReportRow& row, const EstimatorResult& r, const std::string& variant, const std::string& sign) {
    row.epsilon = r.epsilon;
    row.variant = variant;
    row.sign_convention = sign;
    row.lhs = r.lhs;
    row.rhs = r.rhs;
    row.abs_err = r.abs_err;
    row.rel_err = r.rel_err;
}

LocalTimeSheet make_sheet(const ExperimentConfig& c, const Path& path, const SpaceGrid& space) {
    if (c.sheet_intervals == 0) return dense_local_time_sheet(path, space, c.t_end);
    std::vector<double> cps(c.sheet_intervals + 1);
    const std::size_t stride = c.n_steps / c.sheet_intervals;
    for (std::size_t k = 0; k < cps.size(); ++k) cps[k] = path.grid.point(k * stride);
    return local_time_sheet(path, space, cps);
}

std::vector<ReportRow> rows_for_path(const ExperimentConfig& c, const TestFunction& f, std::uint64_t path_id) {
    const TimeGrid grid = make_time_grid(c.t_end, c.n_steps);
    const Path path = simulate(c.process, grid, SeedPolicy{c.base_seed, path_id}, c.qv_mode);
    const SpaceGrid space = space_for(c, path);
    const double t = c.t_end;
    const double width = space.width();
    std::vector<ReportRow> rows;
    auto add = [&](const EstimatorResult& r, const std::string& variant, const std::string& sign) {
        ReportRow row = base_row(c, path_id, space);
        fill(row, r, variant, sign);
        rows.push_back(std::move(row));
    };

    switch (c.experiment) {
        case Experiment::conservation: {
            const LocalTimeField field = occupation_local_time(path, space, t);
            const double qv_realized = realized_qv(path.values).back();
            add(EstimatorResult::make(width, field.total_mass(), qv_realized, Variant::forward,
                                      SignConvention::resolved),
                kNone, kNone);
            break;
        }
        case Experiment::theorem1:
        case Experiment::theorem2: {
            validate_eps_ladder(c.eps_ladder, width);
            const double integral = c.experiment == Experiment::theorem1
                                        ? stieltjes_space_integral(f, occupation_local_time(path, space, t))
                                        : two_param_integral(f, make_sheet(c, path, space));
            for (double eps : c.eps_ladder) {
                for (Variant v : c.effective_variants()) {
                    const double left = lhs(v, f, path, eps, t);
                    for (SignConvention sc : c.sign_conventions()) {
                        add(EstimatorResult::make(eps, left, theorem_rhs(v, sc, integral), v, sc), to_string(v),
                            to_string(sc));
                    }
                }
            }
            break;
        }
        case Experiment::identity27: {
            for (int m : c.identity_m) {
                const IdentityCheck r = identity_check(f, path, space, m, t);
                add(EstimatorResult::make(m * width, r.lhs, r.rhs, Variant::forward, SignConvention::resolved),
                    "forward", "resolved");
            }
            break;
        }
        case Experiment::occupation31: {
            const OccupationCheck r = occupation_formula_check(f, path, make_sheet(c, path, space));
            add(EstimatorResult::make(width, r.lhs, r.rhs, Variant::forward, SignConvention::resolved), kNone, kNone);
            break;
        }
        case Experiment::localtime_stats: {
            const LocalTimeField field = occupation_local_time(path, space, t);
            add(EstimatorResult::make(width, field.at_level(c.level), tanaka_local_time(path, c.level),
                                      Variant::forward, SignConvention::resolved),
                kNone, kNone);
            break;
        }
        case Experiment::pvariation_audit:
            break;  // path independent, handled by run_experiment
    }
    return rows;
}

std::vector<ReportRow> pvariation_rows(const ExperimentConfig& c, const TestFunction& f) {
    const double lo = c.space.automatic ? -2.0 : c.space.x_min;
    const double hi = c.space.automatic ? 2.0 : c.space.x_max;
    const double margin = *std::max_element(c.eps_ladder.begin(), c.eps_ladder.end());
    const auto samples = sample_points_with_breakpoints(f, lo, hi + margin, 1001);
    std::vector<ReportRow> rows;
    for (double eps : c.eps_ladder) {
        for (double p : c.p_values) {
            const ContractionResult r = mollifier_contraction_check(f, eps, p, samples);
            ReportRow row;
            row.experiment = to_string(c.experiment);
            row.process = process_kind(c.process);
            row.base_seed = c.base_seed;
            row.path_id = 0;
            row.t_end = c.t_end;
            row.n_steps = c.n_steps;
            row.n_bins = samples.size();
            std::ostringstream variant;
            variant << "p=" << p;
            fill(row, EstimatorResult::make(eps, r.v_h, r.v_f, Variant::forward, SignConvention::resolved),
                 variant.str(), kNone);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<double, double> mean_se(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return {mean, sd / std::sqrt(static_cast<double>(v.size()))};
}

}  // namespace

SpaceGrid space_for(const ExperimentConfig& c, const Path& path) {
    if (!c.space.automatic) return SpaceGrid(c.space.x_min, c.space.x_max, c.space.n_bins);
    const auto [lo, hi] = path_range(path);
    const double margin = 0.1 * (hi - lo);
    int max_m = 1;
    for (int m : c.identity_m) max_m = std::max(max_m, m);
    const auto pad = static_cast<std::size_t>(max_m);
    const double w = c.space.bin_width;
    if (c.align_breakpoints) return SpaceGrid::snapped(lo - margin, hi + margin, w, pad);
    const double x_min = lo - margin - static_cast<double>(pad) * w;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo + 2.0 * margin) / w)) + 1 + 2 * pad;
    return SpaceGrid(x_min, x_min + static_cast<double>(n) * w, n);
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config, std::size_t threads) {
    validate(config);
    const TestFunction f = config.effective_function();
    if (config.experiment == Experiment::pvariation_audit) return pvariation_rows(config, f);

    std::vector<std::vector<ReportRow>> per_path(config.n_paths);
    parallel_for(config.n_paths, threads, [&](std::size_t id) {
        try {
            per_path[id] = rows_for_path(config, f, id);
        } catch (const std::exception& e) {
            throw std::runtime_error("path_id " + std::to_string(id) + ": " + e.what());
        }
    });
    std::vector<ReportRow> rows;
    for (auto& chunk : per_path) {
        rows.insert(rows.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    }
    return rows;
}

std::size_t resolve_threads(std::optional<std::size_t> requested) {
    if (requested && *requested > 0) return *requested;
    if (const char* env = std::getenv("LTLAB_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SummaryLine> summarize(const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw InvalidArgument("summarize: no rows");
    using Key = std::tuple<std::string, std::string, std::string, double>;
    std::vector<Key> order;
    std::map<Key, std::vector<const ReportRow*>> groups;
    for (const auto& r : rows) {
        Key key{r.experiment, r.variant, r.sign_convention, r.epsilon};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }
    std::vector<SummaryLine> out;
    for (const auto& key : order) {
        const auto& g = groups[key];
        std::vector<double> abs_err, rel_err, lhs, rhs;
        for (const ReportRow* r : g) {
            abs_err.push_back(r->abs_err);
            rel_err.push_back(r->rel_err);
            lhs.push_back(r->lhs);
            rhs.push_back(r->rhs);
        }
        SummaryLine s;
        std::tie(s.experiment, s.variant, s.sign_convention, s.epsilon) = key;
        s.count = g.size();
        s.mean_abs_err = mean_se(abs_err).first;
        s.median_abs_err = median(abs_err);
        s.max_abs_err = *std::max_element(abs_err.begin(), abs_err.end());
        s.mean_rel_err = mean_se(rel_err).first;
        s.median_rel_err = median(rel_err);
        s.max_rel_err = *std::max_element(rel_err.begin(), rel_err.end());
        std::tie(s.mean_lhs, s.se_lhs) = mean_se(lhs);
        std::tie(s.mean_rhs, s.se_rhs) = mean_se(rhs);
        out.push_back(std::move(s));
    }
    return out;
}

bool run_selftest(std::ostream& out) {
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, double worst) {
        out << (ok ? "PASS " : "FAIL ") << name << "  (worst " << worst << ")\n";
        all_ok = all_ok && ok;
    };

    const TimeGrid grid = make_time_grid(1.0, 4096);
    const std::vector<ProcessSpec> processes = {
        Brownian{},          DriftedBrownian{0.5, 0.8},       OrnsteinUhlenbeck{2.0, 1.0, 0.3},
        GeometricBrownian{0.1, 0.4, 1.0}, Deterministic{"linear"}, Deterministic{"sine"},
        Deterministic{"zigzag"},          Deterministic{"constant"},
    };
    auto paths_for = [&](const ProcessSpec& spec) {
        std::vector<Path> paths;
        for (std::uint64_t id = 0; id < 8; ++id) paths.push_back(simulate(spec, grid, SeedPolicy{7, id}));
        return paths;
    };
    auto grid_for = [](const Path& p, std::size_t pad) {
        const auto [lo, hi] = path_range(p);
        return SpaceGrid::snapped(lo, hi, 0x1.0p-7, pad);
    };

    {
        double worst = 0.0;
        for (const auto& spec : processes) {
            for (const auto& p : paths_for(spec)) {
                const auto field = occupation_local_time(p, grid_for(p, 1), 1.0);
                worst = std::max(worst, conservation_defect(field, p.qv.back()) / std::max(1.0, p.qv.back()));
            }
        }
        report("conservation: sum L dx = qv_t", worst <= 1e-12, worst);
    }

    const std::vector<TestFunction> catalog = {
        TestFunction::constant(2.5),
        TestFunction::indicator(0.0),
        TestFunction::linear(),
        TestFunction::step_combo({-0.5, 0.0, 0.5}, {1.0, -2.0, 1.5}),
        TestFunction::holder(0.75, 0.1),
        TestFunction::cosine(),
    };
    const auto bm = paths_for(Brownian{});

    {
        double worst = 0.0;
        for (const auto& p : bm) {
            const auto field = occupation_local_time(p, grid_for(p, 1), 1.0);
            const double a = field.space.edge(field.space.n_bins() / 2);
            const double v = stieltjes_space_integral(TestFunction::indicator(a), field);
            worst = std::max(worst, std::abs(v - field.at_level(a)) / std::max(1.0, field.at_level(a)));
        }
        report("stieltjes(1{x<=a}) = L^a", worst <= 1e-12, worst);
    }
    {
        double worst = 0.0;
        for (const auto& p : bm) {
            const auto field = occupation_local_time(p, grid_for(p, 1), 1.0);
            const double v = stieltjes_space_integral(TestFunction::linear(), field);
            worst = std::max(worst, std::abs(v + p.qv.back()) / p.qv.back());
        }
        report("stieltjes(x) = -qv_t", worst <= 1e-10, worst);
    }
    {
        double worst = 0.0;
        const std::vector<double> ladder{0.125, 0.0625, 0.03125};
        for (const auto& p : bm) {
            for (const auto& r : theorem_convergence(TestFunction::linear(), Variant::forward, p, ladder,
                                                     grid_for(p, 1), 1.0)) {
                worst = std::max(worst, r.rel_err);
            }
        }
        report("theorem1 forward, F(x) = x: lhs = rhs", worst <= 1e-10, worst);
    }
    {
        double worst = 0.0;
        for (const auto& p : bm) {
            for (const auto& f : catalog) {
                for (int m : {1, 2, 4}) {
                    worst = std::max(worst, identity_check(f, p, grid_for(p, 4), m, 1.0).rel_defect);
                }
            }
        }
        report("identity int H_eps dL = difference quotient", worst <= 1e-10, worst);
    }
    {
        double worst = 0.0;
        for (const auto& p : bm) {
            const auto space = grid_for(p, 1);
            const auto sheet = dense_local_time_sheet(p, space, 1.0);
            const auto field = occupation_local_time(p, space, 1.0);
            for (const auto& f : catalog) {
                const double a = two_param_integral(f, sheet);
                const double b = stieltjes_space_integral(f, field);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        }
        report("two-parameter integral reduces to space integral", worst <= 1e-12, worst);
    }
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
            std::vector<double> xs(n);
            for (auto& x : xs) x = u(rng);
            const double p = 1.0 + 0.9 * (trial % 4) / 3.0;
            double brute = 0.0;
            const std::size_t interior = n - 2;
            for (std::uint64_t mask = 0; mask < (1ULL << interior); ++mask) {
                double s = 0.0;
                std::size_t prev = 0;
                for (std::size_t i = 1; i < n; ++i) {
                    if (i < n - 1 && !(mask >> (i - 1) & 1ULL)) continue;
                    s += std::pow(std::abs(xs[i] - xs[prev]), p);
                    prev = i;
                }
                brute = std::max(brute, s);
            }
            ok = brute == p_variation(xs, p);
        }
        report("p-variation recursion = enumeration", ok, ok ? 0.0 : 1.0);
    }
    return all_ok;
}

}  // namespace ltlab
