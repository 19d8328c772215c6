#include "ltlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ltlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Entry {
    std::string value;
    std::size_t line;
};

const std::set<std::string> kKnownKeys = {
    "experiment", "process",      "mu",         "sigma",        "theta",          "x0",
    "path_name",  "t_end",        "n_steps",    "n_paths",      "base_seed",      "space",
    "bin_width",  "x_min",        "x_max",      "n_bins",       "align_breakpoints",
    "eps_ladder", "function",     "variant",    "sign_convention", "qv_mode",     "level",
    "identity_m", "p_values",     "sheet_intervals", "output",  "format",
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    std::size_t line(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }
    const std::string& raw(const std::string& key) const { return entries_.at(key).value; }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(line(key), key, what);
    }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return to_double(key, raw(key));
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const std::string& v = raw(key);
        std::uint64_t out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size()) fail(key, "expected a nonnegative integer, got '" + v + "'");
        return out;
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string& v = raw(key);
        if (v == "true") return true;
        if (v == "false") return false;
        fail(key, "expected true or false, got '" + v + "'");
    }

    std::vector<std::string> list(const std::string& key) const {
        std::vector<std::string> out;
        std::string_view rest = raw(key);
        while (true) {
            const auto comma = rest.find(',');
            out.emplace_back(trim(rest.substr(0, comma)));
            if (out.back().empty()) fail(key, "empty list element");
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return out;
    }

    double to_double(const std::string& key, std::string_view v) const {
        double out = 0.0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
            fail(key, "expected a finite number, got '" + std::string(v) + "'");
        }
        return out;
    }

private:
    std::map<std::string, Entry> entries_;
};

std::map<std::string, Entry> tokenize(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(line_no, "", "missing key");
        if (!kKnownKeys.count(key)) throw ConfigError(line_no, key, "unknown key");
        if (entries.count(key)) throw ConfigError(line_no, key, "duplicate key");
        if (value.empty() && key != "output") throw ConfigError(line_no, key, "missing value");
        entries.emplace(std::move(key), Entry{std::move(value), line_no});
    }
    return entries;
}

ProcessSpec read_process(const Reader& r) {
    const std::string kind = r.has("process") ? r.raw("process") : "brownian";
    std::set<std::string> allowed;
    ProcessSpec spec;
    if (kind == "brownian") {
        spec = Brownian{};
    } else if (kind == "drifted_brownian") {
        allowed = {"mu", "sigma"};
        spec = DriftedBrownian{r.number("mu", 0.0), r.number("sigma", 1.0)};
    } else if (kind == "ornstein_uhlenbeck") {
        allowed = {"theta", "sigma", "x0"};
        spec = OrnsteinUhlenbeck{r.number("theta", 1.0), r.number("sigma", 1.0), r.number("x0", 0.0)};
    } else if (kind == "geometric_brownian") {
        allowed = {"mu", "sigma", "x0"};
        spec = GeometricBrownian{r.number("mu", 0.0), r.number("sigma", 1.0), r.number("x0", 1.0)};
    } else if (kind == "deterministic") {
        allowed = {"path_name"};
        spec = Deterministic{r.has("path_name") ? r.raw("path_name") : "linear"};
    } else {
        r.fail("process", "unknown process '" + kind + "'");
    }
    for (const char* key : {"mu", "sigma", "theta", "x0", "path_name"}) {
        if (r.has(key) && !allowed.count(key)) r.fail(key, "does not apply to process " + kind);
    }
    return spec;
}

template <class T>
std::string join(const std::vector<T>& xs, auto fmt) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& key, const std::string& what)
    : InvalidArgument([&] {
          std::ostringstream msg;
          msg << "config";
          if (line) msg << " line " << line;
          if (!key.empty()) msg << " (" << key << ")";
          msg << ": " << what;
          return msg.str();
      }()),
      line_(line),
      key_(key),
      detail_(what) {}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::conservation: return "conservation";
        case Experiment::theorem1: return "theorem1";
        case Experiment::theorem2: return "theorem2";
        case Experiment::identity27: return "identity27";
        case Experiment::occupation31: return "occupation31";
        case Experiment::localtime_stats: return "localtime_stats";
        case Experiment::pvariation_audit: return "pvariation_audit";
    }
    return "conservation";
}

Experiment parse_experiment(const std::string& s) {
    for (auto e : {Experiment::conservation, Experiment::theorem1, Experiment::theorem2, Experiment::identity27,
                   Experiment::occupation31, Experiment::localtime_stats, Experiment::pvariation_audit}) {
        if (to_string(e) == s) return e;
    }
    throw InvalidArgument("unknown experiment '" + s + "'");
}

TestFunction ExperimentConfig::effective_function() const {
    if (function) return *function;
    switch (experiment) {
        case Experiment::theorem2: return TestFunction::product(TimeFactor::identity, TestFunction::indicator(0.0));
        case Experiment::occupation31: return TestFunction::product(TimeFactor::exp_decay, TestFunction::cosine());
        default: return TestFunction::step_combo({-0.5, 0.0, 0.5}, {1.0, -2.0, 1.5});
    }
}

std::vector<Variant> ExperimentConfig::effective_variants() const {
    if (!variants.empty()) return variants;
    if (experiment == Experiment::theorem2) return {Variant::backward, Variant::symmetric};
    return {Variant::forward};
}

std::vector<SignConvention> ExperimentConfig::sign_conventions() const {
    switch (sign_convention) {
        case SignChoice::resolved: return {SignConvention::resolved};
        case SignChoice::paper: return {SignConvention::paper};
        case SignChoice::both: return {SignConvention::resolved, SignConvention::paper};
    }
    return {SignConvention::resolved};
}

void validate(const ExperimentConfig& c) {
    auto fail = [](const std::string& key, const std::string& what) { throw ConfigError(0, key, what); };
    if (!(c.t_end > 0.0)) fail("t_end", "must be positive");
    if (c.n_steps < 1) fail("n_steps", "must be at least 1");
    if (c.n_paths < 1) fail("n_paths", "must be at least 1");
    if (c.space.automatic) {
        if (!(c.space.bin_width > 0.0)) fail("bin_width", "must be positive");
    } else {
        if (!(c.space.x_min < c.space.x_max)) fail("x_max", "must exceed x_min");
        if (c.space.n_bins < 1) fail("n_bins", "must be at least 1");
    }
    const double width = c.space.width();
    if (c.eps_ladder.empty()) fail("eps_ladder", "must not be empty");
    for (std::size_t i = 1; i < c.eps_ladder.size(); ++i) {
        if (!(c.eps_ladder[i] < c.eps_ladder[i - 1])) fail("eps_ladder", "must be strictly decreasing");
    }
    if (!(c.eps_ladder.back() >= width)) {
        fail(c.space.automatic ? "bin_width" : "n_bins",
             "bin width " + shortest(width) + " exceeds the smallest eps " + shortest(c.eps_ladder.back()));
    }
    for (int m : c.identity_m) {
        if (m < 1) fail("identity_m", "entries must be >= 1");
    }
    for (double p : c.p_values) {
        if (!(p >= 1.0)) fail("p_values", "entries must be >= 1");
    }
    if (c.experiment == Experiment::theorem1 && c.effective_function().arity() != Arity::space_only) {
        fail("function", "theorem1 needs a space-only function");
    }
    if ((c.experiment == Experiment::identity27 || c.experiment == Experiment::pvariation_audit) &&
        c.effective_function().arity() != Arity::space_only) {
        fail("function", to_string(c.experiment) + " needs a space-only function");
    }
    if (c.sheet_intervals > c.n_steps) fail("sheet_intervals", "cannot exceed n_steps");
    if (c.sheet_intervals > 0 && c.n_steps % c.sheet_intervals != 0) {
        fail("sheet_intervals", "must divide n_steps");
    }
    // Name the offending parameter so the error points at its line.
    const std::string param = std::visit(
        overloaded{
            [](const Brownian&) { return std::string("process"); },
            [](const DriftedBrownian& p) { return std::string(p.sigma > 0.0 ? "process" : "sigma"); },
            [](const OrnsteinUhlenbeck& p) {
                return std::string(!(p.theta > 0.0) ? "theta" : !(p.sigma > 0.0) ? "sigma" : "process");
            },
            [](const GeometricBrownian& p) {
                return std::string(!(p.sigma > 0.0) ? "sigma" : !(p.x0 > 0.0) ? "x0" : "process");
            },
            [](const Deterministic&) { return std::string("path_name"); },
        },
        c.process);
    try {
        ltlab::validate(c.process);
    } catch (const InvalidArgument& e) {
        fail(param, e.what());
    }
}

ExperimentConfig parse_config(std::string_view text) {
    const Reader r(tokenize(text));
    ExperimentConfig c;

    if (!r.has("experiment")) throw ConfigError(0, "experiment", "required key missing");
    try {
        c.experiment = parse_experiment(r.raw("experiment"));
    } catch (const InvalidArgument& e) {
        r.fail("experiment", e.what());
    }
    c.process = read_process(r);
    c.t_end = r.number("t_end", c.t_end);
    c.n_steps = r.integer("n_steps", c.n_steps);
    c.n_paths = r.integer("n_paths", c.n_paths);
    c.base_seed = r.integer("base_seed", c.base_seed);

    const std::string space_mode = r.has("space") ? r.raw("space") : "auto";
    if (space_mode == "auto") {
        c.space.automatic = true;
        for (const char* key : {"x_min", "x_max", "n_bins"}) {
            if (r.has(key)) r.fail(key, "only applies with space = fixed");
        }
        c.space.bin_width = r.number("bin_width", c.space.bin_width);
    } else if (space_mode == "fixed") {
        c.space.automatic = false;
        if (r.has("bin_width")) r.fail("bin_width", "only applies with space = auto");
        if (r.has("align_breakpoints")) r.fail("align_breakpoints", "only applies with space = auto");
        c.space.x_min = r.number("x_min", c.space.x_min);
        c.space.x_max = r.number("x_max", c.space.x_max);
        c.space.n_bins = r.integer("n_bins", c.space.n_bins);
    } else {
        r.fail("space", "expected auto or fixed");
    }
    c.align_breakpoints = r.boolean("align_breakpoints", c.align_breakpoints);

    if (r.has("eps_ladder")) {
        c.eps_ladder.clear();
        for (const auto& v : r.list("eps_ladder")) c.eps_ladder.push_back(r.to_double("eps_ladder", v));
    }
    if (r.has("function")) {
        try {
            c.function = TestFunction::parse(r.raw("function"));
        } catch (const InvalidArgument& e) {
            r.fail("function", e.what());
        }
    }
    if (r.has("variant")) {
        for (const auto& v : r.list("variant")) {
            try {
                c.variants.push_back(parse_variant(v));
            } catch (const InvalidArgument& e) {
                r.fail("variant", e.what());
            }
        }
    }
    if (r.has("sign_convention")) {
        const auto& v = r.raw("sign_convention");
        if (v == "resolved") c.sign_convention = SignChoice::resolved;
        else if (v == "paper") c.sign_convention = SignChoice::paper;
        else if (v == "both") c.sign_convention = SignChoice::both;
        else r.fail("sign_convention", "expected resolved, paper or both");
    }
    if (r.has("qv_mode")) {
        const auto& v = r.raw("qv_mode");
        if (v == "realized") c.qv_mode = QvMode::realized;
        else if (v == "analytic") c.qv_mode = QvMode::analytic;
        else r.fail("qv_mode", "expected realized or analytic");
    }
    c.level = r.number("level", c.level);
    if (r.has("identity_m")) {
        c.identity_m.clear();
        for (const auto& v : r.list("identity_m")) {
            int m = 0;
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), m);
            if (ec != std::errc() || ptr != v.data() + v.size()) r.fail("identity_m", "expected integers");
            c.identity_m.push_back(m);
        }
    }
    if (r.has("p_values")) {
        c.p_values.clear();
        for (const auto& v : r.list("p_values")) c.p_values.push_back(r.to_double("p_values", v));
    }
    c.sheet_intervals = r.integer("sheet_intervals", c.sheet_intervals);
    if (r.has("output")) c.output = r.raw("output");
    if (r.has("format")) {
        const auto& v = r.raw("format");
        if (v == "csv") c.format = OutputFormat::csv;
        else if (v == "json") c.format = OutputFormat::json;
        else r.fail("format", "expected csv or json");
    }

    try {
        validate(c);
    } catch (const ConfigError& e) {
        if (r.has(e.key())) throw ConfigError(r.line(e.key()), e.key(), e.detail());
        throw;
    }
    return c;
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "experiment = " << to_string(c.experiment) << '\n';
    std::visit(overloaded{
                   [&](const Brownian&) { out << "process = brownian\n"; },
                   [&](const DriftedBrownian& p) {
                       out << "process = drifted_brownian\nmu = " << shortest(p.mu) << "\nsigma = " << shortest(p.sigma)
                           << '\n';
                   },
                   [&](const OrnsteinUhlenbeck& p) {
                       out << "process = ornstein_uhlenbeck\ntheta = " << shortest(p.theta)
                           << "\nsigma = " << shortest(p.sigma) << "\nx0 = " << shortest(p.x0) << '\n';
                   },
                   [&](const GeometricBrownian& p) {
                       out << "process = geometric_brownian\nmu = " << shortest(p.mu) << "\nsigma = "
                           << shortest(p.sigma) << "\nx0 = " << shortest(p.x0) << '\n';
                   },
                   [&](const Deterministic& d) { out << "process = deterministic\npath_name = " << d.name << '\n'; },
               },
               c.process);
    out << "t_end = " << shortest(c.t_end) << '\n';
    out << "n_steps = " << c.n_steps << '\n';
    out << "n_paths = " << c.n_paths << '\n';
    out << "base_seed = " << c.base_seed << '\n';
    if (c.space.automatic) {
        out << "space = auto\nbin_width = " << shortest(c.space.bin_width) << '\n';
        out << "align_breakpoints = " << (c.align_breakpoints ? "true" : "false") << '\n';
    } else {
        out << "space = fixed\nx_min = " << shortest(c.space.x_min) << "\nx_max = " << shortest(c.space.x_max)
            << "\nn_bins = " << c.space.n_bins << '\n';
    }
    out << "eps_ladder = " << join(c.eps_ladder, shortest) << '\n';
    if (c.function) out << "function = " << c.function->to_string() << '\n';
    if (!c.variants.empty()) {
        out << "variant = " << join(c.variants, [](Variant v) { return to_string(v); }) << '\n';
    }
    const char* sign = c.sign_convention == SignChoice::resolved ? "resolved"
                       : c.sign_convention == SignChoice::paper  ? "paper"
                                                                 : "both";
    out << "sign_convention = " << sign << '\n';
    out << "qv_mode = " << (c.qv_mode == QvMode::realized ? "realized" : "analytic") << '\n';
    out << "level = " << shortest(c.level) << '\n';
    out << "identity_m = " << join(c.identity_m, [](int m) { return std::to_string(m); }) << '\n';
    out << "p_values = " << join(c.p_values, shortest) << '\n';
    out << "sheet_intervals = " << c.sheet_intervals << '\n';
    if (!c.output.empty()) out << "output = " << c.output << '\n';
    out << "format = " << (c.format == OutputFormat::csv ? "csv" : "json") << '\n';
    return out.str();
}

std::string config_reference() {
    return R"(Config file: one `key = value` per line, `#` starts a comment.

  experiment        conservation | theorem1 | theorem2 | identity27 | occupation31
                    | localtime_stats | pvariation_audit              (required)
  process           brownian | drifted_brownian | ornstein_uhlenbeck
                    | geometric_brownian | deterministic               [brownian]
    mu, sigma       drifted_brownian, geometric_brownian              [0, 1]
    theta, sigma, x0  ornstein_uhlenbeck                               [1, 1, 0]
    x0              geometric_brownian                                 [1]
    path_name       deterministic: linear | sine | zigzag | constant   [linear]
  t_end             horizon                                            [1]
  n_steps           time steps                                         [65536]
  n_paths           Monte Carlo paths                                  [10]
  base_seed         64-bit base seed                                   [20240601]
  space             auto | fixed                                       [auto]
    bin_width       auto: bin width                                    [0.001953125]
    align_breakpoints  auto: edges on multiples of bin_width           [true]
    x_min, x_max, n_bins  fixed grid                                   [-4, 4, 4096]
  eps_ladder        strictly decreasing, min >= bin width
                                          [0.125, 0.0625, 0.03125, 0.015625, 0.0078125]
  function          catalog: constant(c) | indicator(a) | linear | cosine
                    | holder(alpha, c) | step_combo(a1:w1, a2:w2, ...)
                    | product(one|identity|exp_decay, <space function>)
                    [theorem2: product(identity, indicator(0));
                     occupation31: product(exp_decay, cosine);
                     otherwise step_combo(-0.5:1, 0:-2, 0.5:1.5)]
  variant           comma list of forward | backward | symmetric
                    [theorem2: backward, symmetric; otherwise forward]
  sign_convention   resolved | paper | both                            [resolved]
  qv_mode           realized | analytic                                [realized]
  level             local-time level for localtime_stats               [0]
  identity_m        eps = m * bin width for identity27                 [1, 2, 4]
  p_values          exponents for pvariation_audit                     [1, 1.5, 1.9]
  sheet_intervals   0 = checkpoint every step, else equal intervals    [0]
  output            output file, empty = stdout                        []
  format            csv | json                                         [csv]
)";
}

}  // namespace ltlab
