#include "muwave/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace muwave::cli {
namespace {

using nlohmann::json;

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        out.push_back(trim(item));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double parse_double(const std::string& text, const std::string& where)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError(where + ": expected a finite number, got '" + text + "'");
    return v;
}

int parse_int(const std::string& text, const std::string& where)
{
    const std::string t = trim(text);
    int v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size())
        throw ConfigError(where + ": expected an integer, got '" + text + "'");
    return v;
}

/// One section of the unified tree. Every key read is recorded so that
/// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& node, std::string name) : node_(node), name_(std::move(name))
    {
        if (!node_.is_object())
            throw ConfigError("section [" + name_ + "] must hold key = value entries");
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    std::optional<double> number(const std::string& key)
    {
        const json* v = take(key);
        if (!v)
            return std::nullopt;
        return to_double(*v, where(key));
    }

    std::optional<int> integer(const std::string& key)
    {
        const json* v = take(key);
        if (!v)
            return std::nullopt;
        if (v->is_number_integer())
            return v->get<int>();
        if (v->is_string())
            return parse_int(v->get<std::string>(), where(key));
        throw ConfigError(where(key) + ": expected an integer");
    }

    std::optional<std::string> text(const std::string& key)
    {
        const json* v = take(key);
        if (!v)
            return std::nullopt;
        if (!v->is_string())
            throw ConfigError(where(key) + ": expected a string");
        return v->get<std::string>();
    }

    std::optional<bool> boolean(const std::string& key)
    {
        const json* v = take(key);
        if (!v)
            return std::nullopt;
        if (v->is_boolean())
            return v->get<bool>();
        if (v->is_string()) {
            const std::string s = trim(v->get<std::string>());
            if (s == "true" || s == "yes" || s == "1")
                return true;
            if (s == "false" || s == "no" || s == "0")
                return false;
        }
        throw ConfigError(where(key) + ": expected true or false");
    }

    std::optional<std::vector<double>> numbers(const std::string& key)
    {
        const json* v = take(key);
        if (!v)
            return std::nullopt;
        std::vector<double> out;
        if (v->is_array()) {
            for (const auto& e : *v)
                out.push_back(to_double(e, where(key)));
        } else if (v->is_string()) {
            const std::string s = trim(v->get<std::string>());
            if (!s.empty())
                for (const auto& item : split(s, ','))
                    out.push_back(parse_double(item, where(key)));
        } else {
            out.push_back(to_double(*v, where(key)));
        }
        return out;
    }

    std::optional<std::vector<FourierMode>> modes(const std::string& key)
    {
        const json* v = take(key);
        if (!v)
            return std::nullopt;
        std::vector<FourierMode> out;
        const std::string w = where(key);
        if (v->is_string()) {
            const std::string s = trim(v->get<std::string>());
            if (!s.empty()) {
                for (const auto& item : split(s, ',')) {
                    const auto parts = split(item, ':');
                    if (parts.size() != 3)
                        throw ConfigError(w + ": modes are written k:cos_amp:sin_amp, got '" + item + "'");
                    out.push_back({parse_int(parts[0], w), parse_double(parts[1], w), parse_double(parts[2], w)});
                }
            }
        } else if (v->is_array()) {
            for (const auto& e : *v) {
                if (e.is_array() && e.size() == 3) {
                    out.push_back({e[0].get<int>(), to_double(e[1], w), to_double(e[2], w)});
                } else if (e.is_object()) {
                    Section m(e, w);
                    FourierMode mode;
                    mode.k = m.integer("k").value_or(-1);
                    mode.cos_amp = m.number("cos").value_or(0.0);
                    mode.sin_amp = m.number("sin").value_or(0.0);
                    m.finish();
                    out.push_back(mode);
                } else {
                    throw ConfigError(w + ": each mode is [k, cos_amp, sin_amp] or {k, cos, sin}");
                }
            }
        } else {
            throw ConfigError(w + ": expected a list of modes");
        }
        return out;
    }

    void finish() const
    {
        for (const auto& [key, value] : node_.items())
            if (!used_.contains(key))
                throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
    }

private:
    const json* take(const std::string& key)
    {
        used_.insert(key);
        const auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

    static double to_double(const json& v, const std::string& where)
    {
        if (v.is_number())
            return v.get<double>();
        if (v.is_string())
            return parse_double(v.get<std::string>(), where);
        throw ConfigError(where + ": expected a number");
    }

    const json& node_;
    std::string name_;
    std::set<std::string> used_;
};

json ini_to_tree(const std::string& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    json root = json::object();
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError("entry '" + section + "' must appear inside a section");
        json* node = &root;
        for (const auto& part : split(section, '.')) {
            if (part.empty())
                throw ConfigError("bad section name [" + section + "]");
            node = &(*node)[part];
        }
        if (node->is_null())
            *node = json::object();
        for (const auto& [key, value] : body) {
            if (!value.empty())
                throw ConfigError("nested entry '" + key + "' in [" + section + "]");
            (*node)[key] = value.data();
        }
    }
    return root;
}

std::vector<double> read_samples(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("samples file not readable: " + path.string());
    std::vector<double> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        out.push_back(parse_double(t, path.string() + ":" + std::to_string(line_no)));
    }
    return out;
}

InitSpec read_init(const json& node, const std::filesystem::path& base_dir)
{
    if (!node.is_object() || node.empty())
        throw ConfigError("missing init section: use one of [init.fourier], [init.peakon], [init.multipeakon], "
                          "[init.samples]");
    if (node.size() != 1)
        throw ConfigError("exactly one init variant must be present");
    const std::string kind = node.begin().key();
    Section s(node.begin().value(), "init." + kind);
    InitSpec out;
    if (kind == "fourier") {
        FourierInit f;
        f.mean = s.number("mean").value_or(0.0);
        f.modes = s.modes("modes").value_or(std::vector<FourierMode>{});
        out = f;
    } else if (kind == "peakon") {
        const auto c = s.number("c");
        if (!c)
            throw ConfigError("[init.peakon] c is required");
        out = PeakonInit{*c};
    } else if (kind == "multipeakon") {
        MultipeakonInit m;
        m.peakons.p = s.numbers("p").value_or(std::vector<double>{});
        m.peakons.q = s.numbers("q").value_or(std::vector<double>{});
        m.peakons.s = s.numbers("s").value_or(std::vector<double>{});
        out = m;
    } else if (kind == "samples") {
        const auto p = s.text("path");
        if (!p)
            throw ConfigError("[init.samples] path is required");
        SamplesInit smp;
        smp.path = std::filesystem::path(*p).is_absolute() ? std::filesystem::path(*p) : base_dir / *p;
        smp.values = read_samples(smp.path);
        out = smp;
    } else {
        throw ConfigError("unknown init variant '" + kind + "'");
    }
    s.finish();
    return out;
}

RunConfig read_tree(const json& root, const std::filesystem::path& base_dir)
{
    static const std::set<std::string> known{"model", "grid", "init", "time", "blowup", "outputs", "verify", "sweep"};
    if (!root.is_object())
        throw ConfigError("config must be a set of sections");
    for (const auto& [key, value] : root.items())
        if (!known.contains(key))
            throw ConfigError("unknown section [" + key + "]");

    const json empty = json::object();
    auto section = [&](const char* name) -> const json& {
        const auto it = root.find(name);
        return it == root.end() ? empty : *it;
    };

    RunConfig cfg;
    {
        Section s(section("model"), "model");
        cfg.lambda = s.number("lambda").value_or(cfg.lambda);
        s.finish();
    }
    {
        Section s(section("grid"), "grid");
        cfg.n = s.integer("n").value_or(cfg.n);
        s.finish();
    }
    if (!root.contains("init"))
        throw ConfigError("missing init section: use one of [init.fourier], [init.peakon], [init.multipeakon], "
                          "[init.samples]");
    cfg.init = read_init(root["init"], base_dir);
    {
        Section s(section("time"), "time");
        auto& sc = cfg.solver;
        sc.t_max = s.number("t_max").value_or(sc.t_max);
        sc.dt0 = s.number("dt0").value_or(sc.dt0);
        sc.dt_min = s.number("dt_min").value_or(sc.dt_min);
        sc.rel_tol = s.number("rel_tol").value_or(sc.rel_tol);
        sc.abs_tol = s.number("abs_tol").value_or(sc.abs_tol);
        sc.record_every = s.number("record_every").value_or(sc.record_every);
        sc.cfl = s.number("cfl").value_or(sc.cfl);
        s.finish();
    }
    {
        Section s(section("blowup"), "blowup");
        cfg.solver.slope_stop = s.number("slope_stop").value_or(cfg.solver.slope_stop);
        cfg.w_gate = s.number("w_gate").value_or(cfg.w_gate);
        s.finish();
    }
    {
        Section s(section("outputs"), "outputs");
        if (auto d = s.text("dir"))
            cfg.out_dir = *d;
        cfg.prefix = s.text("prefix").value_or(cfg.prefix);
        s.finish();
    }
    {
        Section s(section("verify"), "verify");
        if (auto seed = s.integer("seed")) {
            if (*seed < 0)
                throw ConfigError("[verify] seed must be nonnegative");
            cfg.verify.seed = static_cast<unsigned>(*seed);
        }
        cfg.verify.cases = s.integer("cases").value_or(cfg.verify.cases);
        if (auto f = s.text("fault")) {
            if (*f == "none")
                cfg.verify.fault = VerifyFault::none;
            else if (*f == "affine_table")
                cfg.verify.fault = VerifyFault::affine_table;
            else
                throw ConfigError("[verify] fault must be none or affine_table");
        }
        s.finish();
    }
    if (root.contains("sweep")) {
        Section s(root["sweep"], "sweep");
        SweepSpec sw;
        sw.lambda = s.numbers("lambda").value_or(std::vector<double>{});
        for (double v : s.numbers("n").value_or(std::vector<double>{})) {
            if (v != std::floor(v))
                throw ConfigError("[sweep] n must list integers");
            sw.n.push_back(static_cast<int>(v));
        }
        sw.mean = s.numbers("mean").value_or(std::vector<double>{});
        sw.amplitude = s.numbers("amplitude").value_or(std::vector<double>{});
        sw.evolve = s.boolean("evolve").value_or(true);
        s.finish();
        cfg.sweep = sw;
    }
    return cfg;
}

}  // namespace

void RunConfig::validate() const
{
    if (!std::isfinite(lambda))
        throw ConfigError("[model] lambda must be finite");
    if (n < 8 || n % 2 != 0)
        throw ConfigError("[grid] n must be even and at least 8");
    try {
        solver.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("[time]/[blowup] ") + e.what());
    }
    if (!(w_gate < 0.0))
        throw ConfigError("[blowup] w_gate must be negative");
    if (prefix.empty() || prefix.find('/') != std::string::npos)
        throw ConfigError("[outputs] prefix must be a plain file name stem");
    if (verify.cases < 1)
        throw ConfigError("[verify] cases must be positive");

    std::visit(
        [&](const auto& init) {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, FourierInit>) {
                for (const auto& m : init.modes)
                    if (m.k < 1 || m.k >= n / 2)
                        throw ConfigError("[init.fourier] mode k = " + std::to_string(m.k) +
                                          " must lie in [1, n/2)");
            } else if constexpr (std::is_same_v<T, MultipeakonInit>) {
                try {
                    init.peakons.validate();
                } catch (const PreconditionError& e) {
                    throw ConfigError(std::string("[init.multipeakon] ") + e.what());
                }
            } else if constexpr (std::is_same_v<T, SamplesInit>) {
                if (static_cast<int>(init.values.size()) != n)
                    throw ConfigError("[init.samples] " + init.path.string() + " holds " +
                                      std::to_string(init.values.size()) + " values, grid n is " + std::to_string(n));
            }
        },
        init);

    if (sweep) {
        for (int v : sweep->n)
            if (v < 8 || v % 2 != 0)
                throw ConfigError("[sweep] every n must be even and at least 8");
        const bool fourier = std::holds_alternative<FourierInit>(init);
        if (!fourier && (!sweep->mean.empty() || !sweep->amplitude.empty()))
            throw ConfigError("[sweep] mean and amplitude axes need [init.fourier]");
        if (std::holds_alternative<SamplesInit>(init) && !sweep->n.empty())
            throw ConfigError("[sweep] an n axis cannot be used with [init.samples]");
    }
}

RunConfig parse_config_text(const std::string& text, bool json_encoding, const std::filesystem::path& base_dir)
{
    json root;
    if (json_encoding) {
        try {
            root = json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config syntax: ") + e.what());
        }
    } else {
        root = ini_to_tree(text);
    }
    try {
        return read_tree(root, base_dir);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config value: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config file not readable: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.extension() == ".json", path.parent_path());
}

PeriodicField build_initial(const RunConfig& config)
{
    const PeriodicGrid grid(config.n);
    return std::visit(
        [&](const auto& init) -> PeriodicField {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, FourierInit>) {
                return PeriodicField::sample(grid, [&](double x) {
                    double v = init.mean;
                    for (const auto& m : init.modes) {
                        const double a = 2.0 * std::numbers::pi * m.k * x;
                        v += m.cos_amp * std::cos(a) + m.sin_amp * std::sin(a);
                    }
                    return v;
                });
            } else if constexpr (std::is_same_v<T, PeakonInit>) {
                return one_peakon(init.c, grid);
            } else if constexpr (std::is_same_v<T, MultipeakonInit>) {
                return shockpeakon_field(init.peakons, grid);
            } else {
                return PeriodicField(grid, init.values);
            }
        },
        config.init);
}

std::string init_kind(const InitSpec& init)
{
    static const char* names[] = {"fourier", "peakon", "multipeakon", "samples"};
    return names[init.index()];
}

}  // namespace muwave::cli
