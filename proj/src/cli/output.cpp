#include "muwave/cli/output.hpp"

#include "muwave/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace muwave::cli {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string model_name(double lambda)
{
    if (lambda == 2.0)
        return "muCH";
    if (lambda == 3.0)
        return "muDP";
    return "mu-family";
}

void dump(const json& v, int depth, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
    case json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + json(key).dump() + ": ";
            dump(item, depth + 1, out);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ",\n";
            out += pad;
            dump(v[i], depth + 1, out);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case json::value_t::number_float: {
        const double d = v.get<double>();
        // JSON has no non-finite numbers.
        out += std::isfinite(d) ? format_double(d) : "null";
        return;
    }
    default:
        out += v.dump();
    }
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string timeseries_csv(const SolutionRecord& record)
{
    std::string out = timeseries_columns;
    out += '\n';
    for (const auto& r : record.diagnostics) {
        const double cols[] = {r.t,   r.dt,  r.min_ux, r.max_ux, r.sup_u, r.H0, r.H1,
                               r.H2,  r.Ht0, r.Ht1,    r.Ht2,    r.V,     r.resolvedness};
        bool first = true;
        for (double c : cols) {
            if (!first)
                out += ',';
            first = false;
            out += format_double(c);
        }
        out += '\n';
    }
    return out;
}

json report_json(const RunConfig& config, const BlowupReport& report, const SolutionRecord* run)
{
    json j;
    j["model"] = {{"lambda", report.lambda}, {"name", model_name(report.lambda)}};
    j["params"] = {{"mu0", report.params.mu0}, {"mu1", report.params.mu1}, {"mu2", report.params.mu2}};
    j["grid"] = {{"n", config.n}};
    j["init"] = init_kind(config.init);
    j["initial"] = {{"slope_cubed_integral", report.slope_cubed_integral},
                    {"inf_slope", report.inf_slope},
                    {"H2", report.H2},
                    {"Ht2", report.Ht2}};
    j["termination"] = report.termination ? to_string(*report.termination) : "not_evolved";
    j["final_time"] = report.final_time;
    j["t_star"] = optional_number(report.observed.t_star);
    j["rate_sigma"] = optional_number(report.observed.rate_sigma);
    j["fit_samples"] = report.observed.samples;
    j["fit_note"] = report.observed.note;
    j["w_gate"] = config.w_gate;
    j["tightest_bound"] = optional_number(report.tightest_bound());
    j["consistency"] = report.consistency;

    json theorems = json::array();
    for (const auto& c : report.criteria) {
        theorems.push_back({{"id", c.id},
                            {"applicable", c.applicable},
                            {"holds", c.holds},
                            {"t_bound", optional_number(c.t_bound)},
                            {"note", c.note}});
    }
    j["theorems"] = theorems;
    j["notes"] = report.notes;
    if (run) {
        j["records"] = run->diagnostics.size();
        j["rhs_evaluations"] = run->rhs_evaluations;
        j["min_slope_final"] = report.min_slope_final;
        j["warnings"] = run->warnings;
    }
    return j;
}

std::string dump_json(const json& value)
{
    std::string out;
    dump(value, 0, out);
    out += '\n';
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("write failed for " + path.string());
}

}  // namespace muwave::cli
