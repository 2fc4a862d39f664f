// SPDX-License-Identifier: Apache-2.0
//
// irsroute: beam routing for hybrid active/passive IRS links
// Copyright (C) 2026 The irsroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "irsroute/analysis.hpp"
#include "irsroute/routing.hpp"

namespace irsroute::cli {

namespace {

struct Loaded {
    std::optional<Scenario> scenario;
    int status = kExitOk;
};

Loaded load(const std::string& path, std::ostream& err)
{
    try {
        return {load_scenario_file(path), kExitOk};
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) fmt::print(err, "error: {}\n", v);
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
    }
    return {std::nullopt, kExitInvalid};
}

std::string db(double ratio) { return fmt::format("{:.2f}", 10.0 * std::log10(ratio)); }

void print_hops(std::ostream& out, const Scenario& s, const RoutePath& path)
{
    const double elements = static_cast<double>(std::max<std::size_t>(s.passive_elements(), 1));
    NodeId prev = s.bs();
    auto hop = [&](NodeId next) {
        const double d = s.distance(prev, next);
        fmt::print(out, "  hop {:>3} -> {:<3} d = {} m  w = {}\n", prev, next, format_double(d),
                   format_double(edge_weight(d, elements, s.rf().reference_gain)));
        prev = next;
    };
    for (NodeId v : path.irs) hop(v);
    hop(s.user());
}

void write_hops_csv(std::ostream& out, const Scenario& s, const std::string& label,
                    const RoutePath& path)
{
    const double elements = static_cast<double>(std::max<std::size_t>(s.passive_elements(), 1));
    std::vector<NodeId> nodes{s.bs()};
    nodes.insert(nodes.end(), path.irs.begin(), path.irs.end());
    nodes.push_back(s.user());
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const double d = s.distance(nodes[k], nodes[k + 1]);
        out << label << ',' << k << ',' << nodes[k] << ',' << nodes[k + 1] << ','
            << format_double(d) << ','
            << format_double(edge_weight(d, elements, s.rf().reference_gain)) << '\n';
    }
}

std::string report_row(const Scenario& s, std::string_view mode, const RateReport& r)
{
    auto num = [](std::optional<double> v) { return v ? format_double(*v) : std::string(); };
    const RoutePath* chosen = r.chosen();
    const auto& h = r.hybrid;
    const auto& p = r.passive;
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", mode,
                       chosen ? route_string(s, *chosen) : "",
                       num(h ? std::optional(h->f_ba) : std::nullopt),
                       num(h ? std::optional(h->f_au) : std::nullopt),
                       num(p ? std::optional(p->f_bu) : std::nullopt),
                       num(h ? std::optional(h->eta_squared) : std::nullopt),
                       num(h ? std::optional(h->snr) : std::nullopt),
                       num(p ? std::optional(p->snr) : std::nullopt),
                       num(h ? std::optional(h->rate) : std::nullopt),
                       num(p ? std::optional(p->rate) : std::nullopt), r.select_active ? 1 : 0);
}

constexpr std::string_view kReportHeader =
    "mode,path,f_ba,f_au,f_bu,eta2,snr_act,snr_pas,rate_act,rate_pas,select_active\n";
constexpr std::string_view kHopsHeader = "route,hop,from,to,distance_m,weight\n";
constexpr std::string_view kSweepHeader = "value,rate_act,rate_pas,selected,path,status\n";

bool write_file(const std::string& path, const std::string& content, std::ostream& err)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        fmt::print(err, "error: cannot write '{}'\n", path);
        return false;
    }
    f << content;
    return static_cast<bool>(f);
}

std::size_t element_count(double v) { return static_cast<std::size_t>(std::llround(v)); }

std::string value_label(SweepVariable var, double v)
{
    if (var == SweepVariable::AmpPower) return format_double(v);
    return std::to_string(element_count(v));
}

struct SweepRow {
    std::optional<double> rate_act;
    std::optional<double> rate_pas;
    bool selected = false;
    std::string path;
    std::string status = "ok";
};

std::string status_of(bool hybrid, bool passive)
{
    if (hybrid && passive) return "ok";
    if (hybrid) return "no_passive_route";
    if (passive) return "no_hybrid_route";
    return "no_route";
}

std::optional<RoutePath> try_hybrid(const Scenario& s)
{
    try {
        return route_hybrid(s).path;
    } catch (const NoRoute&) {
        return std::nullopt;
    }
}

std::optional<RoutePath> try_passive(const Scenario& s)
{
    try {
        return route_passive_only(s).path;
    } catch (const NoRoute&) {
        return std::nullopt;
    }
}

SweepRow evaluate_point(const Scenario& s, const std::optional<RoutePath>& hybrid,
                        const std::optional<RoutePath>& passive)
{
    SweepRow row;
    std::optional<HybridRates> h;
    std::optional<PassiveRates> p;
    if (hybrid) h = hybrid_rates(s, *hybrid);
    if (passive) p = passive_rates(s, *passive);
    const RateReport r = make_report(h, p);
    if (h) {
        row.rate_act = h->rate;
        row.path = route_string(s, h->route);
    }
    if (p) row.rate_pas = p->rate;
    row.selected = r.select_active;
    row.status = status_of(h.has_value(), p.has_value());
    return row;
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.11e}", v); }

int cmd_validate(const std::string& scenario_path, std::ostream& out, std::ostream& err)
{
    std::ifstream in(scenario_path);
    if (!in) {
        fmt::print(err, "error: cannot open '{}'\n", scenario_path);
        return kExitInvalid;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto problems = diagnose_scenario(text);
    if (!problems.empty()) {
        for (const auto& p : problems) fmt::print(out, "violation: {}\n", p);
        return kExitInvalid;
    }
    for (const auto& w : routing_warnings(load_scenario(text))) fmt::print(out, "warning: {}\n", w);
    out << "OK\n";
    return kExitOk;
}

int cmd_route(const RouteOptions& options, std::ostream& out, std::ostream& err)
{
    auto loaded = load(options.scenario_path, err);
    if (!loaded.scenario) return loaded.status;
    const Scenario& s = *loaded.scenario;
    for (const auto& w : routing_warnings(s)) fmt::print(err, "warning: {}\n", w);

    const bool want_hybrid = options.mode != RouteMode::Passive;
    const bool want_passive = options.mode != RouteMode::Hybrid;

    std::optional<HybridRates> hybrid;
    std::optional<PassiveRates> passive;
    std::optional<HybridRoute> hroute;
    std::optional<PassiveRoute> proute;
    if (want_hybrid) {
        try {
            hroute = route_hybrid(s);
            hybrid = hybrid_rates(s, hroute->path);
        } catch (const NoRoute& e) {
            fmt::print(err, "hybrid: {}\n", e.what());
        }
    }
    if (want_passive) {
        try {
            proute = route_passive_only(s);
            passive = passive_rates(s, proute->path);
        } catch (const NoRoute& e) {
            fmt::print(err, "passive: {}\n", e.what());
        }
    }
    if (!hybrid && !passive) return kExitNoRoute;

    if (hybrid) {
        fmt::print(out, "hybrid route: {}\n", route_string(s, hybrid->route));
        print_hops(out, s, hybrid->route);
        fmt::print(out, "  cost_BA = {}  cost_AU = {}{}\n", format_double(hroute->cost_ba),
                   format_double(hroute->cost_au),
                   hroute->overlap_resolved ? "  (overlapping sub-routes resolved jointly)" : "");
        fmt::print(out, "  f_BA = {}  f_AU = {}  eta^2 = {}\n", format_double(hybrid->f_ba),
                   format_double(hybrid->f_au), format_double(hybrid->eta_squared));
        fmt::print(out, "  SNR = {} ({} dB)  R = {} bps/Hz\n", format_double(hybrid->snr),
                   db(hybrid->snr), format_double(hybrid->rate));
    }
    if (passive) {
        fmt::print(out, "passive route: {}\n", route_string(s, passive->route));
        print_hops(out, s, passive->route);
        fmt::print(out, "  cost = {}\n", format_double(proute->cost));
        fmt::print(out, "  f_BU = {}\n", format_double(passive->f_bu));
        fmt::print(out, "  SNR = {} ({} dB)  R = {} bps/Hz\n", format_double(passive->snr),
                   db(passive->snr), format_double(passive->rate));
    }

    const RateReport report = make_report(hybrid, passive);
    if (options.mode == RouteMode::Auto) {
        fmt::print(out, "verdict: {}\n", report.select_active ? "active" : "passive");
        if (hybrid && passive) {
            const RouteGains gains{hybrid->f_ba, hybrid->f_au, passive->f_bu};
            const LinkParams link = LinkParams::from(s);
            fmt::print(out, "  selection inequality {}\n",
                       should_select_active(link, gains) ? "holds" : "fails");
            if (auto pf = min_amplification_power(link, gains))
                fmt::print(out, "  min P_F for active = {} dBm\n", format_double(watts_to_dbm(*pf)));
            else
                out << "  min P_F for active = infeasible\n";
            fmt::print(out, "  min N for active = {}\n", min_active_elements(link, gains));
        }
    }

    const std::string_view mode_name = options.mode == RouteMode::Passive  ? "passive"
                                       : options.mode == RouteMode::Hybrid ? "hybrid"
                                                                           : "auto";
    if (!options.csv_path.empty() &&
        !write_file(options.csv_path, std::string(kReportHeader) + report_row(s, mode_name, report), err))
        return kExitInvalid;
    if (!options.hops_csv_path.empty()) {
        std::ostringstream hops;
        hops << kHopsHeader;
        if (hybrid) write_hops_csv(hops, s, "hybrid", hybrid->route);
        if (passive) write_hops_csv(hops, s, "passive", passive->route);
        if (!write_file(options.hops_csv_path, hops.str(), err)) return kExitInvalid;
    }
    return kExitOk;
}

std::vector<double> parse_values(std::string_view text)
{
    auto to_double = [](std::string_view t) {
        std::string s(t);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw std::invalid_argument("not a number: '" + s + "'");
        return v;
    };

    std::vector<double> out;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        const double start = to_double(text.substr(0, a));
        const double step = to_double(text.substr(a + 1, b - a - 1));
        const double stop = to_double(text.substr(b + 1));
        if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        out.push_back(to_double(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

void check_sweep_values(SweepVariable variable, const std::vector<double>& values)
{
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep values must be strictly increasing");
    if (variable == SweepVariable::AmpPower) return;
    for (double v : values)
        if (!(v >= 1.0) || v != std::floor(v))
            throw std::invalid_argument("element counts must be positive integers");
}

std::string sweep_csv(const Scenario& scenario, SweepVariable variable,
                      const std::vector<double>& values, unsigned threads)
{
    check_sweep_values(variable, values);

    // Routes depend on M only; P_F and N sweeps route once.
    std::optional<RoutePath> hybrid, passive;
    if (variable != SweepVariable::PassiveElements) {
        hybrid = try_hybrid(scenario);
        passive = try_passive(scenario);
    }

    auto point = [&](std::size_t i) {
        const double v = values[i];
        switch (variable) {
        case SweepVariable::AmpPower:
            return evaluate_point(scenario.with_amp_power(dbm_to_watts(v)), hybrid, passive);
        case SweepVariable::ActiveElements:
            return evaluate_point(scenario.with_active_dims(near_square_dims(element_count(v))),
                                  hybrid, passive);
        case SweepVariable::PassiveElements: {
            const Scenario s = scenario.with_passive_dims(near_square_dims(element_count(v)));
            return evaluate_point(s, try_hybrid(s), try_passive(s));
        }
        }
        return SweepRow{};
    };

    std::vector<SweepRow> rows(values.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = point(i);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::string csv(kSweepHeader);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        csv += fmt::format("{},{},{},{},{},{}\n", value_label(variable, values[i]),
                           r.rate_act ? format_double(*r.rate_act) : "",
                           r.rate_pas ? format_double(*r.rate_pas) : "", r.selected ? 1 : 0,
                           r.path, r.status);
    }
    return csv;
}

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err)
{
    auto loaded = load(spec.scenario_path, err);
    if (!loaded.scenario) return loaded.status;
    std::string csv;
    try {
        csv = sweep_csv(*loaded.scenario, spec.variable, spec.values, spec.threads);
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitInvalid;
    }
    if (spec.output_path.empty() || spec.output_path == "-") {
        out << csv;
        return kExitOk;
    }
    if (!write_file(spec.output_path, csv, err)) return kExitInvalid;
    fmt::print(out, "wrote {} rows to {}\n", spec.values.size(), spec.output_path);
    return kExitOk;
}

int cmd_oracle(const std::string& scenario_path, std::ostream& out, std::ostream& err)
{
    auto loaded = load(scenario_path, err);
    if (!loaded.scenario) return loaded.status;
    const Scenario& s = *loaded.scenario;
    if (s.irs_count() > kOracleMaxIrs) {
        fmt::print(err, "error: exhaustive search is limited to {} IRSs (scenario has {})\n",
                   kOracleMaxIrs, s.irs_count());
        return kExitInvalid;
    }
    bool any = false;
    bool agree = true;
    auto line = [&](std::string_view label, std::optional<RoutePath> oracle,
                    std::optional<RoutePath> routed, auto snr) {
        if (!oracle) {
            fmt::print(out, "{}: no feasible route\n", label);
            return;
        }
        any = true;
        const double best = snr(*oracle);
        fmt::print(out, "{}: oracle {} SNR = {}\n", label, route_string(s, *oracle), format_double(best));
        if (routed) {
            const double got = snr(*routed);
            fmt::print(out, "{}: router {} SNR = {} ({})\n", label, route_string(s, *routed),
                       format_double(got), got == best ? "match" : "MISMATCH");
            agree = agree && got == best;
        }
    };
    auto oracle_or_none = [&](irsroute::RouteMode m) -> std::optional<RoutePath> {
        try {
            return exhaustive_route_oracle(s, m);
        } catch (const NoRoute&) {
            return std::nullopt;
        }
    };
    line("hybrid", oracle_or_none(irsroute::RouteMode::Hybrid), try_hybrid(s),
         [&](const RoutePath& p) { return hybrid_rates(s, p).snr; });
    line("passive", oracle_or_none(irsroute::RouteMode::PassiveOnly), try_passive(s),
         [&](const RoutePath& p) { return passive_rates(s, p).snr; });
    if (!any) return kExitNoRoute;
    return agree ? kExitOk : kExitInvalid;
}

int cmd_channel(const std::string& scenario_path, NodeId from, NodeId to, std::ostream& out,
                std::ostream& err)
{
    auto loaded = load(scenario_path, err);
    if (!loaded.scenario) return loaded.status;
    ComplexMatrix h;
    try {
        h = channel_matrix(*loaded.scenario, from, to);
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitInvalid;
    }
    out << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < h.rows(); ++r)
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            out << r << ',' << c << ',' << format_double(h(r, c).real()) << ','
                << format_double(h(r, c).imag()) << '\n';
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Beam routing for hybrid active/passive IRS links", "irsroute"};
    app.require_subcommand(1);

    std::string file;
    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("file", file, "Scenario file")->required();

    RouteOptions route_opts;
    auto* route = app.add_subcommand("route", "Route and rate a scenario");
    route->add_option("file", route_opts.scenario_path, "Scenario file")->required();
    route->add_option("--mode", route_opts.mode, "passive | hybrid | auto")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, RouteMode>{{"passive", RouteMode::Passive},
                                             {"hybrid", RouteMode::Hybrid},
                                             {"auto", RouteMode::Auto}},
            CLI::ignore_case));
    route->add_option("--csv", route_opts.csv_path, "Write the rate report row to this CSV");
    route->add_option("--hops-csv", route_opts.hops_csv_path, "Write the per-hop table to this CSV");

    SweepSpec sweep_spec;
    std::string values_text;
    auto* sweep = app.add_subcommand("sweep", "Sweep P_F [dBm], N or M and write CSV");
    sweep->add_option("file", sweep_spec.scenario_path, "Scenario file")->required();
    sweep->add_option("--var", sweep_spec.variable, "pf | n | m")
        ->required()
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SweepVariable>{{"pf", SweepVariable::AmpPower},
                                                 {"n", SweepVariable::ActiveElements},
                                                 {"m", SweepVariable::PassiveElements}},
            CLI::ignore_case));
    sweep->add_option("--values", values_text, "a,b,c or start:step:stop")->required();
    sweep->add_option("--out", sweep_spec.output_path, "Output CSV ('-' for stdout)")->required();
    sweep->add_option("--threads", sweep_spec.threads, "Worker threads (0 = all cores)");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive search cross-check (small scenarios)");
    oracle->add_option("file", file, "Scenario file")->required();

    NodeId from = 0, to = 0;
    auto* channel = app.add_subcommand("channel", "Dump one LoS channel matrix as CSV");
    channel->add_option("file", file, "Scenario file")->required();
    channel->add_option("--from", from, "Transmitting node id")->required();
    channel->add_option("--to", to, "Receiving node id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
    }

    if (*validate) return cmd_validate(file, out, err);
    if (*route) return cmd_route(route_opts, out, err);
    if (*sweep) {
        try {
            sweep_spec.values = parse_values(values_text);
        } catch (const std::invalid_argument& e) {
            fmt::print(err, "error: {}\n", e.what());
            return kExitInvalid;
        }
        return cmd_sweep(sweep_spec, out, err);
    }
    if (*oracle) return cmd_oracle(file, out, err);
    if (*channel) return cmd_channel(file, from, to, out, err);
    return kExitInvalid;
}

}  // namespace irsroute::cli
