#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "charges/convergence.hpp"
#include "charges/errors.hpp"
#include "charges/io.hpp"
#include "charges/lipschitz.hpp"
#include "charges/pushdown.hpp"
#include "charges/transport.hpp"

namespace charges::cli {

namespace {

using nlohmann::json;

struct Global {
    double tol_lp = 1e-9;
    double tol_limit = 1e-3;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    std::string schedule = "1:256:x2";
    std::string from_coords;  // "euclid" derives distances from coordinates

    LimitConfig limit_config() const {
        LimitConfig cfg = LimitConfig::parse_schedule(schedule);
        cfg.tol = tol_limit;
        return cfg;
    }
    bool euclid() const { return from_coords == "euclid"; }
};

void emit(const Global& g, const std::string& content) {
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    io::atomic_write(g.out, content);
}

std::string fd(double v) { return io::format_double(v); }

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        try {
            out.push_back(std::stod(text.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw DomainError("bad number in list: " + text);
        }
        pos = comma + 1;
    }
    if (out.empty()) throw DomainError("empty number list");
    return out;
}

DiscreteMeasure load_measure_on(const std::string& path,
                                std::shared_ptr<const FiniteMetricSpace> space) {
    json j = io::load_json(path);
    if (!j.is_object() || !j.contains("weights"))
        throw IoError(path + ": measure needs weights");
    return DiscreteMeasure(std::move(space), j["weights"].get<std::vector<double>>());
}

int cmd_w1(const Global& g, const std::string& space_path, const std::string& mu_path,
           const std::string& nu_path, const std::string& method) {
    auto space = io::load_space(space_path, g.euclid());
    DiscreteMeasure mu = load_measure_on(mu_path, space);
    DiscreteMeasure nu = load_measure_on(nu_path, space);
    TransportTols tols;
    tols.lp = g.tol_lp;

    json result;
    std::optional<double> primal, dual;
    if (method == "primal" || method == "both") {
        TransportPlan plan = w1_primal(mu, nu, *space, tols);
        primal = plan.cost;
        result["plan"] = plan.coupling;
    }
    if (method == "dual" || method == "both") {
        DualSolution sol = w1_dual(mu, nu, *space, tols);
        dual = sol.value;
        result["potential"] = sol.witness.f;
    }
    double cost = primal ? *primal : *dual;
    result["cost"] = cost;
    if (primal && dual) result["gap"] = std::abs(*primal - *dual);

    if (g.format == "csv") {
        std::vector<std::string> header{"cost"};
        std::vector<std::string> row{fd(cost)};
        if (primal && dual) {
            header.push_back("gap");
            row.push_back(fd(std::abs(*primal - *dual)));
        }
        emit(g, io::to_csv(header, {row}));
    } else {
        emit(g, result.dump(2) + "\n");
    }
    return 0;
}

int cmd_quantize(const Global& g, const std::string& measure_path,
                 const std::string& deltas_text) {
    DiscreteMeasure P = io::load_measure(measure_path, g.euclid());
    std::vector<double> deltas = parse_double_list(deltas_text);
    auto results = quantization_schedule(P, deltas);

    TransportTols tols;
    tols.lp = g.tol_lp;
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        double w1 = w1_primal(P, results[i].quantized, P.space(), tols).cost;
        rows.push_back({fd(deltas[i]), std::to_string(results[i].partition.cells.size()),
                        fd(results[i].partition.mesh), fd(results[i].certified_bound),
                        fd(w1)});
        jrows.push_back({{"delta", deltas[i]},
                         {"cells", results[i].partition.cells.size()},
                         {"mesh", results[i].partition.mesh},
                         {"certified_bound", results[i].certified_bound},
                         {"w1", w1}});
    }
    if (g.format == "csv")
        emit(g, io::to_csv({"delta", "cells", "mesh", "certified_bound", "w1"}, rows));
    else
        emit(g, jrows.dump(2) + "\n");
    return 0;
}

std::vector<BoundedLipFn> parse_function_spec(const std::string& text, int dim,
                                              std::uint64_t default_seed) {
    // cone:COUNT[:seedS]
    if (text.rfind("cone:", 0) != 0) throw DomainError("unknown function family: " + text);
    std::string rest = text.substr(5);
    std::size_t colon = rest.find(':');
    int count = 0;
    std::uint64_t seed = default_seed;
    try {
        count = std::stoi(rest.substr(0, colon));
        if (colon != std::string::npos) {
            std::string s = rest.substr(colon + 1);
            if (s.rfind("seed", 0) == 0) s = s.substr(4);
            seed = std::stoull(s);
        }
    } catch (const std::exception&) {
        throw DomainError("bad function spec: " + text);
    }
    return cone_functions(dim, count, seed);
}

int cmd_converge(const Global& g, const std::string& family_path,
                 const std::string& target_path, const std::string& functions_spec) {
    MeasureFamily family = io::load_family(family_path);
    LimitConfig cfg = g.limit_config();
    int dim = static_cast<int>(family.at(cfg.schedule.front()).coords.at(0).size());
    std::vector<BoundedLipFn> fns = parse_function_spec(functions_spec, dim, g.seed);

    json tj = io::load_json(target_path);
    std::function<double(const BoundedLipFn&)> target;
    if (tj.contains("coords")) {
        Atoms atoms;
        for (const auto& row : tj["coords"]) atoms.coords.push_back(row.get<std::vector<double>>());
        atoms.weights = tj.at("weights").get<std::vector<double>>();
        target = integrator_from_atoms(std::move(atoms));
    } else {
        double eps = tj.value("eps", 0.05);
        target = integrator_from_family(io::parse_family(tj), eps, cfg);
    }

    ConvergenceReport report = weak_convergence_test(family, target, fns, cfg, g.tol_lp);
    json out;
    out["converges"] = report.converges;
    out["worst_function"] = report.worst_function;
    out["sup_series"] = report.sup_series;
    out["functions"] = json::array();
    for (const FunctionReport& fr : report.functions)
        out["functions"].push_back({{"id", fr.id},
                                    {"accepted", fr.accepted},
                                    {"rejection", fr.rejection},
                                    {"converged", fr.converged},
                                    {"gap", fr.gap},
                                    {"series", fr.series}});
    if (g.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const FunctionReport& fr : report.functions)
            rows.push_back({fr.id, fr.accepted ? "1" : "0", fr.converged ? "1" : "0",
                            fd(fr.gap)});
        emit(g, io::to_csv({"id", "accepted", "converged", "gap"}, rows));
    } else {
        emit(g, out.dump(2) + "\n");
    }
    return report.converges ? 0 : 1;
}

int cmd_pushdown(const Global& g, const std::string& family_path,
                 const std::string& anchors_path, double escape_radius) {
    MeasureFamily family = io::load_family(family_path);
    auto anchors = io::load_space(anchors_path, g.euclid());
    RoundingMap rounding(anchors, escape_radius);
    LimitConfig cfg = g.limit_config();
    TransportTols tols;
    tols.lp = g.tol_lp;

    PushdownAudit audit = pd_wasserstein_audit(family, rounding, cfg, tols);
    if (g.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < audit.resolutions.size(); ++i)
            rows.push_back({std::to_string(audit.resolutions[i]), fd(audit.w1_series[i]),
                            fd(audit.tv_series[i]), fd(audit.escaping_series[i])});
        emit(g, io::to_csv({"N", "w1", "tv", "escaping_mass"}, rows));
    } else {
        json out;
        out["resolutions"] = audit.resolutions;
        out["w1"] = audit.w1_series;
        out["tv"] = audit.tv_series;
        out["scale"] = audit.scale_series;
        out["escaping_mass"] = audit.escaping_series;
        out["fitted_c"] = audit.fitted_c;
        out["infinitesimal_analog"] = audit.infinitesimal_analog;
        emit(g, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_oscillate(const Global& g, const std::string& family_path, int rounds,
                  int budget) {
    DiscreteSeq seq = io::load_discrete_seq(family_path);
    OscillationOutcome outcome = oscillation_extract(seq, rounds, budget);
    json out;
    if (outcome.witness) {
        out["witness"] = {{"indices", outcome.witness->indices},
                          {"sets", outcome.witness->sets},
                          {"hi", outcome.witness->hi},
                          {"lo", outcome.witness->lo}};
        if (outcome.witness->indices.size() >= 4) {
            UnionSetReport verdict = union_set_verdict(*outcome.witness, seq);
            out["union_set"] = {{"set", verdict.union_set},
                                {"series", verdict.series},
                                {"oscillation_gap", verdict.oscillation_gap},
                                {"pass", verdict.pass}};
        }
    } else {
        out["exhaustion"] = {{"step", outcome.exhaustion->step},
                             {"reason", outcome.exhaustion->reason}};
    }
    emit(g, out.dump(2) + "\n");
    return outcome.witness ? 0 : 1;
}

int cmd_net(const Global& g, const std::string& space_path, double eps) {
    auto space = io::load_space(space_path, g.euclid());
    SeparatedSet sep = greedy_separated_set(*space, eps);
    CoverCertificate cover = covering_report(*space, eps);
    if (g.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (int i : sep.indices) rows.push_back({std::to_string(i)});
        emit(g, io::to_csv({"center"}, rows));
    } else {
        json out;
        out["eps"] = eps;
        out["separated"] = sep.indices;
        out["cover_centers"] = cover.centers;
        out["cover_radius"] = cover.radius;
        out["covered"] = cover.covered;
        emit(g, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_demo_infinitesimal(const Global& g) {
    MeasureFamily family = family_point_at_half_inv();
    auto anchors = std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points({{0.0}}, 1.0));
    RoundingMap rounding(anchors);
    LimitConfig cfg = g.limit_config();
    TransportTols tols;
    tols.lp = g.tol_lp;

    PushdownAudit audit = pd_wasserstein_audit(family, rounding, cfg, tols);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < audit.resolutions.size(); ++i) {
        bool row_ok = audit.w1_series[i] <= audit.scale_series[i] + 1e-12;
        rows.push_back({std::to_string(audit.resolutions[i]), fd(audit.w1_series[i]),
                        fd(audit.tv_series[i]), fd(audit.scale_series[i]),
                        std::string("infinitesimal-analog: ") + (row_ok ? "yes" : "no")});
    }
    emit(g, io::to_csv({"N", "w1", "tv", "scale", "verdict"}, rows));
    return audit.infinitesimal_analog ? 0 : 1;
}

int cmd_demo_ezcounter(const Global& g) {
    // Degenerate measures at 1/n: a Lipschitz integrand settles, the
    // oscillating integrand sin(1/x) samples to sin(n), and the indicator of
    // {1/(2k) : k >= 1} alternates with parity.
    MeasureFamily family = family_point_at_inv();
    std::vector<std::vector<std::string>> rows;
    for (int n = 1; n <= 32; ++n) {
        Atoms atoms = family.at(n);
        double lip = atoms.integrate(
            [](const std::vector<double>& x) { return std::abs(x[0]); });
        double osc = atoms.integrate(
            [](const std::vector<double>& x) { return std::sin(1.0 / x[0]); });
        int indicator = (n % 2 == 0) ? 1 : 0;
        rows.push_back({std::to_string(n), fd(lip), fd(osc), std::to_string(indicator)});
    }
    emit(g, io::to_csv({"n", "dist_to_zero", "sin_inv", "even_set_mass"}, rows));
    return 0;
}

} // namespace

int run(std::vector<std::string> args) {
    CLI::App app{"Wasserstein transport, quantization, and push-down audits on finite metric spaces"};
    app.require_subcommand(1);

    Global g;
    app.add_option("--tol-lp", g.tol_lp, "LP feasibility tolerance");
    app.add_option("--tol-limit", g.tol_limit, "window-limit tolerance");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--out", g.out, "output path (stdout when omitted)");
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--schedule", g.schedule, "resolution schedule, start:end:x2 or start:end:+k");
    app.add_option("--from-coords", g.from_coords, "derive distances from coordinates")
        ->check(CLI::IsMember({"euclid"}));

    std::string space_path, mu_path, nu_path, method = "both";
    auto* w1 = app.add_subcommand("w1", "Wasserstein-1 distance between two measures");
    w1->add_option("--space", space_path)->required();
    w1->add_option("--mu", mu_path)->required();
    w1->add_option("--nu", nu_path)->required();
    w1->add_option("--method", method)->check(CLI::IsMember({"primal", "dual", "both"}));

    std::string measure_path, deltas = "0.5,0.25,0.125";
    auto* quant = app.add_subcommand("quantize", "quantize a measure along a delta schedule");
    quant->add_option("--measure", measure_path)->required();
    quant->add_option("--deltas", deltas);

    std::string family_path, target_path, functions_spec = "cone:50:seed7";
    auto* conv = app.add_subcommand("converge", "weak-convergence test against a target");
    conv->add_option("--family", family_path)->required();
    conv->add_option("--target", target_path)->required();
    conv->add_option("--functions", functions_spec);

    std::string pd_family, pd_anchors;
    double escape_radius = std::numeric_limits<double>::infinity();
    auto* push = app.add_subcommand("pushdown", "push-down audit through nearest-anchor rounding");
    push->add_option("--family", pd_family)->required();
    push->add_option("--anchors", pd_anchors)->required();
    push->add_option("--escape-radius", escape_radius);

    std::string osc_family;
    int rounds = 6, budget = 0;
    auto* osc = app.add_subcommand("oscillate", "extract an oscillation witness");
    osc->add_option("--family", osc_family)->required();
    osc->add_option("--rounds", rounds);
    osc->add_option("--budget", budget);

    std::string net_space;
    double eps = 0.1;
    auto* net = app.add_subcommand("net", "separated sets and covering certificates");
    net->add_option("--space", net_space)->required();
    net->add_option("--eps", eps);

    auto* demo_inf = app.add_subcommand("demo-infinitesimal",
                                        "vanishing W1 against constant total variation");
    auto* demo_ez = app.add_subcommand("demo-ezcounter",
                                       "convergent vs oscillating integrands on atoms at 1/n");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (w1->parsed()) return cmd_w1(g, space_path, mu_path, nu_path, method);
        if (quant->parsed()) return cmd_quantize(g, measure_path, deltas);
        if (conv->parsed()) return cmd_converge(g, family_path, target_path, functions_spec);
        if (push->parsed()) return cmd_pushdown(g, pd_family, pd_anchors, escape_radius);
        if (osc->parsed()) return cmd_oscillate(g, osc_family, rounds, budget);
        if (net->parsed()) return cmd_net(g, net_space, eps);
        if (demo_inf->parsed()) return cmd_demo_infinitesimal(g);
        if (demo_ez->parsed()) return cmd_demo_ezcounter(g);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace charges::cli
