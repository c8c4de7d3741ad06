#include "symve/cli.hpp"

#include <charconv>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symve/bench.hpp"
#include "symve/errors.hpp"
#include "symve/factor_graph.hpp"
#include "symve/model_io.hpp"
#include "symve/order_search.hpp"

namespace symve::cli {

namespace {

std::string double_text(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void out_id(std::ostream& out, std::size_t position, VarId id) {
    if (position) out << ' ';
    out << id;
}

void print_order(std::ostream& out, const std::vector<VarId>& order) {
    out << "order:";
    for (VarId id : order) out << ' ' << id;
    out << '\n';
}

void print_ledger(std::ostream& out, const CostLedger& ledger) {
    out << "step variable product_scope dense_cost compact_cost\n";
    for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
        const auto& s = ledger.steps[i];
        out << (i + 1) << ' ' << s.variable << " {";
        for (std::size_t j = 0; j < s.product_scope.size(); ++j)
            out << (j ? " " : "") << s.product_scope[j];
        out << "} " << s.dense_cost << ' ' << s.compact_cost << '\n';
    }
    out << "totals dense paper=" << ledger.dense_paper_total
        << " full=" << ledger.dense_full_total << '\n';
    out << "totals compact paper=" << ledger.compact_paper_total
        << " full=" << ledger.compact_full_total << '\n';
}

struct CommonOptions {
    std::string model_path;
    std::string mode = "dense";
    std::string policy = "greedy";
    std::string cost = "dense";
    std::string totals = "full";
    std::uint64_t seed = 7;
    std::uint64_t budget = 1000;
    bool redetect = false;
    bool no_validate = false;
};

ElimMode parse_mode(const std::string& mode) {
    if (mode == "dense") return ElimMode::dense;
    if (mode == "compact") return ElimMode::compact;
    return ElimMode::cost_only;
}

CostModel parse_cost(const std::string& cost) {
    return cost == "compact" ? CostModel::compact : CostModel::dense;
}

TotalsConvention parse_totals(const std::string& totals) {
    return totals == "paper" ? TotalsConvention::paper : TotalsConvention::full;
}

Policy parse_policy(const CommonOptions& opt) {
    Policy p;
    if (opt.policy == "greedy")
        p.kind = PolicyKind::greedy_min_size;
    else if (opt.policy == "min-degree")
        p.kind = PolicyKind::min_degree;
    else if (opt.policy == "random")
        p.kind = PolicyKind::random_order;
    else if (opt.policy == "anneal")
        p.kind = PolicyKind::anneal;
    else
        p.kind = PolicyKind::exhaustive;
    p.seed = opt.seed;
    p.budget = opt.budget;
    return p;
}

int cmd_partition(const CommonOptions& opt) {
    const ModelFile model = load_model(opt.model_path, !opt.no_validate);
    const OrderResult chosen =
        run_policy(model.graph, parse_policy(opt), parse_cost(opt.cost), parse_totals(opt.totals));

    EliminateOptions elim;
    elim.mode = parse_mode(opt.mode);
    elim.redetect = opt.redetect;
    const EliminationResult result = run_elimination(model.graph, chosen.order, elim);

    std::cout << "variables: " << model.graph.num_variables()
              << " factors: " << model.graph.num_factors() << '\n';
    std::cout << "policy: " << opt.policy << " mode: " << opt.mode << '\n';
    print_order(std::cout, chosen.order);
    print_ledger(std::cout, result.ledger);
    if (result.z) std::cout << "Z = " << double_text(*result.z) << '\n';
    return 0;
}

int cmd_order(const CommonOptions& opt) {
    const ModelFile model = load_model(opt.model_path, !opt.no_validate);
    const CostModel cost = parse_cost(opt.cost);
    const TotalsConvention totals = parse_totals(opt.totals);
    const OrderResult chosen = run_policy(model.graph, parse_policy(opt), cost, totals);

    std::cout << "policy: " << opt.policy << " cost: " << opt.cost << " totals: " << opt.totals
              << '\n';
    print_order(std::cout, chosen.order);
    std::cout << "total: " << ledger_total(chosen.ledger, cost, totals) << '\n';
    print_ledger(std::cout, chosen.ledger);
    return 0;
}

int cmd_detect(const CommonOptions& opt) {
    const ModelFile model = load_model(opt.model_path, !opt.no_validate);
    for (std::size_t i = 0; i < model.graph.factors().size(); ++i) {
        const GraphFactor& f = model.graph.factors()[i];
        const SymmetryPartition detected = detect_symmetries(f.to_dense());
        FactorShape detected_shape(f.shape().scope, detected);
        std::cout << "factor " << i << " scope {";
        const auto& scope = f.shape().scope;
        for (std::size_t j = 0; j < scope.size(); ++j) out_id(std::cout, j, scope[j].id);
        std::cout << "} groups";
        if (detected.empty()) std::cout << " none";
        for (const auto& g : detected.groups()) {
            std::cout << " {";
            for (std::size_t j = 0; j < g.size(); ++j) out_id(std::cout, j, g[j]);
            std::cout << "}";
        }
        std::cout << " dense_size " << detected_shape.dense_size() << " compact_size "
                  << detected_shape.compact_size() << '\n';
    }
    return 0;
}

struct BenchOptions {
    BenchConfig config;
    std::string out_path = "results.csv";
    std::string svg_path;
    std::string totals = "full";
};

int cmd_bench(BenchOptions& opt) {
    opt.config.totals = parse_totals(opt.totals);
    const BenchResult result = run_benchmark(opt.config);
    emit_csv(result, opt.out_path);
    std::cout << "wrote " << opt.out_path << " (" << result.records.size() << " records)\n";
    if (!opt.svg_path.empty()) {
        emit_svg(result, opt.svg_path);
        std::cout << "wrote " << opt.svg_path << '\n';
    }
    std::size_t dominated = 0;
    for (const auto& rec : result.records)
        if (rec.compact_total <= rec.dense_total) ++dominated;
    std::cout << "compact <= dense in " << dominated << "/" << result.records.size()
              << " records\n";
    return 0;
}

struct ConvertOptions {
    std::string from = "uai";
    std::string input;
    std::string output;
};

int cmd_convert(const ConvertOptions& opt) {
    const ModelFile model = opt.from == "uai" ? load_uai(opt.input) : load_model(opt.input);
    save_model(model, opt.output);
    std::cout << "wrote " << opt.output << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Factor-graph variable elimination with symmetry-compact encodings"};
    app.require_subcommand(1);

    CommonOptions common;
    BenchOptions bench_opt;
    ConvertOptions convert_opt;

    const auto mode_values = CLI::IsMember({"dense", "compact", "cost-only"});
    const auto cost_values = CLI::IsMember({"dense", "compact"});
    const auto totals_values = CLI::IsMember({"paper", "full"});
    const auto policy_values =
        CLI::IsMember({"greedy", "min-degree", "random", "anneal", "exhaustive"});

    auto add_common = [&](CLI::App* cmd, bool with_mode) {
        cmd->add_option("model", common.model_path, "FGSYM model file")->required();
        if (with_mode)
            cmd->add_option("--mode", common.mode, "elimination mode")->check(mode_values);
        cmd->add_option("--policy", common.policy, "order policy")->check(policy_values);
        cmd->add_option("--cost", common.cost, "cost model for order policies")
            ->check(cost_values);
        cmd->add_option("--totals", common.totals, "totals convention")->check(totals_values);
        cmd->add_option("--seed", common.seed, "seed for random/anneal policies");
        cmd->add_option("--budget", common.budget, "anneal evaluation budget");
        cmd->add_flag("--redetect", common.redetect,
                      "re-detect symmetries on materialized intermediates");
        cmd->add_flag("--no-validate", common.no_validate,
                      "skip symmetry validation of declared groups");
    };

    CLI::App* partition = app.add_subcommand("partition", "compute the partition function Z");
    add_common(partition, true);

    CLI::App* order = app.add_subcommand("order", "search for an elimination order");
    add_common(order, false);

    CLI::App* detect = app.add_subcommand("detect", "detect local symmetries per factor");
    detect->add_option("model", common.model_path, "FGSYM model file")->required();
    detect->add_flag("--no-validate", common.no_validate,
                     "skip symmetry validation of declared groups");

    CLI::App* bench = app.add_subcommand("bench", "run the random-model cost benchmark");
    bench->add_option("--seed", bench_opt.config.seed, "base seed");
    bench->add_option("--out", bench_opt.out_path, "CSV output path");
    bench->add_option("--svg", bench_opt.svg_path, "SVG output path");
    bench->add_option("--rvs", bench_opt.config.rv_counts, "RV counts per setting");
    bench->add_option("--factors", bench_opt.config.num_factors, "factors per graph");
    bench->add_option("--arity-min", bench_opt.config.arity_min, "minimum factor arity");
    bench->add_option("--arity-max", bench_opt.config.arity_max, "maximum factor arity");
    bench->add_option("--runs", bench_opt.config.runs_per_setting, "runs per setting");
    bench->add_option("--card", bench_opt.config.cardinality, "variable cardinality");
    bench->add_option("--jobs", bench_opt.config.jobs, "worker threads (0 = all cores)");
    bench->add_option("--totals", bench_opt.totals, "totals convention")->check(totals_values);

    CLI::App* convert = app.add_subcommand("convert", "convert a model into FGSYM");
    convert->add_option("--from", convert_opt.from, "input format")
        ->check(CLI::IsMember({"uai", "fgsym"}));
    convert->add_option("input", convert_opt.input, "input model file")->required();
    convert->add_option("-o,--out", convert_opt.output, "output FGSYM path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (partition->parsed()) return cmd_partition(common);
        if (order->parsed()) return cmd_order(common);
        if (detect->parsed()) return cmd_detect(common);
        if (bench->parsed()) return cmd_bench(bench_opt);
        if (convert->parsed()) return cmd_convert(convert_opt);
        return 1;
    } catch (const TooLargeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace symve::cli
