#include "symve/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "symve/rng.hpp"

namespace symve {

void BenchConfig::validate() const {
    if (rv_counts.empty()) throw InvalidConfigError("rv_counts must not be empty");
    for (int n : rv_counts)
        if (n < 1) throw InvalidConfigError("every RV count must be >= 1");
    if (num_factors < 1) throw InvalidConfigError("num_factors must be >= 1");
    if (arity_min < 1 || arity_max < arity_min)
        throw InvalidConfigError("arity range must satisfy 1 <= min <= max");
    for (int n : rv_counts)
        if (arity_max > n)
            throw InvalidConfigError("arity_max exceeds the RV count " + std::to_string(n));
    if (runs_per_setting < 1) throw InvalidConfigError("runs_per_setting must be >= 1");
    if (cardinality < 1) throw InvalidConfigError("cardinality must be >= 1");
    if (jobs < 0) throw InvalidConfigError("jobs must be >= 0");
}

FactorGraph generate_random_fg(int n, int num_factors, int arity_min, int arity_max,
                               int cardinality, std::uint64_t seed) {
    if (n < 1 || num_factors < 1 || arity_min < 1 || arity_max < arity_min || arity_max > n ||
        cardinality < 1)
        throw InvalidConfigError("invalid random factor graph parameters");

    FactorGraph g;
    for (int i = 0; i < n; ++i) g.add_variable(Variable(i, cardinality));

    Xoshiro256ss rng(seed);
    std::vector<VarId> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;

    for (int fi = 0; fi < num_factors; ++fi) {
        const int arity = static_cast<int>(rng.next_in(arity_min, arity_max));

        // Partial Fisher-Yates: the first `arity` slots become the scope.
        for (int i = 0; i < arity; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) +
                                  static_cast<std::size_t>(rng.next_below(
                                      static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        }
        std::vector<VarId> scope_ids(pool.begin(), pool.begin() + arity);
        std::sort(scope_ids.begin(), scope_ids.end());
        std::vector<Variable> scope;
        for (VarId id : scope_ids) scope.emplace_back(id, cardinality);

        FactorShape shape(scope, arity >= 2 ? SymmetryPartition({scope_ids})
                                            : SymmetryPartition{});
        const std::uint64_t cells = shape.compact_size();

        // One potential per histogram; redraw on a value collision so
        // the factor is exactly as symmetric as declared.
        std::vector<double> values(static_cast<std::size_t>(cells));
        for (;;) {
            for (auto& v : values) v = 0.1 + 0.9 * rng.next_double();
            std::vector<double> sorted = values;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
        }
        g.add_factor(GraphFactor(CompactFactor(shape, std::move(values))));
    }
    return g;
}

namespace {

std::uint64_t run_seed(const BenchConfig& cfg, std::size_t setting_index, int run_index) {
    std::uint64_t mix = cfg.seed ^ seed_role::bench_run;
    mix ^= (static_cast<std::uint64_t>(setting_index) << 32) ^
           static_cast<std::uint64_t>(run_index);
    return splitmix64(mix);
}

BenchRecord make_record(const BenchConfig& cfg, std::size_t setting_index, int run_index) {
    const int n = cfg.rv_counts[setting_index];
    BenchRecord rec;
    rec.setting_rvs = n;
    rec.run = run_index;
    rec.seed = run_seed(cfg, setting_index, run_index);

    const FactorGraph g = generate_random_fg(n, cfg.num_factors, cfg.arity_min, cfg.arity_max,
                                             cfg.cardinality, rec.seed);
    OrderResult greedy = greedy_order(g, CostModel::dense);
    rec.order = greedy.order;
    rec.dense_paper = greedy.ledger.dense_paper_total;
    rec.dense_full = greedy.ledger.dense_full_total;
    rec.compact_paper = greedy.ledger.compact_paper_total;
    rec.compact_full = greedy.ledger.compact_full_total;
    const bool full = cfg.totals == TotalsConvention::full;
    rec.dense_total = full ? rec.dense_full : rec.dense_paper;
    rec.compact_total = full ? rec.compact_full : rec.compact_paper;
    for (const auto& s : greedy.ledger.steps) rec.step_pairs.emplace_back(s.dense_cost, s.compact_cost);
    return rec;
}

}  // namespace

BenchResult run_benchmark(const BenchConfig& cfg) {
    cfg.validate();

    struct Task {
        std::size_t setting_index;
        int run_index;
    };
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < cfg.rv_counts.size(); ++si)
        for (int ri = 0; ri < cfg.runs_per_setting; ++ri) tasks.push_back({si, ri});

    BenchResult result;
    result.config = cfg;
    result.records.resize(tasks.size());

    unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));

    // Runs are independent; records land at fixed indices so the
    // output is identical regardless of scheduling.
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                result.records[i] = make_record(cfg, tasks[i].setting_index, tasks[i].run_index);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

namespace {

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

std::string double_str(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// Fixed two-decimal coordinate text, locale-independent.
std::string coord(double v) {
    const double rounded = std::round(v * 100.0) / 100.0;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), rounded,
                                   std::chars_format::fixed, 2);
    return std::string(buf, ptr);
}

}  // namespace

void write_csv(const BenchResult& r, std::ostream& out) {
    out << "setting_rvs,run,seed,order_policy,totals_convention,dense_total,compact_total,steps\n";
    for (const auto& rec : r.records) {
        out << rec.setting_rvs << ',' << rec.run << ',' << u64_str(rec.seed) << ",greedy,"
            << (r.config.totals == TotalsConvention::full ? "full" : "paper") << ','
            << u64_str(rec.dense_total) << ',' << u64_str(rec.compact_total) << ',';
        for (std::size_t i = 0; i < rec.step_pairs.size(); ++i) {
            if (i) out << ';';
            out << u64_str(rec.step_pairs[i].first) << ':' << u64_str(rec.step_pairs[i].second);
        }
        out << '\n';
    }
}

void emit_csv(const BenchResult& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_csv(r, out);
    if (!out) throw IoError("failed writing " + path);
}

void write_svg(const BenchResult& r, std::ostream& out) {
    // One panel per setting: x = run index, y = log10(total); solid
    // dense on top of dashed compact.
    const int panel_w = 260, panel_h = 220, margin = 46, gap = 24;
    const std::size_t panels = r.config.rv_counts.size();
    const int width = static_cast<int>(panels) * (panel_w + gap) + margin * 2 - gap;
    const int height = panel_h + margin * 2;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<style>text{font:12px sans-serif;}</style>\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    for (std::size_t si = 0; si < panels; ++si) {
        const int setting = r.config.rv_counts[si];
        std::vector<const BenchRecord*> recs;
        for (const auto& rec : r.records)
            if (rec.setting_rvs == setting) recs.push_back(&rec);
        if (recs.empty()) continue;

        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto* rec : recs) {
            lo = std::min(lo, static_cast<double>(std::max<std::uint64_t>(rec->compact_total, 1)));
            hi = std::max(hi, static_cast<double>(std::max<std::uint64_t>(rec->dense_total, 1)));
        }
        const double log_lo = std::floor(std::log10(lo));
        const double log_hi = std::ceil(std::log10(hi));
        const double span = std::max(1.0, log_hi - log_lo);

        const int x0 = margin + static_cast<int>(si) * (panel_w + gap);
        const int y0 = margin;
        auto x_of = [&](std::size_t i) {
            return static_cast<double>(x0) +
                   (recs.size() > 1
                        ? static_cast<double>(i) * panel_w / static_cast<double>(recs.size() - 1)
                        : panel_w / 2.0);
        };
        auto y_of = [&](std::uint64_t total) {
            const double lg = std::log10(static_cast<double>(std::max<std::uint64_t>(total, 1)));
            return static_cast<double>(y0) + panel_h - (lg - log_lo) / span * panel_h;
        };

        out << "<g id=\"panel-" << setting << "\">\n";
        out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w
            << "\" height=\"" << panel_h << "\" fill=\"none\" stroke=\"#999\"/>\n";
        out << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 - 10
            << "\" text-anchor=\"middle\">n = " << setting << "</text>\n";
        out << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 + panel_h + 28
            << "\" text-anchor=\"middle\">run</text>\n";
        out << "<text x=\"" << x0 - 8 << "\" y=\"" << y0 + 4
            << "\" text-anchor=\"end\">1e" << double_str(log_hi) << "</text>\n";
        out << "<text x=\"" << x0 - 8 << "\" y=\"" << y0 + panel_h + 4
            << "\" text-anchor=\"end\">1e" << double_str(log_lo) << "</text>\n";

        out << "<polyline id=\"dense-" << setting
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < recs.size(); ++i) {
            if (i) out << ' ';
            out << coord(x_of(i)) << ',' << coord(y_of(recs[i]->dense_total));
        }
        out << "\"/>\n";
        out << "<polyline id=\"compact-" << setting
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 4\" points=\"";
        for (std::size_t i = 0; i < recs.size(); ++i) {
            if (i) out << ' ';
            out << coord(x_of(i)) << ',' << coord(y_of(recs[i]->compact_total));
        }
        out << "\"/>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
}

void emit_svg(const BenchResult& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_svg(r, out);
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace symve
