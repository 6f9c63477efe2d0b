#include "vekua/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vekua/csv.hpp"
#include "vekua/render.hpp"
#include "vekua/trainer.hpp"

namespace vekua::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;   // argument / config / input-file problems
constexpr int kExitRuntime = 2; // failures while computing

int fail_usage(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return kExitUsage;
}

int fail_runtime(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return kExitRuntime;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

int run_generate(const std::string& benchmark, std::uint64_t seed,
                 const std::string& out_dir, std::size_t n_train,
                 double noise_sigma) {
    const Benchmark* info;
    try {
        info = &benchmark_info(benchmark);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    if (n_train == 0) n_train = info->default_n_train;
    if (noise_sigma < 0.0) noise_sigma = info->default_noise_sigma;

    try {
        fs::create_directories(out_dir);
        auto [samples, grid] = generate(benchmark, seed, n_train, noise_sigma);
        write_samples_csv(join_path(out_dir, "train.csv"), samples);
        write_grid_csv(join_path(out_dir, "grid.csv"), grid);
        std::printf("wrote train.csv (%zu rows) and grid.csv (%zu rows) to %s\n",
                    samples.size(), grid.x.rows, out_dir.c_str());
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

int run_train(const std::string& config_path) {
    TrainConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    std::vector<MetricsRow> metrics;
    try {
        fs::create_directories(cfg.out);
        auto [samples, grid] =
            generate(cfg.benchmark, cfg.seed, cfg.n_train, cfg.noise_sigma);
        (void)grid;
        const Checkpoint ckpt = train(cfg, samples, metrics, /*verbose=*/true);
        save_checkpoint(join_path(cfg.out, "checkpoint.txt"), ckpt);
        write_text_file(join_path(cfg.out, "metrics.csv"),
                        metrics_to_csv(metrics));
        std::printf("final train_mse %s\n",
                    format_double(metrics.back().train_mse).c_str());
    } catch (const std::exception& e) {
        // Flush whatever was recorded before the failure.
        try {
            write_text_file(join_path(cfg.out, "metrics.csv"),
                            metrics_to_csv(metrics));
        } catch (...) {
        }
        return fail_runtime(e.what());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int run_eval(const std::string& checkpoint_path, const std::string& grid_path,
             const std::string& out_path, const std::string& pred_path) {
    Checkpoint ckpt;
    EvalGrid grid;
    try {
        ckpt = load_checkpoint(checkpoint_path);
        grid = read_grid_csv(grid_path);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    try {
        const std::vector<double> pred = checkpoint_predict(ckpt, grid.x);
        const double grid_mse = mse(pred, grid.y_true);
        std::printf("grid_mse %s\n", format_double(grid_mse).c_str());
        write_text_file(out_path,
                        "grid_mse\n" + format_double(grid_mse) + "\n");
        if (!pred_path.empty())
            write_value_table(pred_path, "y_pred", grid.x, pred);
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------

int run_render(const std::string& field_path, const std::string& out_path) {
    ValueTable table;
    try {
        table = read_value_table(field_path);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    try {
        if (table.dim == 1) {
            // Sort by coordinate so scattered 1D tables draw sanely.
            std::vector<std::size_t> order(table.values.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return table.x(a, 0) < table.x(b, 0);
                      });
            std::vector<double> xs(order.size()), vs(order.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                xs[i] = table.x(order[i], 0);
                vs[i] = table.values[order[i]];
            }
            render_polyline(out_path, xs, vs);
        } else {
            const std::size_t rows = table.values.size();
            const std::size_t r = static_cast<std::size_t>(
                std::llround(std::sqrt(static_cast<double>(rows))));
            if (r * r != rows)
                return fail_usage(
                    "render: 2D input is not a full grid (row count " +
                    std::to_string(rows) + " is not a perfect square)");
            render_heatmap(out_path, r, table.values);
        }
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareCell {
    Method method;
    std::uint64_t seed;
    double grid_mse = 0.0;
    std::string error;
};

int run_compare(const std::string& benchmark,
                const std::vector<std::uint64_t>& seeds,
                const std::string& out_dir, std::size_t iters,
                std::size_t jobs) {
    try {
        benchmark_info(benchmark);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    if (seeds.empty()) return fail_usage("compare: need at least one seed");

    const std::vector<Method> methods = {Method::kDeepVekua, Method::kSiren,
                                         Method::kGridMlp, Method::kCascade};
    std::vector<CompareCell> cells;
    for (Method m : methods)
        for (std::uint64_t s : seeds) cells.push_back({m, s, 0.0, ""});

    try {
        fs::create_directories(out_dir);
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }

    // Isolated single-threaded cells; merge happens after the joins.
    auto run_cell = [&](CompareCell& cell) {
        try {
            TrainConfig cfg;
            cfg.benchmark = benchmark;
            cfg.method = cell.method;
            cfg.seed = cell.seed;
            if (iters != static_cast<std::size_t>(-1)) cfg.iters = iters;
            cfg.out = join_path(out_dir, method_to_string(cell.method) + "_s" +
                                             std::to_string(cell.seed));
            cfg.resolve_and_validate();
            fs::create_directories(cfg.out);

            auto [samples, grid] =
                generate(benchmark, cfg.seed, cfg.n_train, cfg.noise_sigma);
            std::vector<MetricsRow> metrics;
            const Checkpoint ckpt = train(cfg, samples, metrics);
            save_checkpoint(join_path(cfg.out, "checkpoint.txt"), ckpt);
            write_text_file(join_path(cfg.out, "metrics.csv"),
                            metrics_to_csv(metrics));
            const std::vector<double> pred = checkpoint_predict(ckpt, grid.x);
            cell.grid_mse = mse(pred, grid.y_true);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, cells.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < jobs; ++t)
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                run_cell(cells[i]);
            }
        });
    for (std::thread& w : workers) w.join();

    for (const CompareCell& cell : cells)
        if (!cell.error.empty())
            return fail_runtime(method_to_string(cell.method) + " seed " +
                                std::to_string(cell.seed) + ": " + cell.error);

    // results.csv: per-seed rows then a median row per method.
    std::ostringstream csv;
    csv << "method,seed,grid_mse\n";
    std::printf("%-12s", "method");
    for (std::uint64_t s : seeds) std::printf(" %12s", ("seed " + std::to_string(s)).c_str());
    std::printf(" %12s\n", "median");
    std::size_t idx = 0;
    for (Method m : methods) {
        std::vector<double> mses;
        std::printf("%-12s", method_to_string(m).c_str());
        for (std::size_t s = 0; s < seeds.size(); ++s, ++idx) {
            csv << method_to_string(m) << "," << seeds[s] << ","
                << format_double(cells[idx].grid_mse) << "\n";
            mses.push_back(cells[idx].grid_mse);
            std::printf(" %12.4e", cells[idx].grid_mse);
        }
        std::sort(mses.begin(), mses.end());
        const double median =
            mses.size() % 2 == 1
                ? mses[mses.size() / 2]
                : 0.5 * (mses[mses.size() / 2 - 1] + mses[mses.size() / 2]);
        csv << method_to_string(m) << ",median," << format_double(median)
            << "\n";
        std::printf(" %12.4e\n", median);
    }
    try {
        write_text_file(join_path(out_dir, "results.csv"), csv.str());
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"DeepVekua field reconstruction: dataset generation, "
                 "training, evaluation, rendering"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate",
                                   "Write train.csv and grid.csv for a benchmark");
    std::string gen_benchmark, gen_out;
    std::uint64_t gen_seed = 0;
    std::size_t gen_n_train = 0;
    double gen_noise = -1.0;
    gen->add_option("--benchmark", gen_benchmark, "benchmark name")->required();
    gen->add_option("--seed", gen_seed, "rng seed")->required();
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--n-train", gen_n_train, "training samples (default per benchmark)");
    gen->add_option("--noise-sigma", gen_noise, "target noise (default per benchmark)");

    // train
    auto* tr = app.add_subcommand("train", "Train from a key=value config file");
    std::string train_config;
    tr->add_option("--config", train_config, "config path")->required();

    // eval
    auto* ev = app.add_subcommand("eval", "Grid MSE of a checkpoint");
    std::string eval_ckpt, eval_grid, eval_out = "eval.csv", eval_pred;
    ev->add_option("--checkpoint", eval_ckpt, "checkpoint path")->required();
    ev->add_option("--grid", eval_grid, "grid.csv path")->required();
    ev->add_option("--out", eval_out, "eval.csv output path");
    ev->add_option("--pred", eval_pred, "optional prediction dump path");

    // render
    auto* rn = app.add_subcommand("render", "Render a field csv to a pixmap");
    std::string render_field, render_out;
    rn->add_option("--field", render_field, "csv with coordinates + value column")
        ->required();
    rn->add_option("--out", render_out, "output .ppm path")->required();

    // compare
    auto* cp = app.add_subcommand("compare",
                                  "Run all four methods over a seed list");
    std::string cmp_benchmark, cmp_out = ".";
    std::vector<std::uint64_t> cmp_seeds;
    std::size_t cmp_iters = static_cast<std::size_t>(-1);
    std::size_t cmp_jobs = 0;
    cp->add_option("--benchmark", cmp_benchmark, "benchmark name")->required();
    cp->add_option("--seeds", cmp_seeds, "seed list")->required()->expected(-1);
    cp->add_option("--out", cmp_out, "output directory");
    cp->add_option("--iters", cmp_iters, "override training iterations");
    cp->add_option("--jobs", cmp_jobs, "parallel cells (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return kExitOk;
        }
        app.exit(e);
        return kExitUsage;
    }

    if (gen->parsed())
        return run_generate(gen_benchmark, gen_seed, gen_out, gen_n_train,
                            gen_noise);
    if (tr->parsed()) return run_train(train_config);
    if (ev->parsed()) return run_eval(eval_ckpt, eval_grid, eval_out, eval_pred);
    if (rn->parsed()) return run_render(render_field, render_out);
    if (cp->parsed())
        return run_compare(cmp_benchmark, cmp_seeds, cmp_out, cmp_iters,
                           cmp_jobs);
    return fail_usage("no subcommand given");
}

} // namespace vekua::cli
