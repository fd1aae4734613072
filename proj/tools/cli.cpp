#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "act/bench.hpp"
#include "act/config.hpp"
#include "act/ct.hpp"
#include "act/error.hpp"
#include "act/snapshot.hpp"
#include "act/synth.hpp"
#include "act/tracker.hpp"

namespace fs = std::filesystem;

namespace act {
namespace {

struct RunOutput {
    std::vector<Rect> trajectory;
    std::vector<FrameResult> diags;  // one entry per tracked frame (index 1..)
    double fps = 0.0;
    int rectified = 0;
};

RunOutput run_act(const Sequence& seq, const Config& cfg, const std::string* state_path) {
    RunOutput out;
    const auto t0 = std::chrono::steady_clock::now();
    ActTracker tracker(seq.frame(0), seq.ground_truth.front(), cfg.act);
    out.trajectory.push_back(tracker.box());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        FrameResult r = tracker.track(seq.frame(i));
        out.trajectory.push_back(r.box);
        if (r.rectified) ++out.rectified;
        out.diags.push_back(r);
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    out.fps = static_cast<double>(seq.size()) / std::max(secs, 1e-9);
    if (state_path) save_act_snapshot(tracker.export_state(), *state_path);
    return out;
}

RunOutput run_ct(const Sequence& seq, const Config& cfg, const std::string* state_path) {
    RunOutput out;
    const auto t0 = std::chrono::steady_clock::now();
    CtTracker tracker(seq.frame(0), seq.ground_truth.front(), cfg.ct);
    out.trajectory.push_back(tracker.box());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        FrameResult r = tracker.track(seq.frame(i));
        out.trajectory.push_back(r.box);
        out.diags.push_back(r);
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    out.fps = static_cast<double>(seq.size()) / std::max(secs, 1e-9);
    if (state_path) save_ct_snapshot(tracker.export_state(), *state_path);
    return out;
}

RunOutput run_tracker(const Sequence& seq, const std::string& kind, const Config& cfg,
                      const std::string* state_path = nullptr) {
    if (seq.ground_truth.empty()) throw DataError(seq.name + ": no ground truth to initialize from");
    if (kind == "act") return run_act(seq, cfg, state_path);
    if (kind == "ct") return run_ct(seq, cfg, state_path);
    throw ConfigError("unknown tracker kind: " + kind);
}

void write_diag(const std::string& path, const std::vector<FrameResult>& diags) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write " + path);
    for (std::size_t i = 0; i < diags.size(); ++i) {
        const FrameResult& d = diags[i];
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "{\"frame\":%zu,\"confidence\":%.17g,\"rectified\":%s,\"churn\":%d}\n",
                      i + 1, d.confidence, d.rectified ? "true" : "false", d.selection_churn);
        out << buf;
    }
}

// Layered config: defaults, then an optional file (explicit flag wins over the
// ACT_CONFIG environment variable), then any flags the user actually passed.
struct ConfigLayer {
    Config staged;
    std::string config_path;
    long long seed_override = -1;
    std::vector<std::pair<CLI::Option*, std::function<void(Config&)>>> appliers;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value lines)");
        auto reg = [this](CLI::Option* opt, std::function<void(Config&)> fn) {
            appliers.emplace_back(opt, std::move(fn));
        };
        Config& s = staged;
        reg(cmd->add_option("--bag-count", s.act.bag_count, "feature bags"),
            [&s](Config& c) { c.act.bag_count = s.act.bag_count; });
        reg(cmd->add_option("--templates-per-bag", s.act.templates_per_bag, "candidate templates per bag"),
            [&s](Config& c) { c.act.templates_per_bag = s.act.templates_per_bag; });
        reg(cmd->add_option("--selected-per-bag", s.act.selected_per_bag, "templates kept per bag"),
            [&s](Config& c) { c.act.selected_per_bag = s.act.selected_per_bag; });
        reg(cmd->add_option("--confidence-threshold", s.act.confidence_threshold, "rectification gate"),
            [&s](Config& c) { c.act.confidence_threshold = s.act.confidence_threshold; });
        reg(cmd->add_option("--template-threshold", s.act.template_threshold, "template update gate"),
            [&s](Config& c) { c.act.template_threshold = s.act.template_threshold; });
        reg(cmd->add_option("--search-radius", s.act.search_radius, "dense scan radius"),
            [&s](Config& c) { c.act.search_radius = s.act.search_radius; });
        reg(cmd->add_option("--positive-radius", s.act.positive_radius, "positive sample radius"),
            [&s](Config& c) { c.act.positive_radius = s.act.positive_radius; });
        reg(cmd->add_option("--negative-inner", s.act.negative_inner, "negative ring inner radius"),
            [&s](Config& c) { c.act.negative_inner = s.act.negative_inner; });
        reg(cmd->add_option("--negative-outer", s.act.negative_outer, "negative ring outer radius"),
            [&s](Config& c) { c.act.negative_outer = s.act.negative_outer; });
        reg(cmd->add_option("--positive-count", s.act.positive_count, "positive samples per update"),
            [&s](Config& c) { c.act.positive_count = s.act.positive_count; });
        reg(cmd->add_option("--negative-count", s.act.negative_count, "negative samples per update"),
            [&s](Config& c) { c.act.negative_count = s.act.negative_count; });
        reg(cmd->add_option("--template-ratio", s.act.template_ratio, "template blend ratio"),
            [&s](Config& c) { c.act.template_ratio = s.act.template_ratio; });
        reg(cmd->add_option("--learning-rate", s.act.learning_rate, "classifier learning rate"),
            [&s](Config& c) { c.act.learning_rate = s.act.learning_rate; });
        reg(cmd->add_option("--selection-period", s.act.selection_period, "frames between reselections"),
            [&s](Config& c) { c.act.selection_period = s.act.selection_period; });
        reg(cmd->add_option("--ct-feature-count", s.ct.feature_count, "baseline feature count"),
            [&s](Config& c) { c.ct.feature_count = s.ct.feature_count; });
        reg(cmd->add_option("--ct-search-radius", s.ct.search_radius, "baseline scan radius"),
            [&s](Config& c) { c.ct.search_radius = s.ct.search_radius; });
        reg(cmd->add_option("--ct-positive-radius", s.ct.positive_radius, "baseline positive radius"),
            [&s](Config& c) { c.ct.positive_radius = s.ct.positive_radius; });
        reg(cmd->add_option("--ct-negative-inner", s.ct.negative_inner, "baseline ring inner radius"),
            [&s](Config& c) { c.ct.negative_inner = s.ct.negative_inner; });
        reg(cmd->add_option("--ct-negative-outer", s.ct.negative_outer, "baseline ring outer radius"),
            [&s](Config& c) { c.ct.negative_outer = s.ct.negative_outer; });
        reg(cmd->add_option("--ct-negative-count", s.ct.negative_count, "baseline negatives per update"),
            [&s](Config& c) { c.ct.negative_count = s.ct.negative_count; });
        reg(cmd->add_option("--ct-learning-rate", s.ct.learning_rate, "baseline learning rate"),
            [&s](Config& c) { c.ct.learning_rate = s.ct.learning_rate; });
        reg(cmd->add_option("--ct-seed", s.ct.seed, "baseline rng seed"),
            [&s](Config& c) { c.ct.seed = s.ct.seed; });
        reg(cmd->add_option("--seed", seed_override, "rng seed for both trackers"),
            [this](Config& c) {
                c.act.seed = static_cast<std::uint64_t>(seed_override);
                c.ct.seed = static_cast<std::uint64_t>(seed_override);
            });
    }

    Config resolve() const {
        Config cfg;
        std::string path = config_path;
        if (path.empty()) {
            if (const char* env = std::getenv("ACT_CONFIG")) path = env;
        }
        if (!path.empty()) cfg = load_config(path, cfg);
        for (const auto& [opt, apply] : appliers) {
            if (opt->count() > 0) apply(cfg);
        }
        cfg.act.validate();
        cfg.ct.validate();
        return cfg;
    }
};

int cmd_track(const std::string& seq_path, const std::string& out_dir, const std::string& kind,
              const Config& cfg, bool verbose, const std::string& state_path, bool dump) {
    if (dump) {
        std::fputs(dump_config(cfg).c_str(), stdout);
        return 0;
    }
    if (seq_path.empty()) throw ConfigError("--seq is required");
    Sequence seq = load_sequence(seq_path);
    fs::create_directories(out_dir);
    const std::string* sp = state_path.empty() ? nullptr : &state_path;
    RunOutput out = run_tracker(seq, kind, cfg, sp);
    const std::string traj_path = (fs::path(out_dir) / (seq.name + "_trajectory.txt")).string();
    save_rect_file(out.trajectory, traj_path);
    if (verbose) {
        write_diag((fs::path(out_dir) / (seq.name + "_diag.jsonl")).string(), out.diags);
    }
    std::printf("tracked %s with %s: frames=%zu fps=%.1f rectified=%d\n", seq.name.c_str(),
                kind.c_str(), seq.size(), out.fps, out.rectified);
    std::printf("trajectory: %s\n", traj_path.c_str());
    return 0;
}

int cmd_eval(const std::string& traj_path, const std::string& gt_path, const std::string& out_base) {
    std::vector<Rect> traj = load_rect_file(traj_path);
    std::vector<Rect> gt = load_rect_file(gt_path);
    EvalResult r = evaluate(traj, gt);
    write_eval_result(r, out_base);
    std::printf("precision_20=%g auc=%g\n", r.precision_20, r.auc);
    std::printf("report: %s.json\n", out_base.c_str());
    return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
    SynthSpec spec;
    if (!spec_path.empty()) spec = load_synth_spec(spec_path);
    Sequence seq = synth_sequence(spec);
    write_sequence(seq, out_dir);
    std::printf("wrote %zu frames to %s\n", seq.size(), out_dir.c_str());
    return 0;
}

struct BenchRow {
    std::string sequence;
    std::string tracker;
    std::size_t frames = 0;
    double fps = 0.0;
    double precision_20 = 0.0;
    double auc = 0.0;
};

int cmd_bench(const std::string& data_dir, const std::string& out_dir, const std::string& choice,
              int jobs, const Config& cfg, bool dump) {
    if (dump) {
        std::fputs(dump_config(cfg).c_str(), stdout);
        return 0;
    }
    if (data_dir.empty()) throw ConfigError("--data is required");
    std::vector<std::string> seq_dirs;
    {
        std::error_code ec;
        fs::directory_iterator it(data_dir, ec);
        if (ec) throw DataError(data_dir + ": " + ec.message());
        for (const auto& entry : it) {
            if (entry.is_directory() && fs::exists(entry.path() / "groundtruth_rect.txt")) {
                seq_dirs.push_back(entry.path().string());
            }
        }
    }
    std::sort(seq_dirs.begin(), seq_dirs.end());
    if (seq_dirs.empty()) throw DataError(data_dir + ": no sequences found");

    std::vector<std::string> kinds;
    if (choice == "both") {
        kinds = {"act", "ct"};
    } else {
        kinds = {choice};
    }
    struct Task {
        std::string dir;
        std::string kind;
    };
    std::vector<Task> tasks;
    for (const auto& kind : kinds) {
        for (const auto& dir : seq_dirs) tasks.push_back({dir, kind});
    }
    fs::create_directories(out_dir);

    std::vector<BenchRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                Sequence seq = load_sequence(tasks[i].dir);
                RunOutput out = run_tracker(seq, tasks[i].kind, cfg);
                EvalResult r = evaluate(out.trajectory, seq.ground_truth);
                r.fps = out.fps;
                const std::string base =
                    (fs::path(out_dir) / (seq.name + "_" + tasks[i].kind)).string();
                save_rect_file(out.trajectory, base + "_trajectory.txt");
                write_eval_result(r, base);
                rows[i] = {seq.name, tasks[i].kind, seq.size(), out.fps, r.precision_20, r.auc};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    std::printf("%-20s %-7s %7s %8s %12s %8s\n", "sequence", "tracker", "frames", "fps",
                "precision20", "auc");
    for (const auto& kind : kinds) {
        double p_sum = 0.0;
        double a_sum = 0.0;
        int count = 0;
        for (const auto& row : rows) {
            if (row.tracker != kind) continue;
            std::printf("%-20s %-7s %7zu %8.1f %12.4f %8.4f\n", row.sequence.c_str(),
                        row.tracker.c_str(), row.frames, row.fps, row.precision_20, row.auc);
            p_sum += row.precision_20;
            a_sum += row.auc;
            ++count;
        }
        if (count > 0) {
            std::printf("%-20s %-7s %7s %8s %12.4f %8.4f\n", "mean", kind.c_str(), "", "",
                        p_sum / count, a_sum / count);
        }
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"compressive tracking toolkit"};
    app.require_subcommand(1);

    auto* track = app.add_subcommand("track", "run a tracker over a sequence");
    std::string track_seq;
    std::string track_out = ".";
    std::string track_kind = "act";
    std::string track_state;
    bool track_verbose = false;
    bool track_dump = false;
    track->add_option("--seq", track_seq, "sequence directory");
    track->add_option("--out", track_out, "output directory");
    track->add_option("--tracker", track_kind, "tracker kind")
        ->check(CLI::IsMember({"act", "ct"}));
    track->add_option("--save-state", track_state, "write a tracker snapshot here");
    track->add_flag("--verbose", track_verbose, "write per-frame diagnostics");
    track->add_flag("--dump-config", track_dump, "print the effective config and exit");
    ConfigLayer track_cfg;
    track_cfg.attach(track);

    auto* eval = app.add_subcommand("eval", "score a trajectory against ground truth");
    std::string eval_traj;
    std::string eval_gt;
    std::string eval_out = "eval";
    eval->add_option("--trajectory", eval_traj, "tracker output rects")->required();
    eval->add_option("--gt", eval_gt, "ground truth rects")->required();
    eval->add_option("--out", eval_out, "output base path");

    auto* synth = app.add_subcommand("synth", "generate a synthetic sequence");
    std::string synth_spec;
    std::string synth_out;
    synth->add_option("--spec", synth_spec, "spec file (key = value lines)");
    synth->add_option("--out", synth_out, "output sequence directory")->required();

    auto* bench = app.add_subcommand("bench", "run trackers over a directory of sequences");
    std::string bench_data;
    std::string bench_out = "bench_out";
    std::string bench_kind = "act";
    int bench_jobs = 1;
    bool bench_dump = false;
    bench->add_option("--data", bench_data, "directory of sequence directories");
    bench->add_option("--out", bench_out, "output directory");
    bench->add_option("--tracker", bench_kind, "tracker kind")
        ->check(CLI::IsMember({"act", "ct", "both"}));
    bench->add_option("--jobs", bench_jobs, "worker threads")->check(CLI::PositiveNumber);
    bench->add_flag("--dump-config", bench_dump, "print the effective config and exit");
    ConfigLayer bench_cfg;
    bench_cfg.attach(bench);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("act");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(track)) {
            return cmd_track(track_seq, track_out, track_kind, track_cfg.resolve(), track_verbose,
                             track_state, track_dump);
        }
        if (app.got_subcommand(eval)) {
            return cmd_eval(eval_traj, eval_gt, eval_out);
        }
        if (app.got_subcommand(synth)) {
            return cmd_synth(synth_spec, synth_out);
        }
        if (app.got_subcommand(bench)) {
            return cmd_bench(bench_data, bench_out, bench_kind, bench_jobs, bench_cfg.resolve(),
                             bench_dump);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const SizingError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 3;
}

}  // namespace act
