#include "motionsimp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "motionsimp/errors.hpp"
#include "motionsimp/eval.hpp"
#include "motionsimp/fixtures.hpp"
#include "motionsimp/motion_io.hpp"
#include "motionsimp/serialize.hpp"
#include "motionsimp/service.hpp"

namespace motionsimp::cli {

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = kOk;
    json line;
};

int code_for(const MotionError& e) {
    switch (e.kind()) {
        case ErrorKind::Io: return kIo;
        case ErrorKind::InvalidArgument: return kUsage;
        default: return kInvalidData;
    }
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep input order.
template <class Fn>
std::vector<Outcome> run_pool(std::size_t n, unsigned jobs, Fn fn) {
    std::vector<Outcome> results(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = fn(i);
            } catch (const MotionError& e) {
                results[i] = {code_for(e), {{"status", "error"}, {"error", e.what()}}};
            } catch (const fs::filesystem_error& e) {
                results[i] = {kIo, {{"status", "error"}, {"error", e.what()}}};
            } catch (const std::exception& e) {
                results[i] = {kInvalidData, {{"status", "error"}, {"error", e.what()}}};
            }
        }
    };
    const std::size_t count = std::min<std::size_t>(std::max(1u, jobs), n);
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < count; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    return results;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
    f << text;
    if (!f) fail(ErrorKind::Io, "write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) fail(ErrorKind::Io, "cannot create directory " + dir.string());
}

json score_row(const ComplexityProfile& p) {
    json row;
    for (std::size_t i = 0; i < kNumCriteria; ++i) row["c" + std::to_string(i + 1)] = p.scores[i];
    return row;
}

int finish(const std::vector<Outcome>& results, const std::vector<std::string>& files, std::ostream& out) {
    int code = kOk;
    for (std::size_t i = 0; i < results.size(); ++i) {
        json line = results[i].line;
        line["file"] = files[i];
        out << dump_json(line) << "\n";
        code = std::max(code, results[i].code);
    }
    return code;
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(ErrorKind::InvalidArgument, key + ": not a number: " + text);
    return v;
}

long long parse_int(const std::string& key, const std::string& text) {
    long long v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(ErrorKind::InvalidArgument, key + ": not an integer: " + text);
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<fs::path> read_manifest(const fs::path& manifest) {
    std::ifstream f(manifest);
    if (!f) fail(ErrorKind::Io, "cannot read manifest " + manifest.string());
    std::vector<fs::path> paths;
    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        fs::path p(line);
        paths.push_back(p.is_absolute() ? p : manifest.parent_path() / p);
    }
    return paths;
}

// Flags shared by analyze and simplify.
struct ConfigFlags {
    std::string config_file;
    std::map<std::string, std::string> flags;

    void add(CLI::App* app, bool full) {
        app->add_option("--config", config_file, "key=value config file (flags override it)");
        auto opt = [&](const std::string& name, const std::string& key, const std::string& help) {
            app->add_option_function<std::string>(
                name, [this, key](const std::string& v) { flags[key] = v; }, help);
        };
        opt("--sg-window", "sg_window", "Savitzky-Golay window (odd)");
        opt("--sg-order", "sg_order", "Savitzky-Golay polynomial order");
        if (!full) return;
        opt("--criteria", "criteria", "c1,c2,...|all|none");
        opt("--k", "k", "distance compression factor");
        opt("--lambda", "lambda", "integer slowdown factor");
        opt("--psi-target", "psi_target", "target yaw in radians");
        opt("--eps", "eps", "trend jitter threshold (m per frame)");
        opt("--alpha", "alpha", "trend overlap ratio");
        opt("--flip", "flip", "default flip vector, e.g. -1,1,1");
        for (int c = 1; c <= 5; ++c) {
            const std::string n = std::to_string(c);
            opt("--tau-c" + n, "tau_c" + n, "activation threshold for C" + n);
            opt("--min-len-c" + n, "min_len_c" + n, "minimum interval frames for C" + n);
        }
    }

    SimplifyConfig resolve() const {
        std::map<std::string, std::string> merged;
        if (!config_file.empty()) merged = read_config_file(config_file);
        for (const auto& [k, v] : flags) merged[k] = v;
        return config_from_json(overrides_to_json(merged));
    }
};

int cmd_analyze(const std::vector<std::string>& inputs, const fs::path& out_dir, const SimplifyConfig& config,
                const std::string& format, unsigned jobs, std::ostream& out, std::ostream& err) {
    if (inputs.empty()) return kOk;
    ensure_dir(out_dir);
    const MetricWeights weights = config.metric_weights();
    std::vector<ComplexityProfile> profiles(inputs.size());
    auto results = run_pool(inputs.size(), jobs, [&](std::size_t i) {
        const MotionSequence seq = load_motion(inputs[i]);
        profiles[i] = compute_profile(seq, weights);
        const fs::path target = out_dir / (fs::path(inputs[i]).stem().string() + ".profile.json");
        write_text(target, dump_json(profile_to_json(profiles[i], seq)));
        json line = score_row(profiles[i]);
        line["status"] = "ok";
        line["profile"] = target.string();
        return Outcome{kOk, line};
    });
    for (std::size_t i = 0; i < inputs.size(); ++i) err << "analyzed " << inputs[i] << "\n";
    if (format != "table") return finish(results, inputs, out);

    int code = kOk;
    out << std::left << std::setw(32) << "file";
    for (int c = 1; c <= 5; ++c) out << std::right << std::setw(12) << ("C" + std::to_string(c));
    out << "\n";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        out << std::left << std::setw(32) << fs::path(inputs[i]).filename().string();
        if (results[i].code != kOk) {
            out << "  error: " << results[i].line.value("error", "") << "\n";
            code = std::max(code, results[i].code);
            continue;
        }
        for (double s : profiles[i].scores) {
            out << std::right << std::setw(12) << std::fixed << std::setprecision(4) << s;
        }
        out << "\n";
    }
    return code;
}

int cmd_simplify(const std::vector<std::string>& inputs, const fs::path& out_dir, const SimplifyConfig& config,
                 MotionFormat motion_format, unsigned jobs, std::ostream& out, std::ostream& err) {
    if (inputs.empty()) return kOk;
    ensure_dir(out_dir);
    auto results = run_pool(inputs.size(), jobs, [&](std::size_t i) {
        const MotionSequence seq = load_motion(inputs[i]);
        const SimplifyResult r = simplify(seq, config);
        const std::string stem = fs::path(inputs[i]).stem().string();
        const fs::path motion_path =
            out_dir / (stem + ".simplified" + (motion_format == MotionFormat::Bin ? ".bin" : ".json"));
        const fs::path result_path = out_dir / (stem + ".result.json");
        save_motion(r.motion, motion_path, motion_format);
        write_text(result_path, dump_json(result_to_json(r, false)));
        json accepted = json::array();
        for (const auto& s : r.applied) {
            if (s.accepted) accepted.push_back(s.criterion);
        }
        return Outcome{kOk,
                       {{"status", "ok"},
                        {"output", motion_path.string()},
                        {"result", result_path.string()},
                        {"before", score_row(r.before)},
                        {"after", score_row(r.after)},
                        {"accepted", accepted}}};
    });
    for (const auto& f : inputs) err << "simplified " << f << "\n";
    return finish(results, inputs, out);
}

int cmd_eval(const std::vector<std::string>& originals, const std::vector<std::string>& simplified,
             const std::string& reference, bool want_fid, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
    if (originals.size() != simplified.size()) {
        err << "eval: --original and --simplified need the same number of files\n";
        return kUsage;
    }
    if (want_fid && reference.empty()) {
        err << "eval: --fid requires --reference\n";
        return kUsage;
    }
    if (originals.empty()) {
        err << "eval: no pairs given\n";
        return kUsage;
    }
    std::vector<SequencePair> pairs;
    for (std::size_t i = 0; i < originals.size(); ++i) {
        pairs.push_back({load_motion(originals[i]), load_motion(simplified[i])});
    }
    std::vector<MotionSequence> corpus;
    if (!reference.empty()) {
        for (const auto& p : read_manifest(reference)) corpus.push_back(load_motion(p));
        if (corpus.empty()) fail(ErrorKind::InvalidArgument, "reference manifest lists no sequences");
    }
    const EvalReport report = evaluate_pairs(pairs, corpus);
    if (want_fid && (!report.fid_k || !report.fid_g)) {
        fail(ErrorKind::InvalidArgument, "FID needs at least two pairs and two reference sequences");
    }
    const std::string text = dump_json(eval_report_to_json(report));
    if (!out_path.empty()) write_text(out_path, text);
    out << text << "\n";
    return kOk;
}

int cmd_gen_fixtures(const std::string& kind, std::uint64_t seed, std::size_t frames, double fps,
                     const fs::path& out_dir, MotionFormat format, std::ostream& out) {
    std::vector<FixtureKind> kinds;
    if (kind == "all") {
        kinds = all_fixture_kinds();
    } else {
        kinds.push_back(fixture_from_name(kind));
    }
    ensure_dir(out_dir);
    for (FixtureKind k : kinds) {
        const MotionSequence seq = make_fixture(k, {frames, fps, seed});
        const fs::path path = out_dir / (fixture_name(k) + "-" + std::to_string(seed) +
                                         (format == MotionFormat::Bin ? ".bin" : ".json"));
        save_motion(seq, path, format);
        out << dump_json({{"kind", fixture_name(k)}, {"seed", seed}, {"file", path.string()}, {"status", "ok"}})
            << "\n";
    }
    return kOk;
}

}  // namespace

unsigned default_jobs() {
    if (const char* env = std::getenv("MOTIONSIMP_JOBS")) {
        try {
            const long long v = parse_int("MOTIONSIMP_JOBS", env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const MotionError&) {
        }
    }
    return 1;
}

std::map<std::string, std::string> read_config_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Io, "cannot read config " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(ErrorKind::InvalidArgument, path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

json overrides_to_json(const std::map<std::string, std::string>& overrides) {
    json doc = json::object();
    for (const auto& [key, value] : overrides) {
        if (key == "criteria") {
            doc[key] = value;
        } else if (key == "k" || key == "eps" || key == "alpha" || key == "psi_target") {
            doc[key] = parse_double(key, value);
        } else if (key == "lambda" || key == "sg_window" || key == "sg_order") {
            doc[key] = parse_int(key, value);
        } else if (key.rfind("tau_c", 0) == 0) {
            doc["tau"][key.substr(4)] = parse_double(key, value);
        } else if (key.rfind("min_len_c", 0) == 0) {
            doc["min_len"][key.substr(8)] = parse_int(key, value);
        } else if (key == "flip") {
            json flip = json::array();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) flip.push_back(parse_int(key, trim(item)));
            doc[key] = flip;
        } else {
            fail(ErrorKind::InvalidArgument, "unknown config key: " + key);
        }
    }
    return doc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dance motion complexity analysis and simplification", "motionsimp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(MOTIONSIMP_VERSION));

    unsigned jobs = default_jobs();
    std::string format = "json";
    std::string out_dir = ".";
    std::vector<std::string> inputs;

    auto* analyze = app.add_subcommand("analyze", "Complexity profile per input file");
    ConfigFlags analyze_flags;
    analyze->add_option("inputs", inputs, "motion files (JSON or BIN)");
    analyze->add_option("--out-dir", out_dir, "directory for <stem>.profile.json");
    analyze->add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "table"}));
    analyze->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    analyze_flags.add(analyze, false);

    auto* simp = app.add_subcommand("simplify", "Run the simplification pipeline");
    ConfigFlags simp_flags;
    std::string motion_format = "json";
    simp->add_option("inputs", inputs, "motion files (JSON or BIN)");
    simp->add_option("--out-dir", out_dir, "directory for outputs");
    simp->add_option("--format", motion_format, "output motion format")->check(CLI::IsMember({"json", "bin"}));
    simp->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    simp_flags.add(simp, true);

    auto* ev = app.add_subcommand("eval", "Evaluate original/simplified pairs");
    std::vector<std::string> originals, simplified;
    std::string reference, report_path;
    bool want_fid = false;
    ev->add_option("--original", originals, "original motion files")->expected(1, -1);
    ev->add_option("--simplified", simplified, "simplified motion files, same order")->expected(1, -1);
    ev->add_option("--reference", reference, "manifest listing reference motion files");
    ev->add_flag("--fid", want_fid, "require FID against the reference corpus");
    ev->add_option("--out", report_path, "also write the report here");

    auto* gen = app.add_subcommand("gen-fixtures", "Write synthetic fixture clips");
    std::string kind = "all";
    std::uint64_t seed = 0;
    std::size_t frames = 120;
    double fps = 60.0;
    std::string gen_format = "json";
    gen->add_option("--kind", kind, "fixture kind or 'all'");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--frames", frames, "frames per clip")->check(CLI::Range(2, 1000000));
    gen->add_option("--fps", fps, "frame rate")->check(CLI::PositiveNumber);
    gen->add_option("--out-dir", out_dir, "output directory")->required();
    gen->add_option("--format", gen_format, "motion format")->check(CLI::IsMember({"json", "bin"}));

    auto* srv = app.add_subcommand("serve", "Run the HTTP service");
    int port = kDefaultPort;
    std::string host = "127.0.0.1";
    ServiceOptions service_options;
    srv->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
    srv->add_option("--host", host, "listen address");
    srv->add_option("--static", service_options.static_dir, "UI bundle directory mounted at /");
    srv->add_flag("--cors-any", service_options.cors_any, "allow any CORS origin");
    srv->add_option("--capacity", service_options.capacity, "session capacity")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (analyze->parsed()) {
            const SimplifyConfig config = analyze_flags.resolve();
            return cmd_analyze(inputs, out_dir, config, format, jobs, out, err);
        }
        if (simp->parsed()) {
            const SimplifyConfig config = simp_flags.resolve();
            return cmd_simplify(inputs, out_dir, config, format_from_name(motion_format), jobs, out, err);
        }
        if (ev->parsed()) return cmd_eval(originals, simplified, reference, want_fid, report_path, out, err);
        if (gen->parsed()) {
            return cmd_gen_fixtures(kind, seed, frames, fps, out_dir, format_from_name(gen_format), out);
        }
        if (srv->parsed()) {
            Service service(service_options);
            return serve(service, host, port);
        }
    } catch (const MotionError& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    }
    return kUsage;
}

}  // namespace motionsimp::cli
