#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "generators.hpp"
#include "motionsimp/cli.hpp"
#include "motionsimp/fixtures.hpp"
#include "motionsimp/motion_io.hpp"
#include "motionsimp/serialize.hpp"
#include "motionsimp/service.hpp"
#include "tmpdir.hpp"

using namespace motionsimp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({"simplify", "--k", "abc"}).code == cli::kUsage);
}

TEST_CASE("analyze") {
    testgen::TempDir dir;
    CHECK(run({"analyze", "--out-dir", (dir / "p").string()}).out.empty());

    save_motion(make_fixture(FixtureKind::Static, {60, 60.0, 0}), dir / "still.json", MotionFormat::Json);
    const auto r = run({"analyze", (dir / "still.json").string(), "--out-dir", (dir / "p").string()});
    CHECK(r.code == 0);
    const auto row = json::parse(lines(r.out).at(0));
    for (const char* c : {"c1", "c2", "c3", "c4", "c5"}) CHECK(row[c] == 0.0);

    testgen::write_file(dir / "bad.json", "{\"fps\": 30}");
    const auto bad = run({"analyze", (dir / "still.json").string(), (dir / "bad.json").string(), "--out-dir",
                          (dir / "p").string()});
    CHECK(bad.code == cli::kInvalidData);
    CHECK(lines(bad.out).size() == 2);
    CHECK(run({"analyze", (dir / "missing.json").string(), "--out-dir", (dir / "p").string()}).code == cli::kIo);

    const auto table = run({"analyze", (dir / "still.json").string(), "--out-dir", (dir / "p").string(),
                            "--format", "table"});
    CHECK(table.out.find("C5") != std::string::npos);
}

TEST_CASE("worker count does not change outputs") {
    testgen::TempDir dir;
    std::vector<std::string> files;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto p = dir / ("m" + std::to_string(s) + ".bin");
        save_motion(testgen::random_motion(s, 60 + 10 * s), p, MotionFormat::Bin);
        files.push_back(p.string());
    }
    auto with_jobs = [&](const std::string& jobs, const std::string& out) {
        std::vector<std::string> args{"analyze", "--jobs", jobs, "--out-dir", (dir / out).string()};
        args.insert(args.end(), files.begin(), files.end());
        return run(args);
    };
    const auto one = with_jobs("1", "a");
    const auto four = with_jobs("4", "b");
    CHECK(one.code == 0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const std::string name = "m" + std::to_string(s) + ".profile.json";
        CHECK(testgen::read_file(dir / "a" / name) == testgen::read_file(dir / "b" / name));
    }
    auto strip = [](std::string t) {
        std::string out;
        for (const auto& l : lines(t)) {
            auto j = json::parse(l);
            j.erase("profile");
            out += j.dump() + "\n";
        }
        return out;
    };
    CHECK(strip(one.out) == strip(four.out));
}

TEST_CASE("simplify") {
    testgen::TempDir dir;
    const auto seq = testgen::random_motion(4, 120);
    save_motion(seq, dir / "clip.json", MotionFormat::Json);
    const auto none = run({"simplify", (dir / "clip.json").string(), "--criteria", "none", "--out-dir",
                           (dir / "o").string()});
    CHECK(none.code == 0);
    CHECK(load_motion(dir / "o" / "clip.simplified.json") == seq);

    const auto guard = run({"simplify", (dir / "clip.json").string(), "--criteria", "c2", "--k", "1.0",
                            "--lambda", "2", "--tau-c2", "0", "--out-dir", (dir / "g").string(), "--format", "bin"});
    CHECK(guard.code == 0);
    const auto result = json::parse(testgen::read_file(dir / "g" / "clip.result.json"));
    CHECK(result["applied"][1]["attempted"] == true);
    CHECK(result["applied"][1]["accepted"] == false);
    CHECK(load_motion(dir / "g" / "clip.simplified.bin") == seq);

    testgen::write_file(dir / "broken.json", "[1,2");
    CHECK(run({"simplify", (dir / "broken.json").string(), "--out-dir", (dir / "o").string()}).code != 0);

    testgen::write_file(dir / "cfg.txt", "# defaults\nk = 0.25\ncriteria=none\n");
    const auto cfg = run({"simplify", (dir / "clip.json").string(), "--config", (dir / "cfg.txt").string(),
                          "--criteria", "c3", "--out-dir", (dir / "c").string()});
    CHECK(cfg.code == 0);
    const auto applied = json::parse(testgen::read_file(dir / "c" / "clip.result.json"))["applied"];
    CHECK(applied[2]["enabled"] == true);
    CHECK(applied[0]["enabled"] == false);
    CHECK(run({"simplify", (dir / "clip.json").string(), "--k", "7", "--out-dir", (dir / "c").string()}).code ==
          cli::kUsage);
}

TEST_CASE("config overrides") {
    const auto doc = cli::overrides_to_json({{"tau_c2", "0.5"}, {"min_len_c4", "9"}, {"flip", "-1,1,-1"}});
    const auto c = config_from_json(doc);
    CHECK(c.tau[1] == 0.5);
    CHECK(c.min_len[3] == 9u);
    CHECK(c.flip_vector == FlipVector{-1, 1, -1});
    CHECK_THROWS(cli::overrides_to_json({{"speed", "1"}}));
}

TEST_CASE("eval") {
    testgen::TempDir dir;
    const auto a = testgen::random_motion(5, 50), b = testgen::random_motion(6, 50);
    save_motion(a, dir / "a.json", MotionFormat::Json);
    save_motion(b, dir / "b.json", MotionFormat::Json);
    const auto self = run({"eval", "--original", (dir / "a.json").string(), "--simplified",
                           (dir / "a.json").string()});
    REQUIRE(self.code == 0);
    CHECK(json::parse(self.out)["dtw_cost"] == 0.0);

    CHECK(run({"eval", "--original", (dir / "a.json").string(), "--simplified", (dir / "a.json").string(),
               "--fid"}).code == cli::kUsage);

    testgen::write_file(dir / "ref.txt", "a.json\nb.json\n");
    const auto full = run({"eval", "--original", (dir / "a.json").string(), (dir / "b.json").string(),
                           "--simplified", (dir / "a.json").string(), (dir / "b.json").string(), "--reference",
                           (dir / "ref.txt").string(), "--fid", "--out", (dir / "report.json").string()});
    REQUIRE(full.code == 0);
    const std::vector<SequencePair> pairs{{a, a}, {b, b}};
    const std::vector<MotionSequence> ref{a, b};
    CHECK(testgen::read_file(dir / "report.json") == dump_json(eval_report_to_json(evaluate_pairs(pairs, ref))));
    CHECK(json::parse(full.out)["fid_k"].get<double>() < 1e-6);
}

TEST_CASE("gen-fixtures is reproducible") {
    testgen::TempDir dir;
    CHECK(run({"gen-fixtures", "--seed", "3", "--out-dir", (dir / "x").string()}).code == 0);
    CHECK(run({"gen-fixtures", "--seed", "3", "--out-dir", (dir / "y").string(), "--format", "json"}).code == 0);
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir / "x")) {
        CHECK(testgen::read_file(e.path()) == testgen::read_file(dir / "y" / e.path().filename()));
        ++n;
    }
    CHECK(n == all_fixture_kinds().size());
    CHECK(run({"gen-fixtures", "--kind", "nope", "--out-dir", (dir / "z").string()}).code == cli::kUsage);
}

TEST_CASE("binary exit code") {
    const std::string cmd = std::string(MOTIONSIMP_CLI_PATH) + " analyze /nonexistent/file.json --out-dir /tmp >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == cli::kIo);
}
