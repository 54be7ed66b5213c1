#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "totbench/checksum.hpp"
#include "totbench/eval/experiment.hpp"
#include "totbench/synthetic.hpp"
#include "json.hpp"

using namespace totbench;
using totbench::test_support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

auto quote(const std::string& s) -> std::string {
    std::string q = "'";
    for (char c : s) {
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return q + "'";
}

auto tot_bench(const TempDir& scratch, const std::vector<std::string>& args, const std::string& env = "") -> Result {
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += quote(TOT_BENCH_EXE);
    for (const auto& a : args) {
        cmd += " " + quote(a);
    }
    auto out = scratch / "stdout.txt";
    auto err = scratch / "stderr.txt";
    cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
    int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

/// Generated dataset plus a built index, shared by the slower tests.
struct Workspace {
    TempDir dir;
    fs::path data;
    fs::path index;

    Workspace() : data(dir / "data"), index(dir / "idx.bin") {
        EXPECT_EQ(tot_bench(dir, {"generate", "--seed", "7", "--num-docs", "120", "--num-requests", "40", "--out",
                                  data.string()})
                      .code,
                  0);
        auto r = tot_bench(dir, {"build-index", "--corpus", (data / "corpus.jsonl").string(), "--index",
                                 index.string(), "--out", (dir / "build").string()});
        EXPECT_EQ(r.code, 0) << r.err;
    }

    [[nodiscard]] auto experiment(const std::string& command, const fs::path& out) const -> std::vector<std::string> {
        return {command,    "--index", index.string(), "--requests", (data / "requests.jsonl").string(),
                "--qrels", (data / "qrels.txt").string(), "--out", out.string()};
    }
};

}  // namespace

TEST(Cli, EvalOnPerfectRunPrintsOnes) {
    TempDir dir;
    auto run = dir.file("run.txt", "r1 Q0 d1 1 9.0 x\nr1 Q0 d2 2 3.0 x\nr2 Q0 d7 1 4.5 x\n");
    auto qrels = dir.file("q.txt", "r1 0 d1 1\nr2 0 d7 1\n");
    auto r = tot_bench(dir, {"eval", "--run", run.string(), "--qrels", qrels.string(), "--k", "10", "--out",
                             (dir / "out").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "success@10 = 1.0000\nMRR = 1.0000\n");
    EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir / "out" / "eval.json"));
}

TEST(Cli, UsageErrorsExitOne) {
    TempDir dir;
    auto r = tot_bench(dir, {"frobnicate"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    r = tot_bench(dir, {"stats", "--colour", "red"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_EQ(tot_bench(dir, {}).code, 1);
    EXPECT_EQ(tot_bench(dir, {"search", "--k1", "-1", "--query", "x", "--index", "i"}).code, 1);
    EXPECT_EQ(tot_bench(dir, {"pmi", "--anchor", "Soundtrack", "--requests", dir.file("r", "").string()}).code, 1);
    EXPECT_EQ(tot_bench(dir, {"--help"}).code, 0);
}

TEST(Cli, MissingIndexExitsTwoNamingThePath) {
    TempDir dir;
    auto missing = (dir / "nowhere" / "idx.bin").string();
    auto r = tot_bench(dir, {"stats", "--index", missing});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
    r = tot_bench(dir, {"search", "--index", missing, "--query", "boat"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, CorruptInputExitsTwo) {
    TempDir dir;
    auto r = tot_bench(dir, {"agreement", "--dual", dir.file("d.jsonl", "{not json\n").string(), "--out",
                             (dir / "o").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("d.jsonl"), std::string::npos) << r.err;
}

TEST(Cli, GenerateIsByteReproducible) {
    TempDir dir;
    for (const auto* sub : {"a", "b"}) {
        ASSERT_EQ(tot_bench(dir, {"generate", "--seed", "11", "--num-docs", "30", "--num-requests", "10", "--out",
                                  (dir / sub).string()})
                      .code,
                  0);
    }
    for (const auto* f : {"corpus.jsonl", "requests.jsonl", "qrels.txt", "dual.jsonl"}) {
        EXPECT_EQ(read_file(dir / "a" / f), read_file(dir / "b" / f)) << f;
    }
}

TEST(Cli, SeededReportsAreByteIdenticalAcrossRerunsAndThreadCounts) {
    Workspace ws;
    auto out = ws.dir / "out";
    std::map<std::string, std::string> first;
    const std::vector<std::string> reports = {"tune.json", "run.json", "run.trec", "run.txt", "ablation.json",
                                              "ablation.txt", "manifest.json"};
    for (int round = 0; round < 2; ++round) {
        auto env = round == 0 ? "TOT_BENCH_THREADS=1" : "TOT_BENCH_THREADS=3";
        auto tune = ws.experiment("tune", out);
        tune.insert(tune.end(), {"--seed", "5"});
        ASSERT_EQ(tot_bench(ws.dir, tune, env).code, 0);
        auto run = ws.experiment("run", out);
        run.insert(run.end(), {"--tuned", "--seed", "5"});
        auto r = tot_bench(ws.dir, run, env);
        ASSERT_EQ(r.code, 0) << r.err;
        auto ablate = ws.experiment("ablate", out);
        ablate.insert(ablate.end(), {"--seed", "5"});
        ASSERT_EQ(tot_bench(ws.dir, ablate, env).code, 0);
        for (const auto& name : reports) {
            auto bytes = read_file(out / name);
            if (round == 0) {
                first[name] = bytes;
            } else {
                EXPECT_EQ(bytes, first[name]) << name;
            }
        }
    }
    auto run = nlohmann::json::parse(first["run.json"]);
    EXPECT_EQ(run["settings"]["tuned"], true);
    EXPECT_EQ(run["num_requests"], 32);  // 40 minus the ceil(0.2 * 40) tune requests
}

TEST(Cli, AblateDefaultRowsAreCodesAboveTwentyPercent) {
    Workspace ws;
    auto out = ws.dir / "out";
    ASSERT_EQ(tot_bench(ws.dir, ws.experiment("ablate", out)).code, 0);
    auto report = nlohmann::json::parse(read_file(out / "ablation.json"));
    auto requests = load_requests(ws.data / "requests.jsonl");
    std::set<std::string> expected;
    for (auto id : CodeTaxonomy::all()) {
        if (eval::request_frequency(requests, CodeSet{id}) > 0.2) {
            expected.insert(std::string(CodeTaxonomy::name(id)));
        }
    }
    std::set<std::string> got;
    for (const auto& row : report["rows"]) {
        if (!row["aggregate"].get<bool>()) {
            got.insert(row["label"].get<std::string>());
            EXPECT_GT(row["frequency"].get<double>(), 0.2);
        }
    }
    EXPECT_EQ(got, expected);
    EXPECT_LT(expected.size(), kNumCodes);
}

TEST(Cli, SearchEmitsTrecLines) {
    Workspace ws;
    auto r = tot_bench(ws.dir, {"search", "--index", ws.index.string(), "--requests",
                                (ws.data / "requests.jsonl").string(), "--k", "3", "--tag", "bm25"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto run = r.out;
    EXPECT_EQ(std::count(run.begin(), run.end(), '\n'), 40 * 3);
    EXPECT_EQ(run.find("tot1000 Q0 "), 0U);
    EXPECT_NE(run.find(" 1 "), std::string::npos);
    EXPECT_EQ(run.substr(run.find('\n') - 5, 5), " bm25");

    auto ablated = tot_bench(ws.dir, {"search", "--index", ws.index.string(), "--requests",
                                      (ws.data / "requests.jsonl").string(), "--k", "3", "--ablate",
                                      "Social,Temporal context"});
    ASSERT_EQ(ablated.code, 0);
    // Noise sentences use words absent from the corpus, so the ranking is unchanged.
    EXPECT_EQ(ablated.out, tot_bench(ws.dir, {"search", "--index", ws.index.string(), "--requests",
                                              (ws.data / "requests.jsonl").string(), "--k", "3"})
                               .out);
}

TEST(Cli, VerifyDetectsTampering) {
    Workspace ws;
    auto out = ws.dir / "out";
    ASSERT_EQ(tot_bench(ws.dir, ws.experiment("run", out)).code, 0);
    EXPECT_EQ(tot_bench(ws.dir, {"verify", "--out", out.string()}).code, 0);
    auto requests = read_file(ws.data / "requests.jsonl");
    std::ofstream(ws.data / "requests.jsonl", std::ios::binary) << requests << "\n";
    auto r = tot_bench(ws.dir, {"verify", "--manifest", (out / "manifest.json").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("requests.jsonl"), std::string::npos) << r.out;
}

TEST(Cli, ConfigFileSeedsDefaultsAndFlagsOverride) {
    Workspace ws;
    auto cfg = ws.dir.file("exp.ini", "[paths]\nindex = idx.bin\nrequests = data/requests.jsonl\n"
                                      "qrels = data/qrels.txt\noutput = from-config\n"
                                      "[retrieval]\nk1 = 0.9\nb = 0.4\n[experiment]\nk = 1,5\n"
                                      "evaluate_on = all\n");
    auto r = tot_bench(ws.dir, {"run", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("k1 = 0.90, b = 0.40"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("success@5 = "), std::string::npos);
    EXPECT_TRUE(fs::exists(ws.dir / "from-config" / "run.json"));

    r = tot_bench(ws.dir, {"--config", cfg.string(), "run", "--k1", "2.0", "--out", (ws.dir / "cli").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("k1 = 2.00, b = 0.40"), std::string::npos) << r.out;
    auto m1 = nlohmann::json::parse(read_file(ws.dir / "from-config" / "manifest.json"));
    auto m2 = nlohmann::json::parse(read_file(ws.dir / "cli" / "manifest.json"));
    EXPECT_NE(m1["runs"]["run"]["config_hash"], m2["runs"]["run"]["config_hash"]);

    r = tot_bench(ws.dir, {"config", "--config", cfg.string(), "--write", (ws.dir / "effective.ini").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_file(ws.dir / "effective.ini"), r.out);
    EXPECT_EQ(tot_bench(ws.dir, {"config", "--config", ws.dir.file("bad.ini", "[retrieval]\nk9 = 1\n").string()}).code,
              1);
}

TEST(Cli, AnalyticsSubcommands) {
    Workspace ws;
    auto out = ws.dir / "out";
    auto r = tot_bench(ws.dir, {"agreement", "--dual", (ws.data / "dual.jsonl").string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Character"), std::string::npos);
    r = tot_bench(ws.dir, {"pmi", "--requests", (ws.data / "requests.jsonl").string(), "--anchor", "Previous search",
                           "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("log base 2"), std::string::npos);
    r = tot_bench(ws.dir, {"freq", "--requests", (ws.data / "requests.jsonl").string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
    EXPECT_EQ(manifest["runs"].size(), 3U);
}

TEST(Cli, TtestBetweenTwoRuns) {
    Workspace ws;
    auto a = ws.experiment("run", ws.dir / "a");
    a.insert(a.end(), {"--evaluate-on", "all"});
    auto b = ws.experiment("run", ws.dir / "b");
    b.insert(b.end(), {"--evaluate-on", "all", "--strategy", "title"});
    ASSERT_EQ(tot_bench(ws.dir, a).code, 0);
    ASSERT_EQ(tot_bench(ws.dir, b).code, 0);
    auto r = tot_bench(ws.dir, {"ttest", "--run-a", (ws.dir / "a" / "run.trec").string(), "--run-b",
                                (ws.dir / "b" / "run.trec").string(), "--qrels", (ws.data / "qrels.txt").string(),
                                "--pairs", "3", "--metric", "mrr", "--out", (ws.dir / "t").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(read_file(ws.dir / "t" / "ttest.json"));
    EXPECT_EQ(j["n"], 40);
    EXPECT_DOUBLE_EQ(j["corrected_alpha"].get<double>(), 0.01 / 3);
    EXPECT_GT(j["mean_difference"].get<double>(), 0.0);
}
