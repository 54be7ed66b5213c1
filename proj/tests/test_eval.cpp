#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "totbench/eval/experiment.hpp"
#include "totbench/eval/metrics.hpp"
#include "totbench/eval/run_file.hpp"
#include "totbench/eval/significance.hpp"

using namespace totbench;
using namespace totbench::eval;
using totbench::test_support::TempDir;

namespace {

constexpr RelevantRank NF = std::nullopt;

auto code(std::string_view name) -> CodeId { return *CodeTaxonomy::find(name); }

auto bare() -> const textproc::Analyzer& {
    static const textproc::Analyzer a(textproc::PipelineConfig::bare());
    return a;
}

auto word(std::size_t i) -> std::string { return "w" + std::to_string(i); }

/// Docs with random plots; request i quotes a window of doc i's plot in a
/// Character sentence and adds a Social and a Context sentence made of words
/// that appear in no document.
struct Planted {
    std::vector<Document> docs;
    std::vector<TOTRequest> requests;
    Qrels qrels;
    InvertedIndex index;

    Planted(std::size_t num_docs, std::size_t num_requests, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        for (std::size_t d = 0; d < num_docs; ++d) {
            std::string plot;
            for (int k = 0; k < 40; ++k) {
                plot += word(rng() % 400) + " ";
            }
            docs.push_back({"doc" + std::to_string(d), "", "tt" + std::to_string(1000000 + d), plot});
        }
        for (std::size_t r = 0; r < num_requests; ++r) {
            const auto& answer = docs[r];
            auto words = bare().analyze(answer.plot);
            std::string quote;
            for (int k = 0; k < 10; ++k) {
                quote += words[static_cast<std::size_t>(k)] + " ";
            }
            TOTRequest req;
            req.request_id = "q" + std::to_string(100 + r);
            req.title = "";
            req.sentences = {{0, quote, {code("Character")}},
                             {1, "thanks pleasantry" + std::to_string(r), {code("Social")}},
                             {2, "watched cinema" + std::to_string(r % 3), {code("Temporal context")}}};
            if (r % 2 == 0) {
                req.sentences.push_back({3, "maybe unsure", {code("Uncertainty")}});
            }
            for (const auto& s : req.sentences) {
                req.description += (req.description.empty() ? "" : " ") + s.text;
            }
            req.answer_catalog_id = *answer.catalog_id;
            requests.push_back(req);
            qrels.add(req.request_id, answer.doc_id);
        }
        index = build_index(docs, bare());
    }

    [[nodiscard]] auto bench() const -> Workbench { return {index, bare(), qrels}; }
};

}  // namespace

TEST(Metrics, HandComputedValues) {
    std::vector<RelevantRank> ranks{1, 4, NF};
    EXPECT_DOUBLE_EQ(success_at_k(ranks, 10), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(mrr(ranks), (1.0 + 0.25 + 0.0) / 3.0);
    EXPECT_EQ(success_at_k({10}, 10), 1.0);
    EXPECT_EQ(success_at_k({11}, 10), 0.0);
    EXPECT_EQ(success_at_k({NF, NF}, 10), 0.0);
    EXPECT_EQ(mrr({NF, NF}), 0.0);
    EXPECT_THROW((void)success_at_k({}, 10), UsageError);
    EXPECT_THROW((void)mrr({}), UsageError);
    EXPECT_THROW((void)success_at_k({1}, 0), UsageError);
}

TEST(Metrics, SuccessIsMonotoneInKAndBoundsMrr) {
    std::mt19937_64 rng(2);
    for (int round = 0; round < 200; ++round) {
        std::vector<RelevantRank> ranks;
        for (std::size_t i = 0, n = 1 + rng() % 30; i < n; ++i) {
            ranks.push_back(rng() % 4 == 0 ? NF : RelevantRank(1 + rng() % 50));
        }
        double last = 0;
        for (std::uint32_t k = 1; k <= 60; ++k) {
            double s = success_at_k(ranks, k);
            ASSERT_GE(s, last);
            last = s;
        }
        EXPECT_LE(mrr(ranks), success_at_k(ranks, 1000));
        EXPECT_GE(mrr(ranks), 0.0);
    }
}

TEST(Metrics, ParsesMetricNames) {
    EXPECT_EQ(parse_metric("mrr"), Metric::reciprocal());
    EXPECT_EQ(parse_metric("success@10"), Metric::success(10));
    EXPECT_EQ(parse_metric("s@5"), Metric::success(5));
    EXPECT_THROW((void)parse_metric("success@0"), UsageError);
    EXPECT_THROW((void)parse_metric("success@x"), UsageError);
    EXPECT_THROW((void)parse_metric("ndcg"), UsageError);
    EXPECT_EQ(Metric::success(10).name(), "success@10");
}

TEST(RunFile, RoundTripAndEvaluate) {
    TempDir dir;
    TrecRun run;
    run["q1"] = {{"q1", "a", 1, 2.5}, {"q1", "b", 2, 1.25}};
    run["q2"] = {{"q2", "c", 1, 3.0}, {"q2", "d", 2, 0.5}};
    save_run(dir / "run.txt", run, "bm25");
    EXPECT_EQ(read_file(dir / "run.txt"),
              "q1 Q0 a 1 2.500000 bm25\nq1 Q0 b 2 1.250000 bm25\nq2 Q0 c 1 3.000000 bm25\nq2 Q0 d 2 0.500000 bm25\n");
    EXPECT_EQ(load_run(dir / "run.txt"), run);

    Qrels qrels;
    qrels.add("q1", "b");
    qrels.add("q2", "zzz");
    qrels.add("q3", "a");
    auto result = evaluate_run(run, qrels, {1, 10});
    ASSERT_EQ(result.outcomes.size(), 3U);
    EXPECT_EQ(result.outcomes[0].rank, RelevantRank(2));
    EXPECT_EQ(result.outcomes[1].rank, NF);
    EXPECT_EQ(result.outcomes[2].rank, NF);
    EXPECT_DOUBLE_EQ(result.success.at(10), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(result.mrr, 0.5 / 3.0);
    EXPECT_EQ(evaluate_run(run, qrels, {10}, 1).outcomes[0].rank, NF);
}

TEST(RunFile, RejectsMalformedLines) {
    TempDir dir;
    EXPECT_THROW((void)load_run(dir.file("a.txt", "q1 Q0 a one 2.0 t\n")), DataError);
    EXPECT_THROW((void)load_run(dir.file("b.txt", "q1 Q0 a 0 2.0 t\n")), DataError);
    try {
        (void)load_run(dir.file("c.txt", "q1 Q0 a 1 2.0 t\n\nq1 Q0 a 2 1.0 t\n"));
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
    }
}

TEST(Experiment, PlantedQuotesAreFoundFirst) {
    Planted p(10, 10, 1);
    auto result = run_experiment(p.bench(), {}, p.requests, {});
    EXPECT_EQ(result.success.at(10), 1.0);
    for (const auto& o : result.outcomes) {
        EXPECT_EQ(o.rank, RelevantRank(1)) << o.request_id;
    }
}

TEST(Experiment, EmptyQueryIsNotFoundAndMissingJudgmentIsAnError) {
    Planted p(10, 3, 1);
    auto reqs = p.requests;
    QueryStrategy all_gone{QueryFields::Description,
                           {code("Character"), code("Social"), code("Temporal context"), code("Uncertainty")}};
    auto result = run_experiment(p.bench(), {}, reqs, all_gone);
    for (const auto& o : result.outcomes) {
        EXPECT_EQ(o.rank, NF);
    }
    EXPECT_EQ(result.mrr, 0.0);
    reqs[1].request_id = "unjudged";
    EXPECT_THROW((void)run_experiment(p.bench(), {}, reqs, {}), DataError);
    EXPECT_THROW((void)run_experiment(p.bench(), {}, {}, {}), DataError);
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
    Planted p(60, 40, 3);
    ExperimentOptions one;
    ExperimentOptions many;
    many.threads = 4;
    QueryStrategy s{QueryFields::Description, {code("Character")}};
    EXPECT_EQ(run_experiment(p.bench(), {0.9, 0.4}, p.requests, s, one).outcomes,
              run_experiment(p.bench(), {0.9, 0.4}, p.requests, s, many).outcomes);
}

TEST(Experiment, RetrieveMatchesRankOf) {
    Planted p(30, 12, 5);
    auto run = retrieve(p.index, bare(), {}, p.requests, {}, 1000, 2);
    auto from_run = evaluate_run(run, p.qrels, {10});
    auto direct = run_experiment(p.bench(), {}, p.requests, {});
    EXPECT_EQ(from_run.outcomes, direct.outcomes);
}

TEST(Split, SeededAndSized) {
    std::vector<TOTRequest> reqs(339);
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        reqs[i].request_id = "r" + std::to_string(i);
    }
    auto a = split_requests(reqs, 42);
    EXPECT_EQ(a.tune.size(), 68U);
    EXPECT_EQ(a.heldout.size(), 271U);
    auto shuffled = reqs;
    std::reverse(shuffled.begin(), shuffled.end());
    auto b = split_requests(shuffled, 42);
    EXPECT_EQ(a.tune, b.tune);
    auto c = split_requests(reqs, 43);
    EXPECT_NE(a.tune, c.tune);
    EXPECT_EQ(split_requests(std::vector<TOTRequest>(5), 1).tune.size(), 1U);
    EXPECT_THROW((void)split_requests({}, 1), DataError);
    EXPECT_THROW((void)split_requests(reqs, 1, 0.0), UsageError);
}

TEST(Tune, DefaultGridShape) {
    auto grid = default_grid();
    EXPECT_EQ(grid.size(), 630U);
    EXPECT_EQ(grid.front(), (Bm25Params{0.1, 0.0}));
    EXPECT_EQ(grid.back(), (Bm25Params{3.0, 1.0}));
    EXPECT_EQ(grid[21 * 11 + 13], (Bm25Params{1.2, 0.65}));
}

TEST(Tune, SinglePointGridReturnsIt) {
    Planted p(10, 5, 1);
    auto r = tune(p.bench(), p.requests, {}, {{2.5, 0.35}});
    EXPECT_EQ(r.best, (Bm25Params{2.5, 0.35}));
    EXPECT_THROW((void)tune(p.bench(), p.requests, {}, {}), UsageError);
    EXPECT_THROW((void)tune(p.bench(), {}, {}, {{1, 1}}), DataError);
}

TEST(Tune, TiesGoToSmallestParameters) {
    Planted p(10, 5, 1);
    auto r = tune(p.bench(), p.requests, {}, {{2.0, 0.5}, {1.0, 1.0}, {1.0, 0.9}, {1.5, 0.0}});
    EXPECT_EQ(r.best_value, 1.0);
    EXPECT_EQ(r.best, (Bm25Params{1.0, 0.9}));
}

TEST(Tune, LengthSkewFavoursFullNormalization) {
    // Answers are short and mention "heat" once; distractors are long and
    // mention it three times. Only strong length normalization lifts the
    // answers into the top ten.
    std::vector<Document> docs;
    Qrels qrels;
    std::vector<TOTRequest> reqs;
    for (int i = 0; i < 20; ++i) {
        std::string plot = "heat heat heat";
        for (int k = 0; k < 60; ++k) {
            plot += " filler" + std::to_string(k);
        }
        docs.push_back({"long" + std::to_string(i), "", std::nullopt, plot});
    }
    for (int i = 0; i < 5; ++i) {
        docs.push_back({"short" + std::to_string(i), "", std::nullopt, "heat tiny" + std::to_string(i)});
        TOTRequest r;
        r.request_id = "q" + std::to_string(i);
        r.sentences = {{0, "heat", {code("Scene")}}};
        reqs.push_back(r);
        qrels.add(r.request_id, "short" + std::to_string(i));
    }
    auto index = build_index(docs, bare());
    Workbench wb{index, bare(), qrels};
    std::vector<Bm25Params> grid{{1.2, 0.0}, {1.2, 0.5}, {1.2, 1.0}};
    QueryStrategy desc{QueryFields::Description, {}};
    auto result = tune(wb, reqs, desc, grid);
    EXPECT_EQ(result.best, (Bm25Params{1.2, 1.0}));
    // The exhaustive evaluation is the oracle.
    for (const auto& g : result.scores) {
        EXPECT_EQ(g.value, run_experiment(wb, g.params, reqs, desc, {.ks = {10}}).success.at(10));
        if (!(g.params == result.best)) {
            EXPECT_LT(g.value, result.best_value);
        }
    }
}

TEST(Ablation, NoiseOnlyCodesLeaveMetricUnchanged) {
    Planted p(40, 30, 9);
    auto specs = ablation_specs_for({"Social", "Temporal context", "Character", "Previous search"});
    auto report = run_ablation(p.bench(), {}, p.requests, specs);
    ASSERT_EQ(report.rows.size(), 4U);
    const auto& character = report.rows[0];
    EXPECT_EQ(character.label, "Character");
    EXPECT_EQ(*character.all, 1.0);
    EXPECT_EQ(*character.ablated, 0.0);
    EXPECT_EQ(*character.relative, -1.0);
    const auto& temporal = report.rows[1];
    EXPECT_EQ(temporal.label, "Temporal context");
    EXPECT_EQ(temporal.group, "Context");
    EXPECT_EQ(*temporal.ablated, *temporal.all);
    EXPECT_EQ(report.rows[2].label, "Social");
    EXPECT_EQ(*report.rows[2].absolute, 0.0);
    EXPECT_EQ(report.rows[3].label, "Previous search");
    EXPECT_EQ(report.rows[3].subset_size, 0U);
    EXPECT_TRUE(report.rows[3].flagged());
    EXPECT_FALSE(report.rows[3].all.has_value());
}

TEST(Ablation, SubsetAndFrequencyFollowCodePresence) {
    Planted p(20, 10, 4);
    auto report = run_ablation(p.bench(), {}, p.requests, ablation_specs_for({"Uncertainty"}));
    ASSERT_EQ(report.rows.size(), 1U);
    EXPECT_EQ(report.rows[0].subset_size, 5U);
    EXPECT_DOUBLE_EQ(report.rows[0].frequency, 0.5);
}

TEST(Ablation, DefaultSpecsRespectMinimumFrequency) {
    Planted p(20, 10, 4);
    auto specs = default_ablation_specs(p.requests, 0.2);
    std::vector<std::string> labels;
    for (const auto& s : specs) {
        labels.push_back(s.label);
    }
    EXPECT_EQ(labels, (std::vector<std::string>{"Movie (all)", "Context (all)", "Character", "Temporal context",
                                                "Social", "Uncertainty"}));
    EXPECT_EQ(default_ablation_specs(p.requests, 0.5).size(), 5U);
    EXPECT_THROW((void)ablation_specs_for({"Soundtrack"}), UsageError);
    EXPECT_EQ(ablation_specs_for({"movie (ALL)"}).front().codes, category_codes(CodeCategory::Movie));
}

TEST(Ablation, RequestsWithoutTheCodeRankIdentically) {
    Planted p(40, 30, 6);
    for (auto id : CodeTaxonomy::all()) {
        std::vector<TOTRequest> lacking;
        for (const auto& r : p.requests) {
            if (!r.has_code(id)) {
                lacking.push_back(r);
            }
        }
        if (lacking.empty()) {
            continue;
        }
        auto base = retrieve(p.index, bare(), {}, lacking, {}, 1000);
        auto ablated = retrieve(p.index, bare(), {}, lacking, {QueryFields::TitleDescription, {id}}, 1000);
        ASSERT_EQ(base, ablated) << CodeTaxonomy::name(id);
    }
}

TEST(Significance, DegenerateConventions) {
    auto same = paired_ttest({0.1, 0.5, 1.0}, {0.1, 0.5, 1.0});
    EXPECT_EQ(same.p_value, 1.0);
    EXPECT_FALSE(same.degenerate_variance);
    auto flat = paired_ttest({1, 1, 1, 1}, {0, 0, 0, 0});
    EXPECT_EQ(flat.p_value, 0.0);
    EXPECT_TRUE(flat.degenerate_variance);
    auto inexact = paired_ttest({0.1, 0.1, 0.1, 0.1, 0.1}, {0, 0, 0, 0, 0});
    EXPECT_TRUE(inexact.degenerate_variance);
    EXPECT_THROW((void)paired_ttest({1, 2}, {1}), UsageError);
    EXPECT_THROW((void)paired_ttest({1}, {1}), UsageError);
}

TEST(Significance, MatchesReferenceComputation) {
    // Reference: scipy.stats.ttest_1samp and mpmath incomplete beta at 40 digits.
    auto r = paired_ttest({0.2, -0.1, 0.3, 0.1, 0.0}, {0, 0, 0, 0, 0}, 3, 0.01);
    EXPECT_NEAR(r.t_statistic, 1.4142135623730951, 1e-12);
    EXPECT_EQ(r.degrees_of_freedom, 4.0);
    EXPECT_NEAR(r.p_value, 0.23019964108049898, 1e-12);
    EXPECT_DOUBLE_EQ(r.corrected_alpha, 0.01 / 3);
    EXPECT_FALSE(r.significant());

    EXPECT_NEAR(two_sided_p(2.776445105197799, 4), 0.05, 1e-12);
    EXPECT_NEAR(two_sided_p(1.0, 1), 0.5, 1e-12);
    EXPECT_NEAR(two_sided_p(3.0, 10), 0.013343655022569578, 1e-12);
    EXPECT_NEAR(two_sided_p(-0.5, 30), 0.6207230048851273, 1e-12);
}

TEST(Significance, SignIsAntisymmetric) {
    std::vector<double> a{0.3, 0.9, 0.4, 0.8, 0.1, 0.7};
    std::vector<double> b{0.2, 0.5, 0.6, 0.3, 0.0, 0.2};
    auto ab = paired_ttest(a, b);
    auto ba = paired_ttest(b, a);
    EXPECT_DOUBLE_EQ(ab.t_statistic, -ba.t_statistic);
    EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
}
