#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "totbench/retrieval.hpp"

using namespace totbench;

namespace {

auto doc(std::string id, std::string plot) -> Document {
    return Document{std::move(id), "", std::nullopt, std::move(plot)};
}

auto bare() -> textproc::Analyzer { return textproc::Analyzer(textproc::PipelineConfig::bare()); }

auto toy_index() -> InvertedIndex {
    return build_index({doc("d1", "cat sat mat"), doc("d2", "dog sat log"), doc("d3", "cat cat dog")}, bare(),
                       {.include_titles = false});
}

auto code(std::string_view name) -> CodeId { return *CodeTaxonomy::find(name); }

// Straight transcription of the formula over token lists, no index involved.
auto naive_scores(const std::vector<std::vector<std::string>>& docs, const std::vector<std::string>& query,
                  Bm25Params p) -> std::map<DocOrdinal, double> {
    const double n = static_cast<double>(docs.size());
    double total = 0;
    for (const auto& d : docs) {
        total += static_cast<double>(d.size());
    }
    const double avgdl = total / n;
    std::map<DocOrdinal, double> out;
    std::set<std::string> unique(query.begin(), query.end());
    for (DocOrdinal d = 0; d < docs.size(); ++d) {
        double score = 0;
        for (const auto& t : unique) {
            double tf = static_cast<double>(std::count(docs[d].begin(), docs[d].end(), t));
            if (tf == 0) {
                continue;
            }
            double df = 0;
            for (const auto& other : docs) {
                df += std::count(other.begin(), other.end(), t) > 0 ? 1 : 0;
            }
            double idf = std::log((n - df + 0.5) / (df + 0.5) + 1);
            score += idf * tf * (p.k1 + 1) / (tf + p.k1 * (1 - p.b + p.b * static_cast<double>(docs[d].size()) / avgdl));
        }
        if (score > 0) {
            out[d] = score;
        }
    }
    return out;
}

}  // namespace

TEST(Bm25, ToyQueryMatchesOracle) {
    auto index = toy_index();
    auto scores = bm25_score(index, {1.2, 0.75}, {"cat"});
    ASSERT_EQ(scores.size(), 2U);
    EXPECT_NEAR(scores.at(2), 0.6462549902128865, 1e-12);
    EXPECT_NEAR(scores.at(0), 0.47000362924573563, 1e-12);
    EXPECT_FALSE(scores.contains(1));

    auto multi = bm25_score(index, {0.9, 0.4}, {"cat", "dog", "sat"});
    EXPECT_NEAR(multi.at(0), 0.9400072584914713, 1e-12);
    EXPECT_NEAR(multi.at(1), 0.9400072584914713, 1e-12);
    EXPECT_NEAR(multi.at(2), 1.0858704537746307, 1e-12);
}

TEST(Bm25, OutOfVocabularyQueryScoresNothing) {
    auto index = toy_index();
    EXPECT_TRUE(bm25_score(index, {}, {"unicorn", "zebra"}).empty());
    EXPECT_TRUE(bm25_score(index, {}, {}).empty());
}

TEST(Bm25, QueryMultiplicityIgnoredUnlessRequested) {
    auto index = toy_index();
    EXPECT_EQ(bm25_score(index, {}, {"cat", "cat", "cat"}), bm25_score(index, {}, {"cat"}));
    auto weighted = bm25_score(index, {}, {"cat", "cat"}, true);
    EXPECT_NEAR(weighted.at(2), 2 * 0.6462549902128865, 1e-12);
}

TEST(Bm25, ZeroBIgnoresDocumentLength) {
    auto index = build_index({doc("short", "heat"), doc("long", "heat one two three four five six seven")}, bare());
    auto scores = bm25_score(index, {1.2, 0.0}, {"heat"});
    ASSERT_EQ(scores.size(), 2U);
    EXPECT_EQ(scores.at(0), scores.at(1));
    auto normalized = bm25_score(index, {1.2, 0.75}, {"heat"});
    EXPECT_GT(normalized.at(0), normalized.at(1));
}

TEST(Bm25, IdfIsPositiveForEveryDocumentFrequency) {
    for (std::uint32_t n = 1; n < 200; ++n) {
        for (std::uint32_t df = 1; df <= n; ++df) {
            ASSERT_GT(bm25_idf(n, df), 0.0);
        }
    }
}

TEST(Bm25, RejectsInvalidParameters) {
    EXPECT_THROW((Bm25Params{-0.1, 0.5}.validate()), UsageError);
    EXPECT_THROW((Bm25Params{1.0, 1.01}.validate()), UsageError);
    EXPECT_THROW((Bm25Params{1.0, -0.01}.validate()), UsageError);
    EXPECT_THROW((Bm25Params{NAN, 0.5}.validate()), UsageError);
    EXPECT_NO_THROW((Bm25Params{0.0, 1.0}.validate()));
}

TEST(Bm25, MatchesNaiveScorerOnRandomCorpora) {
    std::mt19937_64 rng(21);
    auto analyzer = bare();
    for (int round = 0; round < 150; ++round) {
        const auto vocab = 1 + rng() % 60;
        std::vector<Document> docs;
        std::vector<std::vector<std::string>> tokens;
        for (std::size_t i = 0, n = 1 + rng() % 50; i < n; ++i) {
            std::string plot;
            tokens.emplace_back();
            for (std::size_t k = 0, len = rng() % 30; k < len; ++k) {
                auto w = "w" + std::to_string(rng() % vocab);
                plot += w + " ";
                tokens.back().push_back(w);
            }
            docs.push_back(doc("d" + std::to_string(i), plot));
        }
        auto index = build_index(docs, analyzer, {.include_titles = false});
        std::vector<std::string> query;
        for (std::size_t k = 0, len = 1 + rng() % 8; k < len; ++k) {
            query.push_back("w" + std::to_string(rng() % (vocab + 5)));
        }
        Bm25Params p{std::uniform_real_distribution<double>(0, 3)(rng), std::uniform_real_distribution<double>(0, 1)(rng)};
        auto got = bm25_score(index, p, query);
        auto want = naive_scores(tokens, query, p);
        ASSERT_EQ(got.size(), want.size());
        for (auto [d, s] : want) {
            ASSERT_NEAR(got.at(d), s, 1e-9);
        }
    }
}

TEST(Bm25, ScoreNeverDecreasesWithTermFrequency) {
    for (double b : {0.0, 0.3, 1.0}) {
        for (double k1 : {0.0, 0.5, 1.2, 3.0}) {
            double last = -1;
            for (int tf = 1; tf <= 12; ++tf) {
                // Filler keeps dl at 12 so only tf moves.
                std::string plot;
                for (int i = 0; i < 12; ++i) {
                    plot += i < tf ? "heat " : "x ";
                }
                auto index = build_index({doc("a", plot), doc("b", "x y"), doc("c", "heat x")}, bare());
                double s = bm25_score(index, {k1, b}, {"heat"}).at(0);
                EXPECT_GE(s, last) << "k1=" << k1 << " b=" << b << " tf=" << tf;
                last = s;
            }
        }
    }
}

TEST(Search, RanksToyCorpus) {
    auto index = toy_index();
    auto hits = search(index, {1.2, 0.75}, bare(), "cat", 10);
    ASSERT_EQ(hits.size(), 2U);
    EXPECT_EQ(hits[0].doc_id, "d3");
    EXPECT_EQ(hits[0].rank, 1U);
    EXPECT_EQ(hits[1].doc_id, "d1");
    EXPECT_EQ(hits[1].rank, 2U);
    auto top1 = search(index, {1.2, 0.75}, bare(), "cat", 1);
    ASSERT_EQ(top1.size(), 1U);
    EXPECT_EQ(top1[0].doc_id, "d3");
    EXPECT_THROW((void)search(index, {}, bare(), "cat", 0), UsageError);
}

TEST(Search, TiesBreakByOrdinal) {
    auto index = build_index({doc("z", "heat wave"), doc("a", "heat wave"), doc("m", "heat wave"), doc("q", "cold")},
                             bare());
    for (int run = 0; run < 2; ++run) {
        auto hits = search(index, {}, bare(), "heat", 10);
        ASSERT_EQ(hits.size(), 3U);
        EXPECT_EQ(hits[0].doc_id, "z");
        EXPECT_EQ(hits[1].doc_id, "a");
        EXPECT_EQ(hits[2].doc_id, "m");
    }
}

TEST(Search, RankOfAgreesWithTopK) {
    std::mt19937_64 rng(4);
    std::vector<Document> docs;
    for (int i = 0; i < 80; ++i) {
        std::string plot;
        for (int k = 0; k < 12; ++k) {
            plot += "t" + std::to_string(rng() % 15) + " ";
        }
        docs.push_back(doc("d" + std::to_string(i), plot));
    }
    auto index = build_index(docs, bare());
    Bm25Scorer scorer(index, {0.9, 0.4});
    for (int q = 0; q < 20; ++q) {
        auto query = prepare_query(index, {"t" + std::to_string(rng() % 15), "t" + std::to_string(rng() % 15)});
        auto hits = scorer.top_k(query, 1000);
        for (DocOrdinal d = 0; d < index.num_docs(); ++d) {
            auto it = std::find_if(hits.begin(), hits.end(), [&](const ScoredHit& h) { return h.doc == d; });
            auto rank = scorer.rank_of(query, d);
            if (it == hits.end()) {
                EXPECT_FALSE(rank.has_value());
            } else {
                EXPECT_EQ(rank, it->rank);
                EXPECT_EQ(scorer.rank_of(query, d, it->rank), it->rank);
                if (it->rank > 1) {
                    EXPECT_FALSE(scorer.rank_of(query, d, it->rank - 1).has_value());
                }
            }
        }
    }
}

TEST(Search, RejectsMismatchedPipeline) {
    auto index = build_index({doc("a", "running dogs")}, textproc::Analyzer{});
    EXPECT_NO_THROW(check_compatible(index, textproc::Analyzer{}));
    EXPECT_THROW(check_compatible(index, bare()), DataError);
}

TEST(Formulate, DropsSentencesWithAblatedCodes) {
    TOTRequest r;
    r.title = "Kids movie";
    r.description = "A boy finds a dog. Thanks in advance! They fly away.";
    r.sentences = {{0, "A boy finds a dog.", {code("Character"), code("Object")}},
                   {1, "Thanks in advance!", {code("Social")}},
                   {2, "They fly away.", {code("Scene")}}};
    QueryStrategy desc{QueryFields::Description, {code("Social")}};
    EXPECT_EQ(formulate_query(r, desc), "A boy finds a dog. They fly away.");
    desc.ablated_codes = {};
    EXPECT_EQ(formulate_query(r, desc), "A boy finds a dog. Thanks in advance! They fly away.");
    desc.ablated_codes = {code("Character"), code("Social"), code("Scene")};
    EXPECT_EQ(formulate_query(r, desc), "");
    EXPECT_EQ(formulate_query(r, {QueryFields::Title, {code("Social")}}), "Kids movie");
    EXPECT_EQ(formulate_query(r, {QueryFields::TitleDescription, {code("Object")}}),
              "Kids movie Thanks in advance! They fly away.");
}

TEST(Formulate, ParsesStrategyNames) {
    EXPECT_EQ(parse_query_fields("title"), QueryFields::Title);
    EXPECT_EQ(parse_query_fields("desc"), QueryFields::Description);
    EXPECT_EQ(parse_query_fields("both"), QueryFields::TitleDescription);
    EXPECT_THROW((void)parse_query_fields("abstract"), UsageError);
}
