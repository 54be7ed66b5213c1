// Copyright 2026 The tot-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "totbench/checksum.hpp"
#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/parallel.hpp"
#include "totbench/textproc/pipeline.hpp"

namespace totbench {

using DocOrdinal = std::uint32_t;
using TermId = std::uint32_t;

struct Posting {
    DocOrdinal doc = 0;
    std::uint32_t tf = 0;

    friend auto operator==(const Posting&, const Posting&) -> bool = default;
};

struct DocInfo {
    std::string doc_id;
    std::string title;
    std::optional<std::string> catalog_id;

    friend auto operator==(const DocInfo&, const DocInfo&) -> bool = default;
};

/// Identifies the analysis pipeline an index was built with, so queries can
/// be analyzed the same way.
struct PipelineInfo {
    std::string stemmer = "krovetz-light";
    std::string stopword_fingerprint;
    bool include_titles = true;

    friend auto operator==(const PipelineInfo&, const PipelineInfo&) -> bool = default;
};

struct IndexStats {
    std::uint32_t num_docs = 0;
    std::vector<std::uint32_t> doc_lengths;
    double avg_doc_length = 0.0;
    std::uint64_t total_tokens = 0;

    friend auto operator==(const IndexStats&, const IndexStats&) -> bool = default;
};

struct IndexBuildOptions {
    bool include_titles = true;
    unsigned threads = 1;
};

/// Immutable inverted index: sorted term dictionary over CSR postings, doc
/// table and the collection statistics BM25 needs. Safe for any number of
/// concurrent readers.
class InvertedIndex {
  public:
    static constexpr std::uint32_t kFormatVersion = 1;
    static constexpr std::string_view kMagic{"TOTBIDX\n", 8};

    InvertedIndex() = default;

    [[nodiscard]] auto stats() const -> const IndexStats& { return stats_; }
    [[nodiscard]] auto num_docs() const -> std::uint32_t { return stats_.num_docs; }
    [[nodiscard]] auto vocabulary_size() const -> std::size_t { return terms_.size(); }
    [[nodiscard]] auto pipeline() const -> const PipelineInfo& { return pipeline_; }
    [[nodiscard]] auto doc(DocOrdinal d) const -> const DocInfo& { return docs_.at(d); }
    [[nodiscard]] auto doc_length(DocOrdinal d) const -> std::uint32_t { return stats_.doc_lengths[d]; }
    [[nodiscard]] auto term(TermId t) const -> const std::string& { return terms_.at(t); }
    [[nodiscard]] auto total_postings() const -> std::size_t { return postings_.size(); }

    [[nodiscard]] auto term_id(std::string_view term) const -> std::optional<TermId> {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                                   [](const std::string& a, std::string_view b) { return a < b; });
        if (it == terms_.end() || *it != term) {
            return std::nullopt;
        }
        return static_cast<TermId>(it - terms_.begin());
    }

    [[nodiscard]] auto postings(TermId t) const -> std::span<const Posting> {
        return {postings_.data() + offsets_[t], postings_.data() + offsets_[t + 1]};
    }

    [[nodiscard]] auto df(TermId t) const -> std::uint32_t {
        return static_cast<std::uint32_t>(offsets_[t + 1] - offsets_[t]);
    }

    [[nodiscard]] auto df(std::string_view term) const -> std::uint32_t {
        auto t = term_id(term);
        return t ? df(*t) : 0;
    }

    [[nodiscard]] auto find_doc(std::string_view doc_id) const -> std::optional<DocOrdinal> {
        auto it = by_doc_id_.find(std::string(doc_id));
        if (it == by_doc_id_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Checks every structural invariant; throws DataError on violation.
    void validate() const {
        const auto n = stats_.num_docs;
        if (docs_.size() != n || stats_.doc_lengths.size() != n) {
            throw DataError("index: doc table size mismatch");
        }
        if (offsets_.size() != terms_.size() + 1 || offsets_.front() != 0 || offsets_.back() != postings_.size()) {
            throw DataError("index: posting offsets inconsistent");
        }
        std::vector<std::uint64_t> mass(n, 0);
        for (TermId t = 0; t < terms_.size(); ++t) {
            if (t > 0 && !(terms_[t - 1] < terms_[t])) {
                throw DataError("index: term dictionary not sorted");
            }
            auto list = postings(t);
            if (list.empty() || list.size() > n) {
                throw DataError("index: df out of range for term " + terms_[t]);
            }
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (list[i].doc >= n || list[i].tf == 0 || (i > 0 && list[i - 1].doc >= list[i].doc)) {
                    throw DataError("index: malformed posting list for term " + terms_[t]);
                }
                mass[list[i].doc] += list[i].tf;
            }
        }
        std::uint64_t total = 0;
        for (DocOrdinal d = 0; d < n; ++d) {
            if (mass[d] != stats_.doc_lengths[d]) {
                throw DataError("index: postings mass differs from length of doc " + docs_[d].doc_id);
            }
            total += mass[d];
        }
        if (total != stats_.total_tokens) {
            throw DataError("index: total token count mismatch");
        }
    }

    friend auto operator==(const InvertedIndex& a, const InvertedIndex& b) -> bool {
        return a.stats_ == b.stats_ && a.docs_ == b.docs_ && a.terms_ == b.terms_ && a.offsets_ == b.offsets_ &&
               a.postings_ == b.postings_ && a.pipeline_ == b.pipeline_;
    }

  private:
    friend auto build_index(const std::vector<Document>&, const textproc::Analyzer&, const IndexBuildOptions&)
        -> InvertedIndex;
    friend void save_index(const InvertedIndex&, const std::filesystem::path&);
    friend auto load_index(const std::filesystem::path&) -> InvertedIndex;

    void finish() {
        stats_.num_docs = static_cast<std::uint32_t>(docs_.size());
        stats_.total_tokens = std::accumulate(stats_.doc_lengths.begin(), stats_.doc_lengths.end(), std::uint64_t{0});
        stats_.avg_doc_length =
            stats_.num_docs == 0 ? 0.0 : static_cast<double>(stats_.total_tokens) / stats_.num_docs;
        by_doc_id_.clear();
        by_doc_id_.reserve(docs_.size());
        for (DocOrdinal d = 0; d < docs_.size(); ++d) {
            by_doc_id_.emplace(docs_[d].doc_id, d);
        }
    }

    IndexStats stats_;
    std::vector<DocInfo> docs_;
    std::vector<std::string> terms_;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<Posting> postings_;
    PipelineInfo pipeline_;
    std::unordered_map<std::string, DocOrdinal> by_doc_id_;
};

[[nodiscard]] inline auto describe_pipeline(const textproc::Analyzer& analyzer, bool include_titles) -> PipelineInfo {
    PipelineInfo info;
    info.stemmer = analyzer.config().stemmer == textproc::StemmerKind::Identity ? "identity" : "krovetz-light";
    info.stopword_fingerprint = analyzer.config().stopwords.fingerprint();
    info.include_titles = include_titles;
    return info;
}

/// Indexes analyze(title + " " + plot) per document (plot only when titles are
/// excluded). Doc ordinals follow input order, and the result is identical
/// for any worker count.
[[nodiscard]] inline auto build_index(const std::vector<Document>& documents, const textproc::Analyzer& analyzer,
                                      const IndexBuildOptions& options = {}) -> InvertedIndex {
    if (documents.empty()) {
        throw UsageError("build_index: empty document list");
    }
    InvertedIndex index;
    index.docs_.reserve(documents.size());
    {
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < documents.size(); ++i) {
            const auto& d = documents[i];
            if (auto [it, ok] = seen.emplace(d.doc_id, i); !ok) {
                throw DataError("duplicate doc_id \"" + d.doc_id + "\" (documents " + std::to_string(it->second) +
                                " and " + std::to_string(i) + ")");
            }
            index.docs_.push_back({d.doc_id, d.title, d.catalog_id});
        }
    }

    // Per-worker local vocabularies; each doc stores (local term, tf) pairs.
    struct Shard {
        std::unordered_map<std::string, TermId> vocab;
        std::vector<std::vector<std::pair<TermId, std::uint32_t>>> doc_terms;
        std::vector<std::uint32_t> doc_lengths;
        std::size_t begin = 0;
    };
    const unsigned workers = std::max(1U, options.threads);
    std::vector<Shard> shards(workers);
    parallel_chunks(documents.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        Shard& shard = shards[w];
        shard.begin = begin;
        shard.doc_terms.resize(end - begin);
        shard.doc_lengths.resize(end - begin);
        std::vector<std::uint32_t> counts;
        std::vector<TermId> touched;
        std::string text;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& d = documents[i];
            std::string_view source = d.plot;
            if (options.include_titles) {
                text.assign(d.title).append(" ").append(d.plot);
                source = text;
            }
            std::uint32_t length = 0;
            analyzer.for_each_stem(source, [&](std::string&& stem) {
                auto [it, inserted] = shard.vocab.try_emplace(std::move(stem), static_cast<TermId>(shard.vocab.size()));
                if (inserted) {
                    counts.push_back(0);
                }
                if (counts[it->second]++ == 0) {
                    touched.push_back(it->second);
                }
                ++length;
            });
            auto& terms = shard.doc_terms[i - begin];
            terms.reserve(touched.size());
            for (auto t : touched) {
                terms.emplace_back(t, counts[t]);
                counts[t] = 0;
            }
            touched.clear();
            shard.doc_lengths[i - begin] = length;
        }
    });

    // Global sorted dictionary and local -> global id maps.
    std::vector<std::string> terms;
    for (const auto& s : shards) {
        for (const auto& [term, id] : s.vocab) {
            terms.push_back(term);
        }
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    std::vector<std::vector<TermId>> to_global(shards.size());
    for (std::size_t w = 0; w < shards.size(); ++w) {
        to_global[w].resize(shards[w].vocab.size());
        for (const auto& [term, id] : shards[w].vocab) {
            to_global[w][id] =
                static_cast<TermId>(std::lower_bound(terms.begin(), terms.end(), term) - terms.begin());
        }
    }

    std::vector<std::uint64_t> offsets(terms.size() + 1, 0);
    for (std::size_t w = 0; w < shards.size(); ++w) {
        for (const auto& doc_terms : shards[w].doc_terms) {
            for (auto [t, tf] : doc_terms) {
                ++offsets[to_global[w][t] + 1];
            }
        }
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<Posting> postings(offsets.back());
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    index.stats_.doc_lengths.resize(documents.size());
    // Shards cover increasing ordinal ranges, so filling shard by shard keeps
    // every posting list sorted by doc ordinal.
    for (std::size_t w = 0; w < shards.size(); ++w) {
        const auto& shard = shards[w];
        for (std::size_t k = 0; k < shard.doc_terms.size(); ++k) {
            auto doc = static_cast<DocOrdinal>(shard.begin + k);
            index.stats_.doc_lengths[doc] = shard.doc_lengths[k];
            for (auto [t, tf] : shard.doc_terms[k]) {
                postings[cursor[to_global[w][t]]++] = Posting{doc, tf};
            }
        }
    }
    index.terms_ = std::move(terms);
    index.offsets_ = std::move(offsets);
    index.postings_ = std::move(postings);
    index.pipeline_ = describe_pipeline(analyzer, options.include_titles);
    index.finish();
    return index;
}

namespace detail {

class ByteWriter {
  public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
        }
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
        }
    }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.append(s);
    }
    void raw(std::string_view s) { buf_.append(s); }
    [[nodiscard]] auto bytes() -> std::string& { return buf_; }

  private:
    std::string buf_;
};

class ByteReader {
  public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    auto u8() -> std::uint8_t { return static_cast<std::uint8_t>(take(1)[0]); }
    auto u32() -> std::uint32_t {
        auto b = take(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) {
            v = (v << 8U) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
        }
        return v;
    }
    auto u64() -> std::uint64_t {
        auto b = take(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) {
            v = (v << 8U) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
        }
        return v;
    }
    auto str() -> std::string {
        auto n = u32();
        return std::string(take(n));
    }
    auto take(std::size_t n) -> std::string_view {
        if (n > data_.size() - pos_) {
            throw DataError("index: truncated index file");
        }
        auto out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }
    [[nodiscard]] auto remaining() const -> std::size_t { return data_.size() - pos_; }

  private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

enum class IndexSection : std::uint32_t { Header = 1, Docs = 2, Terms = 3, Postings = 4 };

}  // namespace detail

// Layout (little endian):
//   magic[8] | version u32 | file_length u64 | section_count u32
//   section*: tag u32 | length u64 | payload
//   crc32 u32 over every preceding byte
inline void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
    using detail::ByteWriter;
    using detail::IndexSection;
    auto section = [](ByteWriter& out, IndexSection tag, ByteWriter& payload) {
        out.u32(static_cast<std::uint32_t>(tag));
        out.u64(payload.bytes().size());
        out.raw(payload.bytes());
    };

    ByteWriter header;
    header.u32(index.stats_.num_docs);
    header.u32(static_cast<std::uint32_t>(index.terms_.size()));
    header.u64(index.postings_.size());
    header.u8(index.pipeline_.include_titles ? 1 : 0);
    header.str(index.pipeline_.stemmer);
    header.str(index.pipeline_.stopword_fingerprint);

    ByteWriter docs;
    for (DocOrdinal d = 0; d < index.docs_.size(); ++d) {
        const auto& info = index.docs_[d];
        docs.str(info.doc_id);
        docs.str(info.title);
        docs.u8(info.catalog_id ? 1 : 0);
        docs.str(info.catalog_id.value_or(""));
        docs.u32(index.stats_.doc_lengths[d]);
    }

    ByteWriter terms;
    for (TermId t = 0; t < index.terms_.size(); ++t) {
        terms.str(index.terms_[t]);
        terms.u32(index.df(t));
    }

    ByteWriter postings;
    for (const auto& p : index.postings_) {
        postings.u32(p.doc);
        postings.u32(p.tf);
    }

    ByteWriter body;
    section(body, IndexSection::Header, header);
    section(body, IndexSection::Docs, docs);
    section(body, IndexSection::Terms, terms);
    section(body, IndexSection::Postings, postings);

    ByteWriter file;
    file.raw(InvertedIndex::kMagic);
    file.u32(InvertedIndex::kFormatVersion);
    const std::uint64_t total = InvertedIndex::kMagic.size() + 4 + 8 + 4 + body.bytes().size() + 4;
    file.u64(total);
    file.u32(4);
    file.raw(body.bytes());
    file.u32(crc32_of(file.bytes()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot write index " + path.string());
    }
    out.write(file.bytes().data(), static_cast<std::streamsize>(file.bytes().size()));
    if (!out) {
        throw DataError("failed writing index " + path.string());
    }
}

[[nodiscard]] inline auto load_index(const std::filesystem::path& path) -> InvertedIndex {
    using detail::ByteReader;
    using detail::IndexSection;
    if (!std::filesystem::exists(path)) {
        throw DataError("index file not found: " + path.string());
    }
    const std::string data = read_file(path);
    const std::string where = path.string() + ": ";
    if (data.size() < InvertedIndex::kMagic.size() ||
        std::string_view(data).substr(0, InvertedIndex::kMagic.size()) != InvertedIndex::kMagic) {
        throw DataError(where + "not an index file");
    }
    ByteReader reader(data);
    reader.take(InvertedIndex::kMagic.size());
    try {
        auto version = reader.u32();
        if (version != InvertedIndex::kFormatVersion) {
            throw DataError(where + "unsupported index format version " + std::to_string(version) + " (this build reads version " +
                            std::to_string(InvertedIndex::kFormatVersion) + ")");
        }
        auto declared = reader.u64();
        if (declared > data.size()) {
            throw DataError(where + "truncated index file (" + std::to_string(data.size()) + " of " +
                            std::to_string(declared) + " bytes)");
        }
        if (declared < data.size()) {
            throw DataError(where + "trailing bytes after index payload");
        }
        const auto stored_crc = ByteReader(std::string_view(data).substr(data.size() - 4)).u32();
        if (crc32_of(std::string_view(data).substr(0, data.size() - 4)) != stored_crc) {
            throw DataError(where + "checksum mismatch (corrupt index file)");
        }

        InvertedIndex index;
        auto sections = reader.u32();
        std::uint32_t num_docs = 0;
        std::uint32_t vocab = 0;
        std::uint64_t num_postings = 0;
        std::vector<std::uint32_t> dfs;
        for (std::uint32_t s = 0; s < sections; ++s) {
            auto tag = static_cast<IndexSection>(reader.u32());
            auto length = reader.u64();
            ByteReader payload(reader.take(length));
            switch (tag) {
            case IndexSection::Header:
                num_docs = payload.u32();
                vocab = payload.u32();
                num_postings = payload.u64();
                index.pipeline_.include_titles = payload.u8() != 0;
                index.pipeline_.stemmer = payload.str();
                index.pipeline_.stopword_fingerprint = payload.str();
                break;
            case IndexSection::Docs:
                index.docs_.reserve(num_docs);
                index.stats_.doc_lengths.reserve(num_docs);
                for (std::uint32_t d = 0; d < num_docs; ++d) {
                    DocInfo info;
                    info.doc_id = payload.str();
                    info.title = payload.str();
                    bool has_catalog = payload.u8() != 0;
                    auto catalog = payload.str();
                    if (has_catalog) {
                        info.catalog_id = std::move(catalog);
                    }
                    index.docs_.push_back(std::move(info));
                    index.stats_.doc_lengths.push_back(payload.u32());
                }
                break;
            case IndexSection::Terms:
                index.terms_.reserve(vocab);
                dfs.reserve(vocab);
                for (std::uint32_t t = 0; t < vocab; ++t) {
                    index.terms_.push_back(payload.str());
                    dfs.push_back(payload.u32());
                }
                break;
            case IndexSection::Postings:
                index.postings_.resize(num_postings);
                for (auto& p : index.postings_) {
                    p.doc = payload.u32();
                    p.tf = payload.u32();
                }
                break;
            default: throw DataError(where + "unknown section tag");
            }
            if (payload.remaining() != 0) {
                throw DataError(where + "section length mismatch");
            }
        }
        index.offsets_.assign(dfs.size() + 1, 0);
        for (std::size_t t = 0; t < dfs.size(); ++t) {
            index.offsets_[t + 1] = index.offsets_[t] + dfs[t];
        }
        index.finish();
        index.validate();
        return index;
    } catch (const DataError& e) {
        std::string msg = e.what();
        throw DataError(msg.rfind(where, 0) == 0 ? msg : where + msg);
    }
}

}  // namespace totbench
