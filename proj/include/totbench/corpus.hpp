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
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "totbench/error.hpp"
#include "totbench/taxonomy.hpp"
#include "totbench/textproc/segmenter.hpp"

namespace totbench {

struct Document {
    std::string doc_id;
    std::string title;
    std::optional<std::string> catalog_id;
    std::string plot;

    friend auto operator==(const Document&, const Document&) -> bool = default;
};

struct Sentence {
    std::size_t index = 0;
    std::string text;
    CodeSet codes;

    friend auto operator==(const Sentence&, const Sentence&) -> bool = default;
};

/// A tip-of-the-tongue request. Only description sentences carry codes; the
/// title is kept separately and never annotated.
struct TOTRequest {
    std::string request_id;
    std::string title;
    std::string description;
    std::vector<Sentence> sentences;
    std::string answer_catalog_id;

    [[nodiscard]] auto has_code(CodeId id) const -> bool {
        return std::any_of(sentences.begin(), sentences.end(), [&](const Sentence& s) { return s.codes.contains(id); });
    }

    [[nodiscard]] auto has_any_code(const CodeSet& codes) const -> bool {
        return std::any_of(sentences.begin(), sentences.end(),
                           [&](const Sentence& s) { return s.codes.intersects(codes); });
    }

    friend auto operator==(const TOTRequest&, const TOTRequest&) -> bool = default;
};

/// request_id -> the single relevant doc_id.
class Qrels {
  public:
    void add(std::string request_id, std::string doc_id) {
        auto [it, inserted] = entries_.emplace(request_id, doc_id);
        if (!inserted && it->second != doc_id) {
            throw DataError("request " + request_id + " has more than one relevant document (" + it->second +
                            ", " + doc_id + ")");
        }
    }

    [[nodiscard]] auto find(std::string_view request_id) const -> const std::string* {
        auto it = entries_.find(request_id);
        return it == entries_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] auto size() const -> std::size_t { return entries_.size(); }
    [[nodiscard]] auto empty() const -> bool { return entries_.empty(); }
    [[nodiscard]] auto entries() const -> const std::map<std::string, std::string, std::less<>>& { return entries_; }

    friend auto operator==(const Qrels&, const Qrels&) -> bool = default;

  private:
    std::map<std::string, std::string, std::less<>> entries_;
};

/// Shape of external catalog identifiers; IMDb-style by default.
class CatalogIdPattern {
  public:
    CatalogIdPattern() : CatalogIdPattern(R"(tt\d{7,8})") {}
    explicit CatalogIdPattern(std::string pattern) : source_(std::move(pattern)), re_(source_) {}

    [[nodiscard]] auto matches(std::string_view id) const -> bool {
        return std::regex_match(id.begin(), id.end(), re_);
    }
    [[nodiscard]] auto source() const -> const std::string& { return source_; }

  private:
    std::string source_;
    std::regex re_;
};

enum class CorpusFormat { Jsonl, Tsv };

[[nodiscard]] inline auto parse_corpus_format(std::string_view tag) -> CorpusFormat {
    if (tag == "jsonl") {
        return CorpusFormat::Jsonl;
    }
    if (tag == "tsv") {
        return CorpusFormat::Tsv;
    }
    throw UsageError("unknown corpus format '" + std::string(tag) + "' (expected jsonl or tsv)");
}

struct CorpusLoadOptions {
    CatalogIdPattern catalog_pattern;
    /// Keep only documents whose catalog_id is present and well-formed. When
    /// off, a present but malformed catalog_id is an error.
    bool require_catalog_id = false;
};

struct CorpusLoadReport {
    std::size_t records = 0;
    std::size_t kept = 0;
    std::size_t dropped_without_catalog_id = 0;
};

struct RequestLoadOptions {
    bool allow_unknown_codes = false;
};

struct RequestLoadReport {
    std::vector<std::string> warnings;
    std::size_t sentences = 0;
    std::size_t zero_code_sentences = 0;
    std::size_t unknown_code_mentions = 0;
    std::size_t auto_segmented_requests = 0;
};

struct JoinReport {
    std::vector<std::string> no_match;
    std::vector<std::string> multiple_matches;
};

struct JoinResult {
    Qrels qrels;
    std::vector<TOTRequest> requests;
    JoinReport report;
};

namespace detail {

inline auto trim(std::string_view s) -> std::string_view {
    auto b = s.find_first_not_of(" \t\r\n\f\v");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(b, e - b + 1);
}

inline auto where(const std::filesystem::path& path, std::size_t line) -> std::string {
    return path.string() + ":" + std::to_string(line) + ": ";
}

inline auto required_string(const nlohmann::json& obj, const char* key, const std::string& loc) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw DataError(loc + "field '" + key + "' missing or not a string");
    }
    return it->get<std::string>();
}

inline auto open_lines(const std::filesystem::path& path) -> std::ifstream {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    return in;
}

inline auto parse_line(const std::string& line, const std::string& loc) -> nlohmann::json {
    try {
        auto obj = nlohmann::json::parse(line);
        if (!obj.is_object()) {
            throw DataError(loc + "expected a JSON object");
        }
        return obj;
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(loc + "malformed JSON: " + e.what());
    }
}

inline void validate_document(Document& doc, const std::string& loc, const CorpusLoadOptions& options,
                              CorpusLoadReport& report, std::vector<Document>& out) {
    if (doc.doc_id.empty()) {
        throw DataError(loc + "empty doc_id");
    }
    if (trim(doc.plot).empty()) {
        throw DataError(loc + "empty plot for document " + doc.doc_id);
    }
    bool valid_id = doc.catalog_id && options.catalog_pattern.matches(*doc.catalog_id);
    if (options.require_catalog_id) {
        if (!valid_id) {
            ++report.dropped_without_catalog_id;
            return;
        }
    } else if (doc.catalog_id && !valid_id) {
        throw DataError(loc + "catalog_id '" + *doc.catalog_id + "' does not match pattern " +
                        options.catalog_pattern.source());
    }
    out.push_back(std::move(doc));
}

}  // namespace detail

/// Loads documents in file order. Duplicate doc_ids, empty plots and
/// malformed records are errors carrying the offending line number.
[[nodiscard]] inline auto load_corpus(const std::filesystem::path& path, CorpusFormat format = CorpusFormat::Jsonl,
                                      const CorpusLoadOptions& options = {}, CorpusLoadReport* report_out = nullptr)
    -> std::vector<Document> {
    auto in = detail::open_lines(path);
    std::vector<Document> docs;
    CorpusLoadReport report;
    std::unordered_map<std::string, std::size_t> seen;  // doc_id -> line
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        auto loc = detail::where(path, line_no);
        Document doc;
        if (format == CorpusFormat::Jsonl) {
            auto obj = detail::parse_line(line, loc);
            doc.doc_id = detail::required_string(obj, "doc_id", loc);
            doc.title = detail::required_string(obj, "title", loc);
            doc.plot = detail::required_string(obj, "plot", loc);
            if (auto it = obj.find("catalog_id"); it != obj.end() && !it->is_null()) {
                if (!it->is_string()) {
                    throw DataError(loc + "catalog_id must be a string or null");
                }
                doc.catalog_id = it->get<std::string>();
            }
        } else {
            // doc_id <TAB> catalog_id-or-empty <TAB> title <TAB> plot
            std::vector<std::string> fields;
            std::stringstream ss(line);
            std::string field;
            for (int i = 0; i < 3 && std::getline(ss, field, '\t'); ++i) {
                fields.push_back(field);
            }
            std::string rest;
            std::getline(ss, rest);
            if (fields.size() != 3) {
                throw DataError(loc + "expected 4 tab-separated fields");
            }
            doc.doc_id = fields[0];
            if (!fields[1].empty()) {
                doc.catalog_id = fields[1];
            }
            doc.title = fields[2];
            doc.plot = rest;
        }
        ++report.records;
        if (auto [it, inserted] = seen.emplace(doc.doc_id, line_no); !inserted) {
            throw DataError(loc + "duplicate doc_id \"" + doc.doc_id + "\" (lines " + std::to_string(it->second) +
                            " and " + std::to_string(line_no) + ")");
        }
        detail::validate_document(doc, loc, options, report, docs);
    }
    report.kept = docs.size();
    if (report_out != nullptr) {
        *report_out = report;
    }
    return docs;
}

inline void save_corpus(const std::filesystem::path& path, const std::vector<Document>& docs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    for (const auto& d : docs) {
        nlohmann::ordered_json obj;
        obj["doc_id"] = d.doc_id;
        obj["title"] = d.title;
        obj["catalog_id"] = d.catalog_id ? nlohmann::ordered_json(*d.catalog_id) : nlohmann::ordered_json(nullptr);
        obj["plot"] = d.plot;
        out << obj.dump() << '\n';
    }
}

/// Loads annotated requests. A request without sentences has its description
/// segmented with `segmenter` and carries no codes.
[[nodiscard]] inline auto load_requests(const std::filesystem::path& path, const RequestLoadOptions& options = {},
                                        RequestLoadReport* report_out = nullptr,
                                        const textproc::SentenceSegmenter& segmenter = {})
    -> std::vector<TOTRequest> {
    auto in = detail::open_lines(path);
    std::vector<TOTRequest> requests;
    RequestLoadReport report;
    std::unordered_map<std::string, std::size_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        auto loc = detail::where(path, line_no);
        auto obj = detail::parse_line(line, loc);
        TOTRequest req;
        req.request_id = detail::required_string(obj, "request_id", loc);
        if (req.request_id.empty()) {
            throw DataError(loc + "empty request_id");
        }
        req.title = obj.value("title", std::string{});
        req.description = obj.value("description", std::string{});
        auto answer = obj.find("answer_catalog_id");
        if (answer == obj.end() || !answer->is_string() || detail::trim(answer->get<std::string>()).empty()) {
            throw DataError(loc + "missing answer for request " + req.request_id);
        }
        req.answer_catalog_id = answer->get<std::string>();
        if (auto [it, inserted] = seen.emplace(req.request_id, line_no); !inserted) {
            throw DataError(loc + "duplicate request_id \"" + req.request_id + "\" (lines " +
                            std::to_string(it->second) + " and " + std::to_string(line_no) + ")");
        }

        auto sentences = obj.find("sentences");
        if (sentences == obj.end() || sentences->is_null() || sentences->empty()) {
            std::size_t idx = 0;
            for (auto& text : segmenter.segment(req.description)) {
                req.sentences.push_back({idx++, std::move(text), {}});
            }
            ++report.auto_segmented_requests;
        } else {
            if (!sentences->is_array()) {
                throw DataError(loc + "'sentences' must be an array");
            }
            for (const auto& s : *sentences) {
                if (!s.is_object()) {
                    throw DataError(loc + "sentence entries must be objects");
                }
                Sentence sent;
                if (!s.contains("index") || !s["index"].is_number_integer()) {
                    throw DataError(loc + "sentence without integer index");
                }
                auto index = s["index"].get<long long>();
                if (index != static_cast<long long>(req.sentences.size())) {
                    throw DataError(loc + "sentence index " + std::to_string(index) + " out of order in request " +
                                    req.request_id);
                }
                sent.index = static_cast<std::size_t>(index);
                sent.text = detail::required_string(s, "text", loc);
                if (auto codes = s.find("codes"); codes != s.end() && !codes->is_null()) {
                    for (const auto& c : *codes) {
                        if (!c.is_string()) {
                            throw DataError(loc + "code names must be strings");
                        }
                        auto name = c.get<std::string>();
                        if (auto id = CodeTaxonomy::find(name)) {
                            sent.codes.insert(*id);
                        } else if (options.allow_unknown_codes) {
                            ++report.unknown_code_mentions;
                            report.warnings.push_back(loc + "unknown code '" + name + "' in request " +
                                                      req.request_id + " (ignored)");
                        } else {
                            throw DataError(loc + "unknown code '" + name + "' in request " + req.request_id);
                        }
                    }
                }
                req.sentences.push_back(std::move(sent));
            }
            std::string joined;
            for (const auto& s : req.sentences) {
                if (!joined.empty()) {
                    joined += ' ';
                }
                joined += s.text;
            }
            using textproc::SentenceSegmenter;
            if (SentenceSegmenter::normalize_whitespace(joined) !=
                SentenceSegmenter::normalize_whitespace(req.description)) {
                report.warnings.push_back(loc + "sentences of request " + req.request_id +
                                          " do not reconstruct its description");
            }
        }
        for (const auto& s : req.sentences) {
            ++report.sentences;
            if (s.codes.empty()) {
                ++report.zero_code_sentences;
            }
        }
        requests.push_back(std::move(req));
    }
    if (report.zero_code_sentences > 0) {
        report.warnings.push_back(std::to_string(report.zero_code_sentences) + " sentence(s) carry no code");
    }
    if (report_out != nullptr) {
        *report_out = std::move(report);
    }
    return requests;
}

inline void save_requests(const std::filesystem::path& path, const std::vector<TOTRequest>& requests) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    for (const auto& r : requests) {
        nlohmann::ordered_json obj;
        obj["request_id"] = r.request_id;
        obj["title"] = r.title;
        obj["description"] = r.description;
        obj["answer_catalog_id"] = r.answer_catalog_id;
        auto sentences = nlohmann::ordered_json::array();
        for (const auto& s : r.sentences) {
            nlohmann::ordered_json js;
            js["index"] = s.index;
            js["text"] = s.text;
            auto codes = nlohmann::ordered_json::array();
            for (auto id : s.codes.ids()) {
                codes.push_back(std::string(CodeTaxonomy::name(id)));
            }
            js["codes"] = std::move(codes);
            sentences.push_back(std::move(js));
        }
        obj["sentences"] = std::move(sentences);
        out << obj.dump() << '\n';
    }
}

/// Joins requests to documents on catalog id. A request survives only when
/// exactly one document carries its answer id; everything else lands in the
/// join report.
[[nodiscard]] inline auto build_qrels(const std::vector<TOTRequest>& requests, const std::vector<Document>& documents)
    -> JoinResult {
    std::unordered_map<std::string_view, std::vector<const Document*>> by_catalog;
    for (const auto& d : documents) {
        if (d.catalog_id) {
            by_catalog[*d.catalog_id].push_back(&d);
        }
    }
    JoinResult result;
    for (const auto& r : requests) {
        auto it = by_catalog.find(r.answer_catalog_id);
        if (it == by_catalog.end()) {
            result.report.no_match.push_back(r.request_id);
        } else if (it->second.size() > 1) {
            result.report.multiple_matches.push_back(r.request_id);
        } else {
            result.qrels.add(r.request_id, it->second.front()->doc_id);
            result.requests.push_back(r);
        }
    }
    return result;
}

/// TREC qrels: `request_id 0 doc_id 1`, one line per pair.
inline void write_qrels(std::ostream& out, const Qrels& qrels) {
    for (const auto& [rid, did] : qrels.entries()) {
        out << rid << " 0 " << did << " 1\n";
    }
}

inline void save_qrels(const std::filesystem::path& path, const Qrels& qrels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    write_qrels(out, qrels);
}

/// Reads TREC qrels. Lines with relevance <= 0 are skipped.
[[nodiscard]] inline auto load_qrels(const std::filesystem::path& path) -> Qrels {
    auto in = detail::open_lines(path);
    Qrels qrels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        std::istringstream ss(line);
        std::string rid, iter, did;
        int rel = 0;
        if (!(ss >> rid >> iter >> did >> rel)) {
            throw DataError(detail::where(path, line_no) + "expected 'request_id iter doc_id relevance'");
        }
        if (rel > 0) {
            qrels.add(rid, did);
        }
    }
    return qrels;
}

}  // namespace totbench
