#include "kstruct/ingest.hpp"
#include "kstruct/csv.hpp"
#include "kstruct/errors.hpp"
#include "kstruct/strutil.hpp"
#include "kstruct/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace kstruct {

namespace {

// export header name (lowercased) -> canonical field key
const std::unordered_map<std::string, std::string>& header_map() {
    static const std::unordered_map<std::string, std::string> m = {
        {"authors", fieldkey::authors},
        {"title", fieldkey::title},
        {"year", fieldkey::year},
        {"author keywords", fieldkey::author_keywords},
        {"affiliations", fieldkey::affiliations},
        {"cited by", fieldkey::cited_by},
        {"doi", fieldkey::doi},
        {"source title", fieldkey::source_title},
    };
    return m;
}

std::vector<RawRecord> parse_csv_export(std::istream& in, const std::string& source_name) {
    CsvTable table = parse_csv(in, source_name);
    if (table.header.empty()) {
        throw ParseError("export file has no header row", source_name, 0);
    }

    // map column index -> canonical key (or trimmed original for extras)
    std::vector<std::string> column_keys(table.header.size());
    std::unordered_set<std::string> seen;
    for (size_t c = 0; c < table.header.size(); ++c) {
        std::string name = trim(table.header[c]);
        auto it = header_map().find(to_lower_ascii(name));
        column_keys[c] = it != header_map().end() ? it->second : name;
        seen.insert(column_keys[c]);
    }
    std::vector<std::string> missing;
    for (const auto& [header, key] : header_map()) {
        (void)header;
        if (!seen.count(key)) missing.push_back(key);
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        throw ParseError("export file is missing required columns: " + join(missing, ", "),
                         source_name, 0);
    }

    std::vector<RawRecord> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        RawRecord rec;
        rec.source_file = source_name;
        rec.source_row = row.row;
        for (size_t c = 0; c < row.fields.size() && c < column_keys.size(); ++c) {
            if (column_keys[c].empty()) continue;
            rec.fields[column_keys[c]] = row.fields[c];
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<RawRecord> parse_canonical(std::istream& in, const std::string& source_name) {
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw DataError("empty corpus");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#kstruct-corpus", 0) != 0) {
        throw ParseError("not a corpus file (bad magic)", source_name, lineno);
    }
    if (!std::getline(in, line)) throw DataError("empty corpus");
    ++lineno; // header object, not needed for raw rows

    std::vector<RawRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed record: ") + e.what(), source_name,
                             lineno);
        }
        RawRecord rec;
        rec.source_file = source_name;
        rec.source_row = lineno - 2;
        try {
            rec.fields[fieldkey::title] = j.at("title").get<std::string>();
            rec.fields[fieldkey::year] =
                j.at("year").is_null() ? "" : std::to_string(j.at("year").get<int>());
            rec.fields[fieldkey::authors] =
                join(j.at("authors").get<std::vector<std::string>>(), "; ");
            std::vector<std::string> affs;
            for (const auto& a : j.at("affiliations")) {
                affs.push_back(a.at(0).get<std::string>());
            }
            rec.fields[fieldkey::affiliations] = join(affs, "; ");
            rec.fields[fieldkey::author_keywords] =
                join(j.at("raw_keywords").get<std::vector<std::string>>(), "; ");
            rec.fields[fieldkey::cited_by] = std::to_string(j.at("citations").get<long>());
            rec.fields[fieldkey::doi] =
                j.at("doi").is_null() ? "" : j.at("doi").get<std::string>();
            rec.fields[fieldkey::source_title] = j.at("journal").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed record: ") + e.what(), source_name,
                             lineno);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::optional<int> parse_year(std::string_view s) {
    auto t = trim_view(s);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

std::string field_or_empty(const RawRecord& rec, const char* key) {
    const std::string* f = rec.field(key);
    return f ? *f : std::string{};
}

std::string dedup_doi_key(const RawRecord& rec) {
    return to_lower_ascii(trim(field_or_empty(rec, fieldkey::doi)));
}

} // namespace

std::vector<RawRecord> parse_export(std::istream& in, const std::string& source_name,
                                    ExportFormat format) {
    return format == ExportFormat::CsvExport ? parse_csv_export(in, source_name)
                                             : parse_canonical(in, source_name);
}

std::vector<RawRecord> parse_export(const std::string& path, ExportFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file", path, 0);
    return parse_export(in, path, format);
}

PreprocessResult preprocess(std::vector<RawRecord> records) {
    PreprocessResult result;
    for (auto& rec : records) {
        const char* reason = nullptr;
        if (trim_view(field_or_empty(rec, fieldkey::title)).empty()) {
            reason = reject::missing_title;
        } else if (trim_view(field_or_empty(rec, fieldkey::authors)).empty()) {
            reason = reject::empty_authors;
        } else if (!parse_year(field_or_empty(rec, fieldkey::year))) {
            reason = reject::missing_year;
        } else if (trim_view(field_or_empty(rec, fieldkey::author_keywords)).empty()) {
            reason = reject::missing_keywords;
        }
        if (reason) {
            result.rejected.push_back(RejectedRecord{std::move(rec), reason});
        } else {
            result.valid.push_back(std::move(rec));
        }
    }
    return result;
}

DeduplicateResult deduplicate(std::vector<RawRecord> records,
                              const NormalizationConfig& cfg) {
    DeduplicateResult result;
    std::unordered_map<std::string, size_t> by_doi;
    std::unordered_map<std::string, std::vector<size_t>> by_title_year;

    for (auto& rec : records) {
        const std::string doi = dedup_doi_key(rec);
        const std::string title_year =
            normalize_text(field_or_empty(rec, fieldkey::title), cfg) + '\x1f' +
            trim(field_or_empty(rec, fieldkey::year));

        bool duplicate = false;
        if (!doi.empty() && by_doi.count(doi)) {
            duplicate = true;
        } else {
            auto it = by_title_year.find(title_year);
            if (it != by_title_year.end()) {
                for (size_t idx : it->second) {
                    const std::string kept_doi = dedup_doi_key(result.unique[idx]);
                    // both carry (different) DOIs: the DOI is the key, not a match
                    if (!doi.empty() && !kept_doi.empty()) continue;
                    duplicate = true;
                    break;
                }
            }
        }

        if (duplicate) {
            result.duplicates.push_back(std::move(rec));
        } else {
            size_t idx = result.unique.size();
            result.unique.push_back(std::move(rec));
            if (!doi.empty()) by_doi.emplace(doi, idx);
            by_title_year[title_year].push_back(idx);
        }
    }
    return result;
}

std::vector<ArticleRecord> to_article_records(const std::vector<RawRecord>& records,
                                              const NormalizationConfig& cfg,
                                              const IngestOptions& opts) {
    std::vector<ArticleRecord> out;
    out.reserve(records.size());

    int width = 1;
    for (size_t n = records.size(); n >= 10; n /= 10) ++width;

    for (size_t i = 0; i < records.size(); ++i) {
        const RawRecord& raw = records[i];
        ArticleRecord rec;

        std::string seq = std::to_string(i + 1);
        rec.id = opts.id_prefix + std::string(width - std::min<size_t>(width, seq.size()), '0') + seq;

        rec.title = trim(field_or_empty(raw, fieldkey::title));
        rec.year = parse_year(field_or_empty(raw, fieldkey::year));

        const std::string authors = field_or_empty(raw, fieldkey::authors);
        const char author_sep = authors.find(';') != std::string::npos
                                    ? ';'
                                    : opts.author_fallback_delimiter;
        rec.authors = split_trimmed(authors, author_sep);

        for (const auto& aff :
             split_trimmed(field_or_empty(raw, fieldkey::affiliations),
                           opts.affiliation_delimiter)) {
            rec.affiliations.push_back(Affiliation{aff, extract_country(aff, cfg)});
        }

        rec.raw_keywords =
            split_trimmed(field_or_empty(raw, fieldkey::author_keywords),
                          opts.keyword_delimiter);
        for (const auto& kw : rec.raw_keywords) {
            std::string canon = canonicalize_keyword(kw, cfg);
            if (canon.empty()) continue;
            if (std::find(rec.keywords.begin(), rec.keywords.end(), canon) ==
                rec.keywords.end()) {
                rec.keywords.push_back(std::move(canon));
            }
        }

        rec.journal = trim(field_or_empty(raw, fieldkey::source_title));
        const auto cited = trim(field_or_empty(raw, fieldkey::cited_by));
        if (!cited.empty()) {
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(cited.data(), cited.data() + cited.size(), value);
            if (ec == std::errc{} && ptr == cited.data() + cited.size() && value >= 0) {
                rec.citation_count = value;
            }
        }
        const std::string doi = trim(field_or_empty(raw, fieldkey::doi));
        if (!doi.empty()) rec.doi = doi;

        out.push_back(std::move(rec));
    }
    return out;
}

std::pair<Corpus, IngestReport> ingest_corpus(const std::vector<std::string>& paths,
                                              ExportFormat format,
                                              const PeriodPartition& partition,
                                              const NormalizationConfig& cfg,
                                              const IngestOptions& opts) {
    std::vector<RawRecord> merged;
    for (const auto& path : paths) {
        auto rows = parse_export(path, format);
        merged.insert(merged.end(), std::make_move_iterator(rows.begin()),
                      std::make_move_iterator(rows.end()));
    }

    IngestReport report;
    report.source_files = paths;
    report.parsed = static_cast<std::int64_t>(merged.size());

    PreprocessResult pre = preprocess(std::move(merged));
    report.rejected = static_cast<std::int64_t>(pre.rejected.size());
    for (const auto& rej : pre.rejected) ++report.rejected_by_reason[rej.reason];

    DeduplicateResult dedup = deduplicate(std::move(pre.valid), cfg);
    report.duplicates = static_cast<std::int64_t>(dedup.duplicates.size());

    std::vector<ArticleRecord> records = to_article_records(dedup.unique, cfg, opts);

    Provenance base;
    base.source_files = paths;
    base.input_count = report.parsed;
    base.rejected = report.rejected;
    base.rejected_by_reason = report.rejected_by_reason;
    base.duplicates = report.duplicates;

    Corpus corpus(std::move(records), partition, std::move(base));
    report.excluded = corpus.provenance().excluded;
    report.flagged_incomplete = corpus.provenance().flagged_incomplete;
    report.admitted = static_cast<std::int64_t>(corpus.records().size());
    return {std::move(corpus), std::move(report)};
}

} // namespace kstruct
