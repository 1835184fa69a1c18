#pragma once

#include "kstruct/normalize.hpp"
#include "kstruct/record.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace kstruct {

// Verbatim row from an export file. Keys are the canonical column names
// below; extra columns are kept under their trimmed header names.
struct RawRecord {
    std::map<std::string, std::string> fields;
    std::string source_file;
    long source_row = 0;

    bool operator==(const RawRecord&) const = default;

    const std::string* field(const std::string& key) const {
        auto it = fields.find(key);
        return it == fields.end() ? nullptr : &it->second;
    }
};

// Canonical field keys used in RawRecord::fields.
namespace fieldkey {
inline constexpr const char* authors = "authors";
inline constexpr const char* title = "title";
inline constexpr const char* year = "year";
inline constexpr const char* author_keywords = "author_keywords";
inline constexpr const char* affiliations = "affiliations";
inline constexpr const char* cited_by = "cited_by";
inline constexpr const char* doi = "doi";
inline constexpr const char* source_title = "source_title";
} // namespace fieldkey

enum class ExportFormat { CsvExport, Canonical };

// CsvExport: a bibliographic CSV export with at least the columns Authors,
// Title, Year, Author Keywords, Affiliations, Cited by, DOI, Source title
// (case-insensitive match). Canonical: a corpus file reread as raw rows.
std::vector<RawRecord> parse_export(const std::string& path, ExportFormat format);
std::vector<RawRecord> parse_export(std::istream& in, const std::string& source_name,
                                    ExportFormat format);

// Reject reason codes emitted by preprocess.
namespace reject {
inline constexpr const char* missing_title = "missing-title";
inline constexpr const char* empty_authors = "empty-authors";
inline constexpr const char* missing_year = "missing-year";
inline constexpr const char* missing_keywords = "missing-keywords";
} // namespace reject

struct RejectedRecord {
    RawRecord record;
    std::string reason;
    bool operator==(const RejectedRecord&) const = default;
};

struct PreprocessResult {
    std::vector<RawRecord> valid;
    std::vector<RejectedRecord> rejected;
};

// Routes records lacking title, authors, year, or keywords to `rejected`.
// Fields are whitespace-trimmed before the emptiness test; a year that does
// not parse as an integer counts as missing. Total and idempotent.
PreprocessResult preprocess(std::vector<RawRecord> records);

struct DeduplicateResult {
    std::vector<RawRecord> unique;
    std::vector<RawRecord> duplicates;
};

// Duplicate key: DOI when present on both records, else (normalized title,
// year). First occurrence in input order wins. Record contents are never
// modified, only membership.
DeduplicateResult deduplicate(std::vector<RawRecord> records,
                              const NormalizationConfig& cfg);

struct IngestOptions {
    char keyword_delimiter = ';';
    char affiliation_delimiter = ';';
    // Authors split on ';' when present, else on this character.
    char author_fallback_delimiter = ',';
    std::string id_prefix = "r";
};

// Normalization stage: canonicalizes keywords (deduped, order of first
// occurrence), resolves countries, parses numeric fields, assigns
// sequential ids in input order.
std::vector<ArticleRecord> to_article_records(const std::vector<RawRecord>& records,
                                              const NormalizationConfig& cfg,
                                              const IngestOptions& opts = {});

struct IngestReport {
    std::vector<std::string> source_files;
    std::int64_t parsed = 0;
    std::int64_t rejected = 0;
    std::map<std::string, std::int64_t> rejected_by_reason;
    std::int64_t duplicates = 0;
    std::int64_t excluded = 0;
    std::int64_t flagged_incomplete = 0;
    std::int64_t admitted = 0;
};

// Full pipeline: parse every file, merge, preprocess, deduplicate,
// normalize, build. The report mirrors the corpus provenance.
std::pair<Corpus, IngestReport> ingest_corpus(const std::vector<std::string>& paths,
                                              ExportFormat format,
                                              const PeriodPartition& partition,
                                              const NormalizationConfig& cfg,
                                              const IngestOptions& opts = {});

} // namespace kstruct
