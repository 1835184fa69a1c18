#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kstruct {

struct Affiliation {
    std::string raw;
    std::optional<std::string> country; // nullopt = unknown
    bool operator==(const Affiliation&) const = default;
};

// One cleaned publication. `keywords` holds canonical forms (lowercased,
// normalized, synonym-merged, no duplicates); `raw_keywords` the originals.
struct ArticleRecord {
    std::string id;
    std::string title;
    std::optional<int> year;
    std::vector<std::string> authors;
    std::vector<Affiliation> affiliations;
    std::vector<std::string> keywords;
    std::string journal;
    std::int64_t citation_count = 0;
    std::optional<std::string> doi;
    std::vector<std::string> raw_keywords;

    bool operator==(const ArticleRecord&) const = default;
};

struct YearWindow {
    int start = 0;
    int end = 0; // inclusive
    bool contains(int year) const { return year >= start && year <= end; }
    bool operator==(const YearWindow&) const = default;
};

// Ordered, disjoint, strictly increasing year windows. At least two windows
// are required: growth over a single period is undefined.
class PeriodPartition {
public:
    PeriodPartition(std::vector<YearWindow> windows, std::vector<std::string> labels = {});

    std::size_t size() const { return windows_.size(); }
    const YearWindow& window(std::size_t i) const { return windows_.at(i); }
    const std::vector<YearWindow>& windows() const { return windows_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> window_of(int year) const;

    bool operator==(const PeriodPartition&) const = default;

private:
    std::vector<YearWindow> windows_;
    std::vector<std::string> labels_;
};

// Equal-width windows tiling [start, end]. The range must divide evenly;
// otherwise an error tells the caller to list windows explicitly.
PeriodPartition partition_periods(int start, int end, int width);

struct Provenance {
    std::vector<std::string> source_files;
    std::int64_t input_count = 0; // raw rows parsed
    std::int64_t rejected = 0;    // removed by preprocessing
    std::map<std::string, std::int64_t> rejected_by_reason;
    std::int64_t duplicates = 0;
    std::int64_t excluded = 0;           // year outside every window
    std::int64_t flagged_incomplete = 0; // stored but hidden from analyses

    bool operator==(const Provenance&) const = default;
};

// Immutable validated record collection with keyword/period indexes.
// Records with a year inside a window and at least one keyword are
// "complete" and visible to analyses; records missing year or keywords are
// stored and flagged; records dated outside every window are dropped and
// counted in provenance.
class Corpus {
public:
    Corpus(std::vector<ArticleRecord> records, PeriodPartition partition,
           Provenance base = {});

    const std::vector<ArticleRecord>& records() const { return records_; }
    const PeriodPartition& partition() const { return partition_; }
    const Provenance& provenance() const { return provenance_; }
    std::size_t window_count() const { return partition_.size(); }

    // Indices of complete records and their window assignment.
    // window_of_record is only defined for complete records.
    const std::vector<std::size_t>& analysis_records() const { return analysis_; }
    std::size_t window_of_record(std::size_t record_index) const;

    // Per-window totals over complete records.
    const std::vector<std::int64_t>& keyword_totals() const { return keyword_totals_; }
    const std::vector<std::int64_t>& article_counts() const { return article_counts_; }
    std::int64_t total_keyword_occurrences() const { return total_keyword_occurrences_; }
    std::int64_t total_articles() const { return total_articles_; }

    // Distinct canonical keywords (sorted) and per-window article counts;
    // a keyword counts once per article.
    const std::map<std::string, std::vector<std::int64_t>>& keyword_counts() const {
        return keyword_counts_;
    }
    std::int64_t keyword_total(const std::string& keyword) const;

    bool operator==(const Corpus& other) const {
        return records_ == other.records_ && partition_ == other.partition_ &&
               provenance_ == other.provenance_;
    }

private:
    std::vector<ArticleRecord> records_;
    PeriodPartition partition_;
    Provenance provenance_;
    std::vector<std::size_t> analysis_;
    std::vector<std::size_t> record_window_; // per record; npos when not windowed
    std::vector<std::int64_t> keyword_totals_;
    std::vector<std::int64_t> article_counts_;
    std::int64_t total_keyword_occurrences_ = 0;
    std::int64_t total_articles_ = 0;
    std::map<std::string, std::vector<std::int64_t>> keyword_counts_;
};

Corpus build_corpus(std::vector<ArticleRecord> records, PeriodPartition partition,
                    Provenance base = {});

} // namespace kstruct
