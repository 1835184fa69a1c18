#include "kstruct/record.hpp"
#include "kstruct/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace kstruct {

namespace {
constexpr std::size_t kNoWindow = std::numeric_limits<std::size_t>::max();
}

PeriodPartition::PeriodPartition(std::vector<YearWindow> windows,
                                 std::vector<std::string> labels)
    : windows_(std::move(windows)), labels_(std::move(labels)) {
    if (windows_.size() < 2) {
        throw ConfigError("a period partition needs at least 2 windows");
    }
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        if (windows_[i].end < windows_[i].start) {
            throw ConfigError("window " + std::to_string(i) + " ends before it starts");
        }
        if (i > 0 && windows_[i].start <= windows_[i - 1].end) {
            throw ConfigError("windows must be disjoint and strictly increasing");
        }
    }
    if (labels_.empty()) {
        labels_.reserve(windows_.size());
        for (const auto& w : windows_) {
            labels_.push_back(std::to_string(w.start) + "-" + std::to_string(w.end));
        }
    } else if (labels_.size() != windows_.size()) {
        throw ConfigError("label count does not match window count");
    }
}

std::optional<std::size_t> PeriodPartition::window_of(int year) const {
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        if (windows_[i].contains(year)) return i;
    }
    return std::nullopt;
}

PeriodPartition partition_periods(int start, int end, int width) {
    if (width < 1) throw ConfigError("window width must be at least 1 year");
    if (end < start + width - 1) {
        throw ConfigError("year range shorter than one window");
    }
    int span = end - start + 1;
    if (span % width != 0) {
        throw ConfigError("year range " + std::to_string(start) + "-" + std::to_string(end) +
                          " is not divisible into " + std::to_string(width) +
                          "-year windows; list the windows explicitly instead");
    }
    std::vector<YearWindow> windows;
    for (int y = start; y <= end; y += width) {
        windows.push_back(YearWindow{y, y + width - 1});
    }
    return PeriodPartition(std::move(windows));
}

Corpus::Corpus(std::vector<ArticleRecord> records, PeriodPartition partition, Provenance base)
    : partition_(std::move(partition)), provenance_(std::move(base)) {
    if (provenance_.input_count == 0) {
        provenance_.input_count = static_cast<std::int64_t>(records.size());
    }

    // Drop records dated outside every window; keep the rest.
    records_.reserve(records.size());
    for (auto& rec : records) {
        if (rec.title.empty()) {
            throw DataError("record '" + rec.id + "' has an empty title");
        }
        if (rec.authors.empty()) {
            throw DataError("record '" + rec.id + "' has no authors");
        }
        if (rec.year && !partition_.window_of(*rec.year)) {
            ++provenance_.excluded;
            continue;
        }
        records_.push_back(std::move(rec));
    }
    if (records_.empty()) throw DataError("empty corpus");

    {
        std::set<std::string> seen;
        std::set<std::string> dup;
        for (const auto& rec : records_) {
            if (!seen.insert(rec.id).second) dup.insert(rec.id);
        }
        if (!dup.empty()) {
            std::string ids;
            for (const auto& id : dup) {
                if (!ids.empty()) ids += ", ";
                ids += id;
            }
            throw DataError("duplicate record ids: " + ids);
        }
    }

    const std::size_t nw = partition_.size();
    keyword_totals_.assign(nw, 0);
    article_counts_.assign(nw, 0);
    record_window_.assign(records_.size(), kNoWindow);
    provenance_.flagged_incomplete = 0;

    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& rec = records_[i];
        for (std::size_t k = 0; k < rec.keywords.size(); ++k) {
            if (rec.keywords[k].empty()) {
                throw DataError("record '" + rec.id + "' has an empty keyword");
            }
            for (std::size_t j = k + 1; j < rec.keywords.size(); ++j) {
                if (rec.keywords[k] == rec.keywords[j]) {
                    throw DataError("record '" + rec.id + "' has duplicate keyword '" +
                                    rec.keywords[k] + "'");
                }
            }
        }
        const bool complete = rec.year.has_value() && !rec.keywords.empty();
        if (!complete) {
            ++provenance_.flagged_incomplete;
            continue;
        }
        std::size_t w = *partition_.window_of(*rec.year);
        record_window_[i] = w;
        analysis_.push_back(i);
        ++article_counts_[w];
        keyword_totals_[w] += static_cast<std::int64_t>(rec.keywords.size());
        for (const auto& kw : rec.keywords) {
            auto [it, inserted] = keyword_counts_.try_emplace(kw);
            if (inserted) it->second.assign(nw, 0);
            ++it->second[w];
        }
    }

    for (auto v : keyword_totals_) total_keyword_occurrences_ += v;
    for (auto v : article_counts_) total_articles_ += v;

    // stored = input - rejected - duplicates - excluded
    std::int64_t expected = provenance_.input_count - provenance_.rejected -
                            provenance_.duplicates - provenance_.excluded;
    if (expected != static_cast<std::int64_t>(records_.size())) {
        throw DataError("provenance identity violated: input " +
                        std::to_string(provenance_.input_count) + " - rejected " +
                        std::to_string(provenance_.rejected) + " - duplicates " +
                        std::to_string(provenance_.duplicates) + " - excluded " +
                        std::to_string(provenance_.excluded) + " != stored " +
                        std::to_string(records_.size()));
    }
}

std::size_t Corpus::window_of_record(std::size_t record_index) const {
    std::size_t w = record_window_.at(record_index);
    if (w == kNoWindow) {
        throw DataError("record '" + records_[record_index].id + "' is not in any window");
    }
    return w;
}

std::int64_t Corpus::keyword_total(const std::string& keyword) const {
    auto it = keyword_counts_.find(keyword);
    if (it == keyword_counts_.end()) return 0;
    std::int64_t total = 0;
    for (auto v : it->second) total += v;
    return total;
}

Corpus build_corpus(std::vector<ArticleRecord> records, PeriodPartition partition,
                    Provenance base) {
    return Corpus(std::move(records), std::move(partition), std::move(base));
}

} // namespace kstruct
