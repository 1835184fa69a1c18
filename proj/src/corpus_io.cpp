#include "kstruct/corpus_io.hpp"
#include "kstruct/errors.hpp"
#include "kstruct/version.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace kstruct {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kMagic = "#kstruct-corpus";

ordered_json record_to_json(const ArticleRecord& rec) {
    ordered_json j;
    j["id"] = rec.id;
    j["title"] = rec.title;
    if (rec.year) j["year"] = *rec.year; else j["year"] = nullptr;
    j["authors"] = rec.authors;
    ordered_json affs = ordered_json::array();
    for (const auto& aff : rec.affiliations) {
        ordered_json a = ordered_json::array();
        a.push_back(aff.raw);
        if (aff.country) a.push_back(*aff.country); else a.push_back(nullptr);
        affs.push_back(std::move(a));
    }
    j["affiliations"] = std::move(affs);
    j["keywords"] = rec.keywords;
    j["journal"] = rec.journal;
    j["citations"] = rec.citation_count;
    if (rec.doi) j["doi"] = *rec.doi; else j["doi"] = nullptr;
    j["raw_keywords"] = rec.raw_keywords;
    return j;
}

ArticleRecord record_from_json(const nlohmann::json& j) {
    ArticleRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.title = j.at("title").get<std::string>();
    if (!j.at("year").is_null()) rec.year = j.at("year").get<int>();
    rec.authors = j.at("authors").get<std::vector<std::string>>();
    for (const auto& a : j.at("affiliations")) {
        Affiliation aff;
        aff.raw = a.at(0).get<std::string>();
        if (!a.at(1).is_null()) aff.country = a.at(1).get<std::string>();
        rec.affiliations.push_back(std::move(aff));
    }
    rec.keywords = j.at("keywords").get<std::vector<std::string>>();
    rec.journal = j.at("journal").get<std::string>();
    rec.citation_count = j.at("citations").get<std::int64_t>();
    if (!j.at("doi").is_null()) rec.doi = j.at("doi").get<std::string>();
    rec.raw_keywords = j.at("raw_keywords").get<std::vector<std::string>>();
    return rec;
}

ordered_json provenance_to_json(const Provenance& p) {
    ordered_json j;
    j["source_files"] = p.source_files;
    j["input_count"] = p.input_count;
    j["rejected"] = p.rejected;
    j["rejected_by_reason"] = p.rejected_by_reason;
    j["duplicates"] = p.duplicates;
    j["excluded"] = p.excluded;
    j["flagged_incomplete"] = p.flagged_incomplete;
    return j;
}

Provenance provenance_from_json(const nlohmann::json& j) {
    Provenance p;
    p.source_files = j.at("source_files").get<std::vector<std::string>>();
    p.input_count = j.at("input_count").get<std::int64_t>();
    p.rejected = j.at("rejected").get<std::int64_t>();
    p.rejected_by_reason =
        j.at("rejected_by_reason").get<std::map<std::string, std::int64_t>>();
    p.duplicates = j.at("duplicates").get<std::int64_t>();
    p.excluded = j.at("excluded").get<std::int64_t>();
    p.flagged_incomplete = j.at("flagged_incomplete").get<std::int64_t>();
    return p;
}

} // namespace

void save_corpus(const Corpus& corpus, std::ostream& out) {
    out << kMagic << " v" << kCorpusSchemaVersion << "\n";
    ordered_json header;
    ordered_json part;
    ordered_json windows = ordered_json::array();
    for (const auto& w : corpus.partition().windows()) {
        windows.push_back(ordered_json::array({w.start, w.end}));
    }
    part["windows"] = std::move(windows);
    part["labels"] = corpus.partition().labels();
    header["partition"] = std::move(part);
    header["provenance"] = provenance_to_json(corpus.provenance());
    out << header.dump() << "\n";
    for (const auto& rec : corpus.records()) {
        out << record_to_json(rec).dump() << "\n";
    }
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    save_corpus(corpus, out);
    if (!out) throw DataError("write failed: " + path);
}

Corpus load_corpus(std::istream& in, const std::string& source_name) {
    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) throw DataError("empty corpus");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::istringstream ls(line);
        std::string magic, version;
        ls >> magic >> version;
        std::string expected = "v" + std::to_string(kCorpusSchemaVersion);
        if (magic != kMagic) {
            throw ParseError("not a corpus file (bad magic)", source_name, lineno);
        }
        if (version != expected) {
            throw ParseError("schema-version mismatch: file has '" + version +
                                 "', this build reads '" + expected + "'",
                             source_name, lineno);
        }
    }

    if (!std::getline(in, line)) throw DataError("empty corpus");
    ++lineno;
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed header: ") + e.what(), source_name, lineno);
    }

    PeriodPartition partition = [&] {
        try {
            std::vector<YearWindow> windows;
            for (const auto& w : header.at("partition").at("windows")) {
                windows.push_back(YearWindow{w.at(0).get<int>(), w.at(1).get<int>()});
            }
            auto labels =
                header.at("partition").at("labels").get<std::vector<std::string>>();
            return PeriodPartition(std::move(windows), std::move(labels));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed partition: ") + e.what(), source_name,
                             lineno);
        }
    }();
    Provenance provenance;
    try {
        provenance = provenance_from_json(header.at("provenance"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed provenance: ") + e.what(), source_name,
                         lineno);
    }

    std::vector<ArticleRecord> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed record: ") + e.what(), source_name,
                             lineno);
        }
    }
    if (records.empty()) throw DataError("empty corpus");

    return Corpus(std::move(records), std::move(partition), std::move(provenance));
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);
    return load_corpus(in, path);
}

} // namespace kstruct
