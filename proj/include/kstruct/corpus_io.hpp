#pragma once

#include "kstruct/record.hpp"

#include <iosfwd>
#include <string>

namespace kstruct {

// Canonical corpus file: line 1 a magic + schema-version line, line 2 a
// header object (partition + provenance), then one record object per line.
// load(save(c)) reproduces c record-for-record.
void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::string& path);

Corpus load_corpus(std::istream& in, const std::string& source_name);
Corpus load_corpus(const std::string& path);

} // namespace kstruct
