#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstruct {

// One parsed CSV row; `row` is the 1-based data-row number within the
// source (the header is row 0).
struct CsvRow {
    std::vector<std::string> fields;
    long row = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

// RFC-4180-style parser: comma delimiter, double-quote quoting, doubled
// quotes as escapes, quoted fields may contain commas and line breaks.
// CRLF and a leading UTF-8 BOM are handled. Throws ParseError (with row
// number) on unbalanced quotes or stray quotes inside unquoted fields.
CsvTable parse_csv(std::istream& in, const std::string& source_name);
CsvTable parse_csv_file(const std::string& path);

} // namespace kstruct
