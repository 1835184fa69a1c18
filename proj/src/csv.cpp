#include "kstruct/csv.hpp"
#include "kstruct/errors.hpp"

#include <fstream>
#include <istream>
#include <iterator>

namespace kstruct {

namespace {

enum class State { FieldStart, Unquoted, Quoted, QuoteInQuoted };

} // namespace

CsvTable parse_csv(std::istream& in, const std::string& source_name) {
    std::string data(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    if (data.size() >= 3 && data[0] == '\xEF' && data[1] == '\xBB' && data[2] == '\xBF') {
        data.erase(0, 3);
    }

    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    State state = State::FieldStart;
    long row = 0; // 0 = header

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (row == 0) {
            table.header = std::move(record);
        } else {
            table.rows.push_back(CsvRow{std::move(record), row});
        }
        record.clear();
        ++row;
        state = State::FieldStart;
    };

    size_t i = 0;
    const size_t n = data.size();
    while (i < n) {
        char c = data[i];
        switch (state) {
            case State::FieldStart:
                if (c == '"') {
                    state = State::Quoted;
                } else if (c == ',') {
                    end_field();
                } else if (c == '\n') {
                    end_record();
                } else if (c == '\r') {
                    if (i + 1 < n && data[i + 1] == '\n') ++i;
                    end_record();
                } else {
                    field += c;
                    state = State::Unquoted;
                }
                break;
            case State::Unquoted:
                if (c == ',') {
                    end_field();
                    state = State::FieldStart;
                } else if (c == '\n') {
                    end_record();
                } else if (c == '\r') {
                    if (i + 1 < n && data[i + 1] == '\n') ++i;
                    end_record();
                } else if (c == '"') {
                    throw ParseError("stray quote inside unquoted field", source_name, row);
                } else {
                    field += c;
                }
                break;
            case State::Quoted:
                if (c == '"') {
                    state = State::QuoteInQuoted;
                } else {
                    field += c;
                }
                break;
            case State::QuoteInQuoted:
                if (c == '"') {
                    field += '"'; // escaped quote
                    state = State::Quoted;
                } else if (c == ',') {
                    end_field();
                    state = State::FieldStart;
                } else if (c == '\n') {
                    end_record();
                } else if (c == '\r') {
                    if (i + 1 < n && data[i + 1] == '\n') ++i;
                    end_record();
                } else {
                    throw ParseError("unexpected character after closing quote", source_name,
                                     row);
                }
                break;
        }
        ++i;
    }

    if (state == State::Quoted) {
        throw ParseError("unbalanced quote", source_name, row);
    }
    // flush a final record without trailing newline
    if (state == State::Unquoted || state == State::QuoteInQuoted ||
        (state == State::FieldStart && !record.empty())) {
        end_record();
    }
    return table;
}

CsvTable parse_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file", path, 0);
    return parse_csv(in, path);
}

} // namespace kstruct
