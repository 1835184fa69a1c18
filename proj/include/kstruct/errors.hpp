#pragma once

#include <stdexcept>
#include <string>

namespace kstruct {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (CSV export, corpus file, taxonomy, config tables).
// Carries the source location when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::string file = {}, long line = 0)
        : Error(format(msg, file, line)), file_(std::move(file)), line_(line) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }

private:
    static std::string format(const std::string& msg, const std::string& file, long line) {
        std::string out;
        if (!file.empty()) {
            out += file;
            if (line > 0) out += ":" + std::to_string(line);
            out += ": ";
        } else if (line > 0) {
            out += "line " + std::to_string(line) + ": ";
        }
        return out + msg;
    }

    std::string file_;
    long line_;
};

// Invalid configuration (bad thresholds, missing paths, inconsistent rules).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Violated data contract (duplicate ids, empty corpus, windowless records).
class DataError : public Error {
public:
    using Error::Error;
};

} // namespace kstruct
