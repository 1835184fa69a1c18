#include "kstruct/normalize.hpp"
#include "kstruct/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace kstruct {

namespace {

// Folding table for U+00C0..U+017F (Latin-1 Supplement letters and
// Latin Extended-A). Maps to lowercase ASCII; empty string = no mapping.
const char* latin_fold(char32_t cp) {
    static const std::array<const char*, 0x180 - 0xC0> table = [] {
        std::array<const char*, 0x180 - 0xC0> t{};
        t.fill("");
        auto set = [&t](char32_t c, const char* s) { t[c - 0xC0] = s; };
        // Latin-1 Supplement
        for (char32_t c : {0xC0, 0xC1, 0xC2, 0xC3, 0xC4, 0xC5}) set(c, "a");
        set(0xC6, "ae");
        set(0xC7, "c");
        for (char32_t c : {0xC8, 0xC9, 0xCA, 0xCB}) set(c, "e");
        for (char32_t c : {0xCC, 0xCD, 0xCE, 0xCF}) set(c, "i");
        set(0xD0, "d");
        set(0xD1, "n");
        for (char32_t c : {0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD8}) set(c, "o");
        for (char32_t c : {0xD9, 0xDA, 0xDB, 0xDC}) set(c, "u");
        set(0xDD, "y");
        set(0xDE, "th");
        set(0xDF, "ss");
        for (char32_t c : {0xE0, 0xE1, 0xE2, 0xE3, 0xE4, 0xE5}) set(c, "a");
        set(0xE6, "ae");
        set(0xE7, "c");
        for (char32_t c : {0xE8, 0xE9, 0xEA, 0xEB}) set(c, "e");
        for (char32_t c : {0xEC, 0xED, 0xEE, 0xEF}) set(c, "i");
        set(0xF0, "d");
        set(0xF1, "n");
        for (char32_t c : {0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF8}) set(c, "o");
        for (char32_t c : {0xF9, 0xFA, 0xFB, 0xFC}) set(c, "u");
        set(0xFD, "y");
        set(0xFE, "th");
        set(0xFF, "y");
        // Latin Extended-A: pairs of upper/lower sharing a base letter
        auto pair = [&set](char32_t upper, const char* s) {
            set(upper, s);
            set(upper + 1, s);
        };
        for (char32_t c = 0x100; c <= 0x104; c += 2) pair(c, "a");
        for (char32_t c = 0x106; c <= 0x10C; c += 2) pair(c, "c");
        pair(0x10E, "d");
        pair(0x110, "d");
        for (char32_t c = 0x112; c <= 0x11A; c += 2) pair(c, "e");
        for (char32_t c = 0x11C; c <= 0x122; c += 2) pair(c, "g");
        pair(0x124, "h");
        pair(0x126, "h");
        for (char32_t c = 0x128; c <= 0x130; c += 2) pair(c, "i");
        set(0x131, "i"); // dotless i
        pair(0x132, "ij");
        pair(0x134, "j");
        pair(0x136, "k");
        set(0x138, "k");
        for (char32_t c = 0x139; c <= 0x141; c += 2) {
            set(c, "l");
            set(c + 1, "l");
        }
        for (char32_t c = 0x143; c <= 0x147; c += 2) {
            set(c, "n");
            set(c + 1, "n");
        }
        set(0x149, "n");
        pair(0x14A, "n"); // eng
        for (char32_t c = 0x14C; c <= 0x150; c += 2) pair(c, "o");
        pair(0x152, "oe");
        for (char32_t c = 0x154; c <= 0x158; c += 2) pair(c, "r");
        for (char32_t c = 0x15A; c <= 0x160; c += 2) pair(c, "s");
        for (char32_t c = 0x162; c <= 0x166; c += 2) pair(c, "t");
        for (char32_t c = 0x168; c <= 0x172; c += 2) pair(c, "u");
        pair(0x174, "w");
        pair(0x176, "y");
        set(0x178, "y");
        for (char32_t c = 0x179; c <= 0x17D; c += 2) {
            set(c, "z");
            set(c + 1, "z");
        }
        set(0x17F, "s"); // long s
        return t;
    }();
    if (cp < 0xC0 || cp >= 0x180) return "";
    return table[cp - 0xC0];
}

// Decodes one UTF-8 sequence starting at s[i]. On malformed input the raw
// byte is returned as a codepoint in the 0x80..0xFF range with length 1.
char32_t decode_utf8(std::string_view s, size_t i, size_t& len) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        len = 1;
        return b0;
    }
    size_t need = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        need = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        need = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        need = 3;
        cp = b0 & 0x07;
    } else {
        len = 1;
        return b0;
    }
    if (i + need >= s.size()) {
        // not enough continuation bytes
        len = 1;
        return b0;
    }
    for (size_t k = 1; k <= need; ++k) {
        unsigned char bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            len = 1;
            return b0;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    len = need + 1;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool ascii_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Case fold, accent fold, and common-punctuation fold in one decode pass.
std::string fold_pass(std::string_view s, const NormalizationConfig& cfg) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        size_t len = 1;
        char32_t cp = decode_utf8(s, i, len);
        i += len;
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            out += c;
            continue;
        }
        if (cfg.accent_folding) {
            const char* mapped = latin_fold(cp);
            if (mapped[0] != '\0') {
                out += mapped;
                continue;
            }
            switch (cp) {
                case 0x00A0: out += ' '; continue;          // nbsp
                case 0x2010: case 0x2011: case 0x2012:
                case 0x2013: case 0x2014: case 0x2015:
                    out += '-'; continue;                    // dash family
                case 0x2018: case 0x2019: out += '\''; continue;
                case 0x201C: case 0x201D: out += '"'; continue;
                default: break;
            }
        }
        append_utf8(out, cp);
    }
    return out;
}

std::string apply_rules(std::string s, const std::vector<PunctuationRule>& rules) {
    for (const auto& rule : rules) {
        if (rule.from.empty()) continue;
        size_t pos = 0;
        while ((pos = s.find(rule.from, pos)) != std::string::npos) {
            s.replace(pos, rule.from.size(), rule.to);
            pos += rule.to.size();
        }
    }
    return s;
}

std::string drop_letter_hyphens(const std::string& s, bool as_space) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '-' && i > 0 && i + 1 < s.size() && ascii_letter(s[i - 1]) &&
            ascii_letter(s[i + 1])) {
            if (as_space) out += ' ';
            continue;
        }
        out += s[i];
    }
    return out;
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out += ' ';
        in_space = false;
        out += c;
    }
    return out;
}

std::string normalize_once(std::string_view s, const NormalizationConfig& cfg,
                           bool hyphen_as_space) {
    std::string t = fold_pass(s, cfg);
    t = apply_rules(std::move(t), cfg.punctuation_rules);
    if (cfg.hyphen_between_letters) t = drop_letter_hyphens(t, hyphen_as_space);
    return collapse_whitespace(t);
}

std::string normalize_fixpoint(std::string_view s, const NormalizationConfig& cfg,
                               bool hyphen_as_space) {
    std::string cur = normalize_once(s, cfg, hyphen_as_space);
    for (int round = 0; round < 8; ++round) {
        std::string next = normalize_once(cur, cfg, hyphen_as_space);
        if (next == cur) return cur;
        cur = std::move(next);
    }
    throw ConfigError("punctuation rules do not converge on input: " + std::string(s));
}

} // namespace

std::string normalize_text(std::string_view s, const NormalizationConfig& cfg) {
    return normalize_fixpoint(s, cfg, /*hyphen_as_space=*/false);
}

std::string normalize_text_hyphen_space(std::string_view s, const NormalizationConfig& cfg) {
    return normalize_fixpoint(s, cfg, /*hyphen_as_space=*/true);
}

std::string canonicalize_keyword(std::string_view raw, const NormalizationConfig& cfg) {
    std::string n = normalize_text(raw, cfg);
    auto it = cfg.synonyms.find(n);
    if (it != cfg.synonyms.end()) return it->second;
    std::string v = normalize_text_hyphen_space(raw, cfg);
    if (v != n) {
        it = cfg.synonyms.find(v);
        if (it != cfg.synonyms.end()) return it->second;
    }
    return n;
}

std::optional<std::string> extract_country(std::string_view affiliation,
                                           const NormalizationConfig& cfg) {
    size_t pos = affiliation.rfind(',');
    std::string_view segment =
        pos == std::string_view::npos ? affiliation : affiliation.substr(pos + 1);
    std::string n = normalize_text(segment, cfg);
    if (n.empty()) return std::nullopt;
    auto alias = cfg.country_aliases.find(n);
    if (alias != cfg.country_aliases.end()) return alias->second;
    auto country = cfg.countries.find(n);
    if (country != cfg.countries.end()) return country->second;
    return std::nullopt;
}

void NormalizationConfig::add_synonym(std::string_view canonical,
                                      const std::vector<std::string>& variants) {
    std::string canon = normalize_text(canonical, *this);
    if (canon.empty()) throw ConfigError("synonym table: empty canonical term");
    for (const auto& variant : variants) {
        std::string v = normalize_text(variant, *this);
        if (v.empty()) continue;
        auto [it, inserted] = synonyms.emplace(v, canon);
        if (!inserted && it->second != canon) {
            throw ConfigError("synonym table: variant '" + v + "' maps to both '" +
                              it->second + "' and '" + canon + "'");
        }
    }
}

void NormalizationConfig::add_country(std::string_view canonical,
                                      const std::vector<std::string>& aliases) {
    std::string display(canonical);
    std::string n = normalize_text(display, *this);
    if (n.empty()) throw ConfigError("country table: empty country name");
    auto [it, inserted] = countries.emplace(n, display);
    if (!inserted && it->second != display) {
        throw ConfigError("country table: conflicting spellings for '" + n + "'");
    }
    for (const auto& alias : aliases) {
        std::string a = normalize_text(alias, *this);
        if (a.empty()) continue;
        auto [ait, ains] = country_aliases.emplace(a, display);
        if (!ains && ait->second != display) {
            throw ConfigError("country table: alias '" + a + "' maps to both '" +
                              ait->second + "' and '" + display + "'");
        }
    }
}

void NormalizationConfig::validate() const {
    // No canonical keyword may itself be a variant of a different entry.
    for (const auto& [variant, canon] : synonyms) {
        auto it = synonyms.find(canon);
        if (it != synonyms.end() && it->second != canon) {
            throw ConfigError("synonym table: canonical term '" + canon +
                              "' is itself a variant of '" + it->second + "'");
        }
        (void)variant;
    }
    // Alias targets must be canonical countries, not aliases of something else.
    for (const auto& [alias, display] : country_aliases) {
        std::string n = normalize_text(display, *this);
        auto it = country_aliases.find(n);
        if (it != country_aliases.end() && it->second != display) {
            throw ConfigError("country table: alias target '" + display +
                              "' is itself an alias of '" + it->second + "'");
        }
        (void)alias;
    }
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, '\t')) out.push_back(field);
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

void load_synonym_table(const std::string& path, NormalizationConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open synonym table: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 2) {
            throw ParseError("synonym table row needs canonical + at least one variant",
                             path, lineno);
        }
        cfg.add_synonym(fields[0], {fields.begin() + 1, fields.end()});
    }
    cfg.validate();
}

void load_country_table(const std::string& path, NormalizationConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open country table: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() == 1) {
            cfg.add_country(fields[0]);
        } else if (fields.size() == 2) {
            cfg.add_country(fields[1], {fields[0]});
        } else {
            throw ParseError("country table row must be 'name' or 'alias TAB name'", path,
                             lineno);
        }
    }
    cfg.validate();
}

} // namespace kstruct
