#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kstruct {

// Plain substring replacement applied during text normalization.
// Applied repeatedly until the text stops changing, so `to` must not
// expand back into `from` (validated on load).
struct PunctuationRule {
    std::string from;
    std::string to;
};

struct NormalizationConfig {
    // normalized variant -> canonical keyword (canonical is stored normalized)
    std::unordered_map<std::string, std::string> synonyms;
    // normalized alias -> canonical country display name
    std::unordered_map<std::string, std::string> country_aliases;
    // normalized country name -> display name (the configured country list)
    std::unordered_map<std::string, std::string> countries;

    bool accent_folding = true;
    // drop '-' when it joins two letters ("hyper-tension" -> "hypertension")
    bool hyphen_between_letters = true;
    std::vector<PunctuationRule> punctuation_rules;

    // Registers canonical <- variants. Keys are normalized with the current
    // settings, so set punctuation/accent options before loading tables.
    void add_synonym(std::string_view canonical, const std::vector<std::string>& variants);
    void add_country(std::string_view canonical, const std::vector<std::string>& aliases = {});

    // Checks synonym-table acyclicity and alias canonicality; throws ConfigError.
    void validate() const;
};

// Lowercased, accent-folded, whitespace-collapsed, punctuation-normalized
// form of `s`. Idempotent for any config that passes validate().
std::string normalize_text(std::string_view s, const NormalizationConfig& cfg);

// Variant with letter-joining hyphens replaced by a space instead of removed
// ("body-mass index" -> "body mass index"). Used for synonym lookups.
std::string normalize_text_hyphen_space(std::string_view s, const NormalizationConfig& cfg);

// normalize_text, then synonym lookup on the normalized form and its
// hyphen-as-space variant. Unmapped keywords pass through normalized.
std::string canonicalize_keyword(std::string_view raw, const NormalizationConfig& cfg);

// Resolves the final comma-separated segment of an affiliation against the
// configured country list. nullopt = unknown.
std::optional<std::string> extract_country(std::string_view affiliation,
                                           const NormalizationConfig& cfg);

// TSV loaders. Synonym table: canonical TAB variant [TAB variant ...].
// Country table: canonical-name, or alias TAB canonical-name, one per line.
// Lines starting with '#' and blank lines are skipped.
void load_synonym_table(const std::string& path, NormalizationConfig& cfg);
void load_country_table(const std::string& path, NormalizationConfig& cfg);

} // namespace kstruct
