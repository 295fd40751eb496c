#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace txm {

// Stopword and proper-name lists. Files are UTF-8, one lowercase entry per
// line, '#'-prefixed comment lines ignored. Both lists are swappable to
// support locales other than the shipped Spanish defaults.
struct GazetteerConfig {
    std::unordered_set<std::string> stopwords;
    std::unordered_set<std::string> proper_names;
    std::uint64_t stopword_digest = 0;  // FNV-1a over the source file bytes
    std::uint64_t names_digest = 0;

    static GazetteerConfig load(const std::filesystem::path& stopword_file,
                                const std::filesystem::path& names_file);
};

enum class TokenKind { Content, Placeholder, NameTag };

struct Token {
    TokenKind kind = TokenKind::Content;
    std::string text;        // Content: cleaned token; NameTag: 3-letter suffix
    bool lost_punct = false; // Content only: stripped punctuation is rendered as a leading '#'

    std::string render() const;
};

struct PreprocessedText {
    std::vector<Token> tokens;

    std::string surface() const;                     // space-joined rendering
    std::vector<std::string> content_lower() const;  // lowercase Content texts, in order
    bool has_name_tag() const;
};

// Whitespace-run tokenizer; character content is preserved within tokens.
std::vector<std::string> tokenize(std::string_view text);

// Removes punctuation and symbols except '.' and ','; letters and digits stay.
std::string strip_punctuation(std::string_view token);

// Lowercase, fully punctuation-free form used for gazetteer lookups, so that
// e.g. "en." still matches the stopword "en".
std::string match_key(std::string_view token);

// Stable 3-letter tag suffix; a pure function of the lowercase name.
std::string name_suffix(std::string_view lowercase_name);

// Tokenize, strip punctuation, blank out stopwords and emptied tokens as '#'
// placeholders, and replace gazetteer names with stable #PN<suffix># tags.
// Placeholder and name-tag renderings fed back in are recognized literally,
// which makes a second pass leave them untouched.
PreprocessedText preprocess(std::string_view description, const GazetteerConfig& gazetteer);

// FNV-1a used for gazetteer digests and name suffixes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace txm
