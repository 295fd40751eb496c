#include "txm/preprocess.hpp"

#include <fstream>
#include <sstream>

#include "txm/errors.hpp"
#include "txm/utf8.hpp"

namespace txm {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path,
                                               std::uint64_t& digest) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open word list: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    digest = fnv1a64(content);

    std::unordered_set<std::string> entries;
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        entries.insert(utf8::to_lower_copy(line));
    }
    return entries;
}

bool is_nametag_literal(std::string_view raw, std::string& suffix) {
    // #PN<lowercase letters>#
    if (raw.size() < 5 || raw.substr(0, 3) != "#PN" || raw.back() != '#') return false;
    const std::string_view body = raw.substr(3, raw.size() - 4);
    if (body.empty()) return false;
    for (char c : body) {
        if (c < 'a' || c > 'z') return false;
    }
    suffix.assign(body);
    return true;
}

}  // namespace

GazetteerConfig GazetteerConfig::load(const std::filesystem::path& stopword_file,
                                      const std::filesystem::path& names_file) {
    GazetteerConfig cfg;
    cfg.stopwords = load_word_list(stopword_file, cfg.stopword_digest);
    cfg.proper_names = load_word_list(names_file, cfg.names_digest);
    return cfg;
}

std::string Token::render() const {
    switch (kind) {
        case TokenKind::Placeholder:
            return "#";
        case TokenKind::NameTag:
            return "#PN" + text + "#";
        case TokenKind::Content:
        default:
            return lost_punct ? "#" + text : text;
    }
}

std::string PreprocessedText::surface() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i].render();
    }
    return out;
}

std::vector<std::string> PreprocessedText::content_lower() const {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::Content) out.push_back(utf8::to_lower_copy(t.text));
    }
    return out;
}

bool PreprocessedText::has_name_tag() const {
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::NameTag) return true;
    }
    return false;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    const auto cps = utf8::decode(text);
    std::vector<char32_t> cur;
    for (char32_t cp : cps) {
        if (utf8::is_space(cp)) {
            if (!cur.empty()) {
                tokens.push_back(utf8::encode(cur));
                cur.clear();
            }
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) tokens.push_back(utf8::encode(cur));
    return tokens;
}

std::string strip_punctuation(std::string_view token) {
    std::string out;
    for (char32_t cp : utf8::decode(token)) {
        if (utf8::is_letter(cp) || utf8::is_digit(cp) || cp == U'.' || cp == U',') {
            utf8::append(out, cp);
        }
    }
    return out;
}

std::string match_key(std::string_view token) {
    std::string out;
    for (char32_t cp : utf8::decode(token)) {
        if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
            utf8::append(out, utf8::to_lower(cp));
        }
    }
    return out;
}

std::string name_suffix(std::string_view lowercase_name) {
    std::uint64_t h = fnv1a64(lowercase_name);
    std::string out(3, 'a');
    for (int i = 0; i < 3; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<char>('a' + h % 26);
        h /= 26;
    }
    return out;
}

PreprocessedText preprocess(std::string_view description, const GazetteerConfig& gazetteer) {
    PreprocessedText out;
    for (const std::string& raw : tokenize(description)) {
        Token tok;
        std::string suffix;
        if (raw == "#") {
            tok.kind = TokenKind::Placeholder;
            out.tokens.push_back(std::move(tok));
            continue;
        }
        if (is_nametag_literal(raw, suffix)) {
            tok.kind = TokenKind::NameTag;
            tok.text = std::move(suffix);
            out.tokens.push_back(std::move(tok));
            continue;
        }

        std::string cleaned = strip_punctuation(raw);
        const std::string key = match_key(raw);
        if (cleaned.empty() || gazetteer.stopwords.count(key) > 0) {
            tok.kind = TokenKind::Placeholder;
        } else if (!key.empty() && gazetteer.proper_names.count(key) > 0) {
            tok.kind = TokenKind::NameTag;
            tok.text = name_suffix(key);
        } else {
            tok.kind = TokenKind::Content;
            tok.lost_punct = cleaned.size() != raw.size();
            tok.text = std::move(cleaned);
        }
        out.tokens.push_back(std::move(tok));
    }
    return out;
}

}  // namespace txm
