#include "txm/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "txm/errors.hpp"

namespace txm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw ConfigError("");
        return v;
    } catch (...) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw ConfigError("");
        return v;
    } catch (...) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

std::string format_double_key(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

FeatureGroups parse_groups(const std::string& text) {
    if (trim(text) == "all") return FeatureGroups::all();
    FeatureGroups g{false, false, false, false, false};
    for (const auto& part : split(text, '+')) {
        if (part == "word" || part == "wordNgrams") g.word_ngrams = true;
        else if (part == "lex" || part == "lexica") g.lexica = true;
        else if (part == "amount") g.amount = true;
        else if (part == "date") g.date = true;
        else if (part == "char" || part == "charNgrams") g.char_ngrams = true;
        else if (part == "all") g = FeatureGroups::all();
        else throw ConfigError("unknown feature group: " + part);
    }
    if (!g.word_ngrams) throw ConfigError("the word n-gram group cannot be disabled");
    return g;
}

std::string format_groups(const FeatureGroups& groups) {
    if (groups == FeatureGroups::all()) return "all";
    std::string out = "word";
    if (groups.lexica) out += "+lex";
    if (groups.amount) out += "+amount";
    if (groups.date) out += "+date";
    if (groups.char_ngrams) out += "+char";
    return out;
}

NgramOrders parse_orders(const std::string& text) {
    NgramOrders orders;
    const auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            orders.lo = orders.hi = static_cast<int>(parse_long("orders", text));
        } else {
            orders.lo = static_cast<int>(parse_long("orders", trim(text.substr(0, dash))));
            orders.hi = static_cast<int>(parse_long("orders", trim(text.substr(dash + 1))));
        }
    } catch (const ConfigError&) {
        throw ConfigError("bad n-gram order range: " + text);
    }
    if (orders.lo < 1 || orders.hi < orders.lo || orders.hi > 16) {
        throw ConfigError("bad n-gram order range: " + text);
    }
    return orders;
}

std::vector<double> parse_fraction_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) continue;
        const double v = parse_double("splits", part);
        if (!(v > 0.0 && v < 1.0)) throw ConfigError("split fraction out of range: " + part);
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty split list");
    return out;
}

std::vector<ExperimentStage> parse_stages(const std::string& text) {
    std::vector<ExperimentStage> stages;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) continue;
        stages.push_back({part, parse_groups(part)});
    }
    if (stages.empty()) throw ConfigError("empty stage list");
    return stages;
}

void AppConfig::set(const std::string& key, const std::string& value) {
    if (key == "similarity.threshold") {
        similarity_threshold = parse_double(key, value);
    } else if (key == "lexicon.unigram_min") {
        lexicon_unigram_min = static_cast<int>(parse_long(key, value));
    } else if (key == "lexicon.bigram_min") {
        lexicon_bigram_min = static_cast<int>(parse_long(key, value));
    } else if (key == "features.groups") {
        groups = parse_groups(value);
    } else if (key == "features.word_ngram_orders") {
        word_orders = parse_orders(value);
    } else if (key == "features.char_ngram_orders") {
        char_orders = parse_orders(value);
    } else if (key == "features.amount_edges") {
        amount_edges.clear();
        for (const auto& part : split(value, ',')) amount_edges.push_back(parse_double(key, part));
    } else if (key == "features.date_windows") {
        date_windows.clear();
        for (const auto& part : split(value, ',')) {
            date_windows.push_back(static_cast<int>(parse_long(key, part)));
        }
    } else if (key == "svm.c") {
        svm_c = parse_double(key, value);
    } else if (key == "svm.tolerance") {
        svm_tolerance = parse_double(key, value);
    } else if (key == "svm.max_epochs") {
        svm_max_epochs = static_cast<int>(parse_long(key, value));
    } else if (key == "svm.seed") {
        svm_seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

void AppConfig::validate() const {
    if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0)) {
        throw ConfigError("similarity.threshold must lie in (0, 1]");
    }
    if (lexicon_unigram_min < 1 || lexicon_bigram_min < 1) {
        throw ConfigError("lexicon thresholds must be positive");
    }
    if (!groups.word_ngrams) throw ConfigError("the word n-gram group cannot be disabled");
    if (amount_edges.empty()) throw ConfigError("features.amount_edges must not be empty");
    for (std::size_t i = 0; i < amount_edges.size(); ++i) {
        if (amount_edges[i] <= 0.0 || (i > 0 && amount_edges[i] <= amount_edges[i - 1])) {
            throw ConfigError("features.amount_edges must be positive and strictly ascending");
        }
    }
    if (date_windows.empty()) throw ConfigError("features.date_windows must not be empty");
    for (std::size_t i = 0; i < date_windows.size(); ++i) {
        if (date_windows[i] <= 0 || (i > 0 && date_windows[i] <= date_windows[i - 1])) {
            throw ConfigError("features.date_windows must be positive and strictly ascending");
        }
    }
    if (!(svm_c > 0.0)) throw ConfigError("svm.c must be positive");
    if (!(svm_tolerance > 0.0)) throw ConfigError("svm.tolerance must be positive");
    if (svm_max_epochs <= 0) throw ConfigError("svm.max_epochs must be positive");
}

std::string AppConfig::echo() const {
    std::ostringstream out;
    auto join_doubles = [](const std::vector<double>& vs) {
        std::string s;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) s += ",";
            s += format_double_key(vs[i]);
        }
        return s;
    };
    auto join_ints = [](const std::vector<int>& vs) {
        std::string s;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(vs[i]);
        }
        return s;
    };
    out << "features.amount_edges=" << join_doubles(amount_edges) << "\n"
        << "features.char_ngram_orders=" << char_orders.lo << "-" << char_orders.hi << "\n"
        << "features.date_windows=" << join_ints(date_windows) << "\n"
        << "features.groups=" << format_groups(groups) << "\n"
        << "features.word_ngram_orders=" << word_orders.lo << "-" << word_orders.hi << "\n"
        << "lexicon.bigram_min=" << lexicon_bigram_min << "\n"
        << "lexicon.unigram_min=" << lexicon_unigram_min << "\n"
        << "similarity.threshold=" << format_double_key(similarity_threshold) << "\n"
        << "svm.c=" << format_double_key(svm_c) << "\n"
        << "svm.max_epochs=" << svm_max_epochs << "\n"
        << "svm.seed=" << svm_seed << "\n"
        << "svm.tolerance=" << format_double_key(svm_tolerance) << "\n";
    return out.str();
}

PipelineConfig AppConfig::pipeline() const {
    validate();
    PipelineConfig cfg;
    cfg.similarity_threshold = similarity_threshold;
    cfg.lexicon_unigram_min = lexicon_unigram_min;
    cfg.lexicon_bigram_min = lexicon_bigram_min;
    cfg.groups = groups;
    cfg.word_orders = word_orders;
    cfg.char_orders = char_orders;
    cfg.amount_edges = amount_edges;
    cfg.date_windows = date_windows;
    cfg.svm.c = svm_c;
    cfg.svm.tolerance = svm_tolerance;
    cfg.svm.max_epochs = svm_max_epochs;
    cfg.svm.seed = svm_seed;
    cfg.echo = echo();
    return cfg;
}

AppConfig AppConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    AppConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace txm
