#include <doctest.h>

#include <map>

#include "oracle_helpers.hpp"
#include "txm/lexicon.hpp"
#include "txm/rng.hpp"

using namespace txm;

namespace {

const std::vector<std::string>& example_entries() {
    static const std::vector<std::string> entries = {
        "Compra en Pescados Diego, S.L.",
        "Compra en supermercado Elvira Madrid 28",
        "Compra en amazon.es",
        "Compra en supermercado Carrefour Enero 2018",
        "Compra en amazon.es Febrero 2018",
        "Compra en Amazon",
        "Pago en supermercado Elvira Alicante",
        "Pago en supermercado El Corte Inglés Vigo",
        "Compra en supermercado Carrefour Febrero 2018",
        "Compra en supermercado amazon.es",
    };
    return entries;
}

std::vector<PreprocessedText> preprocess_all(const std::vector<std::string>& descs) {
    std::vector<PreprocessedText> texts;
    for (const auto& d : descs) texts.push_back(preprocess(d, oracle::gazetteer()));
    return texts;
}

}  // namespace

TEST_CASE("ten-entry worked example induces exactly compra/supermercado") {
    const auto texts = preprocess_all(example_entries());
    const std::vector<std::size_t> labels(texts.size(), 0);
    const Lexicon lex = build_lexica(texts, labels, 3);

    CHECK(lex.per_category[0].unigrams == std::set<std::string>{"compra", "supermercado"});
    CHECK(lex.per_category[0].bigrams == std::set<std::string>{"compra supermercado"});
    CHECK(lex.per_category[1].unigrams.empty());
    CHECK(lex.per_category[2].bigrams.empty());
}

TEST_CASE("lexicon term stream strips non-letters and drops short tokens") {
    const auto text = preprocess("Compra en amazon.es 2018 S.L. x Elvira", oracle::gazetteer());
    // en -> placeholder, amazon.es -> amazones, 2018 -> dropped, S.L. -> sl,
    // x -> single letter dropped, Elvira -> name tag dropped.
    CHECK(lexicon_terms(text) == std::vector<std::string>{"compra", "amazones", "sl"});
}

TEST_CASE("threshold boundaries are inclusive") {
    std::vector<std::string> descs;
    for (int i = 0; i < 5; ++i) descs.push_back("cinco");
    for (int i = 0; i < 4; ++i) descs.push_back("cuatro");
    for (int i = 0; i < 3; ++i) descs.push_back("parejauno parejados");
    for (int i = 0; i < 2; ++i) descs.push_back("solouna solodos");
    const auto texts = preprocess_all(descs);
    const Lexicon lex = build_lexica(texts, std::vector<std::size_t>(texts.size(), 0), 1);

    CHECK(lex.per_category[0].unigrams.count("cinco") == 1);
    CHECK(lex.per_category[0].unigrams.count("cuatro") == 0);
    CHECK(lex.per_category[0].bigrams.count("parejauno parejados") == 1);
    CHECK(lex.per_category[0].bigrams.count("solouna solodos") == 0);
}

TEST_CASE("empty training slice yields empty lexica") {
    const Lexicon lex = build_lexica({}, {}, 4);
    for (const auto& cat : lex.per_category) {
        CHECK(cat.unigrams.empty());
        CHECK(cat.bigrams.empty());
    }
}

TEST_CASE("bigram adjacency spans removed positions") {
    // "en" sits between the pair in every entry yet the bigram survives.
    std::vector<std::string> descs(3, "compra en supermercado");
    const auto texts = preprocess_all(descs);
    const Lexicon lex = build_lexica(texts, std::vector<std::size_t>(texts.size(), 0), 1);
    CHECK(lex.per_category[0].bigrams.count("compra supermercado") == 1);
}

TEST_CASE("lexicon_counts on the worked lexicon") {
    const auto texts = preprocess_all(example_entries());
    const Lexicon lex = build_lexica(texts, std::vector<std::size_t>(texts.size(), 0), 2);

    SUBCASE("hand-traced counts") {
        const auto hits =
            lexicon_counts(preprocess("Compra en supermercado Carrefour", oracle::gazetteer()), lex);
        CHECK(hits[0].unigrams == 2);
        CHECK(hits[0].bigrams == 1);
        CHECK(hits[1].unigrams == 0);
        CHECK(hits[1].bigrams == 0);
    }
    SUBCASE("empty text") {
        const auto hits = lexicon_counts(preprocess("", oracle::gazetteer()), lex);
        CHECK(hits[0].unigrams == 0);
        CHECK(hits[0].bigrams == 0);
    }
    SUBCASE("no lexicon words") {
        const auto hits = lexicon_counts(preprocess("nomina empresa central", oracle::gazetteer()), lex);
        CHECK(hits[0].unigrams == 0);
        CHECK(hits[0].bigrams == 0);
    }
    SUBCASE("multiplicity counts") {
        const auto hits =
            lexicon_counts(preprocess("compra compra supermercado", oracle::gazetteer()), lex);
        CHECK(hits[0].unigrams == 3);
        CHECK(hits[0].bigrams == 1);  // only the adjacent (compra, supermercado)
    }
}

namespace {

std::string random_word(SplitMix64& rng) {
    static const std::vector<std::string> words = {"pago",  "recibo", "luz",  "gas",   "agua",
                                                   "cuota", "tienda", "cine", "museo", "bono"};
    return words[rng.below(words.size())];
}

}  // namespace

TEST_CASE("threshold exactness against a brute recount") {
    SplitMix64 rng(4242);
    std::vector<std::string> descs;
    for (int i = 0; i < 60; ++i) {
        std::string d = random_word(rng);
        const std::size_t len = 1 + rng.below(4);
        for (std::size_t j = 0; j < len; ++j) d += " " + random_word(rng);
        descs.push_back(d);
    }
    const auto texts = preprocess_all(descs);
    const std::vector<std::size_t> labels(texts.size(), 0);
    const Lexicon lex = build_lexica(texts, labels, 1);

    std::map<std::string, int> uni, bi;
    for (const auto& t : texts) {
        const auto terms = lexicon_terms(t);
        for (const auto& w : terms) ++uni[w];
        for (std::size_t j = 0; j + 1 < terms.size(); ++j) ++bi[terms[j] + " " + terms[j + 1]];
    }
    for (const auto& [w, n] : uni) {
        CHECK(lex.per_category[0].unigrams.count(w) == (n >= 5 ? 1u : 0u));
    }
    for (const auto& [p, n] : bi) {
        CHECK(lex.per_category[0].bigrams.count(p) == (n >= 3 ? 1u : 0u));
    }
}

TEST_CASE("entries are alphabetic multi-letter; counts only grow") {
    SplitMix64 rng(77);
    std::vector<std::string> descs;
    for (int i = 0; i < 40; ++i) {
        descs.push_back(random_word(rng) + " 123 x " + random_word(rng) + "! " + random_word(rng));
    }
    const auto texts = preprocess_all(descs);
    const std::vector<std::size_t> labels(texts.size(), 0);
    const Lexicon small = build_lexica(
        {texts.begin(), texts.begin() + 20}, {labels.begin(), labels.begin() + 20}, 1);
    const Lexicon full = build_lexica(texts, labels, 1);

    for (const auto& u : full.per_category[0].unigrams) {
        CHECK(u.size() >= 2);
        for (char32_t cp : utf8::decode(u)) CHECK(utf8::is_letter(cp));
    }
    for (const auto& b : full.per_category[0].bigrams) {
        const auto space = b.find(' ');
        REQUIRE(space != std::string::npos);
        CHECK(space >= 2);
        CHECK(b.size() - space - 1 >= 2);
    }
    // Monotonicity: nothing admitted from the prefix disappears with more data.
    for (const auto& u : small.per_category[0].unigrams) {
        CHECK(full.per_category[0].unigrams.count(u) == 1);
    }
    for (const auto& b : small.per_category[0].bigrams) {
        CHECK(full.per_category[0].bigrams.count(b) == 1);
    }
}
