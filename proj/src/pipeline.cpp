#include "txm/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "txm/errors.hpp"
#include "txm/serialize.hpp"

namespace txm {

const char* stage_name(Stage stage) {
    return stage == Stage::SimilarityHit ? "similarity" : "svm";
}

ModelBundle train_pipeline(const Dataset& train, const GazetteerConfig& gazetteer,
                           const PipelineConfig& config, TrainReport* report) {
    if (train.records.empty()) throw DataError("training requires a non-empty dataset");
    const std::size_t k = train.categories.size();

    std::vector<std::size_t> labels;
    labels.reserve(train.records.size());
    for (const auto& rec : train.records) {
        if (!rec.category) throw DataError("training requires labels (record " + rec.id + ")");
        const auto idx = train.categories.index_of(*rec.category);
        if (!idx) throw LabelError("unknown category label: " + *rec.category);
        labels.push_back(*idx);
    }

    // Stage 1 build: admit in dataset order; near-duplicates of an already
    // admitted same-category entry are dropped from everything downstream.
    SimilarityStore store(config.similarity_threshold);
    std::vector<TransactionRecord> admitted_records;
    std::vector<PreprocessedText> admitted_texts;
    std::vector<std::size_t> admitted_labels;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < train.records.size(); ++i) {
        PreprocessedText text = preprocess(train.records[i].description, gazetteer);
        const auto result = store.admit_training(SetSignature::from_text(text), labels[i]);
        if (result.admitted) {
            admitted_records.push_back(train.records[i]);
            admitted_texts.push_back(std::move(text));
            admitted_labels.push_back(labels[i]);
        } else {
            ++skipped;
        }
    }

    Lexicon lexicon = build_lexica(admitted_texts, admitted_labels, k,
                                   config.lexicon_unigram_min, config.lexicon_bigram_min);

    ModelBundle bundle;
    bundle.stopword_digest = gazetteer.stopword_digest;
    bundle.names_digest = gazetteer.names_digest;
    bundle.categories = train.categories;
    bundle.config_echo = config.echo;
    bundle.vectorizer =
        fit_vectorizer(admitted_records, admitted_texts, lexicon, train.categories, config.groups,
                       config.word_orders, config.char_orders, config.amount_edges,
                       config.date_windows);
    bundle.lexicon = std::move(lexicon);

    std::vector<FeatureVector> vectors;
    vectors.reserve(admitted_records.size());
    for (std::size_t i = 0; i < admitted_records.size(); ++i) {
        vectors.push_back(vectorize(bundle.vectorizer, admitted_records[i], admitted_texts[i]));
    }
    bundle.ovo = train_ovo(vectors, admitted_labels, train.categories, bundle.vectorizer.dimension,
                           config.svm);
    bundle.store = std::move(store);

    if (report) {
        report->total = train.records.size();
        report->admitted = admitted_records.size();
        report->skipped = skipped;
        report->admitted_per_category.assign(k, 0);
        for (const auto lab : admitted_labels) ++report->admitted_per_category[lab];
        report->lexicon_sizes.clear();
        for (const auto& cat : bundle.lexicon.per_category) {
            report->lexicon_sizes.emplace_back(cat.unigrams.size(), cat.bigrams.size());
        }
        report->feature_dimension = bundle.vectorizer.dimension;
        report->pair_models = bundle.ovo.models.size();
    }
    return bundle;
}

Classification classify(const ModelBundle& bundle, const GazetteerConfig& gazetteer,
                        const TransactionRecord& record) {
    const PreprocessedText text = preprocess(record.description, gazetteer);
    const auto hit = bundle.store.first_stage(SetSignature::from_text(text));
    if (hit) {
        return {bundle.categories.label(hit->category), Stage::SimilarityHit, hit->similarity};
    }
    const FeatureVector vec = vectorize(bundle.vectorizer, record, text);
    const VoteResult vote = predict(bundle.ovo, vec);
    const double k = static_cast<double>(bundle.categories.size());
    const double confidence = static_cast<double>(vote.votes[vote.category]) / (k - 1.0);
    return {bundle.categories.label(vote.category), Stage::SvmVote, confidence};
}

// ---------------------------------------------------------------------------
// Bundle format: "TXMB" magic, u32 version, u32 section count, then
// length-prefixed sections (u32 tag, u64 size, payload).

namespace {

constexpr char kMagic[4] = {'T', 'X', 'M', 'B'};

enum SectionTag : std::uint32_t {
    kMeta = 1,
    kCategories = 2,
    kStore = 3,
    kLexicon = 4,
    kVectorizer = 5,
    kOvo = 6,
};

void write_section(BinWriter& out, std::uint32_t tag, const std::string& payload) {
    out.u32(tag);
    out.u64(payload.size());
    out.raw(payload);
}

std::string write_meta(const ModelBundle& b) {
    BinWriter w;
    w.u64(b.stopword_digest);
    w.u64(b.names_digest);
    w.str(b.config_echo);
    return w.take();
}

std::string write_categories(const CategorySet& cats) {
    BinWriter w;
    w.u32(static_cast<std::uint32_t>(cats.size()));
    for (const auto& label : cats.labels()) w.str(label);
    return w.take();
}

std::string write_store(const SimilarityStore& store) {
    BinWriter w;
    w.f64(store.threshold());
    w.u64(store.size());
    for (const auto& entry : store.entries()) {
        w.u32(static_cast<std::uint32_t>(entry.category));
        w.u64(entry.signature.tokens.size());
        for (const auto& tok : entry.signature.tokens) w.str(tok);
    }
    return w.take();
}

std::string write_lexicon(const Lexicon& lex) {
    BinWriter w;
    w.i32(lex.unigram_min);
    w.i32(lex.bigram_min);
    w.u64(lex.per_category.size());
    for (const auto& cat : lex.per_category) {
        w.u64(cat.unigrams.size());
        for (const auto& u : cat.unigrams) w.str(u);
        w.u64(cat.bigrams.size());
        for (const auto& b : cat.bigrams) w.str(b);
    }
    return w.take();
}

std::string write_vectorizer(const VectorizerModel& v) {
    BinWriter w;
    w.u8(v.groups.lexica);
    w.u8(v.groups.amount);
    w.u8(v.groups.date);
    w.u8(v.groups.word_ngrams);
    w.u8(v.groups.char_ngrams);
    w.i32(v.word_orders.lo);
    w.i32(v.word_orders.hi);
    w.i32(v.char_orders.lo);
    w.i32(v.char_orders.hi);
    w.u64(v.amount_edges.size());
    for (double e : v.amount_edges) w.f64(e);
    w.u64(v.date_windows.size());
    for (int d : v.date_windows) w.i32(d);
    w.u64(v.word_vocab.size());
    for (const auto& [gram, idx] : v.word_vocab) {
        w.str(gram);
        w.u32(idx);
    }
    w.u64(v.char_vocab.size());
    for (const auto& [gram, idx] : v.char_vocab) {
        w.str(gram);
        w.u32(idx);
    }
    return w.take();
}

std::string write_ovo(const OvoModel& ovo) {
    BinWriter w;
    w.u64(ovo.dimension);
    w.u64(ovo.train_counts.size());
    for (const auto c : ovo.train_counts) w.u64(c);
    w.u64(ovo.models.size());
    for (const auto& m : ovo.models) {
        w.u32(m.category_a);
        w.u32(m.category_b);
        w.f64(m.bias);
        w.u64(m.weights.size());
        for (double v : m.weights) w.f64(v);
    }
    return w.take();
}

void read_meta(BinReader r, ModelBundle& b) {
    b.stopword_digest = r.u64();
    b.names_digest = r.u64();
    b.config_echo = r.str();
}

CategorySet read_categories(BinReader r) {
    const std::uint32_t n = r.u32();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) labels.push_back(r.str());
    return CategorySet(std::move(labels));
}

SimilarityStore read_store(BinReader r) {
    const double threshold = r.f64();
    SimilarityStore store(threshold);
    const std::uint64_t n = r.u64();
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint32_t category = r.u32();
        const std::uint64_t tokens = r.u64();
        SetSignature sig;
        for (std::uint64_t t = 0; t < tokens; ++t) sig.tokens.insert(r.str());
        store.restore_entry(std::move(sig), category);
    }
    return store;
}

Lexicon read_lexicon(BinReader r) {
    Lexicon lex;
    lex.unigram_min = r.i32();
    lex.bigram_min = r.i32();
    const std::uint64_t k = r.u64();
    lex.per_category.resize(k);
    for (std::uint64_t c = 0; c < k; ++c) {
        const std::uint64_t nu = r.u64();
        for (std::uint64_t i = 0; i < nu; ++i) lex.per_category[c].unigrams.insert(r.str());
        const std::uint64_t nb = r.u64();
        for (std::uint64_t i = 0; i < nb; ++i) lex.per_category[c].bigrams.insert(r.str());
    }
    return lex;
}

VectorizerModel read_vectorizer(BinReader r) {
    VectorizerModel v;
    v.groups.lexica = r.u8() != 0;
    v.groups.amount = r.u8() != 0;
    v.groups.date = r.u8() != 0;
    v.groups.word_ngrams = r.u8() != 0;
    v.groups.char_ngrams = r.u8() != 0;
    v.word_orders.lo = r.i32();
    v.word_orders.hi = r.i32();
    v.char_orders.lo = r.i32();
    v.char_orders.hi = r.i32();
    const std::uint64_t ne = r.u64();
    for (std::uint64_t i = 0; i < ne; ++i) v.amount_edges.push_back(r.f64());
    const std::uint64_t nd = r.u64();
    for (std::uint64_t i = 0; i < nd; ++i) v.date_windows.push_back(r.i32());
    const std::uint64_t nw = r.u64();
    for (std::uint64_t i = 0; i < nw; ++i) {
        std::string gram = r.str();
        v.word_vocab.emplace(std::move(gram), r.u32());
    }
    const std::uint64_t nc = r.u64();
    for (std::uint64_t i = 0; i < nc; ++i) {
        std::string gram = r.str();
        v.char_vocab.emplace(std::move(gram), r.u32());
    }
    return v;
}

OvoModel read_ovo(BinReader r) {
    OvoModel ovo;
    ovo.dimension = r.u64();
    const std::uint64_t k = r.u64();
    for (std::uint64_t i = 0; i < k; ++i) ovo.train_counts.push_back(r.u64());
    const std::uint64_t nm = r.u64();
    for (std::uint64_t i = 0; i < nm; ++i) {
        BinaryLinearModel m;
        m.category_a = r.u32();
        m.category_b = r.u32();
        m.bias = r.f64();
        const std::uint64_t nw = r.u64();
        m.weights.reserve(nw);
        for (std::uint64_t j = 0; j < nw; ++j) m.weights.push_back(r.f64());
        ovo.models.push_back(std::move(m));
    }
    return ovo;
}

}  // namespace

std::string serialize_bundle(const ModelBundle& bundle) {
    BinWriter out;
    out.raw(std::string_view(kMagic, 4));
    out.u32(bundle.format_version);
    out.u32(6);  // section count
    write_section(out, kMeta, write_meta(bundle));
    write_section(out, kCategories, write_categories(bundle.categories));
    write_section(out, kStore, write_store(bundle.store));
    write_section(out, kLexicon, write_lexicon(bundle.lexicon));
    write_section(out, kVectorizer, write_vectorizer(bundle.vectorizer));
    write_section(out, kOvo, write_ovo(bundle.ovo));
    return out.take();
}

ModelBundle deserialize_bundle(std::string_view bytes) {
    if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kMagic, 4)) {
        throw CorruptBundleError("not a model bundle (bad magic)");
    }
    BinReader reader(bytes.substr(4));
    const std::uint32_t version = reader.u32();
    if (version != kBundleFormatVersion) {
        throw VersionError("unsupported bundle format version " + std::to_string(version) +
                           " (expected " + std::to_string(kBundleFormatVersion) + ")");
    }
    const std::uint32_t sections = reader.u32();

    ModelBundle bundle;
    bundle.format_version = version;
    bool have[7] = {false};
    for (std::uint32_t s = 0; s < sections; ++s) {
        const std::uint32_t tag = reader.u32();
        const std::uint64_t size = reader.u64();
        if (size > reader.remaining()) throw CorruptBundleError("truncated section");
        const std::string payload = reader.bytes(size);
        BinReader section(payload);
        switch (tag) {
            case kMeta: read_meta(section, bundle); break;
            case kCategories: bundle.categories = read_categories(section); break;
            case kStore: bundle.store = read_store(section); break;
            case kLexicon: bundle.lexicon = read_lexicon(section); break;
            case kVectorizer: bundle.vectorizer = read_vectorizer(section); break;
            case kOvo: bundle.ovo = read_ovo(section); break;
            default: throw CorruptBundleError("unknown section tag " + std::to_string(tag));
        }
        if (tag <= 6) have[tag] = true;
    }
    for (std::uint32_t tag = 1; tag <= 6; ++tag) {
        if (!have[tag]) throw CorruptBundleError("missing section " + std::to_string(tag));
    }

    bundle.vectorizer.lexicon = bundle.lexicon;
    bundle.vectorizer.categories = bundle.categories;
    bundle.vectorizer.assign_layout();
    bundle.ovo.categories = bundle.categories;
    return bundle;
}

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    const std::string bytes = serialize_bundle(bundle);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

ModelBundle load_bundle(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_bundle(buf.str());
}

std::vector<std::string> gazetteer_warnings(const ModelBundle& bundle,
                                            const GazetteerConfig& gazetteer) {
    std::vector<std::string> warnings;
    if (bundle.stopword_digest != gazetteer.stopword_digest) {
        warnings.push_back("stopword list differs from the one the bundle was trained with");
    }
    if (bundle.names_digest != gazetteer.names_digest) {
        warnings.push_back("name list differs from the one the bundle was trained with");
    }
    return warnings;
}

}  // namespace txm
