// txm: two-stage banking-transaction description classifier.
//
// Subcommands: synth, train, classify, eval, lexicon.
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "txm/config.hpp"
#include "txm/corpus.hpp"
#include "txm/csv.hpp"
#include "txm/errors.hpp"
#include "txm/eval.hpp"
#include "txm/pipeline.hpp"

namespace {

#ifndef TXM_DEFAULT_DATA_DIR
#define TXM_DEFAULT_DATA_DIR "data"
#endif

struct CommonOpts {
    std::string config_file;
    std::vector<std::string> overrides;  // key=value
    std::string stopword_file = std::string(TXM_DEFAULT_DATA_DIR) + "/stopwords_es.txt";
    std::string names_file = std::string(TXM_DEFAULT_DATA_DIR) + "/names_es.txt";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "Configuration file (key=value lines)");
    cmd->add_option("--set", opts.overrides, "Override a config key, e.g. --set svm.c=0.5")
        ->take_all();
    cmd->add_option("--stopwords", opts.stopword_file, "Stopword list file");
    cmd->add_option("--names", opts.names_file, "Proper-name list file");
}

txm::AppConfig resolve_config(const CommonOpts& opts) {
    txm::AppConfig cfg;
    if (!opts.config_file.empty()) cfg = txm::AppConfig::from_file(opts.config_file);
    for (const auto& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw txm::ConfigError("--set expects key=value: " + kv);
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

txm::GazetteerConfig load_gazetteer(const CommonOpts& opts) {
    return txm::GazetteerConfig::load(opts.stopword_file, opts.names_file);
}

void print_train_report(const txm::TrainReport& report, const txm::CategorySet& categories,
                        const std::string& config_echo) {
    std::printf("records: %zu\n", report.total);
    std::printf("admitted: %zu\n", report.admitted);
    std::printf("skipped: %zu\n", report.skipped);
    std::printf("reduction_pct: %.2f\n", report.reduction_pct());
    std::printf("feature_dimension: %zu\n", report.feature_dimension);
    std::printf("pair_models: %zu\n", report.pair_models);
    std::printf("lexicon sizes (unigrams/bigrams):\n");
    for (std::size_t c = 0; c < categories.size(); ++c) {
        std::printf("  %s: %zu/%zu (admitted %zu)\n", categories.label(c).c_str(),
                    report.lexicon_sizes[c].first, report.lexicon_sizes[c].second,
                    report.admitted_per_category[c]);
    }
    std::printf("config:\n");
    std::istringstream lines(config_echo);
    std::string line;
    while (std::getline(lines, line)) std::printf("  %s\n", line.c_str());
}

void dump_lexicon(const txm::Lexicon& lexicon, const txm::CategorySet& categories,
                  std::ostream& out) {
    for (std::size_t c = 0; c < categories.size(); ++c) {
        out << "# category: " << categories.label(c) << "\n";
        for (const auto& u : lexicon.per_category[c].unigrams) out << "unigram\t" << u << "\n";
        for (const auto& b : lexicon.per_category[c].bigrams) out << "bigram\t" << b << "\n";
    }
}

int cmd_synth(const std::string& out_path, int records, double dup_rate, std::uint64_t seed,
              const std::string& profile) {
    txm::SynthConfig cfg;
    if (profile == "default") {
        cfg = txm::default_synth_config(records, dup_rate, seed);
    } else if (profile == "disjoint") {
        cfg = txm::disjoint_synth_config(records, dup_rate, seed);
    } else {
        throw txm::ConfigError("unknown profile: " + profile + " (expected default|disjoint)");
    }
    const txm::Dataset ds = txm::generate_synthetic(cfg);
    txm::save_dataset(ds, out_path);
    std::printf("wrote %zu records (%zu categories) to %s\n", ds.records.size(),
                ds.categories.size(), out_path.c_str());
    return 0;
}

int cmd_train(const CommonOpts& common, const std::string& dataset_path,
              const std::string& out_path, const std::string& lexicon_dump_path) {
    const txm::AppConfig app = resolve_config(common);
    const txm::GazetteerConfig gazetteer = load_gazetteer(common);
    const txm::Dataset ds = txm::load_dataset(dataset_path, txm::default_categories());

    txm::TrainReport report;
    const txm::ModelBundle bundle = txm::train_pipeline(ds, gazetteer, app.pipeline(), &report);
    txm::save_bundle(bundle, out_path);
    print_train_report(report, bundle.categories, bundle.config_echo);
    if (!lexicon_dump_path.empty()) {
        std::ofstream out(lexicon_dump_path);
        if (!out) throw txm::IoError("cannot write " + lexicon_dump_path);
        dump_lexicon(bundle.lexicon, bundle.categories, out);
    }
    std::printf("bundle: %s\n", out_path.c_str());
    return 0;
}

int cmd_classify(const CommonOpts& common, const std::string& bundle_path,
                 const std::string& input_path, const std::string& out_path) {
    const txm::GazetteerConfig gazetteer = load_gazetteer(common);
    const txm::ModelBundle bundle = txm::load_bundle(bundle_path);
    for (const auto& warning : txm::gazetteer_warnings(bundle, gazetteer)) {
        std::fprintf(stderr, "warning: %s\n", warning.c_str());
    }

    std::ifstream in(input_path);
    if (!in) throw txm::IoError("cannot open " + input_path);

    std::ostream* out = &std::cout;
    std::ofstream file_out;
    if (!out_path.empty() && out_path != "-") {
        file_out.open(out_path, std::ios::binary);
        if (!file_out) throw txm::IoError("cannot write " + out_path);
        out = &file_out;
    }

    // Streamed line-at-a-time classification; input order is preserved.
    std::string line;
    if (!std::getline(in, line)) throw txm::SchemaError("id");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = txm::csv::split_line(line, 1);
    long id_col = -1, desc_col = -1, amount_col = -1, date_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "id") id_col = static_cast<long>(i);
        else if (header[i] == "description") desc_col = static_cast<long>(i);
        else if (header[i] == "amount") amount_col = static_cast<long>(i);
        else if (header[i] == "date") date_col = static_cast<long>(i);
    }
    if (id_col < 0) throw txm::SchemaError("id");
    if (desc_col < 0) throw txm::SchemaError("description");
    if (amount_col < 0) throw txm::SchemaError("amount");
    if (date_col < 0) throw txm::SchemaError("date");

    (*out) << "id;category;stage;confidence\n";
    std::size_t line_no = 1;
    char conf_buf[32];
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = txm::csv::split_line(line, line_no);
        if (fields.size() != header.size()) {
            throw txm::RowError(line_no, "expected " + std::to_string(header.size()) +
                                             " fields, got " + std::to_string(fields.size()));
        }
        txm::TransactionRecord rec;
        rec.id = fields[static_cast<std::size_t>(id_col)];
        rec.description = fields[static_cast<std::size_t>(desc_col)];
        rec.amount = txm::parse_amount(fields[static_cast<std::size_t>(amount_col)], line_no);
        rec.date = txm::parse_date(fields[static_cast<std::size_t>(date_col)], line_no);

        const txm::Classification cls = txm::classify(bundle, gazetteer, rec);
        std::snprintf(conf_buf, sizeof(conf_buf), "%.4f", cls.confidence);
        (*out) << txm::csv::join_line(
                      {rec.id, cls.category, txm::stage_name(cls.stage), conf_buf})
               << "\n";
    }
    out->flush();
    if (!*out) throw txm::IoError("write failed");
    return 0;
}

int cmd_eval(const CommonOpts& common, const std::string& dataset_path, const std::string& splits,
             int samplings, const std::string& stages, std::uint64_t seed,
             const std::string& out_prefix) {
    const txm::AppConfig app = resolve_config(common);
    const auto split_fractions = txm::parse_fraction_list(splits);
    const auto stage_list = txm::parse_stages(stages);
    if (samplings <= 0) throw txm::ConfigError("--samplings must be positive");
    const txm::GazetteerConfig gazetteer = load_gazetteer(common);
    const txm::Dataset ds = txm::load_dataset(dataset_path, txm::default_categories());

    const auto table =
        txm::run_experiment(ds, gazetteer, app.pipeline(), split_fractions, samplings, stage_list,
                            seed);

    const std::string tsv = table.to_tsv();
    std::fputs(tsv.c_str(), stdout);
    if (!out_prefix.empty()) {
        std::ofstream tsv_out(out_prefix + ".tsv", std::ios::binary);
        std::ofstream json_out(out_prefix + ".json", std::ios::binary);
        if (!tsv_out || !json_out) throw txm::IoError("cannot write report files: " + out_prefix);
        tsv_out << tsv;
        json_out << table.to_json();
        if (!tsv_out || !json_out) throw txm::IoError("report write failed: " + out_prefix);
    }
    return 0;
}

int cmd_lexicon(const CommonOpts& common, const std::string& dataset_path,
                const std::string& out_path) {
    const txm::AppConfig app = resolve_config(common);
    const txm::GazetteerConfig gazetteer = load_gazetteer(common);
    const txm::Dataset ds = txm::load_dataset(dataset_path, txm::default_categories());

    // Same admission flow as training, so the dump matches what a trained
    // bundle would contain.
    txm::PipelineConfig cfg = app.pipeline();
    txm::SimilarityStore store(cfg.similarity_threshold);
    std::vector<txm::PreprocessedText> texts;
    std::vector<std::size_t> labels;
    for (const auto& rec : ds.records) {
        if (!rec.category) throw txm::DataError("lexicon induction requires labels");
        auto text = txm::preprocess(rec.description, gazetteer);
        const auto idx = ds.categories.index_of(*rec.category);
        if (!idx) throw txm::LabelError("unknown category label: " + *rec.category);
        if (store.admit_training(txm::SetSignature::from_text(text), *idx).admitted) {
            texts.push_back(std::move(text));
            labels.push_back(*idx);
        }
    }
    const txm::Lexicon lexicon = txm::build_lexica(texts, labels, ds.categories.size(),
                                                   cfg.lexicon_unigram_min, cfg.lexicon_bigram_min);
    if (out_path.empty() || out_path == "-") {
        dump_lexicon(lexicon, ds.categories, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw txm::IoError("cannot write " + out_path);
        dump_lexicon(lexicon, ds.categories, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage short-text classifier for banking transaction descriptions"};
    app.require_subcommand(1);

    CommonOpts common;

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic labeled corpus");
    std::string synth_out;
    int synth_records = 200;
    double synth_dup = 0.0;
    std::uint64_t synth_seed = 1;
    std::string synth_profile = "default";
    synth->add_option("--out", synth_out, "Output CSV path")->required();
    synth->add_option("--records-per-category", synth_records, "Records per category");
    synth->add_option("--duplicate-rate", synth_dup, "Fraction of near-duplicate records [0,1]");
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_option("--profile", synth_profile, "Template profile: default|disjoint");

    // train
    auto* train = app.add_subcommand("train", "Train a model bundle from a labeled CSV");
    std::string train_dataset, train_out, train_lexicon_dump;
    train->add_option("dataset", train_dataset, "Labeled CSV file")->required();
    train->add_option("--out", train_out, "Output bundle path (.txm)")->required();
    train->add_option("--dump-lexicon", train_lexicon_dump, "Also write the induced lexica");
    add_common(train, common);

    // classify
    auto* classify = app.add_subcommand("classify", "Classify records with a trained bundle");
    std::string cls_bundle, cls_input, cls_out = "-";
    classify->add_option("--bundle", cls_bundle, "Bundle file (.txm)")->required();
    classify->add_option("--input", cls_input, "Input CSV (category column not needed)")
        ->required();
    classify->add_option("--out", cls_out, "Output CSV path ('-' for stdout)");
    add_common(classify, common);

    // eval
    auto* eval = app.add_subcommand("eval", "Run repeated-split ablation experiments");
    std::string eval_dataset, eval_splits = "0.3,0.4,0.6,0.7", eval_stages, eval_prefix;
    int eval_samplings = 5;
    std::uint64_t eval_seed = 1;
    eval->add_option("dataset", eval_dataset, "Labeled CSV file")->required();
    eval->add_option("--splits", eval_splits, "Comma-separated train fractions");
    eval->add_option("--samplings", eval_samplings, "Random samplings per split");
    eval->add_option("--stages", eval_stages, "Comma-separated feature stages");
    eval->add_option("--seed", eval_seed, "Base seed");
    eval->add_option("--out-prefix", eval_prefix, "Write PREFIX.tsv and PREFIX.json");
    add_common(eval, common);

    // lexicon
    auto* lexicon = app.add_subcommand("lexicon", "Induce and dump the per-category lexica");
    std::string lex_dataset, lex_out = "-";
    lexicon->add_option("dataset", lex_dataset, "Labeled CSV file")->required();
    lexicon->add_option("--out", lex_out, "Output path ('-' for stdout)");
    add_common(lexicon, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(synth_out, synth_records, synth_dup, synth_seed, synth_profile);
        }
        if (train->parsed()) return cmd_train(common, train_dataset, train_out, train_lexicon_dump);
        if (classify->parsed()) return cmd_classify(common, cls_bundle, cls_input, cls_out);
        if (eval->parsed()) {
            const std::string stages = eval_stages.empty()
                                           ? "word,word+lex,word+lex+amount+date,all"
                                           : eval_stages;
            return cmd_eval(common, eval_dataset, eval_splits, eval_samplings, stages, eval_seed,
                            eval_prefix);
        }
        if (lexicon->parsed()) return cmd_lexicon(common, lex_dataset, lex_out);
        std::fprintf(stderr, "error: no subcommand\n");
        return 1;
    } catch (const txm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const txm::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
