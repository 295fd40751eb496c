#include "txm/eval.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "txm/errors.hpp"
#include "txm/rng.hpp"

namespace txm {

ConfusionCounts confusion(const std::vector<std::size_t>& predicted,
                          const std::vector<std::size_t>& gold, std::size_t category_count) {
    if (predicted.size() != gold.size()) {
        throw DataError("prediction and gold label sequences differ in length");
    }
    ConfusionCounts counts;
    counts.per_class.resize(category_count);
    counts.total = predicted.size();
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] >= category_count || gold[i] >= category_count) {
            throw DataError("label index out of range");
        }
        for (std::size_t c = 0; c < category_count; ++c) {
            const bool is_pred = predicted[i] == c;
            const bool is_gold = gold[i] == c;
            auto& pc = counts.per_class[c];
            if (is_pred && is_gold) ++pc.tp;
            else if (is_pred && !is_gold) ++pc.fp;
            else if (!is_pred && is_gold) ++pc.fn;
            else ++pc.tn;
        }
    }
    return counts;
}

MetricsReport metrics(const ConfusionCounts& counts) {
    MetricsReport report;
    report.per_class.resize(counts.per_class.size());
    double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
    for (std::size_t c = 0; c < counts.per_class.size(); ++c) {
        const auto& pc = counts.per_class[c];
        auto& m = report.per_class[c];
        const double tp = static_cast<double>(pc.tp);
        m.precision = (pc.tp + pc.fp) == 0 ? 0.0 : tp / static_cast<double>(pc.tp + pc.fp);
        m.recall = (pc.tp + pc.fn) == 0 ? 0.0 : tp / static_cast<double>(pc.tp + pc.fn);
        m.f1 = (m.precision + m.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        m.support = pc.tp + pc.fn;
        p_sum += m.precision;
        r_sum += m.recall;
        f_sum += m.f1;
    }
    const double k = static_cast<double>(counts.per_class.size());
    if (k > 0) {
        report.macro_precision = p_sum / k;
        report.macro_recall = r_sum / k;
        report.macro_f1 = f_sum / k;
    }
    return report;
}

std::vector<ExperimentStage> default_stages() {
    FeatureGroups words = FeatureGroups::only_words();
    FeatureGroups words_lex = words;
    words_lex.lexica = true;
    FeatureGroups words_lex_meta = words_lex;
    words_lex_meta.amount = true;
    words_lex_meta.date = true;
    return {
        {"word", words},
        {"word+lex", words_lex},
        {"word+lex+amount+date", words_lex_meta},
        {"all", FeatureGroups::all()},
    };
}

namespace {

struct Accumulator {
    std::vector<double> values;
    void add(double v) { values.push_back(v); }
    double mean() const {
        if (values.empty()) return 0.0;
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    double stdev() const {  // sample standard deviation
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double s = 0.0;
        for (double v : values) s += (v - m) * (v - m);
        return std::sqrt(s / static_cast<double>(values.size() - 1));
    }
};

std::string format_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string ExperimentTable::to_tsv() const {
    std::string out =
        "split\tstage\tp_macro\tp_std\tr_macro\tr_std\tf_macro\tf_std\treduction_pct\n";
    for (const auto& row : rows) {
        out += format_double(row.split, 2) + "\t" + row.stage + "\t" +
               format_double(row.p_mean, 4) + "\t" + format_double(row.p_std, 4) + "\t" +
               format_double(row.r_mean, 4) + "\t" + format_double(row.r_std, 4) + "\t" +
               format_double(row.f_mean, 4) + "\t" + format_double(row.f_std, 4) + "\t" +
               format_double(row.reduction_mean, 2) + "\n";
    }
    return out;
}

std::string ExperimentTable::to_json() const {
    nlohmann::ordered_json doc;
    doc["splits"] = splits;
    doc["samplings"] = samplings;
    doc["seed"] = seed;
    doc["config"] = config_echo;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        doc["rows"].push_back({{"split", row.split},
                               {"stage", row.stage},
                               {"p_macro", row.p_mean},
                               {"p_std", row.p_std},
                               {"r_macro", row.r_mean},
                               {"r_std", row.r_std},
                               {"f_macro", row.f_mean},
                               {"f_std", row.f_std},
                               {"reduction_pct", row.reduction_mean}});
    }
    return doc.dump(2) + "\n";
}

ExperimentTable run_experiment(const Dataset& dataset, const GazetteerConfig& gazetteer,
                               const PipelineConfig& base_config,
                               const std::vector<double>& splits, int samplings,
                               const std::vector<ExperimentStage>& stages,
                               std::uint64_t seed_base) {
    if (dataset.records.empty()) throw DataError("experiment requires a labeled dataset");
    if (samplings <= 0) throw ConfigError("samplings must be positive");
    if (splits.empty()) throw ConfigError("at least one split fraction is required");
    if (stages.empty()) throw ConfigError("at least one feature stage is required");

    ExperimentTable table;
    table.splits = splits;
    table.samplings = samplings;
    table.seed = seed_base;
    table.config_echo = base_config.echo;

    for (std::size_t si = 0; si < splits.size(); ++si) {
        std::vector<Accumulator> p_acc(stages.size()), r_acc(stages.size()), f_acc(stages.size()),
            red_acc(stages.size());

        for (int sampling = 0; sampling < samplings; ++sampling) {
            const std::uint64_t split_seed =
                mix_seed(seed_base, si + 1, static_cast<std::uint64_t>(sampling + 1));
            const auto [train, test] = split_dataset(dataset, splits[si], split_seed);

            for (std::size_t st = 0; st < stages.size(); ++st) {
                PipelineConfig cfg = base_config;
                cfg.groups = stages[st].groups;
                TrainReport report;
                const ModelBundle bundle = train_pipeline(train, gazetteer, cfg, &report);

                std::vector<std::size_t> predicted, gold;
                predicted.reserve(test.records.size());
                gold.reserve(test.records.size());
                for (const auto& rec : test.records) {
                    if (!rec.category) throw DataError("test record without label: " + rec.id);
                    gold.push_back(*dataset.categories.index_of(*rec.category));
                    const Classification cls = classify(bundle, gazetteer, rec);
                    predicted.push_back(*dataset.categories.index_of(cls.category));
                }
                const MetricsReport m = metrics(confusion(predicted, gold, dataset.categories.size()));
                p_acc[st].add(m.macro_precision);
                r_acc[st].add(m.macro_recall);
                f_acc[st].add(m.macro_f1);
                red_acc[st].add(report.reduction_pct());
            }
        }

        for (std::size_t st = 0; st < stages.size(); ++st) {
            ExperimentRow row;
            row.split = splits[si];
            row.stage = stages[st].name;
            row.p_mean = p_acc[st].mean();
            row.p_std = p_acc[st].stdev();
            row.r_mean = r_acc[st].mean();
            row.r_std = r_acc[st].stdev();
            row.f_mean = f_acc[st].mean();
            row.f_std = f_acc[st].stdev();
            row.reduction_mean = red_acc[st].mean();
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace txm
