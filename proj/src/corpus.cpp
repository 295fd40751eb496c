#include "txm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "txm/csv.hpp"
#include "txm/rng.hpp"

namespace txm {

CategorySet default_categories() {
    return CategorySet({
        "Bank",
        "Means of transport",
        "Shopping",
        "Household expenses",
        "Taxes and charges",
        "Off-cycle income",
        "Payroll",
        "Leisure",
        "Health, sport and education",
        "Insurances",
        "Social security, grants and pensions",
        "Transfers",
        "Business and professional expenses",
        "Rentals",
        "Others",
    });
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    return s.substr(b, e - b);
}

// Strips the euro sign (UTF-8) and the plain-text currency markers.
std::string strip_currency(std::string s) {
    static const std::string kEuro = "\xE2\x82\xAC";
    for (std::size_t pos; (pos = s.find(kEuro)) != std::string::npos;) s.erase(pos, kEuro.size());
    for (const char* tag : {"EUR", "eur"}) {
        if (s.size() >= 3 && s.compare(s.size() - 3, 3, tag) == 0) s.erase(s.size() - 3);
    }
    return trim(s);
}

int parse_int_field(const std::string& s, std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return -1;
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

}  // namespace

double parse_amount(const std::string& raw, std::size_t line_no) {
    std::string s = strip_currency(trim(raw));
    if (s.empty()) throw RowError(line_no, "empty amount");
    // Accept ',' as the decimal separator; only one separator total.
    std::size_t seps = 0;
    for (char& c : s) {
        if (c == ',' || c == '.') {
            c = '.';
            ++seps;
        }
    }
    if (seps > 1) throw RowError(line_no, "unparsable amount: " + raw);
    try {
        std::size_t consumed = 0;
        const double v = std::stod(s, &consumed);
        if (consumed != s.size() || !std::isfinite(v)) {
            throw RowError(line_no, "unparsable amount: " + raw);
        }
        return v;
    } catch (const RowError&) {
        throw;
    } catch (const std::exception&) {
        throw RowError(line_no, "unparsable amount: " + raw);
    }
}

Date parse_date(const std::string& raw, std::size_t line_no) {
    const std::string s = trim(raw);
    // ISO-8601: YYYY-MM-DD with an optional time-of-day suffix, which is
    // accepted and ignored.
    if (s.size() < 10 || s[4] != '-' || s[7] != '-' ||
        (s.size() > 10 && s[10] != 'T' && s[10] != ' ' && s[10] != 't')) {
        throw RowError(line_no, "unparsable date: " + raw);
    }
    Date d;
    d.year = parse_int_field(s, 0, 4);
    d.month = parse_int_field(s, 5, 2);
    d.day = parse_int_field(s, 8, 2);
    if (d.year < 0 || d.month < 0 || d.day < 0 || !d.valid()) {
        throw RowError(line_no, "unparsable date: " + raw);
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& path, const CategorySet& categories) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("id");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);  // BOM

    const auto header = csv::split_line(line, 1);
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col.emplace(trim(header[i]), i);

    auto require = [&](const char* name) {
        auto it = col.find(name);
        if (it == col.end()) throw SchemaError(name);
        return it->second;
    };
    const std::size_t id_col = require("id");
    const std::size_t desc_col = require("description");
    const std::size_t amount_col = require("amount");
    const std::size_t date_col = require("date");
    const auto cat_it = col.find("category");
    const bool has_category = cat_it != col.end();
    const std::size_t cat_col = has_category ? cat_it->second : 0;

    Dataset ds;
    ds.categories = categories;
    std::unordered_set<std::string> seen_ids;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = csv::split_line(line, line_no);
        if (fields.size() != header.size()) {
            throw RowError(line_no, "expected " + std::to_string(header.size()) +
                                        " fields, got " + std::to_string(fields.size()));
        }
        TransactionRecord rec;
        rec.id = trim(fields[id_col]);
        if (rec.id.empty()) throw RowError(line_no, "empty id");
        if (!seen_ids.insert(rec.id).second) throw RowError(line_no, "duplicate id: " + rec.id);
        rec.description = fields[desc_col];
        rec.amount = parse_amount(fields[amount_col], line_no);
        rec.date = parse_date(fields[date_col], line_no);
        if (has_category) {
            const std::string label = trim(fields[cat_col]);
            if (!label.empty()) {
                if (!categories.index_of(label)) {
                    throw LabelError("line " + std::to_string(line_no) +
                                     ": unknown category label: " + label);
                }
                rec.category = label;
            }
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "id;description;amount;date;category\n";
    char amount_buf[64];
    for (const auto& rec : dataset.records) {
        std::snprintf(amount_buf, sizeof(amount_buf), "%.2f", rec.amount);
        out << csv::join_line({rec.id, rec.description, amount_buf, rec.date.iso(),
                               rec.category.value_or("")})
            << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset, double train_fraction,
                                          std::uint64_t seed) {
    if (dataset.records.empty()) throw DataError("cannot split an empty dataset");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie strictly between 0 and 1");
    }
    const std::size_t n = dataset.records.size();
    const auto train_count =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    SplitMix64 rng(mix_seed(seed, 0x5711ULL));
    rng.shuffle(order);

    std::vector<bool> in_train(n, false);
    for (std::size_t i = 0; i < train_count && i < n; ++i) in_train[order[i]] = true;

    Dataset train, test;
    train.categories = dataset.categories;
    test.categories = dataset.categories;
    for (std::size_t i = 0; i < n; ++i) {
        (in_train[i] ? train : test).records.push_back(dataset.records[i]);
    }
    return {std::move(train), std::move(test)};
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

const std::vector<std::string>& month_names() {
    static const std::vector<std::string> kMonths = {
        "enero", "febrero", "marzo",      "abril",   "mayo",      "junio",
        "julio", "agosto",  "septiembre", "octubre", "noviembre", "diciembre"};
    return kMonths;
}

// Uniform date in the Aug 2017 - Feb 2018 window.
Date random_date(SplitMix64& rng) {
    static const std::pair<int, int> kMonthsSpan[] = {{2017, 8},  {2017, 9}, {2017, 10},
                                                      {2017, 11}, {2017, 12}, {2018, 1},
                                                      {2018, 2}};
    const auto& [year, month] = kMonthsSpan[rng.below(std::size(kMonthsSpan))];
    Date d;
    d.year = year;
    d.month = month;
    d.day = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(Date::days_in_month(year, month))));
    return d;
}

std::string fill_slots(const std::string& tmpl, const CategoryTemplates& ct,
                       const std::vector<std::string>& names, SplitMix64& rng) {
    std::string out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            const std::size_t close = tmpl.find('}', i);
            if (close != std::string::npos) {
                const std::string slot = tmpl.substr(i + 1, close - i - 1);
                if (slot == "merchant") {
                    out += ct.merchants[rng.below(ct.merchants.size())];
                } else if (slot == "name") {
                    out += names[rng.below(names.size())];
                } else if (slot == "month") {
                    out += month_names()[rng.below(month_names().size())];
                } else if (slot == "digits") {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "%04u",
                                  static_cast<unsigned>(rng.below(10000)));
                    out += buf;
                } else {
                    throw ConfigError("unknown template slot: {" + slot + "}");
                }
                i = close + 1;
                continue;
            }
        }
        out.push_back(tmpl[i]);
        ++i;
    }
    return out;
}

std::vector<std::string> space_split(const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream is(s);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

std::string space_join(const std::vector<std::string>& toks) {
    std::string out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) out.push_back(' ');
        out += toks[i];
    }
    return out;
}

// Surface-level perturbations that leave the lowercase token set unchanged,
// so a duplicate keeps Jaccard 1.0 with its source.
std::string perturb_description(const std::string& src, SplitMix64& rng) {
    auto toks = space_split(src);
    if (toks.empty()) return src;
    const int ops = 1 + static_cast<int>(rng.below(2));
    for (int k = 0; k < ops; ++k) {
        switch (rng.below(4)) {
            case 0: {  // swap two positions
                if (toks.size() >= 2) {
                    const std::size_t a = rng.below(toks.size());
                    const std::size_t b = rng.below(toks.size());
                    std::swap(toks[a], toks[b]);
                }
                break;
            }
            case 1: {  // upper-case one token
                auto& t = toks[rng.below(toks.size())];
                for (char& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                break;
            }
            case 2: {  // decorate with punctuation that preprocessing strips
                toks[rng.below(toks.size())].insert(0, "*");
                break;
            }
            default: {  // repeat a token
                const std::size_t a = rng.below(toks.size());
                toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(a), toks[a]);
                break;
            }
        }
    }
    return space_join(toks);
}

}  // namespace

void SynthConfig::validate() const {
    if (categories.size() == 0) throw ConfigError("synthetic config needs categories");
    if (category_templates.size() != categories.size()) {
        throw ConfigError("category_templates must align with categories");
    }
    if (records_per_category.size() != categories.size()) {
        throw ConfigError("records_per_category must align with categories");
    }
    if (!(duplicate_rate >= 0.0 && duplicate_rate <= 1.0)) {
        throw ConfigError("duplicate rate must lie in [0, 1]");
    }
    for (std::size_t c = 0; c < categories.size(); ++c) {
        const auto& ct = category_templates[c];
        if (ct.templates.empty()) {
            throw ConfigError("category without templates: " + categories.label(c));
        }
        if (records_per_category[c] <= 0) {
            throw ConfigError("records_per_category must be positive");
        }
        if (!(ct.amount_lo <= ct.amount_hi)) throw ConfigError("bad amount range");
        for (const auto& t : ct.templates) {
            if (t.find("{merchant}") != std::string::npos && ct.merchants.empty()) {
                throw ConfigError("template uses {merchant} but merchant pool is empty");
            }
            if (t.find("{name}") != std::string::npos && name_pool.empty()) {
                throw ConfigError("template uses {name} but name pool is empty");
            }
        }
    }
}

Dataset generate_synthetic(const SynthConfig& config) {
    config.validate();
    Dataset ds;
    ds.categories = config.categories;
    SplitMix64 rng(mix_seed(config.seed, 0xbadc0ffeULL));
    std::uint64_t serial = 0;

    for (std::size_t c = 0; c < config.categories.size(); ++c) {
        const auto& ct = config.category_templates[c];
        const int n = config.records_per_category[c];
        const auto dup_count = std::min<std::int64_t>(
            n - 1, std::llround(config.duplicate_rate * static_cast<double>(n)));
        const auto fresh_count = static_cast<std::size_t>(n - dup_count);

        std::vector<std::size_t> fresh_indices;
        for (std::size_t i = 0; i < fresh_count; ++i) {
            TransactionRecord rec;
            char id_buf[24], ref_buf[16];
            std::snprintf(id_buf, sizeof(id_buf), "syn%07llu",
                          static_cast<unsigned long long>(++serial));
            std::snprintf(ref_buf, sizeof(ref_buf), "%06llu",
                          static_cast<unsigned long long>(serial));
            rec.id = id_buf;
            rec.description =
                fill_slots(ct.templates[rng.below(ct.templates.size())], ct, config.name_pool, rng) +
                " " + ref_buf;
            rec.amount = std::round((ct.amount_lo + (ct.amount_hi - ct.amount_lo) * rng.unit()) *
                                    100.0) /
                         100.0;
            rec.date = random_date(rng);
            rec.category = config.categories.label(c);
            fresh_indices.push_back(ds.records.size());
            ds.records.push_back(std::move(rec));
        }

        // Duplicates cluster on a handful of popular sources, mirroring how a
        // few recurring transactions dominate real statements.
        const std::size_t popular = std::max<std::size_t>(1, fresh_count / 40);
        for (std::int64_t i = 0; i < dup_count; ++i) {
            const auto& src = ds.records[fresh_indices[rng.below(popular)]];
            TransactionRecord rec;
            char id_buf[24];
            std::snprintf(id_buf, sizeof(id_buf), "syn%07llu",
                          static_cast<unsigned long long>(++serial));
            rec.id = id_buf;
            rec.description = perturb_description(src.description, rng);
            rec.amount = std::round(src.amount * (0.9 + 0.2 * rng.unit()) * 100.0) / 100.0;
            rec.date = random_date(rng);
            rec.category = src.category;
            ds.records.push_back(std::move(rec));
        }
    }
    return ds;
}

namespace {

SynthConfig base_synth_config(int records_per_category, double duplicate_rate,
                              std::uint64_t seed) {
    SynthConfig cfg;
    cfg.categories = default_categories();
    cfg.records_per_category.assign(cfg.categories.size(), records_per_category);
    cfg.duplicate_rate = duplicate_rate;
    cfg.seed = seed;
    cfg.name_pool = {"elvira", "diego", "lucia", "carmen", "pablo", "marta", "sergio", "irene"};
    return cfg;
}

}  // namespace

SynthConfig default_synth_config(int records_per_category, double duplicate_rate,
                                 std::uint64_t seed) {
    SynthConfig cfg = base_synth_config(records_per_category, duplicate_rate, seed);
    cfg.category_templates = {
        {{"Comision mantenimiento cuenta {merchant}", "Traspaso recibido cuenta {merchant}",
          "Intereses cuenta {merchant} {month}"},
         {"bancomar", "bancoluz", "bancosur", "bancorio"},
         -40.0,
         40.0},
        {{"Billete {merchant} {month}", "Abono transporte {merchant}",
          "Recarga bono {merchant} {digits}"},
         {"metrobus", "ferrocar", "taxisur", "autolux"},
         -120.0,
         -2.0},
        {{"Compra en supermercado {merchant}", "Compra en {merchant} {month}",
          "Pago en tienda {merchant} {digits}"},
         {"mercalona", "compramax", "tiendazul", "bazarcentro"},
         -300.0,
         -3.0},
        {{"Recibo {merchant} luz {month}", "Recibo agua {merchant}", "Factura gas {merchant}"},
         {"energosa", "aguasnorte", "gasiberia", "lucentia"},
         -250.0,
         -15.0},
        {{"Impuesto municipal {merchant}", "Tasa basuras {merchant} {month}",
          "Liquidacion tributo {merchant}"},
         {"tributosur", "recaudamax", "tasanorte", "fiscalia"},
         -400.0,
         -20.0},
        {{"Ingreso extraordinario {name}", "Abono devolucion {merchant}",
          "Premio sorteo {merchant} {digits}"},
         {"reembolsos", "devoluplus", "sorteomax", "bonifica"},
         30.0,
         900.0},
        {{"Nomina {merchant} {month}", "Transferencia nomina {merchant}",
          "Paga extra {merchant}"},
         {"empresur", "corpanorte", "fabricasa", "oficentro"},
         900.0,
         2400.0},
        {{"Entradas cine {merchant}", "Restaurante {merchant} {month}",
          "Suscripcion ocio {merchant}"},
         {"cinemaxia", "teatroluna", "ocioclub", "festipark"},
         -150.0,
         -5.0},
        {{"Cuota gimnasio {merchant}", "Matricula curso {merchant}",
          "Farmacia {merchant} {month}"},
         {"gimnasport", "academialfa", "farmaplus", "clinicasalud"},
         -200.0,
         -10.0},
        {{"Prima seguro hogar {merchant}", "Seguro coche {merchant} {month}",
          "Poliza anual {merchant}"},
         {"asegura", "polizamar", "segurvida", "mutualia"},
         -350.0,
         -15.0},
        {{"Pension mensual {merchant}", "Subvencion {merchant} {month}",
          "Ayuda estatal {merchant}"},
         {"seguridadsoc", "pensionpub", "becasol", "ayudaplan"},
         300.0,
         1200.0},
        {{"Transferencia recibida {name}", "Envio dinero {name} {month}",
          "Traspaso urgente {name} {digits}"},
         {"rapidpay", "movilpago"},
         -800.0,
         800.0},
        {{"Material oficina {merchant}", "Dietas viaje {merchant} {month}",
          "Cuota colegio profesional {merchant}"},
         {"papelpro", "suministra", "consultora", "imprentagil"},
         -400.0,
         -10.0},
        {{"Alquiler piso {month} {merchant}", "Renta local {merchant}",
          "Fianza vivienda {merchant} {digits}"},
         {"inmobisur", "fincaslar", "pisoscentro", "alquilomax"},
         -900.0,
         -300.0},
        {{"Cargo varios {merchant}", "Apunte {merchant} {month}", "Operacion {merchant} {digits}"},
         {"variosmix", "generica", "cajondesastre", "otroscargos"},
         -100.0,
         100.0},
    };
    return cfg;
}

SynthConfig disjoint_synth_config(int records_per_category, double duplicate_rate,
                                  std::uint64_t seed) {
    SynthConfig cfg = base_synth_config(records_per_category, duplicate_rate, seed);
    static const char* kStems[] = {"baduno", "cemila", "dofaru", "gulapo", "hinema",
                                   "joposi", "kurela", "lasimo", "mevota", "nibuca",
                                   "pofade", "quelir", "rosuga", "tebani", "volupe"};
    for (std::size_t c = 0; c < cfg.categories.size(); ++c) {
        const std::string s = kStems[c];
        CategoryTemplates ct;
        ct.templates = {s + "or " + s + "ina {merchant}",
                        s + "or " + s + "eta {merchant} " + s + "um",
                        s + "ar {merchant} " + s + "ina {digits}"};
        ct.merchants = {s + "max", s + "sur", s + "rio", s + "plus"};
        ct.amount_lo = -50.0 - 10.0 * static_cast<double>(c);
        ct.amount_hi = ct.amount_lo + 40.0;
        cfg.category_templates.push_back(std::move(ct));
    }
    return cfg;
}

}  // namespace txm
