// End-to-end checks of the txm binary: exit codes, determinism, and the
// subcommand surfaces, driven through a shell.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef TXM_CLI_PATH
#error "TXM_CLI_PATH must point at the txm binary"
#endif
#ifndef TXM_DATA_DIR
#error "TXM_DATA_DIR must point at the shipped data directory"
#endif

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "txm_cli_tests";
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const auto out_path = work_dir() / "stdout.txt";
    const auto err_path = work_dir() / "stderr.txt";
    const std::string cmd = std::string(TXM_CLI_PATH) + " " + args + " >" + out_path.string() +
                            " 2>" + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = status == -1 ? -1 : (status >> 8) & 0xFF;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string gaz_flags() {
    return std::string(" --stopwords ") + TXM_DATA_DIR + "/stopwords_es.txt --names " +
           TXM_DATA_DIR + "/names_es.txt ";
}

const char* kLexiconExampleCsv =
    "id;description;amount;date;category\n"
    "1;Compra en Pescados Diego, S.L.;-10,00;2017-09-01;Shopping\n"
    "2;Compra en supermercado Elvira Madrid 28;-20,00;2017-09-02;Shopping\n"
    "3;Compra en amazon.es;-30,00;2017-09-03;Shopping\n"
    "4;Compra en supermercado Carrefour Enero 2018;-12,00;2017-09-04;Shopping\n"
    "5;Compra en amazon.es Febrero 2018;-18,00;2017-09-05;Shopping\n"
    "6;Compra en Amazon;-25,00;2017-09-06;Shopping\n"
    "7;Pago en supermercado Elvira Alicante;-33,00;2017-09-07;Shopping\n"
    "8;Pago en supermercado El Corte Inglés Vigo;-42,00;2017-09-08;Shopping\n"
    "9;Compra en supermercado Carrefour Febrero 2018;-15,00;2017-09-09;Shopping\n"
    "10;Compra en supermercado amazon.es;-22,00;2017-09-10;Shopping\n"
    "11;Nomina mensual empresa norte;1200,00;2017-09-28;Payroll\n"
    "12;Nomina mensual empresa sur;1150,00;2017-09-28;Payroll\n";

}  // namespace

TEST_CASE("synth is deterministic per seed and validates its config") {
    const auto a = work_dir() / "synth_a.csv";
    const auto b = work_dir() / "synth_b.csv";
    CHECK(run_cli("synth --seed 7 --duplicate-rate 0.6 --records-per-category 12 --out " +
                  a.string())
              .exit_code == 0);
    CHECK(run_cli("synth --seed 7 --duplicate-rate 0.6 --records-per-category 12 --out " +
                  b.string())
              .exit_code == 0);
    CHECK(slurp(a) == slurp(b));

    // 15 default categories all present.
    const std::string csv = slurp(a);
    CHECK(csv.find("Payroll") != std::string::npos);
    CHECK(csv.find("Social security, grants and pensions") != std::string::npos);

    const auto bad = run_cli("synth --duplicate-rate 1.5 --out " + (work_dir() / "x.csv").string());
    CHECK(bad.exit_code == 1);
}

TEST_CASE("train/classify flow with bundle reuse") {
    const auto data = work_dir() / "flow.csv";
    CHECK(run_cli("synth --seed 3 --duplicate-rate 0.3 --records-per-category 15 --out " +
                  data.string())
              .exit_code == 0);

    const auto bundle = work_dir() / "flow.txm";
    const auto train = run_cli("train " + data.string() + " --out " + bundle.string() + gaz_flags());
    CHECK(train.exit_code == 0);
    CHECK(train.out.find("config:") != std::string::npos);
    CHECK(fs::exists(bundle));

    // The duplicate-heavy corpus must report a positive reduction.
    const auto red_pos = train.out.find("reduction_pct: ");
    REQUIRE(red_pos != std::string::npos);
    CHECK(std::stod(train.out.substr(red_pos + 15)) > 0.0);

    const auto out_csv = work_dir() / "flow_out.csv";
    const auto cls = run_cli("classify --bundle " + bundle.string() + " --input " + data.string() +
                             " --out " + out_csv.string() + gaz_flags());
    CHECK(cls.exit_code == 0);
    const std::string out = slurp(out_csv);
    CHECK(out.rfind("id;category;stage;confidence\n", 0) == 0);
    CHECK(out.find(";similarity;1.0000") != std::string::npos);

    // Unreadable bundle path is a data error.
    CHECK(run_cli("classify --bundle /nonexistent.txm --input " + data.string() + gaz_flags())
              .exit_code == 2);
}

TEST_CASE("classify handles novel input and empty files") {
    const auto data = work_dir() / "base.csv";
    {
        std::ofstream out(data);
        out << kLexiconExampleCsv;
    }
    const auto bundle = work_dir() / "base.txm";
    REQUIRE(run_cli("train " + data.string() + " --out " + bundle.string() + gaz_flags()).exit_code ==
            0);

    const auto novel = work_dir() / "novel.csv";
    {
        std::ofstream out(novel);
        out << "id;description;amount;date\n"
            << "n1;gimnasio cuota trimestre;-44,00;2018-01-15\n";
    }
    const auto cls = run_cli("classify --bundle " + bundle.string() + " --input " + novel.string() +
                             " --out -" + gaz_flags());
    CHECK(cls.exit_code == 0);
    CHECK(cls.out.find(";svm;") != std::string::npos);

    const auto empty = work_dir() / "empty_in.csv";
    {
        std::ofstream out(empty);
        out << "id;description;amount;date\n";
    }
    const auto empty_run = run_cli("classify --bundle " + bundle.string() + " --input " +
                                   empty.string() + " --out -" + gaz_flags());
    CHECK(empty_run.exit_code == 0);
    CHECK(empty_run.out == "id;category;stage;confidence\n");
}

TEST_CASE("train dumps the worked lexicon example") {
    const auto data = work_dir() / "lexample.csv";
    {
        std::ofstream out(data);
        out << kLexiconExampleCsv;
    }
    const auto bundle = work_dir() / "lexample.txm";
    const auto dump = work_dir() / "lexample_lexicon.txt";
    const auto train = run_cli("train " + data.string() + " --out " + bundle.string() +
                               " --dump-lexicon " + dump.string() + gaz_flags());
    REQUIRE(train.exit_code == 0);

    // The Shopping block of the dump must be exactly the worked entries.
    const std::string text = slurp(dump);
    const auto begin = text.find("# category: Shopping");
    REQUIRE(begin != std::string::npos);
    const auto end = text.find("# category:", begin + 1);
    const std::string block = text.substr(begin, end - begin);
    CHECK(block.find("unigram\tcompra\n") != std::string::npos);
    CHECK(block.find("unigram\tsupermercado\n") != std::string::npos);
    CHECK(block.find("bigram\tcompra supermercado\n") != std::string::npos);
    int entries = 0;
    for (std::size_t pos = 0; (pos = block.find('\t', pos)) != std::string::npos; ++pos) ++entries;
    CHECK(entries == 3);

    // The standalone lexicon subcommand prints the same induction.
    const auto lex = run_cli("lexicon " + data.string() + gaz_flags());
    CHECK(lex.exit_code == 0);
    CHECK(lex.out.find("unigram\tcompra\n") != std::string::npos);
    CHECK(lex.out.find("bigram\tcompra supermercado\n") != std::string::npos);
}

TEST_CASE("train rejects unlabeled data with a data-error exit") {
    const auto data = work_dir() / "unlabeled.csv";
    {
        std::ofstream out(data);
        out << "id;description;amount;date\n"
            << "u1;compra tienda;-5,00;2017-09-28\n"
            << "u2;nomina empresa;900,00;2017-09-28\n";
    }
    const auto r = run_cli("train " + data.string() + " --out " +
                           (work_dir() / "u.txm").string() + gaz_flags());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("label") != std::string::npos);
}

TEST_CASE("eval writes deterministic tables with one row per split and stage") {
    const auto data = work_dir() / "eval.csv";
    REQUIRE(run_cli("synth --seed 11 --profile disjoint --duplicate-rate 0.2 "
                    "--records-per-category 12 --out " +
                    data.string())
                .exit_code == 0);

    const auto p1 = work_dir() / "eval_run1";
    const auto p2 = work_dir() / "eval_run2";
    const std::string common = "eval " + data.string() +
                               " --splits 0.6,0.7 --samplings 1 --seed 7 --stages word,all" +
                               gaz_flags() + " --set svm.max_epochs=200 --out-prefix ";
    const auto r1 = run_cli(common + p1.string());
    const auto r2 = run_cli(common + p2.string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(p1.string() + ".tsv") == slurp(p2.string() + ".tsv"));
    CHECK(slurp(p1.string() + ".json") == slurp(p2.string() + ".json"));

    // Header + 2 splits x 2 stages.
    int lines = 0;
    std::istringstream tsv(slurp(p1.string() + ".tsv"));
    for (std::string line; std::getline(tsv, line);) ++lines;
    CHECK(lines == 1 + 4);
}

TEST_CASE("config files feed the pipeline and flag overrides win") {
    const auto data = work_dir() / "cfg_data.csv";
    REQUIRE(run_cli("synth --seed 5 --records-per-category 8 --out " + data.string()).exit_code ==
            0);
    const auto cfg = work_dir() / "demo.cfg";
    {
        std::ofstream out(cfg);
        out << "# demo\nsimilarity.threshold=0.8\nsvm.max_epochs=150\n";
    }
    const auto bundle = work_dir() / "cfg.txm";
    const auto r = run_cli("train " + data.string() + " --out " + bundle.string() + " --config " +
                           cfg.string() + " --set svm.max_epochs=99" + gaz_flags());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("similarity.threshold=0.8") != std::string::npos);
    CHECK(r.out.find("svm.max_epochs=99") != std::string::npos);  // flag beats file

    const auto bad = run_cli("train " + data.string() + " --out " + bundle.string() +
                             " --set bogus.key=1" + gaz_flags());
    CHECK(bad.exit_code == 1);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("train").exit_code == 1);         // missing required args
    CHECK(run_cli("eval missing.csv --splits nope" + gaz_flags()).exit_code == 1);
    CHECK(run_cli("synth --out /tmp/x.csv --profile banana").exit_code == 1);
}
