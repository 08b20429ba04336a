#include "termbench/cli.hpp"

#include <doctest.h>

#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "termbench/corpus.hpp"
#include "termbench/error.hpp"
#include "termbench/gold.hpp"
#include "termbench/io_util.hpp"
#include "test_util.hpp"

using namespace termbench;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"termbench"};
  for (const auto& arg : args) argv.push_back(arg.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

// run() prints straight to std::cout; tests swap the buffer out.
class CaptureStdout {
 public:
  CaptureStdout() : old_(std::cout.rdbuf(buffer_.rdbuf())) {}
  ~CaptureStdout() { std::cout.rdbuf(old_); }
  std::string text() const { return buffer_.str(); }

 private:
  std::stringstream buffer_;
  std::streambuf* old_;
};

const char* kFullConfig = R"({
  "corpus_root": "corpus",
  "language": "ru",
  "method": "llm",
  "output_dir": "outdir",
  "gold": "gold.tsv",
  "ks": [5, 10],
  "top_n": 25,
  "jobs": 2,
  "seed": 7,
  "clean_mode": "llm",
  "stopwords": "stop.txt",
  "plural_exceptions": "plural.txt",
  "strip_charset": "charset.txt",
  "stat": {
    "min_n": 2,
    "max_n": 4,
    "min_freq": 3,
    "stopword_policy": "any",
    "prune_nested": false
  },
  "llm": {
    "max_rounds": 3,
    "min_new_per_round": 2,
    "grounding": false,
    "retry_limit": 1,
    "chunk_size": 500,
    "mock_script": "script.json",
    "model": "local-model",
    "temperature": 0.5
  },
  "clean_guard": {
    "retention_threshold": 0.5,
    "novelty_threshold": 0.2,
    "retry_limit": 3
  },
  "templates": {
    "extraction": "X {text}{exclusions}",
    "definition": "D {term}",
    "clean": "C {text}"
  }
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("a full config file populates every field") {
  const auto config = run_config_from_json(kFullConfig, "full.json");
  CHECK(config.corpus_root == "corpus");
  CHECK(config.language == "ru");
  CHECK(config.method == "llm");
  CHECK(config.output_dir == "outdir");
  CHECK(config.gold_path == "gold.tsv");
  CHECK(config.ks == std::vector<int>{5, 10});
  CHECK(config.top_n == 25);
  CHECK(config.jobs == 2);
  CHECK(config.seed == 7);
  CHECK(config.clean_mode == "llm");
  CHECK(config.stopwords_path == "stop.txt");
  CHECK(config.plural_exceptions_path == "plural.txt");
  CHECK(config.strip_charset_path == "charset.txt");

  CHECK(config.stat.min_n == 2);
  CHECK(config.stat.max_n == 4);
  CHECK(config.stat.min_freq == 3);
  CHECK(config.stat.stopword_policy == StopwordPolicy::any);
  CHECK_FALSE(config.stat.prune_nested);

  CHECK(config.llm.max_rounds == 3);
  CHECK(config.llm.min_new_per_round == 2);
  CHECK_FALSE(config.llm.grounding_enabled);
  CHECK(config.llm.retry_limit == 1);
  CHECK(config.llm.chunk_size == 500);
  CHECK(config.mock_script_path == "script.json");
  CHECK(config.llm_model == "local-model");
  CHECK(config.llm_temperature == doctest::Approx(0.5));

  CHECK(config.clean_guard.retention_threshold == doctest::Approx(0.5));
  CHECK(config.clean_guard.novelty_threshold == doctest::Approx(0.2));
  CHECK(config.clean_guard.retry_limit == 3);

  CHECK(config.extraction_template == "X {text}{exclusions}");
  CHECK(config.definition_template == "D {term}");
  CHECK(config.clean_template == "C {text}");
}

TEST_CASE("unknown and malformed config keys are rejected") {
  CHECK_THROWS_WITH_AS(run_config_from_json("{\"bogus\": 1}", "c.json"),
                       doctest::Contains("unknown config key 'bogus'"), Error);
  CHECK_THROWS_WITH_AS(
      run_config_from_json("{\"stat\": {\"bogus\": 1}}", "c.json"),
      doctest::Contains("unknown config key 'stat.bogus'"), Error);
  CHECK_THROWS_WITH_AS(run_config_from_json("{not json", "c.json"),
                       doctest::Contains("c.json"), Error);
  CHECK_THROWS_WITH_AS(run_config_from_json("[1, 2]", "c.json"),
                       doctest::Contains("must be a JSON object"), Error);
  // Wrong value types surface as config errors, not terse library ones.
  CHECK_THROWS_WITH_AS(run_config_from_json("{\"jobs\": \"three\"}", "c.json"),
                       doctest::Contains("c.json"), Error);
}

TEST_CASE("validation rejects every out-of-range field") {
  RunConfig good;
  CHECK_NOTHROW(validate_run_config(good));

  const auto rejects = [](void (*mutate)(RunConfig&)) {
    RunConfig config;
    mutate(config);
    CHECK_THROWS_AS(validate_run_config(config), Error);
  };
  rejects([](RunConfig& c) { c.language = "fr"; });
  rejects([](RunConfig& c) { c.method = "tbx"; });
  rejects([](RunConfig& c) { c.clean_mode = "fancy"; });
  rejects([](RunConfig& c) { c.jobs = 0; });
  rejects([](RunConfig& c) { c.top_n = 0; });
  rejects([](RunConfig& c) { c.ks = {0}; });
  rejects([](RunConfig& c) { c.ks = {5, 5}; });
  rejects([](RunConfig& c) { c.ks = {10, 5}; });
  rejects([](RunConfig& c) { c.stat.min_n = 0; });
  rejects([](RunConfig& c) { c.stat.max_n = c.stat.min_n - 1; });
  rejects([](RunConfig& c) { c.llm.max_rounds = 0; });
  rejects([](RunConfig& c) { c.llm.min_new_per_round = -1; });
  rejects([](RunConfig& c) { c.llm.retry_limit = -1; });
  rejects([](RunConfig& c) { c.llm.chunk_size = 0; });
  rejects([](RunConfig& c) { c.clean_guard.retention_threshold = 1.5; });
  rejects([](RunConfig& c) { c.clean_guard.novelty_threshold = -0.1; });
  rejects([](RunConfig& c) { c.clean_guard.retry_limit = -1; });
  rejects([](RunConfig& c) { c.corpus_root = "/no/such/corpus"; });
  rejects([](RunConfig& c) { c.gold_path = "/no/such/gold.tsv"; });
  rejects([](RunConfig& c) { c.stopwords_path = "/no/such/stopwords.txt"; });

  RunConfig with_files;
  with_files.corpus_root = testutil::fixture("mini_corpus").string();
  with_files.gold_path = testutil::fixture("gold/fashion_gold.tsv").string();
  CHECK_NOTHROW(validate_run_config(with_files));
}

TEST_CASE("wordlist and charset overrides replace the defaults") {
  testutil::TempDir tmp("cli_rules");
  testutil::spit(tmp / "stopwords.txt", "# custom list\nThe\nof\n");
  testutil::spit(tmp / "plural.txt", "Jeans\n");
  testutil::spit(tmp / "charset.txt", "«»\n");

  RunConfig config;
  config.stopwords_path = (tmp / "stopwords.txt").string();
  config.plural_exceptions_path = (tmp / "plural.txt").string();
  config.strip_charset_path = (tmp / "charset.txt").string();

  const auto stopwords = stopwords_for(config, "en");
  CHECK(stopwords == std::set<std::string>{"the", "of"});
  CHECK(stopwords_for(RunConfig{}, "en").count("while") == 1);

  const auto rules = rules_for(config, "en");
  CHECK(rules.plural_exceptions == std::set<std::string>{"jeans"});
  CHECK(normalize_term("«coat»", rules) == "coat");
  // The custom charset no longer strips periods.
  CHECK(normalize_term("coat.", rules) == "coat.");
}

TEST_CASE("version and argument errors set the exit code") {
  CaptureStdout captured;
  CHECK(run_cli({"--version"}) == 0);
  CHECK(captured.text().find("termbench") != std::string::npos);
  CHECK(run_cli({}) != 0);
  CHECK(run_cli({"frobnicate"}) != 0);
  CHECK(run_cli({"eval"}) != 0);  // --list is required
  CHECK(run_cli({"extract", "--method", "tbx"}) != 0);
}

TEST_CASE("stats reports per-language counts and optional json") {
  testutil::TempDir tmp("cli_stats");
  const auto json_path = (tmp / "stats.json").string();
  CaptureStdout captured;
  const int code =
      run_cli({"stats", "--corpus", testutil::fixture("mini_corpus").string(),
               "--json", json_path});
  CHECK(code == 0);
  CHECK(captured.text().find("language\tdocuments\twords") !=
        std::string::npos);
  CHECK(captured.text().find("total\t4\t") != std::string::npos);

  const auto doc = nlohmann::json::parse(testutil::slurp(json_path));
  CHECK(doc["languages"]["en"]["documents"] == 2);
  CHECK(doc["languages"]["ru"]["documents"] == 2);
  CHECK(doc["total_documents"] == 4);
  CHECK(doc["total_words"].get<std::size_t>() > 300);
}

TEST_CASE("deterministic cleaning writes repaired documents") {
  testutil::TempDir tmp("cli_clean_det");
  testutil::spit(tmp / "corpus/en/doc_01.txt", "fash-\nion  is\t\tfun\n");
  CaptureStdout captured;
  const int code = run_cli({"clean", "--corpus", (tmp / "corpus").string(),
                            "--mode", "deterministic", "--out-dir",
                            (tmp / "out").string()});
  CHECK(code == 0);
  CHECK(testutil::slurp(tmp / "out/en/doc_01.txt") == "fashion is fun");
  CHECK(captured.text().find("cleaned 1 documents (deterministic)") !=
        std::string::npos);
}

TEST_CASE("llm cleaning quarantines an over-reduced document") {
  testutil::TempDir tmp("cli_clean_llm");
  const std::string original =
      "velvet blazer tailored trousers satin gown beaded clutch woven belt "
      "suede loafers pleated culottes";
  testutil::spit(tmp / "corpus/en/doc_01.txt", original);

  CaptureStdout captured;
  const int code =
      run_cli({"clean", "--corpus", (tmp / "corpus").string(), "--mode", "llm",
               "--out-dir", (tmp / "out").string(), "--mock-script",
               testutil::fixture("mock/clean_overreduction.json").string()});
  CHECK(code == 0);
  CHECK(captured.text().find("1 quarantined") != std::string::npos);

  // The original text is kept, the cleaning is only proposed.
  CHECK(testutil::slurp(tmp / "out/en/doc_01.txt") == original);

  const auto quarantine = testutil::slurp(tmp / "out/quarantine.jsonl");
  const auto lines = io::split_lines(quarantine);
  REQUIRE(lines.size() == 1);
  const auto entry = nlohmann::json::parse(lines[0]);
  CHECK(entry["doc_id"] == "en/doc_01.txt");
  CHECK(entry["flag"] == "over_reduction");
  CHECK(entry["containment"].get<double>() < 0.6);

  // The exchange is on the record.
  const auto transcript = testutil::slurp(tmp / "out/transcript.jsonl");
  CHECK(io::split_lines(transcript).size() == 1);
}

TEST_CASE("statistical extraction writes the ranked outputs") {
  testutil::TempDir tmp("cli_extract_stat");
  const int code = run_cli(
      {"extract", "--corpus", testutil::fixture("mini_corpus").string(),
       "--method", "stat", "--language", "en", "--out-dir", tmp.path()
           .string()});
  CHECK(code == 0);
  const auto tsv = testutil::slurp(tmp / "ranked.tsv");
  CHECK(tsv.rfind("rank\tsurface\tfrequency\tn\n", 0) == 0);
  CHECK(tsv.find("\tdress\t5\t1\n") != std::string::npos);
  const auto doc = nlohmann::json::parse(testutil::slurp(tmp / "ranked.json"));
  CHECK(doc["method"] == "ngram");
  CHECK(doc["language"] == "en");
}

TEST_CASE("llm extraction records terms and transcript") {
  testutil::TempDir tmp("cli_extract_llm");
  const int code = run_cli(
      {"extract", "--corpus", testutil::fixture("mini_corpus").string(),
       "--method", "llm", "--language", "en", "--out-dir",
       tmp.path().string(), "--mock-script",
       testutil::fixture("mock/extract_en.json").string()});
  CHECK(code == 0);

  const auto terms =
      nlohmann::json::parse(testutil::slurp(tmp / "llm_terms.json"));
  CHECK(terms["terms"].size() == 3);
  CHECK(terms["rounds_used"] == 3);

  const auto tsv = testutil::slurp(tmp / "ranked.tsv");
  CHECK(tsv ==
        "rank\tsurface\tfrequency\tn\n"
        "1\tdress\t1\t1\n"
        "2\ttrench coat\t1\t2\n"
        "3\tdenim jacket\t1\t2\n");

  const auto transcript = testutil::slurp(tmp / "transcript.jsonl");
  CHECK(io::split_lines(transcript).size() == 3);
}

TEST_CASE("imported lists are normalized into our tsv shape") {
  testutil::TempDir tmp("cli_import");
  const int code = run_cli(
      {"import-ranked", "--in",
       testutil::fixture("import/external_list.tsv").string(), "--language",
       "en", "--label", "external", "--out-dir", tmp.path().string()});
  CHECK(code == 0);
  CHECK(testutil::slurp(tmp / "ranked.tsv") ==
        "rank\tsurface\tfrequency\tn\n"
        "1\tdress\t10\t1\n"
        "2\tskirt\t5\t1\n"
        "3\ttrench coat\t4\t2\n");
  const auto doc = nlohmann::json::parse(testutil::slurp(tmp / "ranked.json"));
  CHECK(doc["method"] == "external");
}

TEST_CASE("eval writes reports and flags override the config") {
  testutil::TempDir tmp("cli_eval");
  // The config picks russian and two cutoffs; the flag forces english.
  testutil::spit(tmp / "run.json", "{\"language\": \"ru\", \"ks\": [2, 5]}");

  CaptureStdout captured;
  const int code = run_cli(
      {"eval", "--list",
       testutil::fixture("import/external_list.tsv").string(), "--gold",
       testutil::fixture("gold/fashion_gold.tsv").string(), "--language",
       "en", "--out-dir", tmp.path().string(), "--config",
       (tmp / "run.json").string()});
  CHECK(code == 0);
  CHECK(captured.text().find(
            "precision=1.0000 recall=0.2500 f_measure=0.4000") !=
        std::string::npos);

  const auto report = nlohmann::json::parse(testutil::slurp(tmp / "eval.json"));
  CHECK(report["language"] == "en");  // flag beat the config
  CHECK(report["metrics"]["recall"].get<double>() == doctest::Approx(0.25));
  CHECK(report["matched"].size() == 3);

  // The curve uses exactly the configured cutoffs.
  const auto curve = testutil::slurp(tmp / "curve.csv");
  const auto lines = io::split_lines(curve);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "k,precision,recall,f_measure");
  CHECK(lines[1].rfind("2,", 0) == 0);
  CHECK(lines[2].rfind("5,", 0) == 0);
  CHECK(lines[2] == "5,1.000000,0.250000,0.400000");
}

TEST_CASE("defeval scores a prepared definitions file") {
  testutil::TempDir tmp("cli_defeval");
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  const auto replies = nlohmann::json::parse(
      testutil::slurp(testutil::fixture("mock/definitions_en.json")));
  nlohmann::json generated = nlohmann::json::object();
  for (std::size_t i = 0; i < replies.size(); ++i)
    generated[gold.entries[i].en_term] = replies[i];
  testutil::spit(tmp / "generated.json", generated.dump());

  CaptureStdout captured;
  const int code = run_cli(
      {"defeval", "--gold", testutil::fixture("gold/fashion_gold.tsv")
           .string(),
       "--language", "en", "--generated", (tmp / "generated.json").string(),
       "--out-dir", tmp.path().string()});
  CHECK(code == 0);
  CHECK(captured.text().find(
            "scored=4 min=0 max=2 mean=0.7500 skipped=0") !=
        std::string::npos);

  const auto report =
      nlohmann::json::parse(testutil::slurp(tmp / "defeval.json"));
  CHECK(report["scored"] == 4);
  CHECK(testutil::slurp(tmp / "defeval.csv")
            .find("denim jacket,2,8,10,0.200000") != std::string::npos);
}

TEST_CASE("defeval can generate definitions through the mock client") {
  testutil::TempDir tmp("cli_defeval_live");
  const int code = run_cli(
      {"defeval", "--gold", testutil::fixture("gold/fashion_gold.tsv")
           .string(),
       "--language", "en", "--out-dir", tmp.path().string(), "--mock-script",
       testutil::fixture("mock/definitions_en.json").string()});
  CHECK(code == 0);

  const auto definitions =
      nlohmann::json::parse(testutil::slurp(tmp / "definitions.json"));
  CHECK(definitions.size() == 4);
  CHECK(definitions.contains("dress"));
  CHECK(definitions.contains("silk scarf"));

  const auto report =
      nlohmann::json::parse(testutil::slurp(tmp / "defeval.json"));
  CHECK(report["scored"] == 4);
  CHECK(report["mean"].get<double>() == doctest::Approx(0.75));

  const auto transcript = testutil::slurp(tmp / "transcript.jsonl");
  CHECK(io::split_lines(transcript).size() == 4);
}

TEST_CASE("harvest-gold turns saved glossary pages into a gold tsv") {
  testutil::TempDir tmp("cli_harvest");
  const auto out_path = (tmp / "harvested.tsv").string();
  CaptureStdout captured;
  const int code =
      run_cli({"harvest-gold", "--html-dir",
               testutil::fixture("html").string(), "--out", out_path});
  CHECK(code == 0);
  CHECK(captured.text().find("harvested 6 entries (1 rows skipped)") !=
        std::string::npos);

  const auto gold = load_gold_tsv(out_path);
  CHECK(gold.entries.size() == 6);
  CHECK(gold_contains(gold, "trench coat", "en"));
  CHECK(gold_contains(gold, "scarf & shawl", "en"));
  CHECK(gold_contains(gold, "платье", "ru"));

  // Exactly one source mode must be chosen.
  CHECK(run_cli({"harvest-gold", "--out", out_path}) != 0);
}

}  // TEST_SUITE
