#include "termbench/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <thread>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "termbench/chat_client.hpp"
#include "termbench/corpus.hpp"
#include "termbench/defeval.hpp"
#include "termbench/error.hpp"
#include "termbench/eval.hpp"
#include "termbench/gold.hpp"
#include "termbench/http.hpp"
#include "termbench/io_util.hpp"
#include "termbench/parallel.hpp"

namespace termbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void parse_stat_section(const json& section, ExtractionConfig& stat,
                        const std::string& origin) {
  for (const auto& [key, value] : section.items()) {
    if (key == "min_n") value.get_to(stat.min_n);
    else if (key == "max_n") value.get_to(stat.max_n);
    else if (key == "min_freq") value.get_to(stat.min_freq);
    else if (key == "stopword_policy")
      stat.stopword_policy =
          stopword_policy_from_string(value.get<std::string>());
    else if (key == "prune_nested") value.get_to(stat.prune_nested);
    else
      throw Error(origin + ": unknown config key 'stat." + key + "'");
  }
}

void parse_llm_section(const json& section, RunConfig& config,
                       const std::string& origin) {
  for (const auto& [key, value] : section.items()) {
    if (key == "max_rounds") value.get_to(config.llm.max_rounds);
    else if (key == "min_new_per_round")
      value.get_to(config.llm.min_new_per_round);
    else if (key == "grounding") value.get_to(config.llm.grounding_enabled);
    else if (key == "retry_limit") value.get_to(config.llm.retry_limit);
    else if (key == "chunk_size") value.get_to(config.llm.chunk_size);
    else if (key == "mock_script") value.get_to(config.mock_script_path);
    else if (key == "model") value.get_to(config.llm_model);
    else if (key == "temperature") value.get_to(config.llm_temperature);
    else
      throw Error(origin + ": unknown config key 'llm." + key + "'");
  }
}

void parse_clean_guard_section(const json& section, LlmCleanOptions& guard,
                               const std::string& origin) {
  for (const auto& [key, value] : section.items()) {
    if (key == "retention_threshold") value.get_to(guard.retention_threshold);
    else if (key == "novelty_threshold") value.get_to(guard.novelty_threshold);
    else if (key == "retry_limit") value.get_to(guard.retry_limit);
    else
      throw Error(origin + ": unknown config key 'clean_guard." + key + "'");
  }
}

void parse_templates_section(const json& section, RunConfig& config,
                             const std::string& origin) {
  for (const auto& [key, value] : section.items()) {
    if (key == "extraction") value.get_to(config.extraction_template);
    else if (key == "definition") value.get_to(config.definition_template);
    else if (key == "clean") value.get_to(config.clean_template);
    else
      throw Error(origin + ": unknown config key 'templates." + key + "'");
  }
}

}  // namespace

RunConfig run_config_from_json(std::string_view text,
                               const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(origin + ": config must be a JSON object");

  RunConfig config;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "corpus_root") value.get_to(config.corpus_root);
      else if (key == "language") value.get_to(config.language);
      else if (key == "method") value.get_to(config.method);
      else if (key == "output_dir") value.get_to(config.output_dir);
      else if (key == "gold") value.get_to(config.gold_path);
      else if (key == "ks") value.get_to(config.ks);
      else if (key == "top_n") value.get_to(config.top_n);
      else if (key == "jobs") value.get_to(config.jobs);
      else if (key == "seed") value.get_to(config.seed);
      else if (key == "stopwords") value.get_to(config.stopwords_path);
      else if (key == "plural_exceptions")
        value.get_to(config.plural_exceptions_path);
      else if (key == "strip_charset") value.get_to(config.strip_charset_path);
      else if (key == "clean_mode") value.get_to(config.clean_mode);
      else if (key == "stat") parse_stat_section(value, config.stat, origin);
      else if (key == "llm") parse_llm_section(value, config, origin);
      else if (key == "clean_guard")
        parse_clean_guard_section(value, config.clean_guard, origin);
      else if (key == "templates")
        parse_templates_section(value, config, origin);
      else
        throw Error(origin + ": unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(origin + ": " + e.what());
  }
  return config;
}

RunConfig load_run_config(const fs::path& path) {
  return run_config_from_json(io::read_file_utf8(path), path.string());
}

namespace {

void require_file(const std::string& path, const char* what) {
  if (path.empty()) return;
  if (!fs::is_regular_file(path))
    throw Error(std::string(what) + " file does not exist: " + path);
}

}  // namespace

void validate_run_config(const RunConfig& config) {
  if (config.language != "en" && config.language != "ru")
    throw Error("language must be 'en' or 'ru', got '" + config.language +
                "'");
  if (config.method != "stat" && config.method != "llm")
    throw Error("method must be 'stat' or 'llm', got '" + config.method + "'");
  if (config.clean_mode != "deterministic" && config.clean_mode != "llm")
    throw Error("clean_mode must be 'deterministic' or 'llm'");
  if (config.jobs < 1) throw Error("jobs must be >= 1");
  if (config.top_n < 1) throw Error("top_n must be >= 1");

  for (std::size_t i = 0; i < config.ks.size(); ++i) {
    if (config.ks[i] < 1) throw Error("ks entries must be >= 1");
    if (i > 0 && config.ks[i] <= config.ks[i - 1])
      throw Error("ks must be strictly increasing");
  }

  if (config.stat.min_n < 1 || config.stat.max_n < config.stat.min_n)
    throw Error("invalid n-gram range in stat config");
  if (config.llm.max_rounds < 1) throw Error("llm.max_rounds must be >= 1");
  if (config.llm.min_new_per_round < 0)
    throw Error("llm.min_new_per_round must be >= 0");
  if (config.llm.retry_limit < 0) throw Error("llm.retry_limit must be >= 0");
  if (config.llm.chunk_size < 1) throw Error("llm.chunk_size must be >= 1");
  if (config.clean_guard.retention_threshold < 0.0 ||
      config.clean_guard.retention_threshold > 1.0 ||
      config.clean_guard.novelty_threshold < 0.0 ||
      config.clean_guard.novelty_threshold > 1.0)
    throw Error("clean_guard thresholds must lie in [0,1]");
  if (config.clean_guard.retry_limit < 0)
    throw Error("clean_guard.retry_limit must be >= 0");

  if (!config.corpus_root.empty() && !fs::is_directory(config.corpus_root))
    throw Error("corpus root does not exist: " + config.corpus_root);
  require_file(config.gold_path, "gold");
  require_file(config.stopwords_path, "stopword");
  require_file(config.plural_exceptions_path, "plural exception");
  require_file(config.strip_charset_path, "strip charset");
  require_file(config.mock_script_path, "mock script");
}

std::set<std::string> stopwords_for(const RunConfig& config,
                                    std::string_view language) {
  if (!config.stopwords_path.empty())
    return load_wordlist(config.stopwords_path);
  return default_stopwords(language);
}

NormalizationRules rules_for(const RunConfig& config,
                             std::string_view language) {
  auto rules = NormalizationRules::defaults(language);
  if (!config.plural_exceptions_path.empty())
    rules.plural_exceptions = load_wordlist(config.plural_exceptions_path);
  if (!config.strip_charset_path.empty())
    rules.strip_charset = load_charset(config.strip_charset_path);
  return rules;
}

namespace {

std::unique_ptr<ChatClient> make_client(const RunConfig& config) {
  if (!config.mock_script_path.empty()) {
    return std::unique_ptr<ChatClient>(new ScriptedChatClient(
        ScriptedChatClient::from_json_file(config.mock_script_path)));
  }
  auto settings = HttpChatClient::settings_from_env();
  if (settings.endpoint.empty())
    throw Error(
        "no LLM client available: set TERMBENCH_LLM_ENDPOINT or point "
        "llm.mock_script at a reply script");
  if (!config.llm_model.empty()) settings.model = config.llm_model;
  settings.temperature = config.llm_temperature;
  return std::make_unique<HttpChatClient>(std::move(settings));
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& warning : warnings)
    std::cerr << "warning: " << warning << "\n";
}

Corpus load_corpus_checked(const RunConfig& config) {
  if (config.corpus_root.empty())
    throw Error("corpus root not set (use --corpus or corpus_root in the "
                "config)");
  LoadReport report;
  auto corpus = load_corpus(config.corpus_root, &report, config.jobs);
  for (const auto& dir : report.skipped_directories)
    std::cerr << "warning: skipped non-language directory " << dir << "\n";
  print_warnings(report.warnings);
  return corpus;
}

PromptTemplate template_or(const std::string& override_text,
                           PromptTemplate fallback) {
  return override_text.empty() ? std::move(fallback)
                               : PromptTemplate(override_text);
}

void cmd_stats(const RunConfig& config, const std::string& json_out) {
  const auto corpus = load_corpus_checked(config);
  const auto stats = corpus_stats(corpus);

  std::cout << "language\tdocuments\twords\n";
  for (const auto& [language, per_language] : stats.languages)
    std::cout << language << '\t' << per_language.documents << '\t'
              << per_language.words << '\n';
  std::cout << "total\t" << stats.total_documents << '\t' << stats.total_words
            << '\n';

  if (!json_out.empty()) {
    json doc;
    doc["languages"] = json::object();
    for (const auto& [language, per_language] : stats.languages)
      doc["languages"][language] = {{"documents", per_language.documents},
                                    {"words", per_language.words}};
    doc["total_documents"] = stats.total_documents;
    doc["total_words"] = stats.total_words;
    io::atomic_write_file(json_out, doc.dump(2) + "\n");
  }
}

void cmd_clean(const RunConfig& config, const std::string& out_dir) {
  const auto corpus = load_corpus_checked(config);
  const fs::path out_root(out_dir);

  if (config.clean_mode == "deterministic") {
    parallel_for(corpus.documents.size(), config.jobs, [&](std::size_t i) {
      const auto& doc = corpus.documents[i];
      io::atomic_write_file(out_root / doc.id, clean_text(doc.text));
    });
    std::cout << "cleaned " << corpus.documents.size()
              << " documents (deterministic)\n";
    return;
  }

  // LLM cleaning runs documents sequentially: a scripted client replays
  // replies in call order, and byte-identical runs across --jobs matter
  // more here than wall-clock time.
  const auto client = make_client(config);
  TranscriptLog transcript(out_root / "transcript.jsonl");
  RecordingChatClient recording(*client, transcript);

  std::string quarantine;
  std::size_t flagged = 0;
  for (const auto& doc : corpus.documents) {
    const auto tmpl = template_or(config.clean_template,
                                  templates::clean_keep_original(doc.language));
    const auto result =
        llm_clean(doc.text, doc.language, recording, tmpl, config.clean_guard,
                  stopwords_for(config, doc.language));
    if (result.flagged == CleanFlag::ok) {
      io::atomic_write_file(out_root / doc.id, result.cleaned);
    } else {
      // Never silently accept a flagged cleaning: keep the original
      // text and put the document in front of a human.
      io::atomic_write_file(out_root / doc.id, doc.text);
      quarantine += json{{"doc_id", doc.id},
                         {"flag", std::string(to_string(result.flagged))},
                         {"containment", result.containment},
                         {"novelty", result.novelty}}
                        .dump();
      quarantine += '\n';
      ++flagged;
    }
  }
  io::atomic_write_file(out_root / "quarantine.jsonl", quarantine);
  std::cout << "cleaned " << corpus.documents.size() << " documents, "
            << flagged << " quarantined (llm)\n";
}

void write_ranked_outputs(const RankedTermList& list,
                          const fs::path& out_root) {
  io::atomic_write_file(out_root / "ranked.tsv", ranked_list_to_tsv(list));
  io::atomic_write_file(out_root / "ranked.json", ranked_list_to_json(list));
}

void cmd_extract(const RunConfig& config) {
  const auto corpus = load_corpus_checked(config);
  const fs::path out_root(config.output_dir);

  RankedTermList list;
  if (config.method == "stat") {
    list = extract_statistical(corpus, config.language, config.stat,
                               stopwords_for(config, config.language),
                               rules_for(config, config.language), config.jobs);
  } else {
    const auto client = make_client(config);
    TranscriptLog transcript(out_root / "transcript.jsonl");
    RecordingChatClient recording(*client, transcript);
    const auto tmpl =
        template_or(config.extraction_template, templates::extraction());
    const auto terms = extract_llm_terms(corpus, config.language, recording,
                                         config.llm, tmpl);
    print_warnings(terms.errors);
    io::atomic_write_file(out_root / "llm_terms.json",
                          llm_terms_to_json(terms, config.language));
    list = ranked_view(terms, config.language);
  }

  write_ranked_outputs(list, out_root);
  std::cout << "extracted " << list.entries.size() << " terms ("
            << config.method << ", " << config.language << ")\n";
}

void cmd_import_ranked(const RunConfig& config, const std::string& in_path,
                       const std::string& label) {
  std::vector<std::string> warnings;
  const auto list =
      import_ranked_list(in_path, config.language, label, &warnings);
  print_warnings(warnings);
  write_ranked_outputs(list, fs::path(config.output_dir));
  std::cout << "imported " << list.entries.size() << " terms from " << in_path
            << "\n";
}

void cmd_eval(const RunConfig& config, const std::string& list_path) {
  if (config.gold_path.empty())
    throw Error("gold path not set (use --gold or gold in the config)");
  const auto gold = load_gold_tsv(config.gold_path);
  print_warnings(gold.warnings);

  std::vector<std::string> warnings;
  const auto list =
      import_ranked_list(list_path, config.language, "import", &warnings);
  print_warnings(warnings);

  const auto& ks = config.ks.empty() ? default_ks() : config.ks;
  const auto report =
      evaluate(list, gold, config.language, ks, config.top_n);

  const fs::path out_root(config.output_dir);
  io::atomic_write_file(out_root / "eval.json", eval_report_to_json(report));
  io::atomic_write_file(out_root / "curve.csv", curve_to_csv(report.curve));

  std::cout << std::fixed << std::setprecision(4)
            << "precision=" << report.metrics.precision
            << " recall=" << report.metrics.recall
            << " f_measure=" << report.metrics.f_measure << "\n";
}

void cmd_defeval(const RunConfig& config, const std::string& generated_path) {
  if (config.gold_path.empty())
    throw Error("gold path not set (use --gold or gold in the config)");
  const auto gold = load_gold_tsv(config.gold_path);
  print_warnings(gold.warnings);
  const bool english = config.language == "en";
  const fs::path out_root(config.output_dir);

  std::map<std::string, std::string> generated;
  if (!generated_path.empty()) {
    json doc;
    try {
      doc = json::parse(io::read_file_utf8(generated_path));
    } catch (const json::parse_error& e) {
      throw Error(generated_path + ": " + e.what());
    }
    if (!doc.is_object())
      throw Error(generated_path +
                  ": expected a JSON object mapping terms to definitions");
    for (const auto& [term, value] : doc.items()) {
      if (!value.is_string())
        throw Error(generated_path + ": definition of '" + term +
                    "' is not a string");
      generated.emplace(term, value.get<std::string>());
    }
  } else {
    // Ask the model to define every gold term that has a reference
    // definition in this language.
    std::vector<std::string> terms;
    for (const auto& entry : gold.entries) {
      const auto& reference =
          english ? entry.en_definition : entry.ru_definition;
      if (reference) terms.push_back(english ? entry.en_term : entry.ru_term);
    }
    const auto client = make_client(config);
    TranscriptLog transcript(out_root / "transcript.jsonl");
    RecordingChatClient recording(*client, transcript);
    const auto tmpl = template_or(config.definition_template,
                                  templates::definition(config.language));
    const auto result = generate_definitions(terms, config.language, recording,
                                             tmpl, config.llm.retry_limit);
    for (const auto& term : result.failed)
      std::cerr << "warning: no definition generated for '" << term << "'\n";
    generated = result.by_term;
    io::atomic_write_file(out_root / "definitions.json",
                          json(generated).dump(2) + "\n");
  }

  const auto report = score_definitions(gold, generated, config.language);
  io::atomic_write_file(out_root / "defeval.json",
                        defeval_report_to_json(report));
  io::atomic_write_file(out_root / "defeval.csv",
                        defeval_report_to_csv(report));

  std::cout << std::fixed << std::setprecision(4) << "scored="
            << report.scores.size() << " min=" << report.min
            << " max=" << report.max << " mean=" << report.mean
            << " skipped=" << report.skipped.size() << "\n";
}

void cmd_harvest_gold(const RunConfig& /*config*/, const std::string& html_dir,
                      const std::string& urls_path,
                      const std::string& columns, const std::string& out_path,
                      int delay_ms) {
  const auto column_map =
      columns.empty() ? GoldColumnMap{} : parse_column_map(columns);

  std::vector<GoldEntry> harvested;
  int rows_skipped = 0;
  const auto ingest = [&](std::string_view html, const std::string& source) {
    auto result = harvest_gold_html(html, column_map, source);
    print_warnings(result.warnings);
    rows_skipped += result.rows_skipped;
    for (auto& entry : result.entries)
      harvested.push_back(std::move(entry));
  };

  if (!html_dir.empty()) {
    if (!fs::is_directory(html_dir))
      throw Error("html directory does not exist: " + html_dir);
    std::vector<fs::path> pages;
    for (const auto& entry : fs::recursive_directory_iterator(html_dir)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension().string();
      if (ext == ".html" || ext == ".htm") pages.push_back(entry.path());
    }
    std::sort(pages.begin(), pages.end());
    for (const auto& page : pages)
      ingest(io::read_file_utf8(page), page.string());
  } else {
    bool first = true;
    for (const auto& line : io::split_lines(io::read_file_utf8(urls_path))) {
      const auto url = io::trim(line);
      if (url.empty() || url.front() == '#') continue;
      if (!first)  // polite delay between requests
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      first = false;
      std::string error;
      const auto body =
          http::fetch_url(std::string(url), http::FetchOptions{}, &error);
      if (!body) {
        std::cerr << "warning: fetch failed for " << url << ": " << error
                  << "\n";
        continue;
      }
      ingest(*body, std::string(url));
    }
  }

  // Merge rows that normalize to the same bilingual pair; the first
  // occurrence wins, later ones only contribute missing definitions.
  const auto en_rules = NormalizationRules::defaults("en");
  const auto ru_rules = NormalizationRules::defaults("ru");
  GoldStandard gold;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  for (auto& entry : harvested) {
    const auto key = std::make_pair(normalize_term(entry.en_term, en_rules),
                                    normalize_term(entry.ru_term, ru_rules));
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, gold.entries.size());
      gold.entries.push_back(std::move(entry));
      continue;
    }
    auto& keeper = gold.entries[it->second];
    if (!keeper.en_definition && entry.en_definition)
      keeper.en_definition = std::move(entry.en_definition);
    if (!keeper.ru_definition && entry.ru_definition)
      keeper.ru_definition = std::move(entry.ru_definition);
  }
  build_gold_index(gold);
  print_warnings(gold.warnings);

  io::atomic_write_file(out_path, gold_to_tsv(gold));
  if (gold.entries.empty())
    std::cerr << "warning: no gold entries harvested\n";
  std::cout << "harvested " << gold.entries.size() << " entries ("
            << rows_skipped << " rows skipped)\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Bilingual terminology extraction benchmark toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "termbench 1.0.0");

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  int jobs = 0;
  auto* jobs_opt =
      app.add_option("--jobs", jobs, "worker threads (default 1)");
  std::string mock_script;
  auto* mock_opt = app.add_option("--mock-script", mock_script,
                                  "JSON array of scripted LLM replies");

  // Loads the config file (when given) and applies global overrides;
  // flags always win over config values.
  const auto base_config = [&]() {
    RunConfig config = config_path.empty() ? RunConfig{}
                                           : load_run_config(config_path);
    if (jobs_opt->count() > 0) config.jobs = jobs;
    if (mock_opt->count() > 0) config.mock_script_path = mock_script;
    return config;
  };

  // --- stats ---------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "Corpus document/word counts");
  std::string stats_corpus, stats_json;
  auto* stats_corpus_opt =
      stats->add_option("--corpus", stats_corpus, "corpus root directory");
  stats->add_option("--json", stats_json, "also write the counts as JSON");
  stats->callback([&] {
    auto config = base_config();
    if (stats_corpus_opt->count() > 0) config.corpus_root = stats_corpus;
    validate_run_config(config);
    cmd_stats(config, stats_json);
  });

  // --- clean ---------------------------------------------------------
  auto* clean = app.add_subcommand(
      "clean", "Repair conversion noise, deterministically or via LLM");
  std::string clean_corpus, clean_mode, clean_out;
  auto* clean_corpus_opt =
      clean->add_option("--corpus", clean_corpus, "corpus root directory");
  auto* clean_mode_opt =
      clean->add_option("--mode", clean_mode, "deterministic or llm")
          ->check(CLI::IsMember({"deterministic", "llm"}));
  clean->add_option("--out-dir", clean_out, "directory for cleaned corpus")
      ->required();
  clean->callback([&] {
    auto config = base_config();
    if (clean_corpus_opt->count() > 0) config.corpus_root = clean_corpus;
    if (clean_mode_opt->count() > 0) config.clean_mode = clean_mode;
    validate_run_config(config);
    cmd_clean(config, clean_out);
  });

  // --- extract -------------------------------------------------------
  auto* extract = app.add_subcommand(
      "extract", "Extract ranked term candidates (stat or llm)");
  std::string ex_corpus, ex_method, ex_language, ex_out;
  auto* ex_corpus_opt =
      extract->add_option("--corpus", ex_corpus, "corpus root directory");
  auto* ex_method_opt =
      extract->add_option("--method", ex_method, "stat or llm")
          ->check(CLI::IsMember({"stat", "llm"}));
  auto* ex_language_opt =
      extract->add_option("--language", ex_language, "en or ru");
  auto* ex_out_opt =
      extract->add_option("--out-dir", ex_out, "output directory");
  extract->callback([&] {
    auto config = base_config();
    if (ex_corpus_opt->count() > 0) config.corpus_root = ex_corpus;
    if (ex_method_opt->count() > 0) config.method = ex_method;
    if (ex_language_opt->count() > 0) config.language = ex_language;
    if (ex_out_opt->count() > 0) config.output_dir = ex_out;
    validate_run_config(config);
    cmd_extract(config);
  });

  // --- import-ranked -------------------------------------------------
  auto* import_ranked = app.add_subcommand(
      "import-ranked", "Normalize a third-party ranked term TSV");
  std::string imp_in, imp_language, imp_label = "imported", imp_out;
  import_ranked->add_option("--in", imp_in, "TSV: term [tab frequency]")
      ->required()
      ->check(CLI::ExistingFile);
  auto* imp_language_opt =
      import_ranked->add_option("--language", imp_language, "en or ru");
  import_ranked->add_option("--label", imp_label,
                            "method label for the imported list");
  auto* imp_out_opt =
      import_ranked->add_option("--out-dir", imp_out, "output directory");
  import_ranked->callback([&] {
    auto config = base_config();
    if (imp_language_opt->count() > 0) config.language = imp_language;
    if (imp_out_opt->count() > 0) config.output_dir = imp_out;
    validate_run_config(config);
    cmd_import_ranked(config, imp_in, imp_label);
  });

  // --- eval ----------------------------------------------------------
  auto* eval = app.add_subcommand(
      "eval", "Score a ranked list against the gold standard");
  std::string ev_list, ev_gold, ev_language, ev_out;
  std::vector<int> ev_ks;
  int ev_top = 0;
  eval->add_option("--list", ev_list, "ranked term list (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* ev_gold_opt = eval->add_option("--gold", ev_gold, "gold TSV");
  auto* ev_language_opt =
      eval->add_option("--language", ev_language, "en or ru");
  auto* ev_ks_opt =
      eval->add_option("--ks", ev_ks, "curve cutoffs, strictly increasing");
  auto* ev_top_opt =
      eval->add_option("--top", ev_top, "terms in the error report");
  auto* ev_out_opt = eval->add_option("--out-dir", ev_out, "output directory");
  eval->callback([&] {
    auto config = base_config();
    if (ev_gold_opt->count() > 0) config.gold_path = ev_gold;
    if (ev_language_opt->count() > 0) config.language = ev_language;
    if (ev_ks_opt->count() > 0) config.ks = ev_ks;
    if (ev_top_opt->count() > 0) config.top_n = ev_top;
    if (ev_out_opt->count() > 0) config.output_dir = ev_out;
    validate_run_config(config);
    cmd_eval(config, ev_list);
  });

  // --- defeval -------------------------------------------------------
  auto* defeval = app.add_subcommand(
      "defeval", "Score generated definitions against gold references");
  std::string de_gold, de_language, de_generated, de_out;
  auto* de_gold_opt = defeval->add_option("--gold", de_gold, "gold TSV");
  auto* de_language_opt =
      defeval->add_option("--language", de_language, "en or ru");
  defeval->add_option("--generated", de_generated,
                      "JSON object term -> definition; omit to query the LLM")
      ->check(CLI::ExistingFile);
  auto* de_out_opt =
      defeval->add_option("--out-dir", de_out, "output directory");
  defeval->callback([&] {
    auto config = base_config();
    if (de_gold_opt->count() > 0) config.gold_path = de_gold;
    if (de_language_opt->count() > 0) config.language = de_language;
    if (de_out_opt->count() > 0) config.output_dir = de_out;
    validate_run_config(config);
    cmd_defeval(config, de_generated);
  });

  // --- harvest-gold --------------------------------------------------
  auto* harvest = app.add_subcommand(
      "harvest-gold", "Build a gold TSV from glossary HTML tables");
  std::string hv_html_dir, hv_urls, hv_columns, hv_out;
  int hv_delay = 1000;
  auto* hv_dir_opt = harvest->add_option("--html-dir", hv_html_dir,
                                         "directory of saved HTML pages");
  auto* hv_urls_opt =
      harvest->add_option("--urls", hv_urls, "file with one URL per line")
          ->check(CLI::ExistingFile);
  harvest->add_option("--columns", hv_columns,
                      "e.g. en_term=0,ru_term=1,en_definition=2");
  harvest->add_option("--out", hv_out, "output gold TSV")->required();
  harvest->add_option("--delay-ms", hv_delay,
                      "delay between fetches (politeness)");
  harvest->callback([&] {
    if ((hv_dir_opt->count() > 0) == (hv_urls_opt->count() > 0))
      throw Error("harvest-gold needs exactly one of --html-dir or --urls");
    auto config = base_config();
    validate_run_config(config);
    cmd_harvest_gold(config, hv_html_dir, hv_urls, hv_columns, hv_out,
                     hv_delay);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace termbench
