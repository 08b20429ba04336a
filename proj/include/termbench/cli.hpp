#ifndef TERMBENCH_CLI_HPP
#define TERMBENCH_CLI_HPP

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "termbench/extract_llm.hpp"
#include "termbench/extract_stat.hpp"
#include "termbench/llm_clean.hpp"

namespace termbench {

// One checked-in config drives a reproducible benchmark run; command
// line flags override individual fields. API keys and endpoints come
// from the environment only.
struct RunConfig {
  std::string corpus_root;
  std::string language = "en";
  std::string method = "stat";  // stat | llm
  std::string output_dir = "out";
  std::string gold_path;
  std::vector<int> ks;  // empty -> default curve cutoffs
  int top_n = 50;
  int jobs = 1;
  unsigned seed = 1;  // fuzz tooling only

  ExtractionConfig stat;
  LlmExtractionConfig llm;
  std::string llm_model;  // "" keeps the environment/default model
  double llm_temperature = 0.0;
  std::string mock_script_path;

  std::string stopwords_path;
  std::string plural_exceptions_path;
  std::string strip_charset_path;

  std::string extraction_template;  // raw template text; "" = built-in
  std::string definition_template;
  std::string clean_template;
  std::string clean_mode = "deterministic";  // deterministic | llm
  LlmCleanOptions clean_guard;
};

RunConfig run_config_from_json(std::string_view text,
                               const std::string& origin);
RunConfig load_run_config(const std::filesystem::path& path);

// Rejects bad enum values, non-increasing ks and referenced files that
// do not exist.
void validate_run_config(const RunConfig& config);

std::set<std::string> stopwords_for(const RunConfig& config,
                                    std::string_view language);
NormalizationRules rules_for(const RunConfig& config,
                             std::string_view language);

// Entry point behind main(); returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace termbench

#endif
