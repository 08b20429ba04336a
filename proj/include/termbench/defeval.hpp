#ifndef TERMBENCH_DEFEVAL_HPP
#define TERMBENCH_DEFEVAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "termbench/chat_client.hpp"
#include "termbench/gold.hpp"

namespace termbench {

struct DefinitionScore {
  std::string term;
  int distance = 0;  // word-level edit operations
  int ref_len = 0;
  int hyp_len = 0;
  double normalized_distance = 0.0;  // distance / max(ref_len, hyp_len, 1)
};

struct DefEvalReport {
  std::string language;
  std::vector<DefinitionScore> scores;
  int min = 0;
  int max = 0;
  double mean = 0.0;
  std::vector<std::string> skipped;  // terms without a generated definition
};

// Unit-cost insert/delete/substitute over whole tokens.
int word_levenshtein(const std::vector<std::string>& ref,
                     const std::vector<std::string>& hyp);

struct DefNormalization {
  bool lowercase = true;
  bool drop_punctuation = true;
};

// Shared tokenizer, then the normalization toggles above.
std::vector<std::string> definition_tokens(std::string_view text,
                                           std::string_view language,
                                           const DefNormalization& norm = {});

struct GeneratedDefinitions {
  std::map<std::string, std::string> by_term;
  std::vector<std::string> failed;  // retries exhausted
  int retries_used = 0;
};

// One definition per term via the client; refusals are retried in fresh
// conversations, failures recorded and the run continues.
GeneratedDefinitions generate_definitions(const std::vector<std::string>& terms,
                                          std::string_view language,
                                          ChatClient& client,
                                          const PromptTemplate& tmpl,
                                          int retry_limit = 2);

// Distances between generated and reference definitions for every gold
// entry that has a reference in the language. Terms without a generated
// definition are excluded and counted; a scored term whose gold entry
// lacks a reference definition is an error.
DefEvalReport score_definitions(const GoldStandard& gold,
                                const std::map<std::string, std::string>& generated,
                                std::string_view language,
                                const DefNormalization& norm = {});

std::string defeval_report_to_json(const DefEvalReport& report);

// CSV: term, distance, ref_len, hyp_len, normalized_distance.
std::string defeval_report_to_csv(const DefEvalReport& report);

}  // namespace termbench

#endif
