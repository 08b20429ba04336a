#include "termbench/defeval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "termbench/error.hpp"
#include "termbench/tokenize.hpp"

namespace termbench {

int word_levenshtein(const std::vector<std::string>& ref,
                     const std::vector<std::string>& hyp) {
  const std::size_t rows = ref.size();
  const std::size_t cols = hyp.size();
  if (rows == 0) return static_cast<int>(cols);
  if (cols == 0) return static_cast<int>(rows);

  std::vector<int> previous(cols + 1);
  std::vector<int> current(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j)
    previous[j] = static_cast<int>(j);

  for (std::size_t i = 1; i <= rows; ++i) {
    current[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= cols; ++j) {
      const int substitution =
          previous[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const int deletion = previous[j] + 1;
      const int insertion = current[j - 1] + 1;
      current[j] = std::min({substitution, deletion, insertion});
    }
    std::swap(previous, current);
  }
  return previous[cols];
}

std::vector<std::string> definition_tokens(std::string_view text,
                                           std::string_view language,
                                           const DefNormalization& norm) {
  TokenizeOptions options;
  options.keep_punctuation = !norm.drop_punctuation;
  std::vector<std::string> words;
  for (const auto& token : tokenize(text, language, options))
    words.push_back(norm.lowercase ? token.normalized : token.surface);
  return words;
}

namespace {

std::string language_name(std::string_view code) {
  if (code == "en") return "English";
  if (code == "ru") return "Russian";
  return std::string(code);
}

}  // namespace

GeneratedDefinitions generate_definitions(const std::vector<std::string>& terms,
                                          std::string_view language,
                                          ChatClient& client,
                                          const PromptTemplate& tmpl,
                                          int retry_limit) {
  if (!tmpl.has_placeholder("term"))
    throw Error("definition template must contain a {term} placeholder");

  GeneratedDefinitions result;
  for (const auto& term : terms) {
    std::map<std::string, std::string> values{{"term", term}};
    if (tmpl.has_placeholder("language"))
      values.emplace("language", language_name(language));
    const std::vector<ChatMessage> conversation{
        {"user", tmpl.render(values)}};
    try {
      auto reply = send_with_retries(client, conversation, retry_limit);
      result.retries_used += reply.retries_used;
      result.by_term[term] = std::move(reply.content);
    } catch (const ChatError&) {
      result.failed.push_back(term);
    }
  }
  return result;
}

DefEvalReport score_definitions(
    const GoldStandard& gold,
    const std::map<std::string, std::string>& generated,
    std::string_view language, const DefNormalization& norm) {
  const bool english = language == "en";
  if (!english && language != "ru")
    throw Error("unsupported language: " + std::string(language));

  // Look generated terms up through the normalized index so callers can
  // pass surface forms.
  const auto rules = NormalizationRules::defaults(language);
  const auto& index = gold.index(language);
  std::map<std::string, const std::string*> hyp_by_key;
  for (const auto& [term, text] : generated) {
    const auto key = normalize_term(term, rules);
    auto it = index.find(key);
    if (it == index.end())
      throw Error("term '" + term + "' is not in the gold standard");
    const auto& entry = gold.entries[it->second];
    const auto& reference =
        english ? entry.en_definition : entry.ru_definition;
    if (!reference)
      throw Error("gold entry for '" + term + "' has no " +
                  std::string(language) + " reference definition");
    hyp_by_key[key] = &text;
  }

  DefEvalReport report;
  report.language = std::string(language);
  long long distance_sum = 0;
  for (const auto& [key, entry_index] : index) {
    const auto& entry = gold.entries[entry_index];
    const auto& reference =
        english ? entry.en_definition : entry.ru_definition;
    if (!reference) continue;  // entry has no definition to score against
    auto it = hyp_by_key.find(key);
    if (it == hyp_by_key.end()) {
      report.skipped.push_back(english ? entry.en_term : entry.ru_term);
      continue;
    }
    DefinitionScore score;
    score.term = english ? entry.en_term : entry.ru_term;
    const auto ref_tokens = definition_tokens(*reference, language, norm);
    const auto hyp_tokens = definition_tokens(*it->second, language, norm);
    score.ref_len = static_cast<int>(ref_tokens.size());
    score.hyp_len = static_cast<int>(hyp_tokens.size());
    score.distance = word_levenshtein(ref_tokens, hyp_tokens);
    score.normalized_distance =
        static_cast<double>(score.distance) /
        std::max({score.ref_len, score.hyp_len, 1});
    distance_sum += score.distance;
    report.scores.push_back(std::move(score));
  }

  if (!report.scores.empty()) {
    report.min = report.scores.front().distance;
    report.max = report.scores.front().distance;
    for (const auto& score : report.scores) {
      report.min = std::min(report.min, score.distance);
      report.max = std::max(report.max, score.distance);
    }
    report.mean =
        static_cast<double>(distance_sum) / report.scores.size();
  }
  return report;
}

std::string defeval_report_to_json(const DefEvalReport& report) {
  nlohmann::json doc;
  doc["language"] = report.language;
  doc["scored"] = report.scores.size();
  doc["min"] = report.min;
  doc["max"] = report.max;
  doc["mean"] = report.mean;
  doc["skipped"] = report.skipped;
  doc["scores"] = nlohmann::json::array();
  for (const auto& score : report.scores) {
    doc["scores"].push_back(
        {{"term", score.term},
         {"distance", score.distance},
         {"ref_len", score.ref_len},
         {"hyp_len", score.hyp_len},
         {"normalized_distance", score.normalized_distance}});
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string defeval_report_to_csv(const DefEvalReport& report) {
  std::ostringstream out;
  out << "term,distance,ref_len,hyp_len,normalized_distance\n";
  for (const auto& score : report.scores) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", score.normalized_distance);
    out << csv_quote(score.term) << ',' << score.distance << ','
        << score.ref_len << ',' << score.hyp_len << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace termbench
