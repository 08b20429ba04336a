#include "termbench/llm_clean.hpp"

#include <algorithm>

#include "termbench/tokenize.hpp"

namespace termbench {

std::string_view to_string(CleanFlag flag) {
  switch (flag) {
    case CleanFlag::ok:
      return "ok";
    case CleanFlag::over_reduction:
      return "over_reduction";
    case CleanFlag::hallucination:
      return "hallucination";
  }
  return "ok";
}

std::set<std::string> content_words(std::string_view text,
                                    std::string_view language,
                                    const std::set<std::string>& stopwords) {
  std::set<std::string> words;
  for (const Token& token : tokenize(text, language))
    if (!stopwords.count(token.normalized)) words.insert(token.normalized);
  return words;
}

CleanResult llm_clean(std::string_view raw, std::string_view language,
                      ChatClient& client, const PromptTemplate& tmpl,
                      const LlmCleanOptions& options,
                      const std::set<std::string>& stopwords) {
  if (tmpl.empty()) throw Error("llm_clean: empty prompt template");
  if (!tmpl.has_placeholder("text"))
    throw Error("llm_clean: template lacks the {text} placeholder");

  std::string prompt = tmpl.render({{"text", std::string(raw)}});
  ChatReply reply =
      send_with_retries(client, {{"user", prompt}}, options.retry_limit);

  CleanResult result;
  result.cleaned = reply.content;
  result.retries_used = reply.retries_used;

  std::set<std::string> original = content_words(raw, language, stopwords);
  std::set<std::string> cleaned =
      content_words(result.cleaned, language, stopwords);

  std::size_t preserved = 0;
  for (const std::string& w : original)
    if (cleaned.count(w)) ++preserved;
  std::size_t novel = 0;
  for (const std::string& w : cleaned)
    if (!original.count(w)) ++novel;

  result.containment =
      original.empty() ? 1.0
                       : static_cast<double>(preserved) / original.size();
  result.novelty =
      cleaned.empty() ? 0.0 : static_cast<double>(novel) / cleaned.size();

  if (result.containment < options.retention_threshold)
    result.flagged = CleanFlag::over_reduction;
  else if (result.novelty > options.novelty_threshold)
    result.flagged = CleanFlag::hallucination;
  else
    result.flagged = CleanFlag::ok;
  return result;
}

}  // namespace termbench
