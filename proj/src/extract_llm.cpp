#include "termbench/extract_llm.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "termbench/error.hpp"
#include "termbench/io_util.hpp"
#include "termbench/tokenize.hpp"
#include "termbench/utf8.hpp"

namespace termbench {

std::string build_extraction_prompt(
    std::string_view chunk, const std::vector<std::string>& already_found,
    const PromptTemplate& tmpl) {
  if (!tmpl.has_placeholder("text") || !tmpl.has_placeholder("exclusions"))
    throw Error(
        "extraction template must contain {text} and {exclusions} "
        "placeholders");
  std::string exclusions;
  if (!already_found.empty()) {
    exclusions =
        " Do not include the following terms, which were already "
        "extracted: " +
        io::join(already_found, ", ") + ".";
  }
  return tmpl.render(
      {{"text", std::string(chunk)}, {"exclusions", exclusions}});
}

namespace {

std::string_view trim_view(std::string_view text) {
  return io::trim(text);
}

// "1." / "1)" / "-" / "*" / "•" / "–" markers in front of list items.
std::string_view strip_list_marker(std::string_view line, bool* had_marker) {
  *had_marker = false;
  auto rest = trim_view(line);
  std::size_t digits = 0;
  while (digits < rest.size() && rest[digits] >= '0' && rest[digits] <= '9')
    ++digits;
  if (digits > 0 && digits < rest.size() &&
      (rest[digits] == '.' || rest[digits] == ')')) {
    *had_marker = true;
    return trim_view(rest.substr(digits + 1));
  }
  for (const std::string_view marker : {"-", "*", "•", "–", "—"}) {
    if (rest.size() > marker.size() && rest.substr(0, marker.size()) == marker &&
        (rest[marker.size()] == ' ' || rest[marker.size()] == '\t')) {
      *had_marker = true;
      return trim_view(rest.substr(marker.size() + 1));
    }
  }
  return rest;
}

// Strips markdown emphasis, surrounding quotes and stray punctuation
// from one list item.
std::string clean_item(std::string_view item) {
  auto value = trim_view(item);
  // Layers can nest ('"dress"', '**term**;), so strip until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const std::string_view affix : {"**", "\"", "'"}) {
      while (value.size() >= 2 * affix.size() && value.starts_with(affix) &&
             value.ends_with(affix)) {
        value = trim_view(
            value.substr(affix.size(), value.size() - 2 * affix.size()));
        changed = true;
      }
    }
    while (!value.empty() && (value.back() == '.' || value.back() == ';' ||
                              value.back() == ',')) {
      value = trim_view(value.substr(0, value.size() - 1));
      changed = true;
    }
  }
  return std::string(value);
}

std::vector<std::string> whitespace_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (const char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::size_t word_count(std::string_view text) {
  return whitespace_words(text).size();
}

bool has_letter(std::string_view text) {
  for (const char32_t cp : utf8::decode_lossy(text))
    if (utf8::is_letter(cp)) return true;
  return false;
}

// Headings are short; longer colon-terminated lines are preamble
// ("Here are the terms I found:").
constexpr std::size_t kMaxHeadingWords = 4;
// Items longer than this are prose, not terms.
constexpr std::size_t kMaxItemWords = 6;

}  // namespace

ParsedResponse parse_term_response(std::string_view message) {
  ParsedResponse parsed;
  std::optional<std::string> category;
  for (const auto& raw_line : io::split_lines(message)) {
    const auto trimmed = trim_view(raw_line);
    if (trimmed.empty()) continue;

    bool had_marker = false;
    auto body = strip_list_marker(trimmed, &had_marker);

    if (!body.empty() && body.back() == ':') {
      const auto heading = clean_item(body.substr(0, body.size() - 1));
      if (!heading.empty() && word_count(heading) <= kMaxHeadingWords) {
        category = utf8::lowercase(heading);
      } else {
        ++parsed.unparsed_lines;  // introductory prose
      }
      continue;
    }

    bool line_yielded = false;
    bool line_rejected = false;
    for (const auto& piece : io::split(std::string(body), ',')) {
      const auto item = clean_item(piece);
      if (item.empty()) continue;
      if (!has_letter(item) || word_count(item) > kMaxItemWords) {
        line_rejected = true;
        continue;
      }
      ParsedTerm term;
      term.term = item;
      term.category = category;
      parsed.terms.push_back(std::move(term));
      line_yielded = true;
    }
    if (!line_yielded && (line_rejected || !had_marker))
      ++parsed.unparsed_lines;
  }
  return parsed;
}

namespace {

std::vector<std::string> term_tokens(std::string_view term,
                                     std::string_view language) {
  std::vector<std::string> tokens;
  for (const auto& token : tokenize(term, language))
    tokens.push_back(token.normalized);
  return tokens;
}

// Lowercased token streams of every document in one language.
class GroundingIndex {
 public:
  GroundingIndex(const Corpus& corpus, std::string_view language) {
    for (const auto& doc : corpus.documents) {
      if (doc.language != language) continue;
      std::vector<std::string> tokens;
      for (const auto& token : tokenize(doc.text, language))
        tokens.push_back(token.normalized);
      docs_.push_back(std::move(tokens));
    }
  }

  bool contains(const std::vector<std::string>& sequence) const {
    if (sequence.empty()) return false;
    for (const auto& doc : docs_) {
      if (doc.size() < sequence.size()) continue;
      if (std::search(doc.begin(), doc.end(), sequence.begin(),
                      sequence.end()) != doc.end())
        return true;
    }
    return false;
  }

 private:
  std::vector<std::vector<std::string>> docs_;
};

}  // namespace

std::pair<std::vector<std::string>, std::vector<std::string>> ground_in_corpus(
    const std::vector<std::string>& terms, const Corpus& corpus,
    std::string_view language) {
  const GroundingIndex index(corpus, language);
  std::vector<std::string> kept;
  std::vector<std::string> discarded;
  for (const auto& term : terms) {
    if (index.contains(term_tokens(term, language)))
      kept.push_back(term);
    else
      discarded.push_back(term);
  }
  return {std::move(kept), std::move(discarded)};
}

std::vector<std::string> build_chunks(const Corpus& corpus,
                                      std::string_view language,
                                      int chunk_size) {
  if (chunk_size < 1) throw Error("chunk_size must be >= 1");
  std::vector<std::string> chunks;
  for (const auto& doc : corpus.documents) {
    if (doc.language != language) continue;
    const auto words = whitespace_words(doc.text);
    for (std::size_t start = 0; start < words.size();
         start += static_cast<std::size_t>(chunk_size)) {
      const auto end = std::min(
          words.size(), start + static_cast<std::size_t>(chunk_size));
      std::string chunk = words[start];
      for (std::size_t i = start + 1; i < end; ++i) {
        chunk += ' ';
        chunk += words[i];
      }
      chunks.push_back(std::move(chunk));
    }
  }
  return chunks;
}

LlmTermList extract_llm_terms(const Corpus& corpus, std::string_view language,
                              ChatClient& client,
                              const LlmExtractionConfig& config,
                              const PromptTemplate& tmpl) {
  if (config.max_rounds < 1) throw Error("max_rounds must be >= 1");
  if (config.min_new_per_round < 0)
    throw Error("min_new_per_round must be >= 0");
  if (config.retry_limit < 0) throw Error("retry_limit must be >= 0");

  // Split the text on whitespace so every chunk fits a prompt.
  const auto chunks = build_chunks(corpus, language, config.chunk_size);
  const GroundingIndex grounding(corpus, language);
  const auto rules = NormalizationRules::defaults(language);

  LlmTermList result;
  std::set<std::string> seen;          // every normalized form met so far
  std::vector<std::string> exclusions;  // kept surfaces, first-seen order

  for (std::size_t chunk_index = 0; chunk_index < chunks.size();
       ++chunk_index) {
    std::vector<ChatMessage> conversation;
    for (int round = 1; round <= config.max_rounds; ++round) {
      conversation.push_back(
          {"user",
           build_extraction_prompt(chunks[chunk_index], exclusions, tmpl)});
      std::string reply;
      try {
        auto response =
            send_with_retries(client, conversation, config.retry_limit);
        reply = std::move(response.content);
      } catch (const ChatError& error) {
        result.errors.push_back("chunk " + std::to_string(chunk_index + 1) +
                                " aborted: " + error.what());
        break;
      }
      ++result.rounds_used;
      conversation.push_back({"assistant", reply});

      const auto parsed = parse_term_response(reply);
      result.unparsed_lines += parsed.unparsed_lines;

      int new_terms = 0;
      for (const auto& item : parsed.terms) {
        const auto normalized = normalize_term(item.term, rules);
        if (normalized.empty()) continue;
        if (!seen.insert(normalized).second) {
          result.discarded.duplicates.push_back(item.term);
          continue;
        }
        if (config.grounding_enabled &&
            !grounding.contains(term_tokens(item.term, language))) {
          result.discarded.not_in_corpus.push_back(item.term);
          continue;
        }
        LlmTerm term;
        term.surface = item.term;
        term.normalized = normalized;
        term.category = item.category;
        term.round = round;
        result.terms.push_back(std::move(term));
        exclusions.push_back(item.term);
        ++new_terms;
      }

      if (new_terms < config.min_new_per_round) break;
    }
  }
  return result;
}

RankedTermList ranked_view(const LlmTermList& list,
                           std::string_view language) {
  RankedTermList ranked;
  ranked.method = "llm";
  ranked.language = std::string(language);
  int rank = 0;
  for (const auto& term : list.terms) {
    TermCandidate entry;
    entry.tokens = io::split(term.normalized, ' ');
    entry.surface = term.normalized;
    entry.n = static_cast<int>(entry.tokens.size());
    entry.frequency = 1;
    entry.rank = ++rank;
    ranked.entries.push_back(std::move(entry));
  }
  return ranked;
}

std::string llm_terms_to_json(const LlmTermList& list,
                              std::string_view language) {
  nlohmann::json doc;
  doc["language"] = std::string(language);
  doc["rounds_used"] = list.rounds_used;
  doc["unparsed_lines"] = list.unparsed_lines;
  doc["errors"] = list.errors;
  doc["terms"] = nlohmann::json::array();
  for (const auto& term : list.terms) {
    nlohmann::json item{{"surface", term.surface},
                        {"normalized", term.normalized},
                        {"round", term.round}};
    if (term.category) item["category"] = *term.category;
    doc["terms"].push_back(std::move(item));
  }
  doc["discarded"] =
      nlohmann::json{{"not_in_corpus", list.discarded.not_in_corpus},
                     {"duplicates", list.discarded.duplicates}};
  return doc.dump(2) + "\n";
}

}  // namespace termbench
