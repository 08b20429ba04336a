#include "termbench/tokenize.hpp"

#include <algorithm>

#include "termbench/error.hpp"
#include "termbench/io_util.hpp"
#include "termbench/utf8.hpp"

namespace termbench {

namespace {

bool is_token_char(char32_t cp) {
  return utf8::is_letter(cp) || utf8::is_digit(cp);
}

bool is_joiner(char32_t cp) {
  return cp == U'-' || cp == 0x2010 || cp == U'\'' || cp == 0x2019;
}

bool is_sentence_punct(char32_t cp) {
  switch (cp) {
    case U'.':
    case U'!':
    case U'?':
    case U';':
    case U':':
    case 0x2026:  // ellipsis
      return true;
    default:
      return false;
  }
}

struct ScanItem {
  Token token;
  bool boundary_before = false;  // sentence punctuation preceded this token
};

// Single scanner behind tokenize() and token_segments().
std::vector<ScanItem> scan(std::string_view text, const TokenizeOptions& options) {
  std::u32string cps = utf8::decode_lossy(text);
  std::vector<ScanItem> items;
  bool pending_boundary = false;
  std::u32string punct_run;

  auto flush_punct = [&] {
    if (punct_run.empty()) return;
    if (options.keep_punctuation) {
      ScanItem item;
      item.token.surface = utf8::encode(punct_run);
      item.token.normalized = item.token.surface;
      item.boundary_before = pending_boundary;
      pending_boundary = false;
      items.push_back(std::move(item));
    }
    punct_run.clear();
  };

  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    char32_t cp = cps[i];
    if (is_token_char(cp)) {
      flush_punct();
      std::u32string surface;
      while (i < n) {
        if (is_token_char(cps[i])) {
          surface.push_back(cps[i]);
          ++i;
        } else if (is_joiner(cps[i]) && i + 1 < n && is_token_char(cps[i + 1])) {
          surface.push_back(cps[i]);
          ++i;
        } else {
          break;
        }
      }
      ScanItem item;
      item.token.surface = utf8::encode(surface);
      std::u32string lowered = surface;
      for (char32_t& c : lowered) c = utf8::to_lower(c);
      item.token.normalized = utf8::encode(lowered);
      item.boundary_before = pending_boundary;
      pending_boundary = false;
      items.push_back(std::move(item));
    } else {
      if (is_sentence_punct(cp)) pending_boundary = true;
      if (!utf8::is_space(cp) && !utf8::is_control(cp)) punct_run.push_back(cp);
      else flush_punct();
      ++i;
    }
  }
  flush_punct();
  return items;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::string_view language,
                            const TokenizeOptions& options) {
  (void)language;  // same segmentation rules for Latin and Cyrillic
  std::vector<Token> out;
  for (ScanItem& item : scan(text, options)) out.push_back(std::move(item.token));
  return out;
}

std::vector<std::vector<std::string>> token_segments(std::string_view text,
                                                     std::string_view language) {
  (void)language;
  std::vector<std::vector<std::string>> segments;
  std::vector<std::string> current;
  for (ScanItem& item : scan(text, {})) {
    if (item.boundary_before && !current.empty()) {
      segments.push_back(std::move(current));
      current.clear();
    }
    current.push_back(std::move(item.token.normalized));
  }
  if (!current.empty()) segments.push_back(std::move(current));
  return segments;
}

namespace {

constexpr char32_t kDefaultStripCharset[] =
    U"-‐‑‒–—―"  // hyphens and dashes
    U"'‘’‚\"“”„«»‹›"
    U".,;:!?…()[]{}<>@#%&*+/\\|~^=_"
    U"·•°$€£₽§";

bool ends_with(const std::u32string& w, std::u32string_view suffix) {
  return w.size() >= suffix.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

}  // namespace

NormalizationRules NormalizationRules::defaults(std::string_view language) {
  NormalizationRules rules;
  rules.language = std::string(language);
  rules.plural_exceptions = default_plural_exceptions();
  rules.strip_charset = kDefaultStripCharset;
  return rules;
}

std::string strip_english_plural(std::string_view word,
                                 const std::set<std::string>& exceptions) {
  if (exceptions.count(std::string(word))) return std::string(word);
  std::u32string w = utf8::decode_lossy(word);
  if (w.size() < 3 || w.back() != U's') return std::string(word);
  // -es after a sibilant: dresses -> dress, watches -> watch.
  if (ends_with(w, U"es") && w.size() >= 4) {
    std::u32string stem = w.substr(0, w.size() - 2);
    if (stem.size() >= 3 &&
        (stem.back() == U's' || stem.back() == U'x' || stem.back() == U'z' ||
         ends_with(stem, U"ch") || ends_with(stem, U"sh")))
      return utf8::encode(stem);
  }
  // Plain -s, guarded against -ss/-us/-is and non-letter stems.
  if (ends_with(w, U"ss") || ends_with(w, U"us") || ends_with(w, U"is"))
    return std::string(word);
  if (!utf8::is_letter(w[w.size() - 2])) return std::string(word);
  if (w.size() - 1 < 3) return std::string(word);
  return utf8::encode(w.substr(0, w.size() - 1));
}

std::string normalize_term(std::string_view surface,
                           const NormalizationRules& rules) {
  std::u32string cps = utf8::decode_lossy(surface);
  for (char32_t& cp : cps) cp = utf8::to_lower(cp);

  const auto in_charset = [&](char32_t cp) {
    return rules.strip_charset.find(cp) != std::u32string::npos;
  };

  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_space(cps[i])) ++i;
    std::size_t begin = i;
    while (i < cps.size() && !utf8::is_space(cps[i])) ++i;
    if (begin == i) continue;
    std::size_t end = i;
    while (begin < end && in_charset(cps[begin])) ++begin;
    while (end > begin && in_charset(cps[end - 1])) --end;
    if (begin == end) continue;
    std::u32string word = cps.substr(begin, end - begin);
    bool all_digits = std::all_of(word.begin(), word.end(), utf8::is_digit);
    if (all_digits) continue;  // standalone numerals are not term material
    std::string encoded = utf8::encode(word);
    if (rules.language == "en")
      encoded = strip_english_plural(encoded, rules.plural_exceptions);
    words.push_back(std::move(encoded));
  }
  return io::join(words, " ");
}

std::set<std::string> load_wordlist(const std::filesystem::path& path) {
  std::set<std::string> out;
  std::string content = io::read_file_utf8(path);
  for (const std::string& raw : io::split_lines(content)) {
    std::string_view line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = io::trim(line);
    if (!line.empty()) out.insert(utf8::lowercase(line));
  }
  return out;
}

std::u32string load_charset(const std::filesystem::path& path) {
  std::u32string out;
  std::string content = io::read_file_utf8(path);
  for (const std::string& raw : io::split_lines(content)) {
    std::string_view line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    for (char32_t cp : utf8::decode_lossy(line))
      if (!utf8::is_space(cp)) out.push_back(cp);
  }
  return out;
}

namespace {

std::set<std::string> make_en_stopwords() {
  return {
      "a",       "about",   "above",  "after",   "again",  "against", "all",
      "also",    "an",      "and",    "any",     "are",    "as",      "at",
      "be",      "because", "been",   "before",  "being",  "below",   "between",
      "both",    "but",     "by",     "can",     "did",    "do",      "does",
      "doing",   "down",    "during", "each",    "else",   "few",     "for",
      "from",    "further", "had",    "has",     "have",   "having",  "he",
      "her",     "here",    "him",    "his",     "how",    "i",       "if",
      "in",      "into",    "is",     "it",      "its",    "just",    "me",
      "more",    "most",    "my",     "no",      "nor",    "not",     "of",
      "off",     "on",      "once",   "only",    "or",     "other",   "our",
      "out",     "over",    "own",    "same",    "she",    "since",   "so",
      "some",    "such",    "than",   "that",    "the",    "their",   "them",
      "then",    "there",   "these",  "they",    "this",   "those",   "through",
      "to",      "too",     "under",  "until",   "up",     "us",      "very",
      "was",     "we",      "were",   "what",    "when",   "where",   "which",
      "while",   "who",     "whom",   "why",     "will",   "with",    "you",
      "your"};
}

std::set<std::string> make_ru_stopwords() {
  return {
      "а",      "без",    "бы",     "был",    "была",   "были",   "было",
      "быть",   "в",      "вам",    "вас",    "вдруг",  "ведь",   "во",
      "вот",    "все",    "всё",    "вы",     "где",    "да",     "даже",
      "для",    "до",     "его",    "ее",     "её",     "ей",     "ему",
      "если",   "есть",   "еще",    "ещё",    "ж",      "же",     "за",
      "здесь",  "и",      "из",     "или",    "им",     "их",     "к",
      "как",    "какой",  "когда",  "кто",    "ли",     "мне",    "мой",
      "мы",     "на",     "над",    "надо",   "не",     "него",   "нее",
      "неё",    "ней",    "нет",    "ни",     "них",    "но",     "ну",
      "о",      "об",     "один",   "он",     "она",    "они",    "от",
      "по",     "под",    "после",  "потом",  "почти",  "при",    "раз",
      "с",      "сам",    "свой",   "себе",   "себя",   "со",     "так",
      "также",  "такой",  "там",    "тебя",   "тем",    "теперь", "то",
      "того",   "тоже",   "только", "том",    "тот",    "тут",    "ты",
      "у",      "уж",     "уже",    "чего",   "чем",    "что",    "чтобы",
      "эти",    "это",    "этого",  "этом",   "этот",   "я"};
}

}  // namespace

const std::set<std::string>& default_stopwords(std::string_view language) {
  static const std::set<std::string> en = make_en_stopwords();
  static const std::set<std::string> ru = make_ru_stopwords();
  static const std::set<std::string> empty;
  if (language == "en") return en;
  if (language == "ru") return ru;
  return empty;
}

const std::set<std::string>& default_plural_exceptions() {
  static const std::set<std::string> exceptions = {
      "jeans",     "trousers", "pants",      "shorts",   "tights",
      "leggings",  "clothes",  "glasses",    "sunglasses", "pyjamas",
      "pajamas",   "dungarees", "overalls",  "culottes", "scissors",
      "braces",    "flares"};
  return exceptions;
}

}  // namespace termbench
