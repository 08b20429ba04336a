#ifndef TERMBENCH_TOKENIZE_HPP
#define TERMBENCH_TOKENIZE_HPP

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace termbench {

struct Token {
  std::string surface;     // as it appears in the text
  std::string normalized;  // lowercased surface
};

struct TokenizeOptions {
  // When set, runs of non-letter, non-space characters are emitted as
  // tokens instead of being dropped.
  bool keep_punctuation = false;
};

// Splits on word boundaries. A token is a run of letters/digits;
// hyphens and apostrophes are kept when they sit between two such
// characters. Pure punctuation is dropped, order preserved.
std::vector<Token> tokenize(std::string_view text, std::string_view language,
                            const TokenizeOptions& options = {});

// Normalized token runs split at sentence punctuation (. ! ? ; : and
// ellipsis), so that n-gram windows never span a sentence boundary.
std::vector<std::vector<std::string>> token_segments(std::string_view text,
                                                     std::string_view language);

struct NormalizationRules {
  std::string language;                    // "en" or "ru"
  std::set<std::string> plural_exceptions; // stored lowercased
  std::u32string strip_charset;            // stripped at word boundaries

  static NormalizationRules defaults(std::string_view language);
};

// Lowercases, strips boundary punctuation per word, drops standalone
// numeral words, collapses whitespace, and (English only) standardizes
// plurals. Returns "" when nothing survives.
std::string normalize_term(std::string_view surface,
                           const NormalizationRules& rules);

// Naive English plural standardization with pluralia-tantum exceptions.
std::string strip_english_plural(std::string_view word,
                                 const std::set<std::string>& exceptions);

// One entry per line, '#' starts a comment. Entries are lowercased.
std::set<std::string> load_wordlist(const std::filesystem::path& path);

// Concatenation of the file's characters, comments and whitespace
// removed; used for boundary strip charsets.
std::u32string load_charset(const std::filesystem::path& path);

const std::set<std::string>& default_stopwords(std::string_view language);
const std::set<std::string>& default_plural_exceptions();

}  // namespace termbench

#endif
