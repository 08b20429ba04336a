#ifndef TERMBENCH_CORPUS_HPP
#define TERMBENCH_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace termbench {

enum class SourceKind { magazine, web, other };

struct Document {
  std::string id;        // path relative to the corpus root
  std::string language;  // "en" or "ru"
  SourceKind source_kind = SourceKind::other;
  std::string text;
  std::size_t token_count = 0;
};

struct Corpus {
  std::vector<Document> documents;
  std::map<std::string, std::size_t> words_per_language;
};

struct LoadReport {
  std::vector<std::string> skipped_directories;
  std::vector<std::string> warnings;
};

// Layout: <root>/en/*.txt, <root>/ru/*.txt (recursive, UTF-8).
// Documents are ordered by relative path. Unknown language
// subdirectories are skipped and recorded in the report.
Corpus load_corpus(const std::filesystem::path& root,
                   LoadReport* report = nullptr, int jobs = 1);

struct LanguageStats {
  std::size_t documents = 0;
  std::size_t words = 0;
};

struct CorpusStats {
  std::map<std::string, LanguageStats> languages;
  std::size_t total_documents = 0;
  std::size_t total_words = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

// Deterministic conversion-noise repair: collapses whitespace, removes
// control characters, joins line-break hyphenation, deletes digit runs
// embedded between letters, and drops pure punctuation/symbol runs.
// Idempotent.
std::string clean_text(std::string_view raw);

}  // namespace termbench

#endif
