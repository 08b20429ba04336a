#include "termbench/corpus.hpp"

#include <algorithm>

#include "termbench/error.hpp"
#include "termbench/io_util.hpp"
#include "termbench/parallel.hpp"
#include "termbench/tokenize.hpp"
#include "termbench/utf8.hpp"

namespace termbench {

namespace {

const std::vector<std::string>& supported_languages() {
  static const std::vector<std::string> langs = {"en", "ru"};
  return langs;
}

SourceKind infer_source_kind(const std::string& relative_path) {
  if (relative_path.find("magazine") != std::string::npos)
    return SourceKind::magazine;
  if (relative_path.find("web") != std::string::npos) return SourceKind::web;
  return SourceKind::other;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& root, LoadReport* report,
                   int jobs) {
  namespace fs = std::filesystem;
  if (!fs::exists(root) || !fs::is_directory(root))
    throw Error("corpus root not found: " + root.string());

  struct Pending {
    std::string id;
    std::string language;
    fs::path path;
  };
  std::vector<Pending> pending;

  for (const fs::directory_entry& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    std::string language = entry.path().filename().string();
    const auto& langs = supported_languages();
    if (std::find(langs.begin(), langs.end(), language) == langs.end()) {
      if (report) {
        report->skipped_directories.push_back(language);
        report->warnings.push_back("skipping unknown language directory: " +
                                   entry.path().string());
      }
      continue;
    }
    for (const fs::directory_entry& file :
         fs::recursive_directory_iterator(entry.path())) {
      if (!file.is_regular_file()) continue;
      if (file.path().extension() != ".txt") continue;
      Pending p;
      p.path = file.path();
      p.id = fs::relative(file.path(), root).generic_string();
      p.language = language;
      pending.push_back(std::move(p));
    }
  }
  std::sort(pending.begin(), pending.end(),
            [](const Pending& a, const Pending& b) { return a.id < b.id; });

  Corpus corpus;
  corpus.documents.resize(pending.size());
  for (const std::string& lang : supported_languages())
    corpus.words_per_language[lang] = 0;

  parallel_for(pending.size(), jobs, [&](std::size_t i) {
    const Pending& p = pending[i];
    Document doc;
    doc.id = p.id;
    doc.language = p.language;
    doc.source_kind = infer_source_kind(p.id);
    doc.text = io::read_file_utf8(p.path);
    doc.token_count = tokenize(doc.text, doc.language).size();
    corpus.documents[i] = std::move(doc);
  });

  for (const Document& doc : corpus.documents)
    corpus.words_per_language[doc.language] += doc.token_count;
  return corpus;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  for (const Document& doc : corpus.documents) {
    LanguageStats& lang = stats.languages[doc.language];
    lang.documents += 1;
    lang.words += doc.token_count;
    stats.total_documents += 1;
    stats.total_words += doc.token_count;
  }
  return stats;
}

namespace {

// Joins "fash-\nion" shapes: letter, hyphen, a single line break with
// optional horizontal spacing, letter.
std::u32string join_hyphenation(const std::u32string& in) {
  std::u32string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    char32_t cp = in[i];
    bool joined = false;
    if ((cp == U'-' || cp == 0x2010) && !out.empty() &&
        utf8::is_letter(out.back())) {
      std::size_t j = i + 1;
      while (j < in.size() && (in[j] == U' ' || in[j] == U'\t' || in[j] == U'\r'))
        ++j;
      if (j < in.size() && in[j] == U'\n') {
        ++j;
        while (j < in.size() &&
               (in[j] == U' ' || in[j] == U'\t' || in[j] == U'\r'))
          ++j;
        if (j < in.size() && utf8::is_letter(in[j])) {
          i = j;  // drop the hyphen and the break
          joined = true;
        }
      }
    }
    if (!joined) {
      out.push_back(cp);
      ++i;
    }
  }
  return out;
}

// Deletes digit runs whose immediate neighbours are letters, repeating
// until stable ("co2llection" -> "collection").
std::u32string remove_embedded_digits(std::u32string word) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (!utf8::is_digit(word[i])) continue;
      std::size_t end = i;
      while (end < word.size() && utf8::is_digit(word[end])) ++end;
      if (i > 0 && end < word.size() && utf8::is_letter(word[i - 1]) &&
          utf8::is_letter(word[end])) {
        word.erase(i, end - i);
        changed = true;
        break;
      }
      i = end;
    }
  }
  return word;
}

}  // namespace

std::string clean_text(std::string_view raw) {
  std::u32string cps = join_hyphenation(utf8::decode_lossy(raw));

  std::u32string kept;
  kept.reserve(cps.size());
  for (char32_t cp : cps)
    if (!utf8::is_control(cp)) kept.push_back(cp);

  std::string out;
  std::size_t i = 0;
  while (i < kept.size()) {
    while (i < kept.size() && utf8::is_space(kept[i])) ++i;
    std::size_t begin = i;
    while (i < kept.size() && !utf8::is_space(kept[i])) ++i;
    if (begin == i) continue;
    std::u32string word =
        remove_embedded_digits(kept.substr(begin, i - begin));
    bool has_content = std::any_of(word.begin(), word.end(), [](char32_t cp) {
      return utf8::is_letter(cp) || utf8::is_digit(cp);
    });
    if (!has_content) continue;  // pure punctuation/symbol run
    if (!out.empty()) out.push_back(' ');
    out += utf8::encode(word);
  }
  return out;
}

}  // namespace termbench
