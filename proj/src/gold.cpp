#include "termbench/gold.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "termbench/error.hpp"
#include "termbench/io_util.hpp"
#include "termbench/utf8.hpp"

namespace termbench {

const std::map<std::string, std::size_t>& GoldStandard::index(
    std::string_view language) const {
  if (language == "en") return en_index;
  if (language == "ru") return ru_index;
  throw Error("unsupported language: " + std::string(language) +
              " (expected 'en' or 'ru')");
}

namespace {

void merge_definition(std::optional<std::string>& into,
                      const std::optional<std::string>& from,
                      const std::string& term, const char* which,
                      std::vector<std::string>& warnings) {
  if (!from) return;
  if (!into) {
    into = from;
    return;
  }
  if (*into != *from) {
    warnings.push_back("conflicting " + std::string(which) +
                       " definitions for '" + term + "'; keeping the first");
  }
}

void index_language(GoldStandard& gold, bool english,
                    const NormalizationRules& rules) {
  auto& index = english ? gold.en_index : gold.ru_index;
  index.clear();
  for (std::size_t i = 0; i < gold.entries.size(); ++i) {
    const auto& term =
        english ? gold.entries[i].en_term : gold.entries[i].ru_term;
    const auto key = normalize_term(term, rules);
    if (key.empty()) continue;
    auto [it, inserted] = index.emplace(key, i);
    if (inserted) continue;
    // Duplicate normalized term: keep the earlier entry, pull any
    // definitions the newcomer has that the keeper lacks.
    auto& keeper = gold.entries[it->second];
    const auto& dup = gold.entries[i];
    gold.warnings.push_back("duplicate " +
                            std::string(english ? "en" : "ru") + " term '" +
                            key + "' merged");
    merge_definition(keeper.en_definition, dup.en_definition, key, "en",
                     gold.warnings);
    merge_definition(keeper.ru_definition, dup.ru_definition, key, "ru",
                     gold.warnings);
  }
}

}  // namespace

void build_gold_index(GoldStandard& gold) {
  index_language(gold, true, NormalizationRules::defaults("en"));
  index_language(gold, false, NormalizationRules::defaults("ru"));
}

GoldStandard parse_gold_tsv(std::string_view text,
                            const std::string& origin) {
  GoldStandard gold;
  const auto lines = io::split_lines(text);
  bool saw_data = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty()) continue;
    auto cells = io::split(lines[i], '\t');
    while (!cells.empty() && io::trim(cells.back()).empty()) cells.pop_back();
    if (cells.empty()) continue;
    if (!saw_data && cells.size() >= 2 &&
        io::trim(cells[0]) == "en_term" && io::trim(cells[1]) == "ru_term") {
      continue;  // header row
    }
    if (cells.size() < 2) {
      throw Error(origin + ":" + std::to_string(i + 1) +
                  ": expected at least 2 tab-separated columns, got " +
                  std::to_string(cells.size()));
    }
    if (cells.size() > 4) {
      throw Error(origin + ":" + std::to_string(i + 1) +
                  ": expected at most 4 tab-separated columns, got " +
                  std::to_string(cells.size()));
    }
    saw_data = true;
    GoldEntry entry;
    entry.en_term = std::string(io::trim(cells[0]));
    entry.ru_term = std::string(io::trim(cells[1]));
    if (cells.size() >= 3 && !io::trim(cells[2]).empty())
      entry.en_definition = std::string(io::trim(cells[2]));
    if (cells.size() >= 4 && !io::trim(cells[3]).empty())
      entry.ru_definition = std::string(io::trim(cells[3]));
    if (entry.en_term.empty() || entry.ru_term.empty()) {
      throw Error(origin + ":" + std::to_string(i + 1) +
                  ": empty term column");
    }
    gold.entries.push_back(std::move(entry));
  }
  if (gold.entries.empty())
    gold.warnings.push_back(origin + ": no gold entries found");
  build_gold_index(gold);
  return gold;
}

GoldStandard load_gold_tsv(const std::string& path) {
  return parse_gold_tsv(io::read_file_utf8(path), path);
}

std::string gold_to_tsv(const GoldStandard& gold) {
  std::ostringstream out;
  out << "en_term\tru_term\ten_definition\tru_definition\n";
  for (const auto& entry : gold.entries) {
    out << entry.en_term << '\t' << entry.ru_term;
    // Trailing empty columns are omitted so hand-written files
    // round-trip unchanged.
    if (entry.ru_definition) {
      out << '\t' << entry.en_definition.value_or("") << '\t'
          << *entry.ru_definition;
    } else if (entry.en_definition) {
      out << '\t' << *entry.en_definition;
    }
    out << '\n';
  }
  return out.str();
}

bool gold_contains(const GoldStandard& gold, std::string_view term,
                   std::string_view language) {
  const auto& index = gold.index(language);
  const auto key = normalize_term(term, NormalizationRules::defaults(language));
  return index.count(key) != 0;
}

GoldColumnMap parse_column_map(std::string_view text) {
  GoldColumnMap map;
  map.en_term = -1;
  map.ru_term = -1;
  for (const auto& part : io::split(std::string(text), ',')) {
    const auto item = io::trim(part);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error("bad column map entry '" + std::string(item) +
                  "' (expected field=index)");
    const auto field = io::trim(item.substr(0, eq));
    const auto value = io::trim(item.substr(eq + 1));
    int column = -1;
    try {
      column = std::stoi(std::string(value));
    } catch (const std::exception&) {
      throw Error("bad column index '" + std::string(value) + "' for field '" +
                  std::string(field) + "'");
    }
    if (column < 0)
      throw Error("column index for '" + std::string(field) +
                  "' must be non-negative");
    if (field == "en_term") map.en_term = column;
    else if (field == "ru_term") map.ru_term = column;
    else if (field == "en_definition") map.en_definition = column;
    else if (field == "ru_definition") map.ru_definition = column;
    else
      throw Error("unknown column map field '" + std::string(field) + "'");
  }
  if (map.en_term < 0 || map.ru_term < 0)
    throw Error("column map must assign both en_term and ru_term");
  return map;
}

namespace {

char ascii_lower(char c) {
  return static_cast<char>(
      std::tolower(static_cast<unsigned char>(c)));
}

bool starts_with_tag(std::string_view html, std::size_t pos,
                     std::string_view name) {
  if (pos + name.size() + 1 > html.size() || html[pos] != '<') return false;
  for (std::size_t i = 0; i < name.size(); ++i)
    if (ascii_lower(html[pos + 1 + i]) != name[i]) return false;
  const char next = html[pos + 1 + name.size()];
  return next == '>' || next == ' ' || next == '\t' || next == '\n' ||
         next == '\r' || next == '/';
}

// Position of the next occurrence of any listed tag at or after pos.
std::size_t find_tag(std::string_view html, std::size_t pos,
                     std::initializer_list<std::string_view> names,
                     std::string_view* which = nullptr) {
  for (; pos < html.size(); ++pos) {
    if (html[pos] != '<') continue;
    for (const auto name : names) {
      if (starts_with_tag(html, pos, name)) {
        if (which) *which = name;
        return pos;
      }
    }
  }
  return std::string_view::npos;
}

std::size_t skip_tag(std::string_view html, std::size_t pos) {
  const auto end = html.find('>', pos);
  return end == std::string_view::npos ? html.size() : end + 1;
}

std::string collapse_whitespace(std::string_view text) {
  const auto codepoints = utf8::decode_lossy(text);
  std::string out;
  bool pending_space = false;
  for (const char32_t cp : codepoints) {
    if (utf8::is_space(cp) || utf8::is_control(cp)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    utf8::append(out, cp);
  }
  return out;
}

std::string clean_cell(std::string_view raw) {
  return collapse_whitespace(decode_html_entities(strip_html_tags(raw)));
}

}  // namespace

std::string strip_html_tags(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  std::size_t pos = 0;
  while (pos < html.size()) {
    if (html[pos] == '<') {
      if (html.compare(pos, 4, "<!--") == 0) {
        const auto end = html.find("-->", pos);
        pos = end == std::string_view::npos ? html.size() : end + 3;
      } else {
        pos = skip_tag(html, pos);
      }
      out += ' ';  // tags never glue adjacent words together
      continue;
    }
    out += html[pos++];
  }
  return out;
}

std::string decode_html_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '&') {
      out += text[pos++];
      continue;
    }
    const auto semi = text.find(';', pos);
    if (semi == std::string_view::npos || semi - pos > 10) {
      out += text[pos++];
      continue;
    }
    const auto body = text.substr(pos + 1, semi - pos - 1);
    if (body == "amp") out += '&';
    else if (body == "lt") out += '<';
    else if (body == "gt") out += '>';
    else if (body == "quot") out += '"';
    else if (body == "apos") out += '\'';
    else if (body == "nbsp") out += ' ';
    else if (!body.empty() && body[0] == '#') {
      char32_t cp = 0;
      bool ok = body.size() > 1;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        for (std::size_t i = 2; ok && i < body.size(); ++i) {
          const char c = ascii_lower(body[i]);
          if (c >= '0' && c <= '9') cp = cp * 16 + static_cast<char32_t>(c - '0');
          else if (c >= 'a' && c <= 'f')
            cp = cp * 16 + static_cast<char32_t>(c - 'a' + 10);
          else ok = false;
        }
      } else {
        for (std::size_t i = 1; ok && i < body.size(); ++i) {
          if (body[i] >= '0' && body[i] <= '9')
            cp = cp * 10 + static_cast<char32_t>(body[i] - '0');
          else ok = false;
        }
      }
      if (ok && cp > 0 && cp <= 0x10FFFF) utf8::append(out, cp);
      else out += text.substr(pos, semi - pos + 1);
    } else {
      out += text[pos];
      ++pos;
      continue;
    }
    pos = semi + 1;
  }
  return out;
}

HarvestResult harvest_gold_html(std::string_view html,
                                const GoldColumnMap& column_map,
                                const std::string& source) {
  HarvestResult result;
  const int required_max = std::max(column_map.en_term, column_map.ru_term);

  std::size_t pos = 0;
  while (true) {
    const auto table_open = find_tag(html, pos, {"table"});
    if (table_open == std::string_view::npos) break;
    auto table_end = find_tag(html, table_open, {"/table"});
    if (table_end == std::string_view::npos) table_end = html.size();
    ++result.tables_seen;

    // Rows: everything from one <tr> to the next (or to </table>).
    auto row_open = find_tag(html, table_open, {"tr"});
    while (row_open != std::string_view::npos && row_open < table_end) {
      auto next_row = find_tag(html, skip_tag(html, row_open), {"tr"});
      const auto row_end =
          next_row == std::string_view::npos ? table_end
                                             : std::min(next_row, table_end);

      // Cells inside the row; a cell runs to the next cell or row end.
      std::vector<std::string> cells;
      bool header_row = true;
      auto cell_open = find_tag(html, row_open, {"td", "th"});
      while (cell_open != std::string_view::npos && cell_open < row_end) {
        std::string_view kind;
        find_tag(html, cell_open, {"td", "th"}, &kind);
        if (kind == "td") header_row = false;
        const auto content_start = skip_tag(html, cell_open);
        auto next_cell = find_tag(html, content_start, {"td", "th", "/tr"});
        const auto content_end =
            next_cell == std::string_view::npos ? row_end
                                                : std::min(next_cell, row_end);
        cells.push_back(clean_cell(
            html.substr(content_start, content_end - content_start)));
        cell_open = next_cell == std::string_view::npos ||
                            next_cell >= row_end ||
                            starts_with_tag(html, next_cell, "/tr")
                        ? std::string_view::npos
                        : next_cell;
      }

      row_open = next_row == std::string_view::npos || next_row >= table_end
                     ? std::string_view::npos
                     : next_row;

      if (cells.empty()) continue;
      if (header_row) continue;  // all-<th> rows label columns

      const auto cell_at = [&](int idx) -> std::string {
        if (idx < 0 || static_cast<std::size_t>(idx) >= cells.size())
          return "";
        return cells[static_cast<std::size_t>(idx)];
      };

      GoldEntry entry;
      entry.en_term = cell_at(column_map.en_term);
      entry.ru_term = cell_at(column_map.ru_term);
      if (static_cast<int>(cells.size()) <= required_max ||
          entry.en_term.empty() || entry.ru_term.empty()) {
        ++result.rows_skipped;
        continue;
      }
      const auto en_def = cell_at(column_map.en_definition);
      const auto ru_def = cell_at(column_map.ru_definition);
      if (!en_def.empty()) entry.en_definition = en_def;
      if (!ru_def.empty()) entry.ru_definition = ru_def;
      if (!source.empty()) entry.source = source;
      result.entries.push_back(std::move(entry));
    }
    pos = table_end + 1;
  }

  if (result.tables_seen == 0)
    result.warnings.push_back("no tables found" +
                              (source.empty() ? "" : " in " + source));
  if (result.rows_skipped > 0)
    result.warnings.push_back(std::to_string(result.rows_skipped) +
                              " row(s) skipped for missing term cells" +
                              (source.empty() ? "" : " in " + source));
  return result;
}

}  // namespace termbench
