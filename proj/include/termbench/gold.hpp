#ifndef TERMBENCH_GOLD_HPP
#define TERMBENCH_GOLD_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termbench/tokenize.hpp"

namespace termbench {

struct GoldEntry {
  std::string en_term;
  std::string ru_term;
  std::optional<std::string> en_definition;
  std::optional<std::string> ru_definition;
  std::optional<std::string> source;
};

struct GoldStandard {
  std::vector<GoldEntry> entries;
  // normalized term -> entry index, one index per language
  std::map<std::string, std::size_t> en_index;
  std::map<std::string, std::size_t> ru_index;
  std::vector<std::string> warnings;

  const std::map<std::string, std::size_t>& index(
      std::string_view language) const;
};

// Rebuilds both indexes with the shared normalizer. Entries whose
// normalized term collides with an earlier one are merged: the first
// entry wins, missing definitions are filled in, conflicts are logged
// as warnings.
void build_gold_index(GoldStandard& gold);

// TSV with 2-4 columns: en_term, ru_term, [en_definition],
// [ru_definition]. A header row is detected by its literal column
// names and skipped.
GoldStandard load_gold_tsv(const std::string& path);
GoldStandard parse_gold_tsv(std::string_view text,
                            const std::string& origin);

// Canonical 4-column TSV with header; definitions empty when absent.
std::string gold_to_tsv(const GoldStandard& gold);

bool gold_contains(const GoldStandard& gold, std::string_view term,
                   std::string_view language);

// Maps 0-based table column positions onto gold fields. Negative
// positions mean "not present in this table".
struct GoldColumnMap {
  int en_term = 0;
  int ru_term = 1;
  int en_definition = -1;
  int ru_definition = -1;
};

GoldColumnMap parse_column_map(std::string_view text);

struct HarvestResult {
  std::vector<GoldEntry> entries;
  int tables_seen = 0;
  int rows_skipped = 0;
  std::vector<std::string> warnings;
};

// Pulls rows out of every <table> in the document. A row yields an
// entry only when both mapped term cells exist and are non-empty; other
// rows are skipped and counted. Never touches the network.
HarvestResult harvest_gold_html(std::string_view html,
                                const GoldColumnMap& column_map,
                                const std::string& source = "");

// Minimal HTML helpers used by the harvester (exposed for tests).
std::string strip_html_tags(std::string_view html);
std::string decode_html_entities(std::string_view text);

}  // namespace termbench

#endif
