#ifndef TERMBENCH_UTF8_HPP
#define TERMBENCH_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>

// Minimal UTF-8 handling for the scripts this toolkit works with
// (Latin and Cyrillic). Unknown scripts are treated as symbols.

namespace termbench::utf8 {

// Decodes strictly; throws termbench::Error on malformed input.
std::u32string decode(std::string_view text);

// Decodes, silently dropping malformed byte sequences.
std::u32string decode_lossy(std::string_view text);

bool is_valid(std::string_view text);

std::string encode(std::u32string_view codepoints);
void append(std::string& out, char32_t cp);

// Letters: ASCII, Latin-1 supplement, Latin Extended-A/B, Cyrillic.
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);

// ASCII whitespace plus the common Unicode space separators.
bool is_space(char32_t cp);

// C0/C1 controls (except \t \n \r), DEL, soft hyphen, zero-width
// and BOM characters that PDF conversion tends to leave behind.
bool is_control(char32_t cp);

// Lowercases ASCII, Latin-1, the paired Latin Extended-A/B blocks and
// Cyrillic (including Ё -> ё). Everything else is returned unchanged.
char32_t to_lower(char32_t cp);

std::string lowercase(std::string_view text);

}  // namespace termbench::utf8

#endif
