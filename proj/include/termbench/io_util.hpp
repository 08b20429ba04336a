#ifndef TERMBENCH_IO_UTIL_HPP
#define TERMBENCH_IO_UTIL_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace termbench::io {

std::string read_file(const std::filesystem::path& path);

// read_file plus UTF-8 validation; the error names the file.
std::string read_file_utf8(const std::filesystem::path& path);

// Writes to a temporary sibling and renames over the target.
void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content);

std::vector<std::string> split(std::string_view text, char delim);
std::string join(const std::vector<std::string>& parts,
                 std::string_view separator);

// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view text);

// Splits into lines, accepting both \n and \r\n endings.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace termbench::io

#endif
