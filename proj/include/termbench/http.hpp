#ifndef TERMBENCH_HTTP_HPP
#define TERMBENCH_HTTP_HPP

#include <optional>
#include <string>
#include <string_view>

namespace termbench::http {

struct UrlParts {
  std::string scheme_host_port;  // e.g. "https://example.com:8443"
  std::string path;              // e.g. "/v1/chat/completions"
};

// Splits an absolute http(s) URL; throws Error on anything else.
UrlParts split_url(std::string_view url);

struct FetchOptions {
  std::string user_agent = "termbench/1.0 (glossary harvester)";
  int timeout_seconds = 30;
};

// GETs the URL; returns the body, or nullopt with the failure reason
// written to *error.
std::optional<std::string> fetch_url(const std::string& url,
                                     const FetchOptions& options,
                                     std::string* error);

}  // namespace termbench::http

#endif
