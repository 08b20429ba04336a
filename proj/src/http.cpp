#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "termbench/chat_client.hpp"
#include "termbench/http.hpp"

namespace termbench {

namespace http {

UrlParts split_url(std::string_view url) {
  std::string_view rest;
  if (url.rfind("http://", 0) == 0)
    rest = url.substr(7);
  else if (url.rfind("https://", 0) == 0)
    rest = url.substr(8);
  else
    throw Error("URL must start with http:// or https://: " +
                std::string(url));
  std::size_t slash = rest.find('/');
  UrlParts parts;
  std::size_t prefix = url.size() - rest.size();
  if (slash == std::string_view::npos) {
    parts.scheme_host_port = std::string(url);
    parts.path = "/";
  } else {
    parts.scheme_host_port = std::string(url.substr(0, prefix + slash));
    parts.path = std::string(rest.substr(slash));
  }
  if (parts.scheme_host_port.size() == prefix)
    throw Error("URL has no host: " + std::string(url));
  return parts;
}

std::optional<std::string> fetch_url(const std::string& url,
                                     const FetchOptions& options,
                                     std::string* error) {
  try {
    UrlParts parts = split_url(url);
    httplib::Client client(parts.scheme_host_port);
    client.set_connection_timeout(options.timeout_seconds);
    client.set_read_timeout(options.timeout_seconds);
    client.set_follow_location(true);
    httplib::Headers headers = {{"User-Agent", options.user_agent}};
    httplib::Result res = client.Get(parts.path, headers);
    if (!res) {
      if (error) *error = httplib::to_string(res.error());
      return std::nullopt;
    }
    if (res->status != 200) {
      if (error) *error = "HTTP status " + std::to_string(res->status);
      return std::nullopt;
    }
    return res->body;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

}  // namespace http

std::string HttpChatClient::send(const std::vector<ChatMessage>& conversation) {
  http::UrlParts parts = http::split_url(settings_.endpoint);
  httplib::Client client(parts.scheme_host_port);
  client.set_connection_timeout(settings_.timeout_seconds);
  client.set_read_timeout(settings_.timeout_seconds);
  httplib::Headers headers;
  if (!settings_.api_key.empty())
    headers.emplace("Authorization", "Bearer " + settings_.api_key);
  std::string body = build_request_body(settings_, conversation);
  httplib::Result res =
      client.Post(parts.path, headers, body, "application/json");
  if (!res)
    throw ChatError("LLM request failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw ChatError("LLM request returned HTTP " +
                    std::to_string(res->status) + ": " +
                    res->body.substr(0, 200));
  return parse_response_body(res->body);
}

}  // namespace termbench
