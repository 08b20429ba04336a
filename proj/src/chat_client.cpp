#include "termbench/chat_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "termbench/io_util.hpp"
#include "termbench/utf8.hpp"

namespace termbench {

using nlohmann::json;

ScriptedChatClient::ScriptedChatClient(std::vector<std::string> replies)
    : replies_(std::move(replies)) {}

ScriptedChatClient ScriptedChatClient::from_json_file(
    const std::filesystem::path& path) {
  json doc = json::parse(io::read_file(path), nullptr, true, true);
  if (!doc.is_array())
    throw Error("mock script must be a JSON array of strings: " +
                path.string());
  std::vector<std::string> replies;
  for (const json& item : doc) {
    if (!item.is_string())
      throw Error("mock script entries must be strings: " + path.string());
    replies.push_back(item.get<std::string>());
  }
  return ScriptedChatClient(std::move(replies));
}

std::string ScriptedChatClient::send(
    const std::vector<ChatMessage>& conversation) {
  std::lock_guard<std::mutex> lock(mutex_);
  requests_.push_back(conversation);
  if (next_ >= replies_.size())
    throw ChatError("scripted client exhausted after " +
                    std::to_string(replies_.size()) + " replies");
  return replies_[next_++];
}

std::size_t ScriptedChatClient::calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return requests_.size();
}

bool is_refusal(std::string_view reply) {
  std::string lowered = utf8::lowercase(reply);
  static const char* kMarkers[] = {
      "i'm sorry",      "i am sorry",    "can't assist",
      "cannot assist",  "can't help",    "cannot help",
      "unable to assist"};
  for (const char* marker : kMarkers)
    if (lowered.find(marker) != std::string::npos) return true;
  return false;
}

ChatReply send_with_retries(ChatClient& client,
                            const std::vector<ChatMessage>& conversation,
                            int retry_limit) {
  std::string last_problem;
  for (int attempt = 0; attempt <= retry_limit; ++attempt) {
    std::string reply;
    try {
      // Each attempt is a fresh conversation: the failing exchange is
      // not carried over.
      reply = client.send(conversation);
    } catch (const ChatError& e) {
      last_problem = e.what();
      continue;
    }
    if (reply.empty()) {
      last_problem = "empty response";
      continue;
    }
    if (is_refusal(reply)) {
      last_problem = "refusal: " + reply;
      continue;
    }
    return {reply, attempt};
  }
  throw ChatError("chat request failed after " +
                  std::to_string(retry_limit + 1) + " attempts (" +
                  last_problem + ")");
}

HttpChatClient::Settings HttpChatClient::settings_from_env() {
  Settings s;
  if (const char* endpoint = std::getenv("TERMBENCH_LLM_ENDPOINT"))
    s.endpoint = endpoint;
  if (const char* key = std::getenv("TERMBENCH_LLM_API_KEY")) s.api_key = key;
  if (const char* model = std::getenv("TERMBENCH_LLM_MODEL")) s.model = model;
  return s;
}

HttpChatClient::HttpChatClient(Settings settings)
    : settings_(std::move(settings)) {
  if (settings_.endpoint.empty())
    throw Error("LLM endpoint not configured (set TERMBENCH_LLM_ENDPOINT)");
}

std::string HttpChatClient::build_request_body(
    const Settings& settings, const std::vector<ChatMessage>& conversation) {
  json messages = json::array();
  for (const ChatMessage& m : conversation)
    messages.push_back({{"role", m.role}, {"content", m.content}});
  json body = {{"model", settings.model},
               {"messages", messages},
               {"temperature", settings.temperature}};
  return body.dump();
}

std::string HttpChatClient::parse_response_body(const std::string& body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded())
    throw ChatError("LLM response is not valid JSON");
  if (doc.contains("error"))
    throw ChatError("LLM error: " + doc["error"].dump());
  if (!doc.contains("choices") || !doc["choices"].is_array() ||
      doc["choices"].empty())
    throw ChatError("LLM response has no choices");
  const json& message = doc["choices"][0].value("message", json::object());
  if (!message.contains("content") || !message["content"].is_string())
    throw ChatError("LLM response has no message content");
  return message["content"].get<std::string>();
}

TranscriptLog::TranscriptLog(std::filesystem::path path)
    : path_(std::move(path)) {}

TranscriptLog::~TranscriptLog() {
  try {
    std::lock_guard<std::mutex> lock(mutex_);
    io::atomic_write_file(path_, buffer_);
  } catch (...) {
    // Transcripts are diagnostics; never take the run down with them.
  }
}

void TranscriptLog::record(const std::string& json_line) {
  std::lock_guard<std::mutex> lock(mutex_);
  buffer_ += json_line;
  buffer_ += '\n';
}

std::string RecordingChatClient::send(
    const std::vector<ChatMessage>& conversation) {
  json request = json::array();
  for (const ChatMessage& m : conversation)
    request.push_back({{"role", m.role}, {"content", m.content}});
  try {
    std::string reply = inner_.send(conversation);
    log_.record(json{{"request", request}, {"response", reply}}.dump());
    return reply;
  } catch (const ChatError& e) {
    log_.record(json{{"request", request}, {"error", e.what()}}.dump());
    throw;
  }
}

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {}

namespace {

bool placeholder_name_char(char c) {
  return (c >= 'a' && c <= 'z') || c == '_';
}

// Calls fn(name, begin, end) for each {name} occurrence.
template <typename Fn>
void for_each_placeholder(const std::string& text, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && placeholder_name_char(text[j])) ++j;
    if (j > i + 1 && j < text.size() && text[j] == '}') {
      fn(text.substr(i + 1, j - i - 1), i, j + 1);
      i = j + 1;
    } else {
      ++i;
    }
  }
}

}  // namespace

bool PromptTemplate::has_placeholder(std::string_view name) const {
  bool found = false;
  for_each_placeholder(text_, [&](const std::string& n, std::size_t, std::size_t) {
    if (n == name) found = true;
  });
  return found;
}

std::string PromptTemplate::render(
    const std::map<std::string, std::string>& values) const {
  std::string out;
  out.reserve(text_.size());
  std::size_t copied = 0;
  for_each_placeholder(
      text_, [&](const std::string& name, std::size_t begin, std::size_t end) {
        auto it = values.find(name);
        if (it == values.end())
          throw Error("prompt template placeholder has no value: {" + name +
                      "}");
        out.append(text_, copied, begin - copied);
        out.append(it->second);
        copied = end;
      });
  out.append(text_, copied, text_.size() - copied);
  return out;
}

namespace templates {

PromptTemplate clean_text(std::string_view language) {
  if (language == "ru")
    return PromptTemplate(
        "Clean this text and make it readable in Russian.\n\n{text}");
  return PromptTemplate("Clean this text and make it readable.\n\n{text}");
}

PromptTemplate clean_keep_original(std::string_view language) {
  std::string prompt =
      "Make this text readable, keep it as original as possible, remove the "
      "noise, keep all information.";
  if (language == "ru") prompt += " Keep the text in Russian.";
  return PromptTemplate(prompt + "\n\n{text}");
}

PromptTemplate extraction() {
  return PromptTemplate(
      "Extract the terms related to fashion, such as all kinds of clothes, "
      "shoes, accessories etc from the given text and list them. Can you "
      "please extract terms, that can be found ONLY in the given "
      "text.{exclusions}\n\nText:\n{text}");
}

PromptTemplate definition(std::string_view language) {
  std::string prompt =
      "Define the term \"{term}\" in the context of the fashion industry. "
      "Give only the definition.";
  if (language == "ru") prompt += " Answer in Russian.";
  return PromptTemplate(prompt);
}

}  // namespace templates

}  // namespace termbench
