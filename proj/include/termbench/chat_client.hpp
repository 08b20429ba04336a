#ifndef TERMBENCH_CHAT_CLIENT_HPP
#define TERMBENCH_CHAT_CLIENT_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "termbench/error.hpp"

namespace termbench {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

class ChatError : public Error {
 public:
  using Error::Error;
};

// The single effectful entry point to a language model.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string send(const std::vector<ChatMessage>& conversation) = 0;
};

// Replays a fixed list of replies in call order; thread-safe. Requests
// are recorded so tests can assert on the prompts that were sent.
class ScriptedChatClient : public ChatClient {
 public:
  explicit ScriptedChatClient(std::vector<std::string> replies);

  // JSON array of strings.
  static ScriptedChatClient from_json_file(const std::filesystem::path& path);

  std::string send(const std::vector<ChatMessage>& conversation) override;

  std::size_t calls() const;
  const std::vector<std::vector<ChatMessage>>& requests() const {
    return requests_;
  }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
  std::vector<std::vector<ChatMessage>> requests_;
};

// Matches the refusal wordings a chat model produces when it declines.
bool is_refusal(std::string_view reply);

struct ChatReply {
  std::string content;
  int retries_used = 0;
};

// Sends the conversation; on refusal, transport failure or an empty
// reply, retries in a fresh conversation up to retry_limit times.
// Throws ChatError once retries are exhausted.
ChatReply send_with_retries(ChatClient& client,
                            const std::vector<ChatMessage>& conversation,
                            int retry_limit);

// OpenAI-style chat completions over HTTP. The endpoint and API key
// come from the environment, never from config files.
class HttpChatClient : public ChatClient {
 public:
  struct Settings {
    std::string endpoint;  // full URL, e.g. https://host/v1/chat/completions
    std::string api_key;
    std::string model = "gpt-4o";
    double temperature = 0.0;
    int timeout_seconds = 120;
  };

  // TERMBENCH_LLM_ENDPOINT, TERMBENCH_LLM_API_KEY, TERMBENCH_LLM_MODEL.
  static Settings settings_from_env();

  explicit HttpChatClient(Settings settings);

  std::string send(const std::vector<ChatMessage>& conversation) override;

  static std::string build_request_body(
      const Settings& settings, const std::vector<ChatMessage>& conversation);
  static std::string parse_response_body(const std::string& body);

 private:
  Settings settings_;
};

// Appends one JSON object per line; thread-safe.
class TranscriptLog {
 public:
  explicit TranscriptLog(std::filesystem::path path);
  ~TranscriptLog();
  void record(const std::string& json_line);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::mutex mutex_;
  std::filesystem::path path_;
  std::string buffer_;
};

// Forwards to an inner client, recording every exchange in the log as
// one JSON line {"request": [...], "response"/"error": ...}.
class RecordingChatClient : public ChatClient {
 public:
  RecordingChatClient(ChatClient& inner, TranscriptLog& log)
      : inner_(inner), log_(log) {}

  std::string send(const std::vector<ChatMessage>& conversation) override;

 private:
  ChatClient& inner_;
  TranscriptLog& log_;
};

// Substitutes {name} placeholders. Rendering with a placeholder left
// unresolved is an error, as is asking for a placeholder the template
// does not contain.
class PromptTemplate {
 public:
  PromptTemplate() = default;
  explicit PromptTemplate(std::string text);

  bool has_placeholder(std::string_view name) const;
  std::string render(const std::map<std::string, std::string>& values) const;
  const std::string& text() const { return text_; }
  bool empty() const { return text_.empty(); }

 private:
  std::string text_;
};

namespace templates {

// Cleaning prompts; the Russian variant is annotated so the model does
// not translate the text while cleaning it.
PromptTemplate clean_text(std::string_view language);
PromptTemplate clean_keep_original(std::string_view language);

// Iterative corpus-grounded term extraction.
PromptTemplate extraction();

// Single-term definition generation.
PromptTemplate definition(std::string_view language);

}  // namespace templates

}  // namespace termbench

#endif
