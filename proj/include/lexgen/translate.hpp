#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lexgen {

struct TranslateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word-to-word(s) translation. Implementations must tolerate concurrent
// translate calls. Returned strings are normalized and deduplicated; an empty
// list means "no translation", not an error.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;

  virtual bool supports(const std::string& src, const std::string& dst) const = 0;
  virtual std::vector<std::string> translate(const std::string& word,
                                             const std::string& src,
                                             const std::string& dst) = 0;
  virtual std::string name() const = 0;
};

struct BatchResult {
  std::map<std::string, std::vector<std::string>> translations;
  std::map<std::string, std::string> failures;  // word -> error
};

// Pointwise translate over a word list; per-word failures are collected
// instead of aborting the batch.
BatchResult batch_translate(TranslationBackend& backend, const std::vector<std::string>& words,
                            const std::string& src, const std::string& dst);

// Deterministic backend over a TSV table:
// src_lang<TAB>dst_lang<TAB>word<TAB>translation (repeatable rows for
// alternatives, '#' comments). Supported pairs are exactly those in the file.
class TableBackend : public TranslationBackend {
 public:
  explicit TableBackend(const std::filesystem::path& path);

  bool supports(const std::string& src, const std::string& dst) const override;
  std::vector<std::string> translate(const std::string& word, const std::string& src,
                                     const std::string& dst) override;
  std::string name() const override { return "table:" + path_; }

 private:
  std::string path_;
  std::set<std::pair<std::string, std::string>> pairs_;
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::string>> rows_;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_factor = 2.0;
  // Injectable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Endpoint-configurable HTTP client. Templates may reference {src}, {dst},
// {word} and {api_key}; the key is read from the environment at construction
// and never appears in logs or error messages.
struct HttpBackendConfig {
  std::string url_template;                 // http://host[:port]/path?q={word}...
  std::string method = "GET";               // GET or POST
  std::map<std::string, std::string> headers;
  std::string body_template;                // POST body; {word} etc. JSON-escaped
  std::string api_key_env;                  // env var holding the key, optional
  std::string response_pointer = "";        // JSON pointer to string or array
  std::string response_item_pointer = "";   // applied to each array element
  std::vector<std::pair<std::string, std::string>> supported_pairs;  // empty = all
  int timeout_ms = 10000;

  static HttpBackendConfig from_file(const std::filesystem::path& path);
};

class HttpBackend : public TranslationBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config, RetryPolicy retry = {});

  bool supports(const std::string& src, const std::string& dst) const override;
  std::vector<std::string> translate(const std::string& word, const std::string& src,
                                     const std::string& dst) override;
  std::string name() const override { return "http"; }

  int attempts_made() const { return attempts_made_; }

 private:
  HttpBackendConfig config_;
  RetryPolicy retry_;
  std::string api_key_;
  std::atomic<int> attempts_made_{0};
};

// Persistent append-only cache (JSON lines). Results are immutable once
// written; concurrent requests for one key trigger at most one inner fetch.
class CachedBackend : public TranslationBackend {
 public:
  CachedBackend(std::shared_ptr<TranslationBackend> inner, std::filesystem::path cache_path);

  bool supports(const std::string& src, const std::string& dst) const override;
  std::vector<std::string> translate(const std::string& word, const std::string& src,
                                     const std::string& dst) override;
  std::string name() const override { return "cached(" + inner_->name() + ")"; }

  uint64_t hits() const { return hits_; }
  uint64_t misses() const { return misses_; }
  uint64_t corrupt_lines_skipped() const { return corrupt_lines_; }

 private:
  using Key = std::tuple<std::string, std::string, std::string>;  // src, dst, word

  void load_cache();
  void append_record(const Key& key, const std::vector<std::string>& values);

  std::shared_ptr<TranslationBackend> inner_;
  std::filesystem::path cache_path_;
  std::mutex mutex_;
  std::map<Key, std::vector<std::string>> cache_;
  std::map<Key, std::shared_future<std::vector<std::string>>> inflight_;
  std::atomic<uint64_t> hits_{0};
  std::atomic<uint64_t> misses_{0};
  uint64_t corrupt_lines_ = 0;
};

// Backend spec syntax used by the CLI: "table:PATH" or "http:CONFIG.json".
std::shared_ptr<TranslationBackend> make_backend(const std::string& spec);

}  // namespace lexgen
