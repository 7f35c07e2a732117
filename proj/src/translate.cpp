#include "lexgen/translate.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lexgen/text.hpp"
#include "lexgen/wordnet.hpp"

namespace lexgen {

namespace {

using nlohmann::json;

void push_unique(std::vector<std::string>& values, std::string v) {
  if (v.empty()) return;
  if (std::find(values.begin(), values.end(), v) == values.end())
    values.push_back(std::move(v));
}

std::string percent_encode(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string dumped = json(s).dump();  // includes surrounding quotes
  return dumped.substr(1, dumped.size() - 2);
}

std::string substitute(std::string templ, const std::map<std::string, std::string>& vars) {
  for (const auto& [key, value] : vars) {
    std::string needle = "{" + key + "}";
    size_t pos = 0;
    while ((pos = templ.find(needle, pos)) != std::string::npos) {
      templ.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return templ;
}

}  // namespace

BatchResult batch_translate(TranslationBackend& backend, const std::vector<std::string>& words,
                            const std::string& src, const std::string& dst) {
  BatchResult result;
  for (const std::string& word : words) {
    try {
      result.translations[word] = backend.translate(word, src, dst);
    } catch (const std::exception& e) {
      result.failures[word] = e.what();
    }
  }
  return result;
}

TableBackend::TableBackend(const std::filesystem::path& path) : path_(path.string()) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("translation table not found: " + path_);
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      fields.emplace_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4)
      throw ParseError(path, line_no, "expected src<TAB>dst<TAB>word<TAB>translation");
    std::string src = text::normalize(fields[0]);
    std::string dst = text::normalize(fields[1]);
    std::string word = text::normalize(fields[2]);
    std::string value = text::normalize(fields[3]);
    if (src.empty() || dst.empty() || word.empty())
      throw ParseError(path, line_no, "empty field");
    pairs_.emplace(src, dst);
    push_unique(rows_[{src, dst, word}], std::move(value));
  }
}

bool TableBackend::supports(const std::string& src, const std::string& dst) const {
  return pairs_.contains({src, dst});
}

std::vector<std::string> TableBackend::translate(const std::string& word,
                                                 const std::string& src,
                                                 const std::string& dst) {
  if (!supports(src, dst))
    throw TranslateError("unsupported language pair " + src + "->" + dst);
  auto it = rows_.find({src, dst, text::normalize(word)});
  return it == rows_.end() ? std::vector<std::string>{} : it->second;
}

HttpBackendConfig HttpBackendConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("backend config not found: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("bad backend config " + path.string() + ": " + e.what());
  }
  HttpBackendConfig cfg;
  cfg.url_template = j.at("url_template").get<std::string>();
  cfg.method = j.value("method", std::string("GET"));
  if (j.contains("headers"))
    for (const auto& [k, v] : j["headers"].items()) cfg.headers[k] = v.get<std::string>();
  cfg.body_template = j.value("body_template", std::string());
  cfg.api_key_env = j.value("api_key_env", std::string());
  cfg.response_pointer = j.value("response_pointer", std::string());
  cfg.response_item_pointer = j.value("response_item_pointer", std::string());
  if (j.contains("supported_pairs"))
    for (const auto& p : j["supported_pairs"])
      cfg.supported_pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  cfg.timeout_ms = j.value("timeout_ms", 10000);
  return cfg;
}

HttpBackend::HttpBackend(HttpBackendConfig config, RetryPolicy retry)
    : config_(std::move(config)), retry_(std::move(retry)) {
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key) api_key_ = key;
  }
  if (!retry_.sleep)
    retry_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

bool HttpBackend::supports(const std::string& src, const std::string& dst) const {
  if (config_.supported_pairs.empty()) return true;
  return std::find(config_.supported_pairs.begin(), config_.supported_pairs.end(),
                   std::make_pair(src, dst)) != config_.supported_pairs.end();
}

std::vector<std::string> HttpBackend::translate(const std::string& word,
                                                const std::string& src,
                                                const std::string& dst) {
  if (!supports(src, dst))
    throw TranslateError("unsupported language pair " + src + "->" + dst);

  std::map<std::string, std::string> url_vars{{"word", percent_encode(word)},
                                              {"src", percent_encode(src)},
                                              {"dst", percent_encode(dst)},
                                              {"api_key", percent_encode(api_key_)}};
  std::map<std::string, std::string> body_vars{{"word", json_escape(word)},
                                               {"src", json_escape(src)},
                                               {"dst", json_escape(dst)},
                                               {"api_key", json_escape(api_key_)}};
  std::string url = substitute(config_.url_template, url_vars);

  // Split scheme://host[:port] from the path for httplib.
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TranslateError("url_template has no scheme");
  size_t path_start = url.find('/', scheme_end + 3);
  std::string host = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  std::string body = config_.body_template.empty()
                         ? std::string()
                         : substitute(config_.body_template, body_vars);

  httplib::Headers headers;
  for (const auto& [k, v] : config_.headers) headers.emplace(k, substitute(v, body_vars));

  std::string last_error;
  auto backoff = retry_.initial_backoff;
  for (int attempt = 1; attempt <= std::max(1, retry_.attempts); ++attempt) {
    attempts_made_.fetch_add(1, std::memory_order_relaxed);
    httplib::Client client(host);
    client.set_connection_timeout(0, config_.timeout_ms * 1000);
    client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
    httplib::Result res =
        config_.method == "POST"
            ? client.Post(path, headers, body, "application/json")
            : client.Get(path, headers);
    if (res) {
      if (res->status >= 200 && res->status < 300) {
        json j;
        try {
          j = json::parse(res->body);
        } catch (const json::exception& e) {
          throw TranslateError(std::string("bad JSON response: ") + e.what());
        }
        json value = config_.response_pointer.empty()
                         ? j
                         : j.value(json::json_pointer(config_.response_pointer), json());
        std::vector<std::string> out;
        auto add = [&](const json& v) {
          if (v.is_string()) push_unique(out, text::normalize(v.get<std::string>()));
        };
        if (value.is_array()) {
          for (const json& item : value) {
            if (!config_.response_item_pointer.empty())
              add(item.value(json::json_pointer(config_.response_item_pointer), json()));
            else
              add(item);
          }
        } else {
          add(value);
        }
        return out;
      }
      // Client errors other than 429 are permanent.
      if (res->status >= 400 && res->status < 500 && res->status != 429)
        throw TranslateError("http status " + std::to_string(res->status));
      last_error = "http status " + std::to_string(res->status);
    } else {
      last_error = "transport error " + httplib::to_string(res.error());
    }
    if (attempt < retry_.attempts) {
      retry_.sleep(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<long>(static_cast<double>(backoff.count()) * retry_.backoff_factor));
    }
  }
  throw TranslateError("translation failed after " + std::to_string(retry_.attempts) +
                       " attempts: " + last_error);
}

CachedBackend::CachedBackend(std::shared_ptr<TranslationBackend> inner,
                             std::filesystem::path cache_path)
    : inner_(std::move(inner)), cache_path_(std::move(cache_path)) {
  load_cache();
}

bool CachedBackend::supports(const std::string& src, const std::string& dst) const {
  return inner_->supports(src, dst);
}

void CachedBackend::load_cache() {
  std::ifstream in(cache_path_);
  if (!in) return;  // no cache yet
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.contains("src") || !j.contains("dst") ||
        !j.contains("word") || !j.contains("values")) {
      // A truncated trailing line is expected after an interrupted run.
      if (i + 1 < lines.size()) ++corrupt_lines_;
      continue;
    }
    Key key{j["src"].get<std::string>(), j["dst"].get<std::string>(),
            j["word"].get<std::string>()};
    std::vector<std::string> values;
    for (const auto& v : j["values"]) push_unique(values, v.get<std::string>());
    cache_.emplace(std::move(key), std::move(values));  // first write wins
  }
}

void CachedBackend::append_record(const Key& key, const std::vector<std::string>& values) {
  json j{{"src", std::get<0>(key)},
         {"dst", std::get<1>(key)},
         {"word", std::get<2>(key)},
         {"values", values},
         {"ts", std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count()}};
  std::ofstream out(cache_path_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to cache " + cache_path_.string());
  out << j.dump() << '\n';
  out.flush();
}

std::vector<std::string> CachedBackend::translate(const std::string& word,
                                                  const std::string& src,
                                                  const std::string& dst) {
  Key key{src, dst, text::normalize(word)};
  std::shared_future<std::vector<std::string>> future;
  std::promise<std::vector<std::string>> promise;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
    if (auto it = inflight_.find(key); it != inflight_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      inflight_.emplace(key, future);
      owner = true;
    }
  }
  if (!owner) {
    // Another thread is fetching this key; a hit once it lands.
    hits_.fetch_add(1, std::memory_order_relaxed);
    return future.get();
  }
  misses_.fetch_add(1, std::memory_order_relaxed);
  try {
    std::vector<std::string> values = inner_->translate(word, src, dst);
    {
      std::lock_guard lock(mutex_);
      cache_.emplace(key, values);
      append_record(key, values);
      inflight_.erase(key);
    }
    promise.set_value(values);
    return values;
  } catch (...) {
    {
      std::lock_guard lock(mutex_);
      inflight_.erase(key);  // failures are not cached; a later call retries
    }
    promise.set_exception(std::current_exception());
    throw;
  }
}

std::shared_ptr<TranslationBackend> make_backend(const std::string& spec) {
  if (spec.starts_with("table:"))
    return std::make_shared<TableBackend>(spec.substr(6));
  if (spec.starts_with("http:"))
    return std::make_shared<HttpBackend>(HttpBackendConfig::from_file(spec.substr(5)));
  throw std::runtime_error("unknown backend spec '" + spec + "' (use table:PATH or http:CONFIG)");
}

}  // namespace lexgen
