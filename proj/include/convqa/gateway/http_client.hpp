#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>

namespace convqa::gateway {

// Connection failure or timeout that persisted through every retry.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HttpStatusError : public std::runtime_error {
 public:
  HttpStatusError(int status, std::string body);
  int status() const { return status_; }

 private:
  int status_;
};

struct HttpOptions {
  std::chrono::milliseconds timeout{10000};
  int max_retries = 0;
  std::chrono::milliseconds backoff{100};
};

struct ParsedUrl {
  std::string scheme_host_port;  // "http://host:port"
  std::string path_prefix;       // "" or "/prefix" without trailing slash
};

// Only plain http:// is supported. Throws std::invalid_argument otherwise.
ParsedUrl parse_base_url(std::string_view base_url);

// POSTs a JSON body to base_url + path and returns the 200 response body.
// Transport failures are retried max_retries times with a fixed backoff;
// non-200 responses are not retried.
std::string post_json(std::string_view base_url, std::string_view path, const std::string& body,
                      const HttpOptions& options);

}  // namespace convqa::gateway
