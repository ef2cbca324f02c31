#include "convqa/gateway/http_client.hpp"

#include <thread>

#include "httplib.h"

namespace convqa::gateway {

HttpStatusError::HttpStatusError(int status, std::string body)
    : std::runtime_error("HTTP status " + std::to_string(status) + ": " + body.substr(0, 200)),
      status_(status) {}

ParsedUrl parse_base_url(std::string_view base_url) {
  constexpr std::string_view scheme = "http://";
  if (base_url.substr(0, scheme.size()) != scheme) {
    throw std::invalid_argument("unsupported URL (need http://): " + std::string(base_url));
  }
  const std::size_t host_begin = scheme.size();
  std::size_t slash = base_url.find('/', host_begin);
  if (slash == std::string_view::npos) slash = base_url.size();
  if (slash == host_begin) throw std::invalid_argument("URL without host: " + std::string(base_url));
  ParsedUrl out;
  out.scheme_host_port = std::string(base_url.substr(0, slash));
  std::string prefix(base_url.substr(slash));
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  out.path_prefix = std::move(prefix);
  return out;
}

std::string post_json(std::string_view base_url, std::string_view path, const std::string& body,
                      const HttpOptions& options) {
  const ParsedUrl url = parse_base_url(base_url);
  const std::string full_path = url.path_prefix + std::string(path);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);

  std::string last_error;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options.backoff);
    httplib::Client client(url.scheme_host_port);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    auto res = client.Post(full_path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) throw HttpStatusError(res->status, res->body);
    return res->body;
  }
  throw TransportError("POST " + url.scheme_host_port + full_path + " failed after " +
                       std::to_string(options.max_retries + 1) + " attempt(s): " + last_error);
}

}  // namespace convqa::gateway
