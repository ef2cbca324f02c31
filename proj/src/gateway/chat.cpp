#include "convqa/gateway/chat.hpp"

#include "convqa/core/rng.hpp"
#include "convqa/core/text.hpp"
#include "convqa/gateway/http_client.hpp"
#include "json.hpp"

namespace convqa::gateway {
namespace {

std::string post_chat(const ChatEndpointConfig& http, std::string_view dialog_id,
                      std::span<const Turn> turns) {
  std::string response;
  try {
    response = post_json(http.base_url, "/v1/chat", chat_request_body(dialog_id, turns),
                         HttpOptions{http.timeout, http.max_retries, http.backoff});
  } catch (const TransportError& e) {
    throw ModelUnavailable(e.what());
  } catch (const HttpStatusError& e) {
    throw ProtocolError(e.what());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(response);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("chat response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("reply") || !j["reply"].is_string()) {
    throw ProtocolError("chat response lacks a string 'reply'");
  }
  std::string reply = j["reply"].get<std::string>();
  if (trim(reply).empty()) throw ProtocolError("chat endpoint returned an empty reply");
  return reply;
}

}  // namespace

std::string chat_request_body(std::string_view dialog_id, std::span<const Turn> history) {
  nlohmann::ordered_json turns = nlohmann::ordered_json::array();
  for (const auto& t : history) {
    nlohmann::ordered_json turn;
    turn["speaker"] = to_string(t.speaker);
    turn["text"] = t.text;
    turns.push_back(std::move(turn));
  }
  nlohmann::ordered_json body;
  body["dialog_id"] = dialog_id;
  body["turns"] = std::move(turns);
  return body.dump();
}

std::string next_reply(std::string_view dialog_id, std::span<const Turn> history,
                       const ChatSourceConfig& source) {
  if (history.empty() || history.back().speaker != Speaker::tester) {
    throw std::invalid_argument("next_reply requires a history ending with a tester turn");
  }
  if (const auto* http = std::get_if<ChatEndpointConfig>(&source.source)) {
    return post_chat(*http, dialog_id, history);
  }
  return stub_reply(dialog_id, history, std::get<StubSpec>(source.source));
}

std::string generator_prompt(std::string_view dialog_id, std::span<const Turn> history,
                             const ChatSourceConfig& source) {
  if (!history.empty() && history.back().speaker != Speaker::model) {
    throw std::invalid_argument("generator_prompt requires a history ending with a model turn");
  }
  if (const auto* http = std::get_if<ChatEndpointConfig>(&source.source)) {
    std::vector<Turn> swapped(history.begin(), history.end());
    for (auto& t : swapped) t.speaker = t.speaker == Speaker::tester ? Speaker::model : Speaker::tester;
    return post_chat(*http, dialog_id, swapped);
  }
  return stub_generator_prompt(dialog_id, history, std::get<StubSpec>(source.source));
}

ChatSourceConfig reseeded_for_dialog(const ChatSourceConfig& source, std::uint64_t dialog_seed) {
  ChatSourceConfig out = source;
  if (auto* stub = std::get_if<StubSpec>(&out.source)) stub->seed = derive_seed(stub->seed, dialog_seed);
  return out;
}

}  // namespace convqa::gateway
