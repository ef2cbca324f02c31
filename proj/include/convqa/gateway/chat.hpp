#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/config.hpp"
#include "convqa/core/types.hpp"

// Uniform chat interface over the HTTP wire protocol and the local stubs.
namespace convqa::gateway {

class ModelUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reply of the model under test. `history` must end with a tester turn.
std::string next_reply(std::string_view dialog_id, std::span<const Turn> history,
                       const ChatSourceConfig& source);

// Next tester prompt. `history` must be empty or end with a model turn. HTTP
// and conversational stubs see the dialog with speakers swapped, so the model
// replies arrive as their input.
std::string generator_prompt(std::string_view dialog_id, std::span<const Turn> history,
                             const ChatSourceConfig& source);

// Body of POST {base_url}/v1/chat.
std::string chat_request_body(std::string_view dialog_id, std::span<const Turn> history);

// Stub sources get a per-dialog seed so generator sampling differs across
// dialogs; HTTP sources are returned unchanged.
ChatSourceConfig reseeded_for_dialog(const ChatSourceConfig& source, std::uint64_t dialog_seed);

const std::vector<std::string>& interview_corpus();

// Direct stub entry points, pure in (dialog_id, history, spec).
std::string stub_reply(std::string_view dialog_id, std::span<const Turn> history,
                       const StubSpec& spec);
std::string stub_generator_prompt(std::string_view dialog_id, std::span<const Turn> history,
                                  const StubSpec& spec);

// Clean filler sentences the stubs use; none is a question or toxic.
std::span<const std::string_view> stub_fillers();

}  // namespace convqa::gateway
