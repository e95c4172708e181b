// stream_result.hh -- per-token verdicts shared by the streaming checkers

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tvu {

enum class TokenVerdict : uint8_t { Cont, Univ };

enum class StreamOutcome : uint8_t { Accepted, Rejected, Undetermined };

struct StreamResult {
    std::vector<TokenVerdict> verdicts;   // one per token
    StreamOutcome outcome = StreamOutcome::Undetermined;
    std::optional<size_t> earliest_univ;  // 1-based token index

    void push(TokenVerdict v) {
        verdicts.push_back(v);
        if (v == TokenVerdict::Univ && !earliest_univ) earliest_univ = verdicts.size();
    }
    bool operator==(const StreamResult&) const = default;
};

}  // namespace tvu
