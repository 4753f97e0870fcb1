#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evote/board.hpp"
#include "evote/model.hpp"

namespace evote {

/// Signing input for a receipt: title, date, precinct, then one
/// "label<TAB>digits" line per pairing, joined by '\n' (no trailing newline).
Bytes canonical_receipt_bytes(const ReceiptBody& body);

/// Signing input for a bootstrap batch: "label<TAB>digits" lines in
/// generation order joined by '\n'. Empty for an empty batch.
Bytes canonical_batch_bytes(std::span<const Pairing> entries);

/// Parses canonical batch bytes back into pairings. Throws ParseError.
std::vector<Pairing> parse_batch_bytes(ByteView bytes);

/// RFC 4648 alphabet, uppercase, no padding.
std::string base32_encode(ByteView bytes);

/// Splits `text` into lines of at most `width` characters.
std::vector<std::string> wrap_fixed(std::string_view text, std::size_t width);

inline constexpr std::size_t kSignatureLineWidth = 15;

std::string render_receipt_text(const Receipt& receipt);
std::string render_board_text(const Board& board, const Results& results);

}  // namespace evote
