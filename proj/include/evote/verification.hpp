#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evote/board.hpp"
#include "evote/model.hpp"

namespace evote {

// Nothing here may depend on the trusted authority: the court only ever sees
// the receipt, the public board and the machine public key.

enum class PairingState { confirmed, missing, wrong_choice };

std::string_view to_string(PairingState state);

struct PairingStatus {
  Pairing pairing;
  PairingState state = PairingState::confirmed;
  std::optional<std::string> found_choice;  // set for wrong_choice
  friend bool operator==(const PairingStatus&, const PairingStatus&) = default;
};

enum class Ruling { correction_ordered, dismissed_invalid_receipt, dismissed_board_consistent };

std::string_view to_string(Ruling ruling);

// Board repair: insert the pairing, or move its id from `from_choice`.
struct CorrectionOrder {
  Pairing pairing;
  std::optional<std::string> from_choice;
  friend bool operator==(const CorrectionOrder&, const CorrectionOrder&) = default;
};

struct ComplaintOutcome {
  bool receipt_authentic = false;
  Pairing disputed;
  PairingStatus board_state;
  Ruling ruling = Ruling::dismissed_invalid_receipt;
  std::optional<CorrectionOrder> correction;
};

bool verify_receipt_signature(const Receipt& receipt, const PublicKey& machine_pub);

std::vector<PairingStatus> check_receipt_against_board(const Receipt& receipt,
                                                       const Board& board);

/// Throws std::out_of_range for a bad pairing index.
ComplaintOutcome file_complaint(const Receipt& receipt, std::size_t pairing_index,
                                const Board& board, const PublicKey& machine_pub);

Board apply_correction(const Board& board, const CorrectionOrder& order);

}  // namespace evote
