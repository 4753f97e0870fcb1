#include "evote/verification.hpp"

#include <algorithm>
#include <stdexcept>

#include "evote/encoding.hpp"

namespace evote {

std::string_view to_string(PairingState state) {
  switch (state) {
    case PairingState::confirmed: return "confirmed";
    case PairingState::missing: return "missing";
    case PairingState::wrong_choice: return "wrong_choice";
  }
  return "missing";
}

std::string_view to_string(Ruling ruling) {
  switch (ruling) {
    case Ruling::correction_ordered: return "correction_ordered";
    case Ruling::dismissed_invalid_receipt: return "dismissed_invalid_receipt";
    case Ruling::dismissed_board_consistent: return "dismissed_board_consistent";
  }
  return "dismissed_invalid_receipt";
}

bool verify_receipt_signature(const Receipt& receipt, const PublicKey& machine_pub) {
  return verify(machine_pub, canonical_receipt_bytes(receipt.body), receipt.signature);
}

namespace {

PairingStatus status_of(const Pairing& pairing, const Board& board) {
  PairingStatus status{pairing, PairingState::confirmed, std::nullopt};
  const auto found = board.find(pairing.id);
  if (!found) {
    status.state = PairingState::missing;
  } else if (*found != pairing.choice) {
    status.state = PairingState::wrong_choice;
    status.found_choice = *found;
  }
  return status;
}

}  // namespace

std::vector<PairingStatus> check_receipt_against_board(const Receipt& receipt,
                                                       const Board& board) {
  std::vector<PairingStatus> out;
  out.reserve(receipt.body.pairings.size());
  for (const auto& p : receipt.body.pairings) out.push_back(status_of(p, board));
  return out;
}

ComplaintOutcome file_complaint(const Receipt& receipt, std::size_t pairing_index,
                                const Board& board, const PublicKey& machine_pub) {
  const Pairing& disputed = receipt.body.pairings.at(pairing_index);
  ComplaintOutcome outcome;
  outcome.disputed = disputed;
  outcome.board_state = status_of(disputed, board);
  outcome.receipt_authentic = verify_receipt_signature(receipt, machine_pub);
  if (!outcome.receipt_authentic) {
    outcome.ruling = Ruling::dismissed_invalid_receipt;
  } else if (outcome.board_state.state == PairingState::confirmed) {
    outcome.ruling = Ruling::dismissed_board_consistent;
  } else {
    outcome.ruling = Ruling::correction_ordered;
    outcome.correction = CorrectionOrder{disputed, outcome.board_state.found_choice};
  }
  return outcome;
}

Board apply_correction(const Board& board, const CorrectionOrder& order) {
  std::vector<Pairing> entries = board.entries();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const Pairing& p) { return p.id == order.pairing.id; });
  if (it == entries.end()) {
    entries.push_back(order.pairing);
  } else {
    it->choice = order.pairing.choice;
  }
  return Board::assemble(board.header(), board.candidates(), std::move(entries),
                         board.signings_count(), board.voter_names());
}

}  // namespace evote
