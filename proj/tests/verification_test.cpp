#include <gtest/gtest.h>

#include <type_traits>

#include "evote/error.hpp"
#include "evote/verification.hpp"
#include "test_support.hpp"

namespace evote {
namespace {

using testing::presidential;

const std::vector<std::pair<std::string, std::string>> kFigureTwo = {
    {"A", "5231897463515"}, {"A", "6597853518467"}, {"A", "8795462163516"},
    {"B", "4546138496616"}, {"B", "7894611685366"}, {"B", "9431587321355"},
    {"C", "1597362523648"}, {"C", "2923578356914"}, {"C", "7898756465486"},
    {"D", "3943873165496"}, {"D", "4567315796865"}, {"D", "7986543546933"}};

Board figure2_board(std::string_view drop = "", std::string_view move_to_c = "") {
  std::vector<Pairing> entries;
  for (const auto& [c, id] : kFigureTwo) {
    if (id == drop) continue;
    entries.push_back({id == move_to_c ? "C" : c, VoterId::parse(id)});
  }
  const auto config = presidential(0);
  return Board::assemble(config.header, config.candidates, entries, 4701);
}

class VerificationTest : public ::testing::Test {
 protected:
  KeyPair machine_keys = testing::signing_keys(1);
  KeyPair authority_keys = testing::encryption_keys(2);

  Receipt figure1_receipt() {
    auto [machine, _] = testing::figure1_machine(machine_keys, authority_keys);
    machine.begin_session();
    machine.make_choice({"C"});
    return machine.validate();
  }
};

TEST_F(VerificationTest, SignatureChecks) {
  Receipt r = figure1_receipt();
  EXPECT_TRUE(verify_receipt_signature(r, machine_keys.public_key));
  EXPECT_FALSE(verify_receipt_signature(r, testing::signing_keys(9).public_key));
  r.body.pairings[0].id = VoterId::from_number(1);
  EXPECT_FALSE(verify_receipt_signature(r, machine_keys.public_key));
}

TEST_F(VerificationTest, FigureOneAgainstFigureTwoAllConfirmed) {
  const auto statuses = check_receipt_against_board(figure1_receipt(), figure2_board());
  ASSERT_EQ(statuses.size(), 4u);
  for (const auto& s : statuses) EXPECT_EQ(s.state, PairingState::confirmed) << s.pairing.choice;
}

TEST_F(VerificationTest, DroppedPairingIsMissing) {
  const auto statuses =
      check_receipt_against_board(figure1_receipt(), figure2_board("3943873165496"));
  EXPECT_EQ(statuses[3].state, PairingState::missing);
  EXPECT_EQ(statuses[0].state, PairingState::confirmed);
}

TEST_F(VerificationTest, MovedPairingIsWrongChoice) {
  const auto statuses =
      check_receipt_against_board(figure1_receipt(), figure2_board("", "9431587321355"));
  EXPECT_EQ(statuses[1].state, PairingState::wrong_choice);
  EXPECT_EQ(statuses[1].found_choice, "C");
}

TEST_F(VerificationTest, Rulings) {
  const Receipt r = figure1_receipt();

  const auto consistent = file_complaint(r, 2, figure2_board(), machine_keys.public_key);
  EXPECT_TRUE(consistent.receipt_authentic);
  EXPECT_EQ(consistent.ruling, Ruling::dismissed_board_consistent);
  EXPECT_FALSE(consistent.correction);

  Receipt forged = r;
  forged.body.pairings[2].id = VoterId::from_number(42);
  const auto invalid = file_complaint(forged, 2, figure2_board(), machine_keys.public_key);
  EXPECT_FALSE(invalid.receipt_authentic);
  EXPECT_EQ(invalid.ruling, Ruling::dismissed_invalid_receipt);

  const auto moved = file_complaint(r, 1, figure2_board("", "9431587321355"), machine_keys.public_key);
  EXPECT_EQ(moved.ruling, Ruling::correction_ordered);
  ASSERT_TRUE(moved.correction);
  EXPECT_EQ(moved.correction->from_choice, "C");

  EXPECT_THROW(file_complaint(r, 4, figure2_board(), machine_keys.public_key), std::out_of_range);
}

// The court works from the receipt, the board and the machine key alone.
static_assert(std::is_same_v<decltype(&file_complaint),
                             ComplaintOutcome (*)(const Receipt&, std::size_t, const Board&,
                                                  const PublicKey&)>);

TEST(VerificationArchitecture, DoesNotDependOnAuthority) {
  const std::filesystem::path root = EVOTE_SOURCE_DIR;
  for (const auto* rel : {"include/evote/verification.hpp", "src/verification.cpp"}) {
    const std::string text = testing::read_text(root / rel);
    ASSERT_FALSE(text.empty()) << rel;
    EXPECT_EQ(text.find("authority.hpp"), std::string::npos) << rel;
    EXPECT_EQ(text.find("simulation.hpp"), std::string::npos) << rel;
  }
}

TEST_F(VerificationTest, RepairRestoresPairing) {
  const Receipt r = figure1_receipt();
  for (const auto& board : {figure2_board("3943873165496"), figure2_board("", "9431587321355")}) {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto outcome = file_complaint(r, i, board, machine_keys.public_key);
      if (outcome.ruling != Ruling::correction_ordered) continue;
      const Board repaired = apply_correction(board, *outcome.correction);
      EXPECT_EQ(check_receipt_against_board(r, repaired)[i].state, PairingState::confirmed);
      EXPECT_EQ(repaired.entries().size(), board.entries().size() + (outcome.correction->from_choice ? 0 : 1));
    }
  }
}

// Completeness: on an honest board every pairing of every receipt is confirmed.
TEST(VerificationProperties, HonestBoardsConfirmEverything) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SimulationTrace trace = run_scenario(testing::honest_scenario(40, seed, 2));
    for (const auto& v : trace.voters) {
      ASSERT_TRUE(verify_receipt_signature(v.receipt, trace.machine_keys.public_key));
      for (const auto& s : check_receipt_against_board(v.receipt, *trace.board)) {
        ASSERT_EQ(s.state, PairingState::confirmed);
      }
    }
  }
}

// Soundness: removing or moving any entry a receipt prints is caught by that
// receipt, and the ordered correction restores it.
TEST(VerificationProperties, EveryMutationOfAPrintedPairingIsCaught) {
  const SimulationTrace trace = run_scenario(testing::honest_scenario(15, 3, 1));
  const auto& pub = trace.machine_keys.public_key;
  const Board& board = *trace.board;
  for (const auto& v : trace.voters) {
    for (std::size_t i = 0; i < v.receipt.body.pairings.size(); ++i) {
      const Pairing target = v.receipt.body.pairings[i];
      std::vector<Pairing> dropped;
      std::vector<Pairing> moved;
      for (const auto& e : board.entries()) {
        if (e == target) {
          moved.push_back({target.choice == "A" ? "B" : "A", e.id});
          continue;
        }
        dropped.push_back(e);
        moved.push_back(e);
      }
      for (const auto& entries : {dropped, moved}) {
        const Board bad =
            Board::assemble(board.header(), board.candidates(), entries, board.signings_count());
        const auto outcome = file_complaint(v.receipt, i, bad, pub);
        ASSERT_EQ(outcome.ruling, Ruling::correction_ordered);
        const Board fixed = apply_correction(bad, *outcome.correction);
        EXPECT_EQ(fixed, board);
      }
    }
  }
}

}  // namespace
}  // namespace evote
