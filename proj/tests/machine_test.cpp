#include <gtest/gtest.h>

#include <map>
#include <set>

#include "evote/encoding.hpp"
#include "evote/error.hpp"
#include "evote/machine.hpp"
#include "evote/verification.hpp"
#include "test_support.hpp"

namespace evote {
namespace {

using testing::presidential;

class MachineTest : public ::testing::Test {
 protected:
  KeyPair machine_keys = testing::signing_keys(1);
  KeyPair authority_keys = testing::encryption_keys(2);

  VotingMachine::Opening open(ElectionConfig config, MachineBehavior behavior = behavior::Honest{},
                              std::uint64_t seed = 99) {
    return VotingMachine::start_of_day(std::move(config), machine_keys, authority_keys.public_key,
                                       std::move(behavior), RandomSource::seeded(seed));
  }

  BootstrapBatch open_batch(const Ciphertext& c) {
    return open_batch_envelope(decrypt(authority_keys.secret_key, c));
  }
};

std::map<std::string, int> count_by_choice(const std::vector<BoardEntry>& entries, Origin origin) {
  std::map<std::string, int> counts;
  for (const auto& e : entries) {
    if (e.origin == origin) ++counts[e.choice];
  }
  return counts;
}

// Linear membership oracle, independent of the machine's per-choice index.
bool recorded_under(const std::vector<BoardEntry>& recorded, const Pairing& p) {
  for (const auto& e : recorded) {
    if (e.id == p.id && e.choice == p.choice) return true;
  }
  return false;
}

TEST_F(MachineTest, HonestBootstrapHasBPerCandidate) {
  auto [machine, ciphertext] = open(presidential(10));
  EXPECT_EQ(machine.recorded().size(), 40u);
  EXPECT_EQ(count_by_choice(machine.recorded(), Origin::bootstrap),
            (std::map<std::string, int>{{"A", 10}, {"B", 10}, {"C", 10}, {"D", 10}}));

  const BootstrapBatch batch = open_batch(ciphertext);
  ASSERT_EQ(batch.entries.size(), 40u);
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(batch.entries[i].id, machine.recorded()[i].id);
    EXPECT_EQ(batch.entries[i].choice, machine.recorded()[i].choice);
  }
  EXPECT_TRUE(verify(machine_keys.public_key, canonical_batch_bytes(batch.entries),
                     batch.machine_signature));
}

TEST_F(MachineTest, EmptyBootstrapIsStillSigned) {
  auto [machine, ciphertext] = open(presidential(0));
  EXPECT_TRUE(machine.recorded().empty());
  const BootstrapBatch batch = open_batch(ciphertext);
  EXPECT_TRUE(batch.entries.empty());
  EXPECT_TRUE(verify(machine_keys.public_key, Bytes{}, batch.machine_signature));
}

TEST_F(MachineTest, SkewedBootstrapUsesConfiguredCounts) {
  auto [machine, ciphertext] =
      open(presidential(10), behavior::SkewedBootstrap{{{"A", 5}, {"B", 15}, {"C", 10}, {"D", 10}}});
  EXPECT_EQ(count_by_choice(machine.recorded(), Origin::bootstrap),
            (std::map<std::string, int>{{"A", 5}, {"B", 15}, {"C", 10}, {"D", 10}}));
  EXPECT_EQ(open_batch(ciphertext).entries.size(), 40u);
}

TEST_F(MachineTest, BehaviorMustNameCandidates) {
  EXPECT_THROW(open(presidential(1), behavior::BetAttack{"Z"}), ConfigError);
  EXPECT_THROW(open(presidential(1), behavior::InjectFraud{1, "Z"}), ConfigError);
}

TEST_F(MachineTest, SessionIdIsFresh) {
  auto [machine, _] = open(presidential(10));
  const Session s = machine.begin_session();
  ASSERT_EQ(s.assigned_ids.size(), 1u);
  for (const auto& e : machine.recorded()) EXPECT_NE(e.id, s.assigned_ids[0]);
  EXPECT_THROW(machine.begin_session(), PhaseError);
}

TEST_F(MachineTest, BetAttackReusesRecordedTargetId) {
  auto [machine, _] = open(presidential(10), behavior::BetAttack{"A"});
  const Session s = machine.begin_session();
  EXPECT_TRUE(recorded_under(machine.recorded(), {"A", s.assigned_ids[0]}));
}

TEST_F(MachineTest, TwoSelectionsGetTwoDistinctFreshIds) {
  auto config = presidential(10);
  config.selections_per_voter = 2;
  auto [machine, _] = open(config);
  const Session s = machine.begin_session();
  ASSERT_EQ(s.assigned_ids.size(), 2u);
  EXPECT_NE(s.assigned_ids[0], s.assigned_ids[1]);
  for (const auto& e : machine.recorded()) {
    EXPECT_NE(e.id, s.assigned_ids[0]);
    EXPECT_NE(e.id, s.assigned_ids[1]);
  }
}

TEST_F(MachineTest, FigureOneReceipt) {
  auto [machine, _] = testing::figure1_machine(machine_keys, authority_keys);
  const Session& s = machine.begin_session();
  ASSERT_EQ(s.assigned_ids.front().digits(), "1597362523648");

  const ReceiptBody draft = machine.make_choice({"C"});
  const std::vector<Pairing> expected = {{"A", VoterId::parse("6597853518467")},
                                         {"B", VoterId::parse("9431587321355")},
                                         {"C", VoterId::parse("1597362523648")},
                                         {"D", VoterId::parse("3943873165496")}};
  EXPECT_EQ(draft.pairings, expected);
  for (const auto& p : draft.pairings) {
    if (p.choice != "C") EXPECT_TRUE(recorded_under(machine.recorded(), p)) << p.choice;
  }

  const Receipt receipt = machine.validate();
  EXPECT_EQ(machine.signings(), 1u);
  EXPECT_EQ(machine.recorded().back(),
            (BoardEntry{"C", VoterId::parse("1597362523648"), Origin::real}));
  EXPECT_TRUE(verify_receipt_signature(receipt, machine_keys.public_key));
}

TEST_F(MachineTest, BootstrapProblemWithoutSeedVotes) {
  auto [machine, _] = open(presidential(0));
  machine.begin_session();
  try {
    machine.make_choice({"A"});
    FAIL() << "expected BootstrapProblem";
  } catch (const BootstrapProblem& e) {
    EXPECT_EQ(e.choices(), (std::vector<std::string>{"B", "C", "D"}));
  }
  EXPECT_FALSE(machine.session()->receipt_displayed());
}

TEST_F(MachineTest, ThousandDraftsOnlyBorrowRecordedIds) {
  auto [machine, _] = open(presidential(3));
  auto voter_rng = RandomSource::seeded(7);
  for (int v = 0; v < 1000; ++v) {
    const Session s = machine.begin_session();
    const std::string choice = machine.config().candidates[voter_rng.uniform_below(4)];
    const ReceiptBody draft = machine.make_choice({choice});
    for (const auto& p : draft.pairings) {
      if (p.choice == choice) {
        ASSERT_EQ(p.id, s.assigned_ids[0]);
      } else {
        ASSERT_TRUE(recorded_under(machine.recorded(), p)) << v << " " << p.choice;
      }
    }
    machine.validate();
  }
}

TEST_F(MachineTest, CancelKeepsAssignedIds) {
  auto [machine, _] = open(presidential(2));
  const VoterId mine = machine.begin_session().assigned_ids[0];
  const std::size_t before = machine.recorded().size();

  machine.make_choice({"B"});
  machine.cancel();
  EXPECT_EQ(machine.recorded().size(), before);
  const ReceiptBody again = machine.make_choice({"B"});
  EXPECT_EQ(again.pairings[1].id, mine);
  machine.cancel();

  machine.make_choice({"D"});
  machine.validate();
  std::vector<BoardEntry> real;
  for (const auto& e : machine.recorded()) {
    if (e.origin == Origin::real) real.push_back(e);
  }
  ASSERT_EQ(real.size(), 1u);
  EXPECT_EQ(real[0], (BoardEntry{"D", mine, Origin::real}));
  EXPECT_EQ(machine.signings(), 1u);
}

TEST_F(MachineTest, PhaseGuards) {
  auto [machine, _] = open(presidential(2));
  EXPECT_THROW(machine.make_choice({"A"}), PhaseError);
  EXPECT_THROW(machine.validate(), PhaseError);
  machine.begin_session();
  EXPECT_THROW(machine.cancel(), PhaseError);
  EXPECT_THROW(machine.validate(), PhaseError);
  machine.make_choice({"A"});
  EXPECT_THROW(machine.make_choice({"A"}), PhaseError);
  EXPECT_THROW(machine.close_of_day(), PhaseError);
}

TEST_F(MachineTest, InvalidSelections) {
  auto config = presidential(2);
  config.selections_per_voter = 2;
  auto [machine, _] = open(config);
  machine.begin_session();
  EXPECT_THROW(machine.make_choice({"A"}), InvalidSelection);
  EXPECT_THROW(machine.make_choice({"A", "A"}), InvalidSelection);
  EXPECT_THROW(machine.make_choice({"A", "Z"}), InvalidSelection);
  EXPECT_NO_THROW(machine.make_choice({"D", "A"}));
}

TEST_F(MachineTest, AbandonBurnsIdsWithoutSigning) {
  auto [machine, _] = open(presidential(2));
  const VoterId burnt = machine.begin_session().assigned_ids[0];
  machine.make_choice({"A"});
  machine.abandon();
  EXPECT_EQ(machine.signings(), 0u);
  EXPECT_TRUE(machine.issued_ids().contains(burnt));
  EXPECT_NE(machine.begin_session().assigned_ids[0], burnt);
}

TEST_F(MachineTest, TwoVotersSameChoiceGiveTwoEntries) {
  auto [machine, _] = open(presidential(1));
  for (int i = 0; i < 2; ++i) {
    machine.begin_session();
    machine.make_choice({"B"});
    machine.validate();
  }
  EXPECT_EQ(count_by_choice(machine.recorded(), Origin::real)["B"], 2);
}

TEST_F(MachineTest, CloseOfDayCounts) {
  for (std::uint64_t fraud : {0u, 3u}) {
    MachineBehavior b = behavior::Honest{};
    if (fraud) b = behavior::InjectFraud{fraud, "A"};
    auto [machine, _] = open(presidential(10), b);
    for (int v = 0; v < 25; ++v) {
      machine.begin_session();
      machine.make_choice({"C"});
      machine.validate();
    }
    const BoardSubmission sub = machine.close_of_day();
    EXPECT_EQ(sub.entries.size(), 25u + 4 * 10 + fraud);
    EXPECT_EQ(sub.signings_count, 25u);
    EXPECT_EQ(count_by_choice(sub.entries, Origin::fraudulent)["A"], static_cast<int>(fraud));
    EXPECT_THROW(machine.begin_session(), PhaseError);
    EXPECT_THROW(machine.close_of_day(), PhaseError);
  }
  auto [idle, _] = open(presidential(10));
  const BoardSubmission sub = idle.close_of_day();
  EXPECT_EQ(sub.entries.size(), 40u);
  EXPECT_EQ(sub.signings_count, 0u);
}

// Seeded sessions with random cancels and walk-outs; checks every machine
// invariant against the submission.
TEST_F(MachineTest, HonestInvariantsHoldAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto config = presidential(1 + seed % 3, {"A", "B", "C", "D", "E"});
    config.selections_per_voter = 1 + seed % 2;
    auto [machine, _] = open(config, behavior::Honest{}, seed);
    auto rng = RandomSource::seeded(seed + 1000);

    std::vector<Receipt> receipts;
    std::vector<std::vector<VoterId>> owned;
    std::set<VoterId> assigned;
    for (int v = 0; v < 60; ++v) {
      const Session s = machine.begin_session();
      for (const auto& id : s.assigned_ids) ASSERT_TRUE(assigned.insert(id).second);
      std::vector<std::string> picks = config.candidates;
      for (std::size_t i = picks.size(); i > 1; --i) std::swap(picks[i - 1], picks[rng.uniform_below(i)]);
      picks.resize(config.selections_per_voter);
      machine.make_choice(picks);
      const auto roll = rng.uniform_below(10);
      if (roll == 0) {
        machine.abandon();
        continue;
      }
      if (roll == 1) {
        machine.cancel();
        machine.make_choice(picks);
      }
      receipts.push_back(machine.validate());
      owned.push_back(s.assigned_ids);
    }
    const BoardSubmission sub = machine.close_of_day();

    EXPECT_EQ(receipts.size(), sub.signings_count);
    std::set<VoterId> bootstrap_ids;
    for (const auto& e : sub.entries) {
      if (e.origin == Origin::bootstrap) bootstrap_ids.insert(e.id);
    }
    for (const auto& id : assigned) EXPECT_FALSE(bootstrap_ids.contains(id));

    for (std::size_t r = 0; r < receipts.size(); ++r) {
      std::size_t own = 0;
      for (const auto& p : receipts[r].body.pairings) {
        ASSERT_TRUE(recorded_under(sub.entries, p));
        own += std::count(owned[r].begin(), owned[r].end(), p.id);
      }
      EXPECT_EQ(own, config.selections_per_voter);
    }

    auto real = count_by_choice(sub.entries, Origin::real);
    auto all = std::map<std::string, int>{};
    for (const auto& e : sub.entries) ++all[e.choice];
    for (const auto& c : config.candidates) {
      EXPECT_EQ(all[c], real[c] + static_cast<int>(config.bootstrap_per_candidate));
    }
  }
}

TEST_F(MachineTest, FullBootstrapNeverBorrowsTwice) {
  auto config = presidential(30);
  config.registered_voters = 30;
  config.full_bootstrap_mode = true;
  auto [machine, _] = open(config);
  std::set<VoterId> borrowed;
  for (int v = 0; v < 30; ++v) {
    const VoterId mine = machine.begin_session().assigned_ids[0];
    machine.make_choice({config.candidates[v % 4]});
    for (const auto& p : machine.validate().body.pairings) {
      if (p.id != mine) EXPECT_TRUE(borrowed.insert(p.id).second);
    }
  }
}

}  // namespace
}  // namespace evote
