// Copyright 2026 The Skillchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillchain/errors.hpp"

namespace skillchain {

// All money is integer milli-TC; all fractional parameters are integer
// micro-units (1e6 = 1.0). Every split floors and routes the remainder to
// the Treasury, so conservation is exact.

constexpr std::int64_t kMicroOne = 1'000'000;

/// Token credits in fixed-point milli-TC (1 TC = 1000 units).
struct Tc {
  std::int64_t milli = 0;

  constexpr auto operator<=>(const Tc&) const = default;
  constexpr Tc operator+(Tc o) const { return Tc{milli + o.milli}; }
  constexpr Tc operator-(Tc o) const { return Tc{milli - o.milli}; }
  Tc& operator+=(Tc o) { milli += o.milli; return *this; }
  Tc& operator-=(Tc o) { milli -= o.milli; return *this; }

  std::string str() const;  // "12.345 TC"
};

constexpr Tc tc_milli(std::int64_t m) { return Tc{m}; }
constexpr Tc tc_whole(std::int64_t t) { return Tc{t * 1000}; }

/// floor(x * f_micro / 1e6), exact in 64-bit for the magnitudes used here.
std::int64_t mul_micro_floor(std::int64_t x, std::int64_t f_micro);

struct SlashSplit {
  std::int64_t whistleblower_micro = 300'000;
  std::int64_t dissenters_micro = 400'000;
  std::int64_t treasury_micro = 300'000;
};

struct EconomicParams {
  std::int64_t kappa_tc = 5000;      // LLM tokens per TC (Eq. 5 anchor)
  Tc beta0 = tc_milli(200);          // flat reward floor
  std::int64_t beta1_micro = 900'000;
  std::uint32_t committee_size = 5;  // N
  std::int64_t theta_micro = 600'000;
  std::int64_t phi_proto_micro = 0;  // protocol-fee cut
  std::int64_t gamma_micro = 2'000'000;
  std::int64_t sigma_micro = 250'000;   // slippage per interval
  std::uint64_t base_wait = 3600;       // slippage interval, logical seconds
  std::int32_t delta_plus = 15;
  std::int32_t delta_minus = 30;
  std::int64_t alpha_micro = 995'000;   // reputation decay
  Tc s_min = tc_whole(10);
  std::int32_t r0 = 100;
  std::int32_t r_max = 1000;
  std::uint64_t monitoring_window = 604'800;
  std::uint64_t tau_deliver = 86'400;
  std::uint64_t verdict_window = 600;   // logical window after Nth claim
  Tc initial_treasury = tc_whole(1'000'000);
  SlashSplit slash_split;

  /// Protocol-path validation. Simulator sweeps may construct variants
  /// outside these bounds (notably gamma (below 1).
  void validate() const;
};

// -- Pure formulas -------------------------------------------------------------

/// Reference reward: beta0 + beta1 * L / kappa_tc, floored to milli-TC.
Tc r_base(std::int64_t skill_tokens, const EconomicParams& p);

/// Reference reward with slippage: r_base * (1 + sigma * floor((t-t0)/dt)).
Tc slippage_r_base(std::int64_t skill_tokens, std::uint64_t t, std::uint64_t t0,
                   const EconomicParams& p);

struct FeeSplit {
  Tc total;         // N * r_base
  Tc treasury_cut;  // floor(phi * total)
  Tc audit_pool;    // total - cut
};
FeeSplit publication_fee(std::int64_t skill_tokens, const EconomicParams& p);

/// Consensus-aligned reward: floor((1-phi) * rbase * r_i / r_max).
Tc aligned_reward(Tc rbase, std::int32_t reputation, const EconomicParams& p);

/// Non-consensus slash: floor(gamma * rbase).
Tc slash_amount(Tc rbase, const EconomicParams& p);

std::int32_t decay_reputation(std::int32_t reputation, const EconomicParams& p);
std::int32_t clamp_reputation(std::int64_t r, const EconomicParams& p);

bool check_activation(Tc stake, const EconomicParams& p);

// -- Ledger ---------------------------------------------------------------------

using EscrowId = std::uint64_t;

enum class EscrowPurpose : std::uint8_t {
  audit_pool = 1,
  commitment_deposit = 2,
  confidentiality_bond = 3,
  delivery_bond = 4,
  purchase = 5,
  retro_slash_pool = 6,
  challenge_fee = 7,
};

struct Escrow {
  Tc amount;
  EscrowPurpose purpose;
  std::string from_account;
  std::uint64_t deadline = 0;
};

/// Integer-denominated accounts, Treasury, and escrows. Supply is fixed at
/// construction; every operation is a pure move between the three pots, so
///   sum(accounts) + treasury + sum(escrows) == total_supply
/// holds after every call (fuzzed in tests). Operations that would drive a
/// balance negative throw without mutating state.
class Ledger {
 public:
  explicit Ledger(Tc initial_treasury);

  bool has_account(const std::string& id) const;
  void open_account(const std::string& id);  // balance 0; idempotent
  Tc balance(const std::string& id) const;
  Tc treasury() const { return treasury_; }
  Tc total_supply() const { return total_supply_; }
  const std::map<std::string, Tc>& accounts() const { return accounts_; }

  void fund_from_treasury(const std::string& id, Tc amount);
  void transfer(const std::string& from, const std::string& to, Tc amount);
  void to_treasury(const std::string& from, Tc amount);

  /// Slash primitives: debit up to `amount` (clamping at zero, "depleted
  /// to 0") and credit the destination in the same step. Return what was
  /// actually taken.
  Tc slash_to_treasury(const std::string& from, Tc amount);
  Tc slash_to_escrow(const std::string& from, Tc amount, EscrowId id);

  EscrowId open_escrow(const std::string& from, Tc amount,
                       EscrowPurpose purpose, std::uint64_t deadline = 0);
  const Escrow& escrow(EscrowId id) const;
  bool escrow_exists(EscrowId id) const;
  /// Move part of an escrow to an account ("" = Treasury). Closes the
  /// escrow when it reaches zero.
  void release_escrow(EscrowId id, const std::string& to, Tc amount);
  Tc escrow_balance(EscrowId id) const;
  /// Add to an existing escrow from an account (slash pools grow this way).
  void escrow_add(EscrowId id, const std::string& from, Tc amount);
  /// Open an escrow funded by clamped debits (possibly from many accounts).
  EscrowId open_empty_escrow(EscrowPurpose purpose, std::uint64_t deadline = 0);

  /// Exact conservation check.
  bool conserves() const;

 private:
  Tc& account_ref(const std::string& id);

  std::map<std::string, Tc> accounts_;
  Tc treasury_;
  Tc total_supply_;
  std::map<EscrowId, Escrow> escrows_;
  EscrowId next_escrow_ = 1;
};

// -- Composite flows -------------------------------------------------------------

enum class Vote : std::uint8_t { safe = 1, unsafe = 2, abstain = 3 };

struct VoterSettlement {
  std::string account;
  std::int32_t reputation = 0;
  std::optional<Vote> vote;     // nullopt: claimed but never submitted
  EscrowId deposit_escrow = 0;
  EscrowId bond_escrow = 0;     // 0 when no bond was required
};

struct SettlementRecord {
  std::vector<std::pair<std::string, Tc>> rewards;
  std::vector<std::pair<std::string, Tc>> slashes;  // amounts actually taken
  std::vector<std::string> forfeited_deposits;
  Tc residual_to_developer;
};

/// Atomic audit settlement: aligned voters earn aligned_reward from the
/// pool, non-consensus voters are slashed to Treasury, abstainers are left
/// alone, deposits are refunded (forfeited to Treasury for no-shows), and
/// the pool residue returns to the developer. `consensus` is the decide
/// outcome; pass nullopt for a no-quorum tally (nobody aligned or slashed).
SettlementRecord settle_audit(Ledger& ledger, std::optional<Vote> consensus,
                              const std::vector<VoterSettlement>& voters,
                              EscrowId pool, const std::string& developer,
                              Tc rbase, const EconomicParams& p);

enum class MonitoringEvent : std::uint8_t { clean_window = 1, proven_malicious = 2 };

struct ReputationUpdate {
  std::string account;
  std::int32_t before = 0;
  std::int32_t after = 0;
};

struct MonitoringRecord {
  std::vector<ReputationUpdate> updates;
  EscrowId slash_pool = 0;  // set for proven_malicious
  Tc pool_total;
};

/// Post-approval monitoring: a clean window grants +delta_plus to safe
/// voters; a proven-malicious outcome costs safe voters delta_minus and a
/// gamma*rbase stake slash (collected into the retrospective pool) and
/// grants dissenters +delta_plus.
MonitoringRecord apply_monitoring_outcome(
    Ledger& ledger, std::map<std::string, std::int32_t>& reputations,
    const std::vector<std::pair<std::string, Vote>>& votes,
    MonitoringEvent event, Tc rbase, const EconomicParams& p);

struct RetroDistribution {
  Tc whistleblower_share;
  Tc per_dissenter;
  Tc treasury_share;  // includes integer remainders
};

/// 0.3/0.4/0.3 split of the collected pool; the dissenter share divides
/// equally with remainders (and the whole share, if there are no
/// dissenters) going to Treasury.
RetroDistribution retrospective_slash(Ledger& ledger, EscrowId pool,
                                      const std::string& whistleblower,
                                      const std::vector<std::string>& dissenters,
                                      const EconomicParams& p);

struct PurchaseRecord {
  EscrowId escrow = 0;      // holds P pending delivery
  Tc price;
  Tc fee_paid;              // phi * P, to Treasury at purchase time
  std::uint64_t deadline = 0;
};

/// Licensed purchase: buyer pays P(1+phi); phi*P to Treasury now, P held
/// in escrow until the developer posts the key. Requires the delivery
/// bond to be frozen and to cover P.
PurchaseRecord purchase_licensed(Ledger& ledger, const std::string& buyer,
                                 Tc price, EscrowId delivery_bond,
                                 std::uint64_t now, const EconomicParams& p);

/// Key delivered in time: escrowed P goes to the developer.
void settle_delivery(Ledger& ledger, const PurchaseRecord& purchase,
                     const std::string& developer);

/// Deadline passed: buyer recovers the escrowed P plus P from the
/// forfeited bond; the bond remainder goes to Treasury.
void timeout_delivery(Ledger& ledger, const PurchaseRecord& purchase,
                      const std::string& buyer, EscrowId delivery_bond,
                      std::uint64_t now);

struct ChallengeRecord {
  EscrowId fee_escrow = 0;
  Tc fee;
};

ChallengeRecord open_challenge(Ledger& ledger, const std::string& submitter,
                               Tc fee);
/// confirmed=true: original verdict stands, fee to Treasury.
/// confirmed=false: verdict reversed, fee refunded (retrospective_slash
/// runs separately on the collected pool).
void resolve_challenge(Ledger& ledger, const ChallengeRecord& challenge,
                       const std::string& submitter, bool confirmed);

}  // namespace skillchain
