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
#include "skillchain/economics.hpp"

#include <algorithm>
#include <numeric>

namespace skillchain {

namespace {
#if defined(__SIZEOF_INT128__)
std::int64_t muldiv_floor(std::int64_t a, std::int64_t b, std::int64_t d) {
  __int128 prod = static_cast<__int128>(a) * b;
  __int128 q = prod / d;
  if ((prod % d != 0) && ((prod < 0) != (d < 0))) q -= 1;
  return static_cast<std::int64_t>(q);
}
#else
#error "128-bit integer support required"
#endif
}  // namespace

std::string Tc::str() const {
  const bool neg = milli < 0;
  std::int64_t a = neg ? -milli : milli;
  std::string s = neg ? "-" : "";
  s += std::to_string(a / 1000);
  s += '.';
  std::string frac = std::to_string(a % 1000);
  s += std::string(3 - frac.size(), '0') + frac;
  s += " TC";
  return s;
}

std::int64_t mul_micro_floor(std::int64_t x, std::int64_t f_micro) {
  return muldiv_floor(x, f_micro, kMicroOne);
}

void EconomicParams::validate() const {
  if (gamma_micro < kMicroOne) {
    throw Error(Errc::invalid_argument, "gamma must be >= 1");
  }
  if (delta_minus <= delta_plus) {
    throw Error(Errc::invalid_argument, "delta_minus must exceed delta_plus");
  }
  if (alpha_micro <= 0 || alpha_micro >= kMicroOne) {
    throw Error(Errc::invalid_argument, "alpha must be in (0, 1)");
  }
  if (slash_split.whistleblower_micro + slash_split.dissenters_micro +
          slash_split.treasury_micro !=
      kMicroOne) {
    throw Error(Errc::invalid_argument, "slash split must sum to 1");
  }
  if (kappa_tc <= 0 || committee_size == 0 || r_max <= 0 || r0 < 0 ||
      r0 > r_max || beta0.milli < 0 || s_min.milli < 0) {
    throw Error(Errc::invalid_argument, "parameter out of range");
  }
  if (theta_micro < 0 || theta_micro > kMicroOne || phi_proto_micro < 0 ||
      phi_proto_micro > kMicroOne || sigma_micro < 0) {
    throw Error(Errc::invalid_argument, "fraction out of range");
  }
}

Tc r_base(std::int64_t skill_tokens, const EconomicParams& p) {
  if (skill_tokens < 0) {
    throw Error(Errc::invalid_argument, "negative skill size");
  }
  // beta1 * L / kappa in milli-TC: beta1_micro * L * 1000 / (1e6 * kappa).
  const std::int64_t size_term =
      muldiv_floor(p.beta1_micro * skill_tokens, 1000, kMicroOne * p.kappa_tc);
  return Tc{p.beta0.milli + size_term};
}

Tc slippage_r_base(std::int64_t skill_tokens, std::uint64_t t, std::uint64_t t0,
                   const EconomicParams& p) {
  if (t < t0) throw Error(Errc::invalid_argument, "t before t0");
  const std::uint64_t intervals = p.base_wait == 0 ? 0 : (t - t0) / p.base_wait;
  const Tc base = r_base(skill_tokens, p);
  const std::int64_t multiplier_micro =
      kMicroOne + p.sigma_micro * static_cast<std::int64_t>(intervals);
  return Tc{mul_micro_floor(base.milli, multiplier_micro)};
}

FeeSplit publication_fee(std::int64_t skill_tokens, const EconomicParams& p) {
  FeeSplit split;
  split.total = Tc{r_base(skill_tokens, p).milli *
                   static_cast<std::int64_t>(p.committee_size)};
  split.treasury_cut = Tc{mul_micro_floor(split.total.milli, p.phi_proto_micro)};
  split.audit_pool = split.total - split.treasury_cut;
  return split;
}

Tc aligned_reward(Tc rbase, std::int32_t reputation, const EconomicParams& p) {
  const std::int64_t after_phi =
      mul_micro_floor(rbase.milli, kMicroOne - p.phi_proto_micro);
  return Tc{muldiv_floor(after_phi, reputation, p.r_max)};
}

Tc slash_amount(Tc rbase, const EconomicParams& p) {
  return Tc{mul_micro_floor(rbase.milli, p.gamma_micro)};
}

std::int32_t decay_reputation(std::int32_t reputation, const EconomicParams& p) {
  return static_cast<std::int32_t>(mul_micro_floor(reputation, p.alpha_micro));
}

std::int32_t clamp_reputation(std::int64_t r, const EconomicParams& p) {
  return static_cast<std::int32_t>(
      std::clamp<std::int64_t>(r, 0, p.r_max));
}

bool check_activation(Tc stake, const EconomicParams& p) {
  return stake >= p.s_min;
}

// -- Ledger ----------------------------------------------------------------

Ledger::Ledger(Tc initial_treasury)
    : treasury_(initial_treasury), total_supply_(initial_treasury) {
  if (initial_treasury.milli < 0) {
    throw Error(Errc::invalid_argument, "negative genesis treasury");
  }
}

bool Ledger::has_account(const std::string& id) const {
  return accounts_.count(id) > 0;
}

void Ledger::open_account(const std::string& id) {
  if (id.empty()) throw Error(Errc::invalid_argument, "empty account id");
  accounts_.emplace(id, Tc{0});
}

Tc Ledger::balance(const std::string& id) const {
  auto it = accounts_.find(id);
  if (it == accounts_.end()) throw Error(Errc::not_found, "account " + id);
  return it->second;
}

Tc& Ledger::account_ref(const std::string& id) {
  auto it = accounts_.find(id);
  if (it == accounts_.end()) throw Error(Errc::not_found, "account " + id);
  return it->second;
}

void Ledger::fund_from_treasury(const std::string& id, Tc amount) {
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  if (treasury_ < amount) {
    throw Error(Errc::insufficient_funds, "treasury low");
  }
  Tc& acc = account_ref(id);
  treasury_ -= amount;
  acc += amount;
}

void Ledger::transfer(const std::string& from, const std::string& to,
                      Tc amount) {
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  Tc& src = account_ref(from);
  Tc& dst = account_ref(to);
  if (src < amount) {
    throw Error(Errc::insufficient_funds, from + " has " + src.str());
  }
  src -= amount;
  dst += amount;
}

void Ledger::to_treasury(const std::string& from, Tc amount) {
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  Tc& src = account_ref(from);
  if (src < amount) {
    throw Error(Errc::insufficient_funds, from + " has " + src.str());
  }
  src -= amount;
  treasury_ += amount;
}

Tc Ledger::slash_to_treasury(const std::string& from, Tc amount) {
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  Tc& src = account_ref(from);
  const Tc taken = std::min(src, amount);
  src -= taken;
  treasury_ += taken;
  return taken;
}

Tc Ledger::slash_to_escrow(const std::string& from, Tc amount, EscrowId id) {
  auto it = escrows_.find(id);
  if (it == escrows_.end()) throw Error(Errc::not_found, "escrow");
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  Tc& src = account_ref(from);
  const Tc taken = std::min(src, amount);
  src -= taken;
  it->second.amount += taken;
  return taken;
}

EscrowId Ledger::open_escrow(const std::string& from, Tc amount,
                             EscrowPurpose purpose, std::uint64_t deadline) {
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  Tc& src = account_ref(from);
  if (src < amount) {
    throw Error(Errc::insufficient_funds, from + " has " + src.str());
  }
  src -= amount;
  const EscrowId id = next_escrow_++;
  escrows_[id] = Escrow{amount, purpose, from, deadline};
  return id;
}

EscrowId Ledger::open_empty_escrow(EscrowPurpose purpose,
                                   std::uint64_t deadline) {
  const EscrowId id = next_escrow_++;
  escrows_[id] = Escrow{Tc{0}, purpose, "", deadline};
  return id;
}

bool Ledger::escrow_exists(EscrowId id) const { return escrows_.count(id) > 0; }

const Escrow& Ledger::escrow(EscrowId id) const {
  auto it = escrows_.find(id);
  if (it == escrows_.end()) throw Error(Errc::not_found, "escrow");
  return it->second;
}

Tc Ledger::escrow_balance(EscrowId id) const { return escrow(id).amount; }

void Ledger::release_escrow(EscrowId id, const std::string& to, Tc amount) {
  auto it = escrows_.find(id);
  if (it == escrows_.end()) throw Error(Errc::not_found, "escrow");
  if (amount.milli < 0 || amount > it->second.amount) {
    throw Error(Errc::invalid_argument, "release exceeds escrow");
  }
  if (to.empty()) {
    treasury_ += amount;
  } else {
    account_ref(to) += amount;
  }
  it->second.amount -= amount;
  if (it->second.amount.milli == 0) escrows_.erase(it);
}

void Ledger::escrow_add(EscrowId id, const std::string& from, Tc amount) {
  auto it = escrows_.find(id);
  if (it == escrows_.end()) throw Error(Errc::not_found, "escrow");
  if (amount.milli < 0) throw Error(Errc::invalid_argument, "negative amount");
  Tc& src = account_ref(from);
  if (src < amount) {
    throw Error(Errc::insufficient_funds, from + " has " + src.str());
  }
  src -= amount;
  it->second.amount += amount;
}

bool Ledger::conserves() const {
  std::int64_t sum = treasury_.milli;
  for (const auto& [id, bal] : accounts_) {
    if (bal.milli < 0) return false;
    sum += bal.milli;
  }
  for (const auto& [id, esc] : escrows_) {
    if (esc.amount.milli < 0) return false;
    sum += esc.amount.milli;
  }
  return sum == total_supply_.milli && treasury_.milli >= 0;
}

// -- Composite flows ---------------------------------------------------------

SettlementRecord settle_audit(Ledger& ledger, std::optional<Vote> consensus,
                              const std::vector<VoterSettlement>& voters,
                              EscrowId pool, const std::string& developer,
                              Tc rbase, const EconomicParams& p) {
  SettlementRecord rec;
  const Tc slash = slash_amount(rbase, p);
  for (const VoterSettlement& v : voters) {
    if (!v.vote.has_value()) {
      // Missed the verdict deadline: deposit is forfeited.
      if (v.deposit_escrow != 0) {
        ledger.release_escrow(v.deposit_escrow, "",
                              ledger.escrow_balance(v.deposit_escrow));
        rec.forfeited_deposits.push_back(v.account);
      }
    } else if (v.deposit_escrow != 0) {
      ledger.release_escrow(v.deposit_escrow, v.account,
                            ledger.escrow_balance(v.deposit_escrow));
    }
    // Confidentiality bonds are returned at settlement unless already
    // forfeited through a leak report.
    if (v.bond_escrow != 0 && ledger.escrow_exists(v.bond_escrow)) {
      ledger.release_escrow(v.bond_escrow, v.account,
                            ledger.escrow_balance(v.bond_escrow));
    }
    if (!consensus.has_value() || !v.vote.has_value() ||
        *v.vote == Vote::abstain) {
      continue;
    }
    if (*v.vote == *consensus) {
      const Tc reward =
          std::min(aligned_reward(rbase, v.reputation, p),
                   ledger.escrow_balance(pool));
      ledger.release_escrow(pool, v.account, reward);
      rec.rewards.emplace_back(v.account, reward);
    } else {
      const Tc taken = ledger.slash_to_treasury(v.account, slash);
      rec.slashes.emplace_back(v.account, taken);
    }
  }
  if (ledger.escrow_exists(pool)) {
    const Tc residue = ledger.escrow_balance(pool);
    ledger.release_escrow(pool, developer, residue);
    rec.residual_to_developer = residue;
  }
  return rec;
}

MonitoringRecord apply_monitoring_outcome(
    Ledger& ledger, std::map<std::string, std::int32_t>& reputations,
    const std::vector<std::pair<std::string, Vote>>& votes,
    MonitoringEvent event, Tc rbase, const EconomicParams& p) {
  MonitoringRecord rec;
  rec.pool_total = Tc{0};
  if (event == MonitoringEvent::proven_malicious) {
    rec.slash_pool = ledger.open_empty_escrow(EscrowPurpose::retro_slash_pool);
  }
  const Tc slash = slash_amount(rbase, p);
  for (const auto& [account, vote] : votes) {
    auto it = reputations.find(account);
    if (it == reputations.end()) continue;
    const std::int32_t before = it->second;
    if (event == MonitoringEvent::clean_window) {
      if (vote == Vote::safe) {
        it->second = clamp_reputation(
            static_cast<std::int64_t>(before) + p.delta_plus, p);
      }
    } else {
      if (vote == Vote::safe) {
        it->second = clamp_reputation(
            static_cast<std::int64_t>(before) - p.delta_minus, p);
        rec.pool_total += ledger.slash_to_escrow(account, slash, rec.slash_pool);
      } else if (vote == Vote::unsafe) {
        it->second = clamp_reputation(
            static_cast<std::int64_t>(before) + p.delta_plus, p);
      }
    }
    if (it->second != before) {
      rec.updates.push_back(ReputationUpdate{account, before, it->second});
    }
  }
  return rec;
}

RetroDistribution retrospective_slash(Ledger& ledger, EscrowId pool,
                                      const std::string& whistleblower,
                                      const std::vector<std::string>& dissenters,
                                      const EconomicParams& p) {
  const Tc total = ledger.escrow_balance(pool);
  if (total.milli <= 0) {
    throw Error(Errc::invalid_argument, "empty retrospective pool");
  }
  RetroDistribution dist;
  dist.whistleblower_share =
      Tc{mul_micro_floor(total.milli, p.slash_split.whistleblower_micro)};
  const Tc dissenter_total =
      Tc{mul_micro_floor(total.milli, p.slash_split.dissenters_micro)};
  ledger.release_escrow(pool, whistleblower, dist.whistleblower_share);
  if (dissenters.empty()) {
    dist.per_dissenter = Tc{0};
  } else {
    dist.per_dissenter =
        Tc{dissenter_total.milli /
           static_cast<std::int64_t>(dissenters.size())};
    for (const std::string& d : dissenters) {
      ledger.release_escrow(pool, d, dist.per_dissenter);
    }
  }
  // Treasury takes its 30% plus all rounding remainders (and the dissenter
  // share when there is nobody to pay it to).
  dist.treasury_share = ledger.escrow_balance(pool);
  ledger.release_escrow(pool, "", dist.treasury_share);
  return dist;
}

PurchaseRecord purchase_licensed(Ledger& ledger, const std::string& buyer,
                                 Tc price, EscrowId delivery_bond,
                                 std::uint64_t now, const EconomicParams& p) {
  if (!ledger.escrow_exists(delivery_bond) ||
      ledger.escrow(delivery_bond).purpose != EscrowPurpose::delivery_bond) {
    throw Error(Errc::wrong_state, "no delivery bond frozen");
  }
  if (ledger.escrow_balance(delivery_bond) < price) {
    throw Error(Errc::wrong_state, "delivery bond below price");
  }
  const Tc fee = Tc{mul_micro_floor(price.milli, p.phi_proto_micro)};
  const Tc total = price + fee;
  if (ledger.balance(buyer) < total) {
    throw Error(Errc::insufficient_funds, "buyer cannot cover price + fee");
  }
  ledger.to_treasury(buyer, fee);
  PurchaseRecord rec;
  rec.escrow = ledger.open_escrow(buyer, price, EscrowPurpose::purchase,
                                  now + p.tau_deliver);
  rec.price = price;
  rec.fee_paid = fee;
  rec.deadline = now + p.tau_deliver;
  return rec;
}

void settle_delivery(Ledger& ledger, const PurchaseRecord& purchase,
                     const std::string& developer) {
  ledger.release_escrow(purchase.escrow, developer, purchase.price);
}

void timeout_delivery(Ledger& ledger, const PurchaseRecord& purchase,
                      const std::string& buyer, EscrowId delivery_bond,
                      std::uint64_t now) {
  if (now <= purchase.deadline) {
    throw Error(Errc::wrong_state, "delivery window still open");
  }
  // Refund the escrowed price, compensate the buyer with P from the bond,
  // and forfeit the bond remainder to Treasury.
  ledger.release_escrow(purchase.escrow, buyer, purchase.price);
  ledger.release_escrow(delivery_bond, buyer, purchase.price);
  const Tc remainder = ledger.escrow_balance(delivery_bond);
  ledger.release_escrow(delivery_bond, "", remainder);
}

ChallengeRecord open_challenge(Ledger& ledger, const std::string& submitter,
                               Tc fee) {
  if (fee.milli <= 0) throw Error(Errc::invalid_argument, "fee must be positive");
  ChallengeRecord rec;
  rec.fee = fee;
  rec.fee_escrow =
      ledger.open_escrow(submitter, fee, EscrowPurpose::challenge_fee);
  return rec;
}

void resolve_challenge(Ledger& ledger, const ChallengeRecord& challenge,
                       const std::string& submitter, bool confirmed) {
  if (confirmed) {
    ledger.release_escrow(challenge.fee_escrow, "", challenge.fee);
  } else {
    ledger.release_escrow(challenge.fee_escrow, submitter, challenge.fee);
  }
}

}  // namespace skillchain
