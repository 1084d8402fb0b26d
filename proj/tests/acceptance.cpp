// Copyright 2026 The Petition Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if
// any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support/harness.hpp"

namespace petition {
namespace {

namespace fs = std::filesystem;
using coconut::ShowBundle;
using groups::G1Point;
using groups::G2Point;
using groups::RandomScalar;
using groups::Rng;
using groups::Scalar;
using nodes::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<std::vector<uint32_t>> Subsets(uint32_t n, uint32_t t) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + t, true);
  do {
    std::vector<uint32_t> s;
    for (uint32_t i = 0; i < n; ++i) {
      if (mask[i]) s.push_back(i + 1);
    }
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// 1. Every t-subset aggregation verifies and all give the same credential.
Outcome IssuanceRoundTrip() {
  auto start = Clock::now();
  Rng rng = Rng::FromEnvironment(1);
  auto params = groups::Setup("acceptance-issuance");
  size_t checked = 0;
  for (auto [t, n] : std::vector<std::pair<uint32_t, uint32_t>>{{1, 1}, {2, 3}, {3, 5}}) {
    auto dealt = coconut::TtpKeyGen(params, t, n, rng);
    for (int trial = 0; trial < 20; ++trial) {
      Scalar m = RandomScalar(rng);
      auto device = coconut::DeviceKeyPair::Generate(rng);
      auto prepared = coconut::PrepareBlindSign(params, m, device, rng);
      std::vector<coconut::PartialCredential> partials;
      for (const auto& sk : dealt.signing_keys) {
        partials.push_back(coconut::Unblind(coconut::BlindSign(params, sk, prepared.request),
                                            prepared.elgamal_secret));
      }
      std::optional<coconut::Credential> first;
      for (const auto& subset : Subsets(n, t)) {
        std::vector<coconut::PartialCredential> picked;
        std::vector<coconut::AuthorityVerifyKey> vks;
        for (uint32_t i : subset) {
          picked.push_back(partials[i - 1]);
          vks.push_back(dealt.verify_keys[i - 1]);
        }
        auto cred = coconut::AggregateCredential(picked);
        auto vk = coconut::AggregateVerifyKeys(params, vks, t);
        auto show = coconut::ProveCredential(params, vk, m, cred, "issuance-check", rng);
        if (!coconut::VerifyCredential(params, vk, show, "issuance-check")) {
          return {false, "t=" + std::to_string(t) + " n=" + std::to_string(n) +
                             ": aggregation failed verify_cred"};
        }
        if (first && !(*first == cred)) {
          return {false, "t=" + std::to_string(t) + " n=" + std::to_string(n) +
                             ": subsets disagree on the credential"};
        }
        first = cred;
        ++checked;
      }
    }
  }
  double elapsed = Seconds(start);
  return {elapsed < 60.0, std::to_string(checked) + " subset aggregations verified in " +
                              Fmt(elapsed) + " s (limit 60 s)"};
}

// 2. Ten mutation classes, 20 trials each, zero accepts.
Outcome PairingSoundness() {
  Rng rng = Rng::FromEnvironment(2);
  auto params = groups::Setup("acceptance-soundness");
  auto dealt = coconut::TtpKeyGen(params, 2, 3, rng);
  auto other = coconut::TtpKeyGen(params, 2, 3, rng);
  auto vk = coconut::AggregateVerifyKeys(params, {dealt.verify_keys.begin(), dealt.verify_keys.begin() + 2}, 2);
  auto wrong_vk =
      coconut::AggregateVerifyKeys(params, {other.verify_keys.begin(), other.verify_keys.begin() + 2}, 2);
  auto issue = [&](const Scalar& m) {
    auto device = coconut::DeviceKeyPair::Generate(rng);
    auto prepared = coconut::PrepareBlindSign(params, m, device, rng);
    std::vector<coconut::PartialCredential> partials;
    for (int i = 0; i < 2; ++i) {
      partials.push_back(coconut::Unblind(
          coconut::BlindSign(params, dealt.signing_keys[i], prepared.request), prepared.elgamal_secret));
    }
    return coconut::AggregateCredential(partials);
  };
  auto g1 = [&] { return params.g1 * RandomScalar(rng); };
  auto g2 = [&] { return params.g2 * RandomScalar(rng); };
  auto fr = [&] { return RandomScalar(rng); };

  using Mutation = std::function<bool(ShowBundle&)>;  // returns true to use wrong_vk
  std::vector<std::pair<std::string, Mutation>> classes = {
      {"wrong vk", [](ShowBundle&) { return true; }},
      {"identity h'", [](ShowBundle& b) { b.sigma_prime.h = G1Point::Identity(); return false; }},
      {"kappa", [&](ShowBundle& b) { b.kappa += g2(); return false; }},
      {"nu", [&](ShowBundle& b) { b.nu += g1(); return false; }},
      {"h'", [&](ShowBundle& b) { b.sigma_prime.h += g1(); return false; }},
      {"s'", [&](ShowBundle& b) { b.sigma_prime.s += g1(); return false; }},
      {"zeta", [&](ShowBundle& b) { b.zeta += g1(); return false; }},
      {"challenge", [&](ShowBundle& b) { b.proof.challenge += fr(); return false; }},
      {"r_m", [&](ShowBundle& b) { b.proof.r_m += fr(); return false; }},
      {"r_r", [&](ShowBundle& b) { b.proof.r_r += fr(); return false; }},
  };
  int false_accepts = 0, honest_rejects = 0;
  std::string offenders;
  for (int trial = 0; trial < 20; ++trial) {
    Scalar m = RandomScalar(rng);
    auto cred = issue(m);
    std::string id = "soundness-" + std::to_string(trial);
    for (auto& [name, mutate] : classes) {
      ShowBundle b = coconut::ProveCredential(params, vk, m, cred, id, rng);
      if (!coconut::VerifyCredential(params, vk, b, id)) ++honest_rejects;
      bool use_wrong = mutate(b);
      if (coconut::VerifyCredential(params, use_wrong ? wrong_vk : vk, b, id)) {
        ++false_accepts;
        offenders += " " + name;
      }
    }
  }
  return {false_accepts == 0 && honest_rejects == 0,
          "10 classes x 20 trials: " + std::to_string(false_accepts) + " false accepts" +
              offenders + ", " + std::to_string(honest_rejects) + " honest rejects"};
}

// 3. Tally equals the brute-force sums frozen in tests/data.
Outcome TallyOracle() {
  auto start = Clock::now();
  json oracle = json::parse(ReadFile(fs::path(PETITION_TEST_DATA_DIR) / "tally_oracle.json"));
  Rng rng = Rng::FromEnvironment(3);
  testing::Federation fed("acceptance-tally", 3, 5, rng);
  testing::TempDir dir;
  auto owner = fed.NewOwner(dir.path());
  G1Point key = fed.ElectionKey();
  std::vector<client::ClientState> voters;
  size_t most = 0;
  for (const auto& p : oracle["petitions"]) most = std::max(most, p["votes"].size());
  for (size_t i = 0; i < most; ++i) voters.push_back(fed.NewVoter(rng));

  int matched = 0, total = 0;
  size_t votes = 0;
  std::string first_miss;
  for (const auto& p : oracle["petitions"]) {
    ++total;
    std::string id = p["id"];
    owner->CreatePetition(id);
    const auto& choices = p["votes"];
    for (size_t i = 0; i < choices.size(); ++i) {
      owner->SubmitVote(client::BuildVote(fed.params, voters[i], key, id, choices[i].get<int>(), rng));
      ++votes;
    }
    auto result = owner->CloseAndTally(id);
    if (result.yes_count == p["yes"].get<uint64_t>() && result.no_count == p["no"].get<uint64_t>()) {
      ++matched;
    } else if (first_miss.empty()) {
      first_miss = ", first mismatch " + id;
    }
  }
  return {matched == total && total == 50,
          std::to_string(matched) + "/" + std::to_string(total) + " petitions exact (" +
              std::to_string(votes) + " votes, t=3 n=5, " + Fmt(Seconds(start)) + " s)" + first_miss};
}

// 4. Second vote on a petition is double_vote; the same credential on a
// second petition is accepted.
Outcome DoubleVote() {
  Rng rng = Rng::FromEnvironment(4);
  testing::Federation fed("acceptance-double", 2, 3, rng);
  testing::TempDir dir;
  auto owner = fed.NewOwner(dir.path());
  G1Point key = fed.ElectionKey();
  int ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto voter = fed.NewVoter(rng);
    std::string a = "double-a-" + std::to_string(trial), b = "double-b-" + std::to_string(trial);
    owner->CreatePetition(a);
    owner->CreatePetition(b);
    bool good = true;
    try {
      owner->SubmitVote(client::BuildVote(fed.params, voter, key, a, 1, rng));
    } catch (const Error&) {
      good = false;
    }
    try {
      owner->SubmitVote(client::BuildVote(fed.params, voter, key, a, 0, rng));
      good = false;
    } catch (const Error& e) {
      good = good && e.code() == ErrorCode::kDoubleVote;
    }
    try {
      owner->SubmitVote(client::BuildVote(fed.params, voter, key, b, 0, rng));
    } catch (const Error&) {
      good = false;
    }
    good = good && owner->Status(a).vote_count == 1 && owner->Status(b).vote_count == 1;
    ok += good;
  }
  return {ok == 20, std::to_string(ok) + "/20 trials behaved"};
}

// 5. Fifty shows: fresh kappa, nu, h', s' every time, constant zeta.
Outcome Unlinkability() {
  Rng rng = Rng::FromEnvironment(5);
  testing::Federation fed("acceptance-unlink", 2, 3, rng);
  auto voter = fed.NewVoter(rng);
  std::set<Bytes> elements;
  std::set<Bytes> zetas;
  for (int i = 0; i < 50; ++i) {
    auto b = coconut::ProveCredential(fed.params, *voter.verify_key, voter.m, *voter.credential,
                                      "unlink-1", rng);
    for (const Bytes& e : {groups::Encode(b.kappa), groups::Encode(b.nu),
                           groups::Encode(b.sigma_prime.h), groups::Encode(b.sigma_prime.s)}) {
      elements.insert(e);
    }
    zetas.insert(groups::Encode(b.zeta));
  }
  auto other = coconut::ProveCredential(fed.params, *voter.verify_key, voter.m, *voter.credential,
                                        "unlink-2", rng);
  bool distinct = elements.size() == 200;
  bool constant = zetas.size() == 1;
  bool separated = !zetas.contains(groups::Encode(other.zeta));
  return {distinct && constant && separated,
          std::to_string(elements.size()) + "/200 distinct show elements, " +
              std::to_string(zetas.size()) + " zeta value(s), cross-petition zeta " +
              (separated ? "distinct" : "equal")};
}

// 6. gamma_fake = gamma_eve * (prod gamma_i)^-1 without a valid proof is
// refused by name, through the library and through owner startup.
Outcome RogueKey() {
  Rng rng = Rng::FromEnvironment(6);
  auto params = groups::Setup("acceptance-rogue");
  std::vector<tally::PublishedKey> honest;
  G1Point sum = G1Point::Identity();
  for (int i = 1; i <= 3; ++i) {
    auto kp = tally::ElGamalKeyGen(params, "authority-" + std::to_string(i), rng);
    honest.push_back(tally::Publish(kp));
    sum += kp.gamma;
  }
  auto eve = tally::ElGamalKeyGen(params, "eve", rng);
  G1Point fake = eve.gamma - sum;

  std::vector<Bytes> attempts = {
      {},
      eve.pok.Serialize(),
      nizk::ProveKeyPossession(params, eve.secret, fake, "eve", rng).Serialize(),
      Bytes(honest[0].pok),
  };
  int refused = 0;
  for (const Bytes& pok : attempts) {
    auto keys = honest;
    keys.push_back({"eve", fake, pok});
    try {
      tally::AggregateElGamalKeys(params, keys);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kRejectedKey && std::string(e.what()).find("'eve'") != std::string::npos) {
        ++refused;
      }
    }
  }

  // Same attack arriving at an owner from a published /keys answer.
  testing::Federation fed("acceptance-rogue", 2, 3, rng);
  G1Point fed_sum = G1Point::Identity();
  for (const auto& n : fed.nodes) fed_sum += n->keys().elgamal.gamma;
  struct Rogue : nodes::AuthorityClient {
    std::shared_ptr<nodes::AuthorityClient> inner;
    G1Point gamma;
    std::string Name() const override { return "rogue"; }
    json GetKeys() override {
      json k = inner->GetKeys();
      k["gamma"] = nodes::wire::B64(gamma);
      return k;
    }
    json Sign(const json& r) override { return inner->Sign(r); }
    json Decrypt(const json& c) override { return inner->Decrypt(c); }
  };
  auto rogue = std::make_shared<Rogue>();
  rogue->inner = fed.locals[2];
  rogue->gamma = eve.gamma - (fed_sum - fed.nodes[2]->keys().elgamal.gamma);
  testing::TempDir dir;
  nodes::OwnerOptions options;
  options.data_dir = dir.path();
  options.threshold = 2;
  nodes::OwnerNode owner(fed.params, {fed.locals[0], fed.locals[1], rogue}, options);
  bool owner_refused = false;
  try {
    owner.Start();
  } catch (const Error& e) {
    owner_refused = e.code() == ErrorCode::kRejectedKey &&
                    std::string(e.what()).find("authority-3") != std::string::npos;
  }
  return {refused == 4 && owner_refused,
          std::to_string(refused) + "/4 forged proofs refused by name; owner startup " +
              (owner_refused ? "refused" : "ACCEPTED") + " the rogue key"};
}

// 7. 32 concurrent HTTP submissions of one zeta: exactly one accepted.
Outcome Concurrency() {
  Rng rng = Rng::FromEnvironment(7);
  testing::Federation fed("acceptance-concurrency", 2, 3, rng);
  testing::TempDir dir;
  auto owner = std::shared_ptr<nodes::OwnerNode>(fed.NewOwner(dir.path()));
  nodes::HttpServer server;
  nodes::RegisterOwnerRoutes(server.server(), owner);
  std::string url = "http://127.0.0.1:" + std::to_string(server.Start("127.0.0.1", 0));
  owner->CreatePetition("race");
  auto voter = fed.NewVoter(rng);
  G1Point key = fed.ElectionKey();
  std::vector<nodes::VoteSubmission> votes;
  for (int i = 0; i < 32; ++i) votes.push_back(client::BuildVote(fed.params, voter, key, "race", i % 2, rng));

  std::atomic<int> accepted{0}, doubles{0}, other{0};
  std::atomic<bool> go{false};
  std::vector<std::thread> threads;
  for (const auto& v : votes) {
    threads.emplace_back([&, v] {
      while (!go) std::this_thread::yield();
      try {
        nodes::HttpOwnerClient(url).SubmitVote(v);
        ++accepted;
      } catch (const Error& e) {
        (e.code() == ErrorCode::kDoubleVote ? doubles : other)++;
      }
    });
  }
  go = true;
  for (auto& t : threads) t.join();
  auto status = owner->Status("race");
  bool pass = accepted == 1 && doubles == 31 && status.vote_count == 1 &&
              status.spent_zetas == status.vote_count;
  return {pass, std::to_string(accepted.load()) + " accepted, " + std::to_string(doubles.load()) +
                    " double_vote, " + std::to_string(other.load()) + " other; |spent_zetas|=" +
                    std::to_string(status.spent_zetas) + " N=" + std::to_string(status.vote_count)};
}

// 8. Pairing slower than a G1 multiplication; G2 at least 1.5x G1.
Outcome Benchmark() {
  Rng rng = Rng::FromEnvironment(8);
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  G1Point p = G1Point::Generator() * RandomScalar(rng);
  G2Point q = G2Point::Generator() * RandomScalar(rng);
  volatile bool sink = false;
  // Interleaved so that load drifts hit all three operations alike.
  std::vector<double> g1_runs, g2_runs, pairing_runs;
  auto time = [](std::vector<double>& into, auto&& op) {
    auto t0 = Clock::now();
    op();
    into.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t0).count());
  };
  for (int i = 0; i < 41; ++i) {
    Scalar k = RandomScalar(rng);
    time(g1_runs, [&] { sink = (p * k).IsIdentity(); });
    time(g2_runs, [&] { sink = (q * k).IsIdentity(); });
    time(pairing_runs, [&] { sink = groups::Pairing(p, q).IsIdentity(); });
  }
  double g1 = median(g1_runs), g2 = median(g2_runs), pairing = median(pairing_runs);
  (void)sink;
  bool pass = pairing > g1 && g2 >= 1.5 * g1;
  return {pass, "median G1 mul " + Fmt(g1, 1) + " us, G2 mul " + Fmt(g2, 1) + " us (" +
                    Fmt(g2 / g1) + "x), pairing " + Fmt(pairing, 1) + " us (" + Fmt(pairing / g1) +
                    "x G1)"};
}

// 9. SIGKILL the owner process mid-run, restart it, finish, check the tally.
Outcome CrashRecovery() {
  Rng rng = Rng::FromEnvironment(9);
  testing::Federation fed("acceptance-crash", 2, 3, rng);
  std::vector<std::unique_ptr<nodes::HttpServer>> servers;
  json urls = json::array();
  for (const auto& node : fed.nodes) {
    servers.push_back(std::make_unique<nodes::HttpServer>());
    nodes::RegisterAuthorityRoutes(servers.back()->server(), node);
    urls.push_back("http://127.0.0.1:" + std::to_string(servers.back()->Start("127.0.0.1", 0)));
  }
  testing::TempDir dir;
  fs::path config = dir.path() / "owner.json";
  std::ofstream(config) << json{{"role", "owner"},
                                {"listen", "127.0.0.1:0"},
                                {"params_tag", fed.params.tag},
                                {"authorities", urls},
                                {"threshold", 2},
                                {"data_dir", "data"}}
                               .dump();
  auto start_owner = [&] {
    auto p = std::make_unique<testing::Subprocess>(std::vector<std::string>{
        PETITION_CLI_PATH, "--json", "owner", "serve", "--config", config.string()});
    std::string url = testing::AwaitServerUrl(*p);
    return std::make_pair(std::move(p), url);
  };

  const int kMaxVoters = 10;
  std::vector<client::ClientState> voters;
  for (int i = 0; i < kMaxVoters; ++i) voters.push_back(fed.NewVoter(rng));
  G1Point key = fed.ElectionKey();
  std::mt19937 gen(static_cast<uint32_t>(rng.NextU64()));

  int ok = 0;
  std::string failures;
  auto [proc, url] = start_owner();
  for (int trial = 0; trial < 10; ++trial) {
    std::string id = "crash-" + std::to_string(trial);
    int n = 3 + static_cast<int>(gen() % (kMaxVoters - 2));
    int k = 1 + static_cast<int>(gen() % (n - 1));
    bool in_flight = trial % 2 == 1;  // also kill while vote k+1 is on the wire
    std::vector<int> choices;
    std::vector<nodes::VoteSubmission> votes;
    uint64_t yes = 0;
    for (int i = 0; i < n; ++i) {
      choices.push_back(static_cast<int>(gen() % 2));
      yes += choices.back();
      votes.push_back(client::BuildVote(fed.params, voters[i], key, id, choices.back(), rng));
    }
    try {
      nodes::HttpOwnerClient(url).CreatePetition(id);
      for (int i = 0; i < k; ++i) nodes::HttpOwnerClient(url).SubmitVote(votes[i]);
      std::thread racer;
      if (in_flight) {
        racer = std::thread([&, u = url] {
          try {
            nodes::HttpOwnerClient(u).SubmitVote(votes[k]);
          } catch (const Error&) {
          }
        });
        std::this_thread::sleep_for(std::chrono::microseconds(gen() % 8000));
      }
      proc->Kill(SIGKILL);
      if (racer.joinable()) racer.join();
      std::tie(proc, url) = start_owner();

      nodes::HttpOwnerClient owner(url);
      bool trial_ok = true;
      // Votes acknowledged before the crash stay spent.
      try {
        owner.SubmitVote(client::BuildVote(fed.params, voters[0], key, id, choices[0], rng));
        trial_ok = false;
      } catch (const Error& e) {
        trial_ok = e.code() == ErrorCode::kDoubleVote;
      }
      for (int i = k; i < n; ++i) {
        try {
          owner.SubmitVote(votes[i]);
        } catch (const Error& e) {
          // The in-flight vote may have reached the journal before the kill.
          if (!(in_flight && i == k && e.code() == ErrorCode::kDoubleVote)) trial_ok = false;
        }
      }
      auto result = owner.Close(id);
      trial_ok = trial_ok && result.yes_count == yes && result.no_count == n - yes;
      if (trial_ok) {
        ++ok;
      } else {
        failures += " " + id;
      }
    } catch (const Error& e) {
      failures += " " + id + "(" + e.what() + ")";
    }
  }
  return {ok == 10, std::to_string(ok) + "/10 kill-and-restart trials tallied exactly" + failures};
}

}  // namespace
}  // namespace petition

int main() {
  using petition::Outcome;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"issuance round-trip", petition::IssuanceRoundTrip},
      {"pairing-check soundness", petition::PairingSoundness},
      {"tally correctness oracle", petition::TallyOracle},
      {"double vote", petition::DoubleVote},
      {"unlinkability surrogate", petition::Unlinkability},
      {"rogue-key defense", petition::RogueKey},
      {"concurrency atomicity", petition::Concurrency},
      {"relational benchmark", petition::Benchmark},
      {"crash recovery", petition::CrashRecovery},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << " ("
              << criteria[i].first << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
