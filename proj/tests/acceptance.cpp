// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Time limits are wall-clock seconds measured around each check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "butterfly/codec.hpp"
#include "butterfly/construction.hpp"
#include "butterfly/errors.hpp"
#include "butterfly/gf2/oracle.hpp"
#include "butterfly/metrics.hpp"
#include "butterfly/store/shard_store.hpp"
#include "cli_support.hpp"
#include "test_support.hpp"

using namespace butterfly;
using namespace butterfly::testing;
namespace fs = std::filesystem;

namespace {

// Records the first failed expectation of a criterion.
class Verdict {
 public:
  void expect(bool condition, const std::string& what) {
    if (!condition && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }
  void note(const std::string& detail) { detail_ = detail; }
  const std::string& detail() const { return detail_; }

 private:
  std::string failure_;
  std::string detail_;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no time limit
  std::function<void(Verdict&)> check;
};

const std::vector<unsigned> kOddColumns{3, 5, 7};
constexpr int kRandomStripes = 100;
constexpr std::size_t kBlockSize = 8;

bool same_column(const Stripe& a, const Stripe& b, NodeId node) {
  const auto x = a.column(node);
  const auto y = b.column(node);
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

std::vector<Coord> sorted_terms(std::vector<Coord> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void fixture_equality(Verdict& v) {
  const CodeParams p(3);
  v.expect(butterfly_set(p, 0) == ParitySet({{0, 0}, {1, 1}, {3, 2}, {0, 2}}), "b_0 set");
  v.expect(butterfly_set(p, 2) == ParitySet({{2, 0}, {3, 1}, {1, 2}, {2, 2}, {3, 0}, {1, 1}}), "b_2 set");

  struct Expected {
    Coord target;
    RecoveryMethod method;
    Row parity_row;
    std::vector<Coord> terms;
  };
  const std::vector<Expected> expected{
      {{0, 1}, RecoveryMethod::Horizontal, 0, {{0, 0}, {0, 2}}},
      {{3, 1}, RecoveryMethod::Horizontal, 3, {{3, 0}, {3, 2}}},
      {{1, 1}, RecoveryMethod::Butterfly, 0, {{0, 0}, {3, 2}, {0, 2}}},
      {{2, 1}, RecoveryMethod::Butterfly, 3, {{3, 0}, {0, 2}, {0, 1}}},
  };
  const RepairPlan plan = ButterflyCode(p).repair_plan(NodeId::info(1));
  v.expect(plan.steps.size() == expected.size(), "node 1 repair has four equations");
  for (std::size_t s = 0; s < std::min(plan.steps.size(), expected.size()); ++s) {
    const RepairStep& got = plan.steps[s];
    const Expected& want = expected[s];
    v.expect(got.target == want.target && got.method == want.method && got.parity_row == want.parity_row &&
                 sorted_terms(got.terms) == sorted_terms(want.terms),
             "repair equation for " + to_string(want.target));
  }
  v.note(describe_butterfly_parity(p, 0));
}

void single_repair_access(Verdict& v) {
  std::mt19937_64 rng(101);
  std::size_t repairs = 0;
  for (unsigned k : kOddColumns) {
    const ButterflyCode code(CodeParams(k, kBlockSize));
    const Row half = code.params().rows() / 2;
    for (Column j = 0; j < k; ++j) {
      const NodeId failed = NodeId::info(j);
      const RepairPlan plan = code.repair_plan(failed);
      const metrics::AccessReport access = metrics::measure_repair_access(code, failed);
      v.expect(plan.reads.size() == code.params().stored_nodes() - 1, "plan reads every survivor");
      for (const auto& [node, rows] : plan.reads) {
        v.expect(rows.size() == half, "k=" + std::to_string(k) + " reads half of " + node.to_string());
      }
      for (const metrics::NodeAccess& n : access.nodes) {
        v.expect(n.ratio == metrics::Ratio(1, 2), "ratio of " + n.node.to_string());
      }
      v.expect(access.overall == metrics::Ratio(1, 2), "overall ratio");
      for (int trial = 0; trial < kRandomStripes; ++trial) {
        const Stripe original = random_encoded_stripe(code, rng);
        // Only the planned blocks are present, so any other read throws.
        Stripe partial = original.restricted_to(plan.reads);
        code.repair(partial, failed);
        v.expect(same_column(partial, original, failed), "column recovered exactly");
        ++repairs;
      }
    }
  }
  v.note(std::to_string(repairs) + " repairs");
}

void double_decode_matches_oracle(Verdict& v) {
  std::mt19937_64 rng(202);
  std::size_t patterns = 0;
  for (unsigned k : kOddColumns) {
    const CodeParams params(k, kBlockSize);
    const gf2::MdsReport report = gf2::mds_verify(params);
    v.expect(report.all_ok(), "rank check for k=" + std::to_string(k));
    const ButterflyCode code(params);
    const gf2::CodeSystem system = gf2::build_generator(params);
    for (const ErasurePattern& pattern : all_patterns(params, 2)) {
      const gf2::OracleDecoder oracle(system, pattern);
      ++patterns;
      for (int trial = 0; trial < kRandomStripes; ++trial) {
        const Stripe original = random_encoded_stripe(code, rng);
        Stripe damaged = original;
        damaged.erase(pattern);
        const Stripe expected = oracle.recover(damaged);
        code.decode(damaged, pattern);
        for (Column j = 0; j < k; ++j) {
          v.expect(same_column(damaged, expected, NodeId::info(j)), "decode equals oracle for " + pattern.to_string());
        }
        v.expect(damaged.same_content(original), "decode restores " + pattern.to_string());
      }
    }
  }
  v.note(std::to_string(patterns) + " patterns");
}

void update_measure(Verdict& v) {
  std::ostringstream detail;
  for (unsigned k : {3u, 5u, 7u, 9u}) {
    const metrics::UpdateReport r = metrics::measure_update(CodeParams(k));
    const std::int64_t window = k / 2;
    v.expect(r.padded.mean == metrics::Ratio(window, 2) + 2, "mean for k=" + std::to_string(k));
    v.expect(r.padded.max == window + 2, "max for k=" + std::to_string(k));
    detail << (k == 3 ? "" : ", ") << "k=" << k << " mean " << metrics::to_string(r.padded.mean) << " max "
           << r.padded.max;
  }
  v.note(detail.str());
}

void worked_row_pairs(Verdict& v) {
  const CodeParams p(5);
  const ColumnPair pair{0, 2};
  v.expect(find_rows_pair(p, 2, pair) == RowPair{7, 4}, "iteration 2");
  v.expect(find_rows_pair(p, 0, pair) == RowPair{0, 3}, "iteration 0");
}

void decode_order(Verdict& v) {
  std::mt19937_64 rng(303);
  std::size_t checked = 0;
  for (unsigned k : kOddColumns) {
    const ButterflyCode code(CodeParams(k, kBlockSize));
    for (const ErasurePattern& pattern : all_patterns(code.params(), 2)) {
      const NodeId first = pattern.nodes()[0];
      const NodeId second = pattern.nodes()[1];
      const bool ordered = first.is_info() && second.kind != NodeId::Kind::Butterfly;
      for (int trial = 0; trial < 10; ++trial) {
        const Stripe original = random_encoded_stripe(code, rng);
        Stripe damaged = original;
        damaged.erase(pattern);
        try {
          const DecodeStats stats = code.decode(damaged, pattern);
          if (ordered) v.expect(stats.dependencies_checked > 0, "checks ran for " + pattern.to_string());
          checked += stats.dependencies_checked;
        } catch (const DecodeOrderViolation& e) {
          v.expect(false, std::string("violation: ") + e.what());
        }
        v.expect(damaged.same_content(original), "decode restores " + pattern.to_string());
      }
    }
  }
  v.expect(checked > 0, "some dependency checked");
  v.note(std::to_string(checked) + " dependencies checked");
}

void cli_round_trip(Verdict& v) {
  ScratchDir tmp("acceptance");
  const auto input = write_random_file(tmp / "input.bin", 1 << 20, 404);
  std::size_t runs = 0;
  for (unsigned k_user : {2u, 4u}) {
    const std::string pristine = tmp / ("k" + std::to_string(k_user));
    v.expect(run_cli({"encode", tmp / "input.bin", "--dir", pristine, "--k", std::to_string(k_user)}).code == 0,
             "encode");
    const CodeParams params(k_user);
    std::vector<ErasurePattern> patterns = all_patterns(params, 1);
    for (const ErasurePattern& p : all_patterns(params, 2)) patterns.push_back(p);

    for (const ErasurePattern& pattern : patterns) {
      const fs::path work = tmp.path / "work";
      fs::remove_all(work);
      fs::copy(pristine, work);
      std::vector<std::vector<std::uint8_t>> lost;
      for (NodeId n : pattern) {
        lost.push_back(slurp(work / store::shard_file_name(n)));
        fs::remove(work / store::shard_file_name(n));
      }
      const std::string label = "k_user=" + std::to_string(k_user) + " " + pattern.to_string();

      if (pattern.size() == 1) {
        const CliResult r = run_cli({"repair", "--dir", work.string(), "--json", tmp / "repair.json"});
        v.expect(r.code == 0, "repair " + label);
        const auto report = nlohmann::json::parse(slurp(tmp.path / "repair.json"));
        if (pattern.nodes()[0].is_info()) {
          v.expect(report["ratio"] == "1/2", "overall ratio " + label);
          for (const auto& n : report["nodes"]) v.expect(n["ratio"] == "1/2", "node ratio " + label);
        }
      } else {
        v.expect(run_cli({"decode", "--dir", work.string(), "--out", tmp / "out.bin", "--rebuild"}).code == 0,
                 "decode " + label);
        v.expect(slurp(tmp.path / "out.bin") == input, "decoded output " + label);
      }
      std::size_t i = 0;
      for (NodeId n : pattern) v.expect(slurp(work / store::shard_file_name(n)) == lost[i++], "shard " + label);

      // Every shard is back, so a plain decode restores the input as well.
      v.expect(run_cli({"decode", "--dir", work.string(), "--out", tmp / "out.bin"}).code == 0, "decode " + label);
      v.expect(slurp(tmp.path / "out.bin") == input, "output " + label);
      ++runs;
    }
  }
  v.note(std::to_string(runs) + " erasure patterns");
}

void mutation_sensitivity(Verdict& v) {
  const CodeParams p(3);
  std::vector<ParitySet> sets;
  for (Row r = 0; r < p.rows(); ++r) sets.push_back(butterfly_set(p, r));
  std::size_t mutants = 0;
  for (Row r = 0; r < p.rows(); ++r) {
    for (Coord c : sets[r]) {
      std::vector<ParitySet> mutated = sets;
      mutated[r] = sets[r].without(c);
      v.expect(!gf2::mds_verify(gf2::build_generator(p, mutated)).all_ok(),
               "mutant without " + to_string(c) + " in b_" + std::to_string(r));
      ++mutants;
    }
  }
  v.expect(gf2::mds_verify(gf2::build_generator(p, sets)).all_ok(), "unmutated sets pass");
  v.note(std::to_string(mutants) + " mutants rejected");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "parity and repair equations of the three-column code", 1, fixture_equality},
      {2, "single repair reads half of every survivor and recovers exactly", 10, single_repair_access},
      {3, "every two-node erasure has full rank and decode equals the oracle", 60, double_decode_matches_oracle},
      {4, "update mean and max match the closed forms", 5, update_measure},
      {5, "row pairs of the five-column worked example", 1, worked_row_pairs},
      {6, "double decode consumes only earlier iterations", 0, decode_order},
      {7, "CLI round trip over every one- and two-shard loss", 30, cli_round_trip},
      {8, "every single-coordinate mutation fails the rank check", 0, mutation_sensitivity},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict verdict;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.check(verdict);
    } catch (const std::exception& e) {
      verdict.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      verdict.expect(false, "took longer than " + std::to_string(c.limit_seconds) + " s");
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::cout << (verdict.ok() ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << timing << ')';
    if (!verdict.ok()) {
      std::cout << ": " << verdict.failure();
      ++failures;
    } else if (!verdict.detail().empty()) {
      std::cout << ": " << verdict.detail();
    }
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
