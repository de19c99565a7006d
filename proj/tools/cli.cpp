#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "butterfly/codec.hpp"
#include "butterfly/errors.hpp"
#include "butterfly/gf2/oracle.hpp"
#include "butterfly/metrics.hpp"
#include "butterfly/store/shard_store.hpp"

namespace butterfly::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A failure with a chosen exit code and message.
struct CommandError {
  ExitCode code;
  std::string message;
};

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

void write_json(const CliConfig& cfg, const json& report) {
  if (cfg.json.empty()) return;
  std::ofstream f(cfg.json, std::ios::trunc);
  f << report.dump(2) << '\n';
  f.close();
  if (!f) throw IoError("cannot write report " + cfg.json.string());
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

int cmd_encode(const CliConfig& cfg, std::ostream& out) {
  const CodeParams params(cfg.k_user, cfg.block_size);
  const ButterflyCode code(params);
  const auto bytes = read_file(cfg.input);
  auto stripes = store::chunk_file(bytes, params);
  for (Stripe& s : stripes) code.encode(s);
  const store::Manifest m =
      store::write_shards(stripes, params, cfg.dir, cfg.input.filename().string(), bytes.size());

  out << "encoded " << cfg.input.filename().string() << " (" << bytes.size() << " octets) into "
      << m.stripe_count << " stripes, " << m.shards.size() << " shards in " << cfg.dir.string() << '\n';
  json shards = json::array();
  for (const store::ShardEntry& e : m.shards) {
    if (cfg.verbosity > 0) out << "  " << e.file << ' ' << hex64(e.digest) << '\n';
    shards.push_back({{"node", e.node.to_string()}, {"file", e.file}, {"digest", hex64(e.digest)}});
  }
  write_json(cfg, {{"report", "encode"},
                   {"version", metrics::kReportVersion},
                   {"k_user", m.k_user},
                   {"block_size", m.block_size},
                   {"stripe_count", m.stripe_count},
                   {"original_length", m.original_length},
                   {"shards", shards}});
  return kOk;
}

int cmd_repair(const CliConfig& cfg, std::ostream& out) {
  const store::ShardSet set = store::read_available(cfg.dir, false);
  if (set.missing.size() != 1) {
    throw CommandError{kNotApplicable,
                       set.missing.empty()
                           ? "no shard is missing; nothing to repair"
                           : "two shards are missing " + set.missing.to_string() +
                                 "; use 'decode --rebuild' to restore them"};
  }
  const store::RepairOutcome outcome = store::repair_shard(cfg.dir);
  const ButterflyCode code(set.manifest.params());
  const metrics::AccessReport access = metrics::measure_repair_access(code, outcome.node);

  out << "rebuilt " << store::shard_file_name(outcome.node) << " across " << outcome.stripe_count << " stripes\n"
      << access.to_text();
  json bytes = json::object();
  for (const auto& [node, n] : outcome.reads.payload_bytes) {
    out << "bytes_read." << node.to_string() << '=' << n << '\n';
    bytes[node.to_string()] = n;
  }
  out << "digest=" << hex64(outcome.digest) << (outcome.digest_matches ? " matches manifest" : " MISMATCH") << '\n';

  json report = access.to_json();
  report["report"] = "repair";
  report["stripe_count"] = outcome.stripe_count;
  report["bytes_read"] = bytes;
  report["digest"] = hex64(outcome.digest);
  report["digest_matches"] = outcome.digest_matches;
  write_json(cfg, report);
  if (!outcome.digest_matches) {
    throw CommandError{kFormatError, "rebuilt shard does not match the manifest digest"};
  }
  return kOk;
}

int cmd_decode(const CliConfig& cfg, std::ostream& out) {
  const store::ShardSet set = store::read_available(cfg.dir);
  const ButterflyCode code(set.manifest.params());
  auto stripes = store::load_stripes(set);
  for (Stripe& s : stripes) code.decode(s, set.missing);
  const auto bytes = store::assemble_file(stripes, set.manifest.original_length);
  write_file(cfg.out, bytes);
  out << "restored " << cfg.out.string() << " (" << bytes.size() << " octets) with missing shards "
      << set.missing.to_string() << '\n';

  json rebuilt = json::array();
  if (cfg.rebuild && !set.missing.empty()) {
    const auto bad = store::rebuild_missing(set, stripes);
    if (!bad.empty()) throw CommandError{kFormatError, "rebuilt shard digest mismatch for " + bad.front().to_string()};
    for (NodeId n : set.missing) {
      out << "rebuilt " << store::shard_file_name(n) << '\n';
      rebuilt.push_back(n.to_string());
    }
  }
  json missing = json::array();
  for (NodeId n : set.missing) missing.push_back(n.to_string());
  write_json(cfg, {{"report", "decode"},
                   {"version", metrics::kReportVersion},
                   {"missing", missing},
                   {"rebuilt", rebuilt},
                   {"original_length", bytes.size()}});
  return kOk;
}

CodeParams desk_params(const CliConfig& cfg) {
  const CodeParams params(cfg.k_user, 1);
  if (params.columns() > gf2::kMaxVerifyColumns) {
    throw CommandError{kUsageError, "verify and stats support k_user up to " +
                                        std::to_string(gf2::kMaxVerifyColumns)};
  }
  return params;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  const CodeParams params = desk_params(cfg);
  const gf2::MdsReport report = gf2::mds_verify(params);
  json patterns = json::array();
  for (const gf2::PatternCheck& p : report.patterns) {
    out << "pattern " << p.pattern.to_string() << ": rank " << p.rank << '/' << p.required
        << (p.ok() ? " OK" : " FAIL") << '\n';
    json nodes = json::array();
    for (NodeId n : p.pattern) nodes.push_back(n.to_string());
    patterns.push_back({{"pattern", nodes}, {"rank", p.rank}, {"required", p.required}, {"ok", p.ok()}});
  }
  out << report.passed() << '/' << report.patterns.size() << " patterns OK\n";
  write_json(cfg, {{"report", "verify"},
                   {"version", metrics::kReportVersion},
                   {"k_user", params.user_columns()},
                   {"passed", report.passed()},
                   {"total", report.patterns.size()},
                   {"patterns", patterns}});
  return report.all_ok() ? kOk : kVerifyFailed;
}

int cmd_stats(const CliConfig& cfg, std::ostream& out) {
  const CodeParams params = desk_params(cfg);
  const ButterflyCode code(params);
  const metrics::UpdateReport update = metrics::measure_update(params);
  out << "k_user=" << params.user_columns() << " k=" << params.columns() << " rows=" << params.rows() << '\n'
      << update.to_text();
  json access = json::array();
  for (NodeId n : stored_nodes(params)) {
    const metrics::AccessReport r = metrics::measure_repair_access(code, n);
    out << "repair." << n.to_string() << ".ratio=" << metrics::to_string(r.overall) << '\n';
    access.push_back(r.to_json());
  }
  if (cfg.verbosity > 0) {
    for (Row r = 0; r < params.rows(); ++r) out << describe_butterfly_parity(params, r) << '\n';
  }
  json report = update.to_json();
  report["report"] = "stats";
  report["repair_access"] = access;
  write_json(cfg, report);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Butterfly erasure code: XOR-only MDS array code with two parity nodes", "bfly"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", cfg.verbosity, "More output");

  auto add_code_flags = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k_user, "Information (user) columns")->capture_default_str()->check(CLI::Range(1u, CodeParams::kMaxColumns));
    sub->add_option("--json", cfg.json, "Write a structured report to this file");
  };

  CLI::App* encode = app.add_subcommand("encode", "Encode a file into k+2 shards");
  encode->add_option("file", cfg.input, "Input file")->required();
  encode->add_option("--dir", cfg.dir, "Shard directory")->required();
  encode->add_option("--block-size", cfg.block_size, "Octets per element")->capture_default_str()->check(CLI::PositiveNumber);
  add_code_flags(encode);

  CLI::App* repair = app.add_subcommand("repair", "Rebuild one missing shard reading half of each survivor");
  repair->add_option("--dir", cfg.dir, "Shard directory")->required()->check(CLI::ExistingDirectory);
  repair->add_option("--json", cfg.json, "Write a structured report to this file");

  CLI::App* decode = app.add_subcommand("decode", "Restore the original file from up to two missing shards");
  decode->add_option("--dir", cfg.dir, "Shard directory")->required()->check(CLI::ExistingDirectory);
  decode->add_option("--out", cfg.out, "Output file")->required();
  decode->add_flag("--rebuild", cfg.rebuild, "Also rewrite the missing shards");
  decode->add_option("--json", cfg.json, "Write a structured report to this file");

  CLI::App* verify = app.add_subcommand("verify", "Check every two-node erasure by GF(2) rank");
  add_code_flags(verify);
  CLI::App* stats = app.add_subcommand("stats", "Update cost and repair access of a code");
  add_code_flags(stats);

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsageError;
  }

  try {
    if (encode->parsed()) return cmd_encode(cfg, out);
    if (repair->parsed()) return cmd_repair(cfg, out);
    if (decode->parsed()) return cmd_decode(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (stats->parsed()) return cmd_stats(cfg, out);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const UnrecoverableLoss& e) {
    err << "error: unrecoverable: " << e.what() << '\n';
    return kUnrecoverable;
  } catch (const FormatError& e) {
    err << "error: format: " << e.what() << '\n';
    return kFormatError;
  } catch (const IoError& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace butterfly::cli
