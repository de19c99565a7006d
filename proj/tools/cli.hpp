#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace butterfly::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kUnrecoverable = 3,     // more than two shards lost
  kFormatError = 4,       // bad manifest, shard header or digest
  kIoError = 5,
  kVerifyFailed = 6,      // an erasure pattern failed the rank check
  kNotApplicable = 7,     // repair asked with zero or two missing shards
};

struct CliConfig {
  std::string subcommand;
  unsigned k_user = 4;
  std::size_t block_size = 4096;
  std::filesystem::path input;
  std::filesystem::path dir;
  std::filesystem::path out;
  std::filesystem::path json;  // structured report destination, empty for none
  bool rebuild = false;
  int verbosity = 0;
};

// Parses and runs one command line. Never throws; failures map to ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace butterfly::cli
