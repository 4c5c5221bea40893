//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_COMMANDS_H_
#define EXPRMOL_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "exprmol/config.h"
#include "exprmol/profile.h"

namespace exprmol {

enum class ErrorCode {
  kUsage,      // bad command line
  kInput,      // missing or malformed input file
  kConfig,     // bad config file or value
  kCheckpoint, // unreadable or incompatible checkpoint
  kMismatch,   // inputs that do not fit together (gene ids, dimensions)
  kNumeric,    // training diverged
  kInternal,
};

std::string_view error_code_name(ErrorCode code);
// 2 for bad input or usage, 1 otherwise.
int exit_code(ErrorCode code);

class CommandError: public std::runtime_error {
public:
  CommandError(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) { }

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

struct TransformArgs {
  std::string input;
  std::string output; // stdout when empty
  std::string average_by;
  bool reverse = false;
  Delimiter delimiter = Delimiter::kComma;
};

struct TrainVaeArgs {
  std::string profiles;
  std::string checkpoint;
  std::string log;
  Delimiter delimiter = Delimiter::kComma;
};

struct TrainGenArgs {
  std::string pairs;
  std::string profiles;
  std::string vae_checkpoint;
  std::string checkpoint;
  std::string log;
  std::string validity_log;
  Delimiter delimiter = Delimiter::kComma;
};

struct GenerateArgs {
  std::string profiles;
  std::string sample_id; // required when the file has more than one row
  std::string vae_checkpoint;
  std::string gen_checkpoint;
  std::string output;
  std::optional<std::size_t> count;       // config generate_count when unset
  std::optional<double> temperature;      // config gen.temperature when unset
  Delimiter delimiter = Delimiter::kComma;
};

struct EvaluateArgs {
  std::string generated;
  std::string pairs;
  std::string ligands;
  std::string output; // stdout when empty
  int threads = 1;
};

// Each command throws CommandError; progress goes to `log`.
void cmd_transform(const TransformArgs &args, std::ostream &out);
void cmd_train_vae(const RunConfig &config, const TrainVaeArgs &args, std::ostream &log,
                   bool verbose = false);
void cmd_train_gen(const RunConfig &config, const TrainGenArgs &args, std::ostream &log,
                   bool verbose = false);
void cmd_generate(const RunConfig &config, const GenerateArgs &args, std::ostream &log);
void cmd_evaluate(const RunConfig &config, const EvaluateArgs &args, std::ostream &out);

// Parses the command line and runs one subcommand. Errors are reported on
// `err` as a single line "error[E_CODE]: message".
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace exprmol

#endif // EXPRMOL_COMMANDS_H_
