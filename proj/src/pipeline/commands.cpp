//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "exprmol/checkpoint.h"
#include "exprmol/corpus.h"
#include "exprmol/metrics.h"
#include "exprmol/smiles.h"

namespace exprmol {
namespace fs = std::filesystem;

namespace {
  void require_file(const std::string &path, const std::string &what) {
    if (path.empty())
      throw CommandError(ErrorCode::kUsage, "no " + what + " given");
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
      throw CommandError(ErrorCode::kInput, what + " not found: " + path);
  }

  std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
      throw CommandError(ErrorCode::kInput, "cannot write " + path);
    return out;
  }

  std::string or_default(const std::string &value, const std::string &fallback) {
    return value.empty() ? fallback : value;
  }

  std::string in_dir(const RunConfig &c, const char *name) {
    return (fs::path(c.paths.output_dir) / name).string();
  }

  // Runs f, turning library exceptions into CommandErrors.
  template <class F>
  void translated(F &&f) {
    try {
      f();
    } catch (const CommandError &) {
      throw;
    } catch (const IngestError &e) {
      throw CommandError(ErrorCode::kInput, e.what());
    } catch (const ConfigError &e) {
      throw CommandError(ErrorCode::kConfig, e.what());
    } catch (const CheckpointError &e) {
      throw CommandError(ErrorCode::kCheckpoint, e.what());
    } catch (const NumericError &e) {
      throw CommandError(ErrorCode::kNumeric, e.what());
    } catch (const VocabularyError &e) {
      throw CommandError(ErrorCode::kInput, e.what());
    } catch (const std::invalid_argument &e) {
      throw CommandError(ErrorCode::kInput, e.what());
    } catch (const std::runtime_error &e) {
      throw CommandError(ErrorCode::kInput, e.what());
    } catch (const std::exception &e) {
      throw CommandError(ErrorCode::kInternal, e.what());
    }
  }

  ProfileSet subset(const ProfileSet &set, const std::vector<std::size_t> &rows) {
    ProfileSet out;
    out.gene_ids = set.gene_ids;
    for (auto r: rows)
      out.profiles.push_back(set.profiles[r]);
    return out;
  }

  void check_genes(const FeatureExtractor &fx, const ProfileSet &profiles,
                   const std::string &path) {
    try {
      require_gene_ids(fx.gene_ids, profiles.gene_ids);
    } catch (const std::invalid_argument &e) {
      throw CommandError(ErrorCode::kMismatch,
                         "gene header of " + path + " does not match the VAE checkpoint: "
                             + e.what());
    }
  }

  void write_csv_row(std::ostream &out, std::initializer_list<double> values) {
    bool first = true;
    for (double v: values) {
      if (!first)
        out << ',';
      first = false;
      out << (std::isnan(v) ? std::string("NA") : format_double(v));
    }
    out << '\n';
    out.flush();
  }
} // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::kUsage: return "E_USAGE";
  case ErrorCode::kInput: return "E_INPUT";
  case ErrorCode::kConfig: return "E_CONFIG";
  case ErrorCode::kCheckpoint: return "E_CHECKPOINT";
  case ErrorCode::kMismatch: return "E_MISMATCH";
  case ErrorCode::kNumeric: return "E_NUMERIC";
  case ErrorCode::kInternal: return "E_INTERNAL";
  }
  return "E_INTERNAL";
}

int exit_code(ErrorCode code) {
  switch (code) {
  case ErrorCode::kNumeric:
  case ErrorCode::kInternal: return 1;
  default: return 2;
  }
}

void cmd_transform(const TransformArgs &args, std::ostream &out) {
  require_file(args.input, "profile file");
  if (args.average_by.empty() && !args.reverse)
    throw CommandError(ErrorCode::kUsage, "transform needs --average-by and/or --reverse");
  if (!args.average_by.empty())
    require_file(args.average_by, "group file");
  translated([&] {
    ProfileSet set = load_profiles(fs::path(args.input), args.delimiter);
    // Averaging comes first, then reversal.
    if (!args.average_by.empty()) {
      std::ifstream in(args.average_by);
      set = average_replicates(set, load_group_map(in, args.delimiter));
    }
    if (args.reverse)
      set = reverse_profiles(set);
    if (args.output.empty()) {
      write_profiles(out, set, args.delimiter);
    } else {
      auto file = open_output(args.output);
      write_profiles(file, set, args.delimiter);
    }
  });
}

void cmd_train_vae(const RunConfig &config, const TrainVaeArgs &args, std::ostream &log,
                   bool verbose) {
  require_file(args.profiles, "profile file");
  translated([&] {
    const ProfileSet raw = load_profiles(fs::path(args.profiles), args.delimiter);
    if (raw.size() == 0)
      throw CommandError(ErrorCode::kInput, "profile file " + args.profiles + " has no rows");

    Rng split_rng(derive_seed(config.seed, Stream::kDataSplit, 0));
    const Split split =
        split_indices(raw.size(), config.train_fraction, config.validation_fraction, split_rng);

    // Statistics come from the training rows only.
    FeatureExtractor fx;
    fx.gene_ids = raw.gene_ids;
    ProfileSet data = raw;
    if (config.standardize) {
      fx.stats = standardize(subset(raw, split.train)).stats;
      for (auto &p: data.profiles)
        p.values = apply_stats(std::move(p.values), *fx.stats);
    }
    const Tensor train = profiles_to_tensor(subset(data, split.train));
    std::optional<Tensor> validation;
    if (!split.validation.empty())
      validation = profiles_to_tensor(subset(data, split.validation));

    auto csv = open_output(args.log);
    csv << "epoch,loss,recon,kl,validation_loss\n";
    auto result = train_vae(train, validation ? &*validation : nullptr, config.vae,
                            [&](const VaeEpochLog &e) {
                              write_csv_row(csv, { double(e.epoch), e.loss, e.recon, e.kl,
                                                   e.validation_loss });
                              if (verbose)
                                log << "vae epoch " << e.epoch << " loss " << e.loss << '\n';
                            });
    fx.model = std::move(result.model);
    save_vae_checkpoint(args.checkpoint, fx);

    log << "train-vae: " << split.train.size() << " train, " << split.validation.size()
        << " validation, " << split.test.size() << " test profiles; best epoch "
        << result.best_epoch;
    if (!split.test.empty()) {
      const Tensor x = profiles_to_tensor(subset(data, split.test));
      const Encoded enc = encode(fx.model, x);
      const auto terms =
          elbo_terms(x, decode(fx.model, enc.mu), enc.mu, enc.log_var, config.vae.beta);
      log << "; test loss " << terms.loss;
    }
    log << '\n';
  });
}

void cmd_train_gen(const RunConfig &config, const TrainGenArgs &args, std::ostream &log,
                   bool verbose) {
  require_file(args.pairs, "pairs file");
  require_file(args.profiles, "profile file");
  require_file(args.vae_checkpoint, "VAE checkpoint");
  translated([&] {
    const ProfileSet profiles = load_profiles(fs::path(args.profiles), args.delimiter);
    const FeatureExtractor fx = load_vae_checkpoint(args.vae_checkpoint);
    check_genes(fx, profiles, args.profiles);
    const PairedCorpus corpus =
        load_pairs(fs::path(args.pairs), &profiles, config.max_smiles_length);
    if (corpus.size() == 0)
      throw CommandError(ErrorCode::kInput, "pairs file " + args.pairs + " has no rows");

    const Vocabulary vocab = Vocabulary::build(corpus.smiles);
    std::map<std::string, std::vector<double>> cache;
    auto condition_of = [&](const std::string &id) -> const std::vector<double> & {
      auto it = cache.find(id);
      if (it == cache.end())
        it = cache.emplace(id, extract_condition(fx, *profiles.find(id))).first;
      return it->second;
    };
    auto make_data = [&](const std::vector<std::size_t> &rows) {
      GenTrainData d;
      if (rows.empty())
        return d;
      d.conditions = Tensor::matrix(rows.size(), fx.model.latent_dim());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        d.sequences.push_back(vocab.encode(corpus.smiles[rows[r]]));
        const auto &c = condition_of(corpus.sample_ids[rows[r]]);
        for (std::size_t k = 0; k < c.size(); ++k)
          d.conditions(r, k) = c[k];
      }
      return d;
    };

    Rng split_rng(derive_seed(config.seed, Stream::kDataSplit, 1));
    const Split split = split_indices(corpus.size(), config.train_fraction,
                                      config.validation_fraction, split_rng);
    const GenTrainData train = make_data(split.train);
    const GenTrainData validation = make_data(split.validation);

    auto csv = open_output(args.log);
    auto validity = open_output(args.validity_log);
    csv << "epoch,loss,token_nll,validation_loss\n";
    validity << "epoch,validity\n";
    auto result = train_generator(
        vocab, train, split.validation.empty() ? nullptr : &validation, config.gen,
        [&](const GenEpochLog &e) {
          write_csv_row(csv, { double(e.epoch), e.loss, e.token_nll, e.validation_loss });
          write_csv_row(validity, { double(e.epoch), e.validity });
          if (verbose) {
            log << "gen epoch " << e.epoch << " loss " << e.loss << " validity " << e.validity
                << '\n';
          }
        });
    save_generator_checkpoint(args.checkpoint, result.model);

    log << "train-gen: " << split.train.size() << " train, " << split.validation.size()
        << " validation, " << split.test.size() << " test pairs; vocabulary " << vocab.size()
        << "; best epoch " << result.best_epoch;
    if (!split.test.empty()) {
      const GenTrainData test = make_data(split.test);
      log << "; test loss " << nll_loss(result.model, test.sequences, test.conditions);
    }
    log << '\n';
  });
}

void cmd_generate(const RunConfig &config, const GenerateArgs &args, std::ostream &log) {
  require_file(args.profiles, "profile file");
  require_file(args.vae_checkpoint, "VAE checkpoint");
  require_file(args.gen_checkpoint, "generator checkpoint");
  const std::size_t count = args.count.value_or(config.generate_count);
  if (count == 0)
    throw CommandError(ErrorCode::kUsage, "--count must be at least 1");
  translated([&] {
    const ProfileSet profiles = load_profiles(fs::path(args.profiles), args.delimiter);
    const FeatureExtractor fx = load_vae_checkpoint(args.vae_checkpoint);
    const GenModel gen = load_generator_checkpoint(args.gen_checkpoint);
    check_genes(fx, profiles, args.profiles);
    if (gen.condition_dim() != fx.model.latent_dim()) {
      throw CommandError(ErrorCode::kMismatch,
                         "generator expects " + std::to_string(gen.condition_dim())
                             + "-dim conditions, VAE produces "
                             + std::to_string(fx.model.latent_dim()));
    }

    const Profile *profile = nullptr;
    if (!args.sample_id.empty()) {
      profile = profiles.find(args.sample_id);
      if (!profile)
        throw CommandError(ErrorCode::kInput, "sample_id \"" + args.sample_id
                                                  + "\" not found in " + args.profiles);
    } else if (profiles.size() == 1) {
      profile = &profiles.profiles[0];
    } else {
      throw CommandError(ErrorCode::kUsage,
                         args.profiles + " has " + std::to_string(profiles.size())
                             + " profiles; pick one with --sample-id");
    }

    const auto condition = extract_condition(fx, *profile);
    const double temperature = args.temperature.value_or(config.gen.temperature);
    const GeneratedBatch batch = generate_batch(gen, condition, count, config.seed,
                                                temperature, gen.config().max_length);
    auto out = open_output(args.output);
    write_generated(out, batch);
    log << "generate: " << batch.molecules.size() << " strings, " << batch.valid << " valid, "
        << batch.truncated << " truncated\n";
  });
}

void cmd_evaluate(const RunConfig &config, const EvaluateArgs &args, std::ostream &out) {
  require_file(args.generated, "generated file");
  require_file(args.pairs, "pairs file");
  if (!args.ligands.empty())
    require_file(args.ligands, "ligand file");
  if (args.threads < 1)
    throw CommandError(ErrorCode::kUsage, "--threads must be at least 1");
  translated([&] {
    std::ifstream gin(args.generated);
    std::vector<std::string> generated;
    for (auto &m: read_generated(gin))
      generated.push_back(std::move(m.smiles));
    const PairedCorpus training =
        load_pairs(fs::path(args.pairs), nullptr, config.max_smiles_length);

    std::vector<MolGraph> graphs;
    for (const auto &s: training.smiles)
      graphs.push_back(parse_smiles_or_throw(s));
    const SaTables tables = build_sa_tables(graphs);

    std::vector<MolGraph> ligands;
    EvaluateOptions options;
    options.sa_tables = tables.empty() ? nullptr : &tables;
    options.threads = args.threads;
    if (!args.ligands.empty()) {
      std::ifstream lin(args.ligands);
      ligands = read_ligands(lin);
      if (ligands.empty())
        throw CommandError(ErrorCode::kInput, "ligand file " + args.ligands + " is empty");
      options.ligands = &ligands;
    }
    const MetricsReport report = evaluate_corpus(generated, training.smiles, options);
    if (args.output.empty()) {
      write_report(out, report);
    } else {
      auto file = open_output(args.output);
      write_report(file, report);
    }
  });
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app { "Expression-conditioned molecule generation pipeline", "exprmol" };
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool verbose = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--threads", threads, "Worker threads for per-molecule scoring")
      ->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "Report every epoch on stderr");

  bool tsv = false;
  auto delim = [&] { return tsv ? Delimiter::kTab : Delimiter::kComma; };

  TransformArgs ta;
  auto *transform = app.add_subcommand("transform", "Average replicates and/or reverse profiles");
  transform->add_option("input", ta.input, "Profile CSV")->required();
  transform->add_option("-o,--output", ta.output, "Output file (default stdout)");
  transform->add_option("--average-by", ta.average_by, "Two-column sample_id,key file");
  transform->add_flag("--reverse", ta.reverse, "Negate values and suffix ids with _rev");
  transform->add_flag("--tsv", tsv, "Tab-delimited profiles");

  TrainVaeArgs va;
  std::optional<std::size_t> vae_epochs;
  bool no_standardize = false;
  auto *train_vae_cmd = app.add_subcommand("train-vae", "Train the profile VAE");
  train_vae_cmd->add_option("profiles", va.profiles, "Profile CSV");
  train_vae_cmd->add_option("-o,--output", va.checkpoint, "Checkpoint path");
  train_vae_cmd->add_option("--log", va.log, "Training log CSV");
  train_vae_cmd->add_option("--epochs", vae_epochs, "Override vae.epochs");
  train_vae_cmd->add_flag("--no-standardize", no_standardize, "Train on raw values");
  train_vae_cmd->add_flag("--tsv", tsv, "Tab-delimited profiles");

  TrainGenArgs ga;
  std::optional<std::size_t> gen_epochs;
  auto *train_gen_cmd = app.add_subcommand("train-gen", "Train the conditional generator");
  train_gen_cmd->add_option("pairs", ga.pairs, "sample_id<TAB>smiles file");
  train_gen_cmd->add_option("profiles", ga.profiles, "Profile CSV");
  train_gen_cmd->add_option("--vae", ga.vae_checkpoint, "VAE checkpoint");
  train_gen_cmd->add_option("-o,--output", ga.checkpoint, "Checkpoint path");
  train_gen_cmd->add_option("--log", ga.log, "Training log CSV");
  train_gen_cmd->add_option("--validity-log", ga.validity_log, "Validity log CSV");
  train_gen_cmd->add_option("--epochs", gen_epochs, "Override gen.epochs");
  train_gen_cmd->add_flag("--tsv", tsv, "Tab-delimited profiles");

  GenerateArgs gn;
  auto *generate = app.add_subcommand("generate", "Sample molecules for one profile");
  generate->add_option("profiles", gn.profiles, "Profile CSV");
  generate->add_option("--sample-id", gn.sample_id, "Profile row to condition on");
  generate->add_option("--vae", gn.vae_checkpoint, "VAE checkpoint");
  generate->add_option("--gen", gn.gen_checkpoint, "Generator checkpoint");
  generate->add_option("-o,--output", gn.output, "Output TSV");
  generate->add_option("--count", gn.count, "Number of samples");
  generate->add_option("--temperature", gn.temperature, "Sampling temperature")
      ->check(CLI::PositiveNumber);
  generate->add_flag("--tsv", tsv, "Tab-delimited profiles");

  EvaluateArgs ea;
  auto *evaluate = app.add_subcommand("evaluate", "Score a generated set");
  evaluate->add_option("generated", ea.generated, "Generated TSV")->required();
  evaluate->add_option("--pairs", ea.pairs, "Training pairs file");
  evaluate->add_option("--ligands", ea.ligands, "Known ligands, one SMILES per line");
  evaluate->add_option("-o,--output", ea.output, "Report path (default stdout)");

  auto fail = [&](ErrorCode code, std::string message) {
    for (char &c: message) {
      if (c == '\n' || c == '\r')
        c = ' ';
    }
    err << "error[" << error_code_name(code) << "]: " << message << '\n';
    return exit_code(code);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    return fail(ErrorCode::kUsage, e.what());
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      require_file(config_path, "config file");
      translated([&] { config = load_run_config(config_path); });
    }
    if (seed)
      config.seed = *seed;
    if (vae_epochs)
      config.vae.epochs = *vae_epochs;
    if (gen_epochs)
      config.gen.epochs = *gen_epochs;
    if (no_standardize)
      config.standardize = false;
    try {
      config.finalize();
    } catch (const std::invalid_argument &e) {
      throw CommandError(ErrorCode::kConfig, e.what());
    } catch (const ConfigError &e) {
      throw CommandError(ErrorCode::kConfig, e.what());
    }
    const PathConfig &p = config.paths;

    if (*transform) {
      ta.delimiter = delim();
      cmd_transform(ta, out);
    } else if (*train_vae_cmd) {
      va.profiles = or_default(va.profiles, p.profiles);
      va.checkpoint = or_default(va.checkpoint, or_default(p.vae_checkpoint,
                                                           in_dir(config, "vae.ckpt")));
      va.log = or_default(va.log, in_dir(config, "vae_training.log"));
      va.delimiter = delim();
      cmd_train_vae(config, va, err, verbose);
    } else if (*train_gen_cmd) {
      ga.pairs = or_default(ga.pairs, p.pairs);
      ga.profiles = or_default(ga.profiles, p.profiles);
      ga.vae_checkpoint = or_default(ga.vae_checkpoint, or_default(p.vae_checkpoint,
                                                                   in_dir(config, "vae.ckpt")));
      ga.checkpoint = or_default(ga.checkpoint, or_default(p.gen_checkpoint,
                                                           in_dir(config, "gen.ckpt")));
      ga.log = or_default(ga.log, in_dir(config, "gen_training.log"));
      ga.validity_log = or_default(ga.validity_log, in_dir(config, "validity.log"));
      ga.delimiter = delim();
      cmd_train_gen(config, ga, err, verbose);
    } else if (*generate) {
      gn.profiles = or_default(gn.profiles, p.profiles);
      gn.vae_checkpoint = or_default(gn.vae_checkpoint, or_default(p.vae_checkpoint,
                                                                   in_dir(config, "vae.ckpt")));
      gn.gen_checkpoint = or_default(gn.gen_checkpoint, or_default(p.gen_checkpoint,
                                                                   in_dir(config, "gen.ckpt")));
      gn.output = or_default(gn.output, in_dir(config, "generated.tsv"));
      gn.delimiter = delim();
      cmd_generate(config, gn, err);
    } else if (*evaluate) {
      ea.pairs = or_default(ea.pairs, p.pairs);
      ea.ligands = or_default(ea.ligands, p.ligands);
      ea.threads = threads;
      cmd_evaluate(config, ea, out);
    }
  } catch (const CommandError &e) {
    return fail(e.code(), e.what());
  } catch (const std::exception &e) {
    return fail(ErrorCode::kInternal, e.what());
  }
  return 0;
}

} // namespace exprmol
