//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/metrics.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "exprmol/canonical.h"
#include "exprmol/qed.h"
#include "exprmol/smiles.h"

namespace exprmol {
namespace {
  std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0)
      return std::nullopt;
    return double(num) / double(den);
  }

  std::string format_optional(const std::optional<double> &v) {
    if (!v)
      return "NA";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", *v);
    return buf;
  }

  std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  MetricsReport stats_impl(const std::vector<std::string> &generated,
                           const std::vector<std::string> &training,
                           std::vector<MolGraph> *graphs) {
    std::unordered_set<std::string> train_set;
    for (const auto &s: training) {
      auto r = parse_smiles(s);
      if (r.ok())
        train_set.insert(canonical_smiles(r.graph));
    }

    MetricsReport rep;
    rep.generated = generated.size();
    std::set<std::string> distinct;
    for (const auto &s: generated) {
      MoleculeReport m;
      m.smiles = s;
      auto r = parse_smiles(s);
      if (r.ok()) {
        m.valid = true;
        m.canonical = canonical_smiles(r.graph);
        ++rep.valid;
        distinct.insert(m.canonical);
        if (!train_set.count(m.canonical))
          ++rep.novel;
        if (graphs)
          graphs->push_back(std::move(r.graph));
      } else {
        m.error = error_kind_name(r.error->kind);
      }
      rep.molecules.push_back(std::move(m));
    }
    rep.unique = distinct.size();
    rep.validity = ratio(rep.valid, rep.generated);
    rep.uniqueness = ratio(rep.unique, rep.valid);
    rep.novelty = ratio(rep.novel, rep.valid);
    return rep;
  }
} // namespace

MetricsReport corpus_stats(const std::vector<std::string> &generated,
                           const std::vector<std::string> &training) {
  return stats_impl(generated, training, nullptr);
}

MetricsReport evaluate_corpus(const std::vector<std::string> &generated,
                              const std::vector<std::string> &training,
                              const EvaluateOptions &options) {
  std::vector<MolGraph> graphs;
  MetricsReport rep = stats_impl(generated, training, &graphs);

  std::vector<Fingerprint> ligand_fps;
  if (options.ligands) {
    for (const auto &g: *options.ligands)
      ligand_fps.push_back(ecfp(g, options.fingerprint_radius, options.fingerprint_bits));
  }

  // Per-molecule work is pure, so it is split across threads; the sums
  // below run in index order to keep the report identical for any count.
  const std::size_t nvalid = graphs.size();
  std::vector<double> qeds(nvalid), sas(nvalid), best(nvalid);
  std::vector<Fingerprint> fps(ligand_fps.empty() ? 0 : nvalid);
  auto work = [&](std::size_t i) {
    qeds[i] = qed(graphs[i]);
    if (options.sa_tables)
      sas[i] = sa_score(graphs[i], *options.sa_tables);
    if (!ligand_fps.empty()) {
      fps[i] = ecfp(graphs[i], options.fingerprint_radius, options.fingerprint_bits);
      best[i] = 0.0;
      for (const auto &l: ligand_fps)
        best[i] = std::max(best[i], tanimoto(fps[i], l));
    }
  };
  const std::size_t nthreads =
      std::min<std::size_t>(std::max(options.threads, 1), std::max<std::size_t>(nvalid, 1));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < nvalid; ++i)
      work(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < nvalid; i += nthreads)
            work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto &th: pool)
      th.join();
    for (auto &e: errors) {
      if (e)
        std::rethrow_exception(e);
    }
  }

  std::vector<std::string> canon;
  double qed_sum = 0.0;
  double sa_sum = 0.0;
  std::size_t k = 0;
  for (auto &m: rep.molecules) {
    if (!m.valid)
      continue;
    m.qed = qeds[k];
    qed_sum += qeds[k];
    if (options.sa_tables) {
      m.sa = sas[k];
      sa_sum += sas[k];
    }
    if (!ligand_fps.empty()) {
      canon.push_back(m.canonical);
      m.max_tanimoto = best[k];
    }
    ++k;
  }
  if (rep.valid > 0) {
    rep.mean_qed = qed_sum / double(rep.valid);
    if (options.sa_tables)
      rep.mean_sa = sa_sum / double(rep.valid);
  }
  if (!fps.empty()) {
    Candidate c = select_candidate(fps, canon, ligand_fps);
    // Map back from the valid-only index to the molecule table.
    std::size_t seen = 0;
    for (std::size_t i = 0; i < rep.molecules.size(); ++i) {
      if (rep.molecules[i].valid && seen++ == c.index) {
        c.index = i;
        break;
      }
    }
    rep.candidate = c;
  }
  return rep;
}

Candidate select_candidate(const std::vector<Fingerprint> &molecules,
                           const std::vector<std::string> &canonical,
                           const std::vector<Fingerprint> &ligands) {
  if (molecules.empty() || ligands.empty())
    throw std::invalid_argument("select_candidate: need at least one molecule and one ligand");
  if (canonical.size() != molecules.size())
    throw std::invalid_argument("select_candidate: one canonical SMILES per molecule");
  Candidate best;
  bool have = false;
  for (std::size_t i = 0; i < molecules.size(); ++i) {
    double s = 0.0;
    for (const auto &l: ligands)
      s = std::max(s, tanimoto(molecules[i], l));
    if (!have || s > best.score || (s == best.score && canonical[i] < best.canonical)) {
      best = { i, canonical[i], s };
      have = true;
    }
  }
  return best;
}

Candidate select_candidate(const std::vector<MolGraph> &molecules,
                           const std::vector<MolGraph> &ligands, int radius, int nbits) {
  if (molecules.empty() || ligands.empty())
    throw std::invalid_argument("select_candidate: need at least one molecule and one ligand");
  std::vector<Fingerprint> fps;
  std::vector<std::string> canon;
  for (const auto &g: molecules) {
    fps.push_back(ecfp(g, radius, nbits));
    canon.push_back(canonical_smiles(g));
  }
  std::vector<Fingerprint> lig;
  for (const auto &g: ligands)
    lig.push_back(ecfp(g, radius, nbits));
  return select_candidate(fps, canon, lig);
}

void write_report(std::ostream &out, const MetricsReport &r) {
  out << "generated\t" << r.generated << '\n';
  out << "valid\t" << r.valid << '\n';
  out << "unique\t" << r.unique << '\n';
  out << "novel\t" << r.novel << '\n';
  out << "validity\t" << format_optional(r.validity) << '\n';
  out << "uniqueness\t" << format_optional(r.uniqueness) << '\n';
  out << "novelty\t" << format_optional(r.novelty) << '\n';
  out << "mean_qed\t" << format_optional(r.mean_qed) << '\n';
  out << "mean_sa\t" << format_optional(r.mean_sa) << '\n';
  if (r.candidate) {
    out << "candidate\t" << r.candidate->canonical << '\n';
    out << "candidate_tanimoto\t" << format_optional(r.candidate->score) << '\n';
  }
  out << '\n';
  out << "smiles\tvalid\tcanonical\terror\tqed\tsa\tmax_tanimoto\n";
  for (const auto &m: r.molecules) {
    out << m.smiles << '\t' << (m.valid ? 1 : 0) << '\t' << m.canonical << '\t' << m.error
        << '\t' << format_optional(m.qed) << '\t' << format_optional(m.sa) << '\t'
        << format_optional(m.max_tanimoto) << '\n';
  }
}

std::vector<MolGraph> read_ligands(std::istream &in) {
  std::vector<MolGraph> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#')
      continue;
    // Allow "SMILES name" lines.
    const std::string smi = s.substr(0, s.find_first_of(" \t"));
    auto r = parse_smiles(smi);
    if (!r.ok()) {
      throw std::runtime_error("invalid ligand SMILES at line " + std::to_string(row) + ": "
                               + r.error->message);
    }
    out.push_back(std::move(r.graph));
  }
  return out;
}

} // namespace exprmol
