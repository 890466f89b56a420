#include "coloc/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coloc/contact_inference.hpp"
#include "coloc/csv.hpp"
#include "coloc/inducement.hpp"
#include "coloc/link_sequences.hpp"
#include "coloc/metrics.hpp"
#include "coloc/trace_io.hpp"
#include "coloc/version.hpp"

namespace fs = std::filesystem;

namespace coloc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t'))
    ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return std::string(s.substr(b, e - b));
}

std::int64_t require_i64(const std::string& value, const std::string& key) {
  std::int64_t out = 0;
  if (!parse_i64(value, out))
    throw ParseError("manifest: key '" + key + "' needs an integer, got '" + value + "'");
  return out;
}

std::uint64_t require_u64(const std::string& value, const std::string& key) {
  std::uint64_t out = 0;
  if (!parse_u64(value, out))
    throw ParseError("manifest: key '" + key + "' needs an unsigned integer, got '" + value +
                     "'");
  return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
}

template <typename Fn> void write_csv_file(const fs::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  fn(out);
}

} // namespace

RunManifest parse_manifest(std::istream& in) {
  RunManifest m;
  bool have_input = false, have_out = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#')
      continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("manifest line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "input") {
      m.input = value;
      have_input = true;
    } else if (key == "models") {
      m.models.clear();
      std::stringstream ss(value);
      std::string id;
      while (std::getline(ss, id, ','))
        m.models.push_back(null_model_from_string(trim(id)));
    } else if (key == "seed") {
      m.seed = require_u64(value, key);
    } else if (key == "trials") {
      m.trial.trials = static_cast<int>(require_i64(value, key));
    } else if (key == "seed_window_days") {
      m.trial.seed_window_days = std::stod(value);
    } else if (key == "runway_days") {
      m.trial.runway_days = std::stod(value);
    } else if (key == "grid_step_seconds") {
      m.trial.grid_step_seconds = require_i64(value, key);
    } else if (key == "out_dir") {
      m.out_dir = value;
      have_out = true;
    } else if (key == "threads") {
      m.threads = static_cast<int>(require_i64(value, key));
    } else if (key == "tool_version") {
      m.tool_version = value;
    } else if (key == "input_hash") {
      m.input_hash_hex = value;
    } else {
      throw ParseError("manifest line " + std::to_string(lineno) + ": unknown key '" + key +
                       "'");
    }
  }
  if (!have_input)
    throw ParseError("manifest: missing required key 'input'");
  if (!have_out)
    throw ParseError("manifest: missing required key 'out_dir'");
  if (m.models.empty())
    throw ParseError("manifest: 'models' must list at least one model");
  return m;
}

RunManifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open manifest: " + path);
  return parse_manifest(in);
}

void write_manifest(const RunManifest& m, std::ostream& out) {
  out << "input=" << m.input << '\n';
  out << "models=";
  for (std::size_t i = 0; i < m.models.size(); ++i)
    out << (i ? "," : "") << to_string(m.models[i]);
  out << '\n';
  out << "seed=" << m.seed << '\n';
  out << "trials=" << m.trial.trials << '\n';
  out << "seed_window_days=" << fmt_double(m.trial.seed_window_days) << '\n';
  out << "runway_days=" << fmt_double(m.trial.runway_days) << '\n';
  out << "grid_step_seconds=" << m.trial.grid_step_seconds << '\n';
  out << "out_dir=" << m.out_dir << '\n';
  out << "threads=" << m.threads << '\n';
  if (!m.tool_version.empty())
    out << "tool_version=" << m.tool_version << '\n';
  if (!m.input_hash_hex.empty())
    out << "input_hash=" << m.input_hash_hex << '\n';
}

int run_pipeline(RunManifest manifest, std::ostream& log) {
  const std::string input_bytes = read_file_bytes(manifest.input);
  manifest.tool_version = kVersion;
  {
    std::ostringstream hex;
    hex << std::hex << fnv1a64_bytes(input_bytes.data(), input_bytes.size());
    manifest.input_hash_hex = hex.str();
  }

  const fs::path out_root(manifest.out_dir);
  fs::create_directories(out_root);

  std::istringstream input_stream(input_bytes);
  ParseResult parsed = parse_sessions(input_stream);
  if (!parsed.rejects.empty()) {
    write_csv_file(out_root / "rejects.csv",
                   [&](std::ostream& o) { write_rejects_csv(parsed.rejects, o); });
  }
  auto [cleaned, report] = clean_sessions(parsed.table);
  log << "[clean] input=" << report.input_total() << " retained=" << report.retained
      << " dropped_no_end=" << report.dropped_no_end
      << " dropped_zero_duration=" << report.dropped_zero_duration
      << " dropped_no_location=" << report.dropped_no_location
      << " parse_rejects=" << parsed.rejects.size() << '\n';

  const ContactSequence base_contacts = infer_contacts(cleaned);
  log << "[infer] events=" << base_contacts.events.size()
      << " imaginary_discarded=" << base_contacts.imaginary_discarded << '\n';

  std::map<NullModel, PrevalenceEnsemble> ensembles;
  bool any_failed = false;

  for (NullModel model : manifest.models) {
    const std::string name = to_string(model);
    const fs::path branch = out_root / name;
    fs::create_directories(branch);
    try {
      ContactSequence contacts;
      if (model == NullModel::kOriginal) {
        contacts = base_contacts;
      } else if (is_inducement_model(model)) {
        const SessionTable shuffled =
            apply_null_model(cleaned, model, derive_seed(manifest.seed, "shuffle:" + name));
        write_csv_file(branch / "sessions.csv",
                       [&](std::ostream& o) { write_sessions_csv(shuffled, o); });
        contacts = infer_contacts(shuffled);
      } else {
        contacts = apply_contact_model(base_contacts, model,
                                       derive_seed(manifest.seed, "cshuffle:" + name));
      }
      write_csv_file(branch / "contacts.csv",
                     [&](std::ostream& o) { write_contacts_csv(contacts, o); });

      TrialConfig tc = manifest.trial;
      tc.master_seed = derive_seed(manifest.seed, "simulate:" + name);
      const PrevalenceEnsemble ens = run_ensemble(contacts, tc, manifest.threads);
      write_csv_file(branch / "prevalence.csv",
                     [&](std::ostream& o) { write_prevalence_csv(ens, o, name); });

      const TimeSeries total =
          mean_cumulative_contacts(contacts, ens, ContactCountMode::kTotal);
      const TimeSeries unique =
          mean_cumulative_contacts(contacts, ens, ContactCountMode::kUnique);
      write_csv_file(branch / "contact_counts.csv",
                     [&](std::ostream& o) { write_contact_counts_csv(total, unique, o); });
      write_csv_file(branch / "prevalence_vs_contacts.csv", [&](std::ostream& o) {
        write_curve_csv(prevalence_vs_contacts(ens, total), o, "mean_total_contacts",
                        "mean_prevalence");
      });
      write_csv_file(branch / "one_day_histogram.csv", [&](std::ostream& o) {
        write_histogram_csv(one_day_prevalence_histogram(ens), o);
      });

      log << "[model " << name << "] events=" << contacts.events.size()
          << " P(1d)=" << fmt_double(ens.mean[std::min<std::size_t>(
                 ens.grid.size() - 1,
                 static_cast<std::size_t>(86400 / std::max<std::int64_t>(
                                              1, tc.grid_step_seconds)))])
          << '\n';
      ensembles.emplace(model, ens);
    } catch (const std::exception& e) {
      any_failed = true;
      log << "[model " << name << "] FAILED: " << e.what() << '\n';
      write_text_file(branch / "FAILED.txt", std::string(e.what()) + "\n");
    }
  }

  if (ensembles.size() > 1) {
    const fs::path deltas = out_root / "deltas";
    fs::create_directories(deltas);
    for (auto a = ensembles.begin(); a != ensembles.end(); ++a)
      for (auto b = std::next(a); b != ensembles.end(); ++b) {
        const std::string fname = to_string(a->first) + "_vs_" + to_string(b->first) + ".csv";
        write_csv_file(deltas / fname, [&](std::ostream& o) {
          write_delta_csv(pairwise_prevalence_delta(a->second, b->second), o);
        });
      }
  }

  write_csv_file(out_root / "manifest.txt",
                 [&](std::ostream& o) { write_manifest(manifest, o); });
  log << "[done] out=" << out_root.string() << (any_failed ? " (with failures)" : "") << '\n';
  return any_failed ? 1 : 0;
}

} // namespace coloc
