#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "coloc/contact_inference.hpp"
#include "coloc/csv.hpp"
#include "coloc/inducement.hpp"
#include "coloc/link_sequences.hpp"
#include "coloc/metrics.hpp"
#include "coloc/pipeline.hpp"
#include "coloc/si.hpp"
#include "coloc/synth.hpp"
#include "coloc/trace_io.hpp"
#include "coloc/types.hpp"
#include "coloc/version.hpp"

namespace {

// swallows progress output under --quiet
class NullBuffer : public std::streambuf {
  int overflow(int c) override { return c; }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

} // namespace

int main(int argc, char** argv) {
  using namespace coloc;

  CLI::App app{"colocnet: null models of colocation contact networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  NullBuffer null_buffer;
  std::ostream null_stream(&null_buffer);
  auto log = [&]() -> std::ostream& { return quiet ? null_stream : std::cerr; };

  int exit_code = 0;

  // ---- clean ----------------------------------------------------------
  struct {
    std::string in, out, rejects, site;
    CsvFormat fmt;
  } clean_opts;
  auto* cmd_clean = app.add_subcommand("clean", "parse, validate, and clean a session CSV");
  cmd_clean->add_option("--in", clean_opts.in, "raw session CSV")->required();
  cmd_clean->add_option("--out", clean_opts.out, "cleaned session CSV")->required();
  cmd_clean->add_option("--rejects", clean_opts.rejects, "write unparseable rows here");
  cmd_clean->add_option("--site", clean_opts.site, "keep only this site's records");
  cmd_clean->add_option("--col-node", clean_opts.fmt.node, "node column name");
  cmd_clean->add_option("--col-start", clean_opts.fmt.start, "start column name");
  cmd_clean->add_option("--col-end", clean_opts.fmt.end, "end column name");
  cmd_clean->add_option("--col-location", clean_opts.fmt.location, "location column name");
  cmd_clean->add_option("--col-site", clean_opts.fmt.site, "site column name");
  cmd_clean->callback([&] {
    ParseResult parsed = parse_sessions_file(clean_opts.in, clean_opts.fmt);
    if (!clean_opts.rejects.empty()) {
      auto out = open_out(clean_opts.rejects);
      write_rejects_csv(parsed.rejects, out);
    }
    SessionTable table = parsed.table;
    if (!clean_opts.site.empty())
      table = filter_site(table, clean_opts.site);
    auto [cleaned, report] = clean_sessions(table);
    write_sessions_csv_file(cleaned, clean_opts.out);
    log() << "parsed=" << parsed.table.records.size() << " rejects=" << parsed.rejects.size()
          << " retained=" << report.retained << " dropped_no_end=" << report.dropped_no_end
          << " dropped_zero_duration=" << report.dropped_zero_duration
          << " dropped_no_location=" << report.dropped_no_location << '\n';
  });

  // ---- shuffle --------------------------------------------------------
  struct {
    std::string in, out, model;
    std::uint64_t seed = 0;
  } shuffle_opts;
  auto* cmd_shuffle =
      app.add_subcommand("shuffle", "apply a session-level (inducement) null model");
  cmd_shuffle->add_option("--in", shuffle_opts.in, "cleaned session CSV")->required();
  cmd_shuffle->add_option("--out", shuffle_opts.out, "shuffled session CSV")->required();
  cmd_shuffle
      ->add_option("--model", shuffle_opts.model, "ln-tn, tl-ln, ln, tn, tl, or empty")
      ->required();
  cmd_shuffle->add_option("--seed", shuffle_opts.seed, "RNG seed");
  cmd_shuffle->callback([&] {
    ParseResult parsed = parse_sessions_file(shuffle_opts.in);
    if (!parsed.rejects.empty())
      throw std::runtime_error("input has " + std::to_string(parsed.rejects.size()) +
                               " malformed rows; run `clean` first");
    const SessionTable shuffled = apply_null_model(
        parsed.table, null_model_from_string(shuffle_opts.model), shuffle_opts.seed);
    write_sessions_csv_file(shuffled, shuffle_opts.out);
    log() << "model=" << shuffled.provenance << " records=" << shuffled.records.size() << '\n';
  });

  // ---- cshuffle -------------------------------------------------------
  struct {
    std::string in, out, model;
    std::uint64_t seed = 0;
  } cshuffle_opts;
  auto* cmd_cshuffle =
      app.add_subcommand("cshuffle", "apply a contact-level (SBSW) null model");
  cmd_cshuffle->add_option("--in", cshuffle_opts.in, "contact CSV")->required();
  cmd_cshuffle->add_option("--out", cshuffle_opts.out, "shuffled contact CSV")->required();
  cmd_cshuffle->add_option("--model", cshuffle_opts.model, "dcwb, dcb, dcw, or d")->required();
  cmd_cshuffle->add_option("--seed", cshuffle_opts.seed, "RNG seed");
  cmd_cshuffle->callback([&] {
    const ContactSequence in = read_contacts_csv_file(cshuffle_opts.in);
    const ContactSequence out =
        apply_contact_model(in, null_model_from_string(cshuffle_opts.model), cshuffle_opts.seed);
    write_contacts_csv_file(out, cshuffle_opts.out);
    log() << "model=" << out.source_model << " events=" << out.events.size() << '\n';
  });

  // ---- infer ----------------------------------------------------------
  struct {
    std::string in, out;
  } infer_opts;
  auto* cmd_infer = app.add_subcommand("infer", "infer colocation contacts from sessions");
  cmd_infer->add_option("--in", infer_opts.in, "cleaned session CSV")->required();
  cmd_infer->add_option("--out", infer_opts.out, "contact CSV")->required();
  cmd_infer->callback([&] {
    ParseResult parsed = parse_sessions_file(infer_opts.in);
    if (!parsed.rejects.empty())
      throw std::runtime_error("input has " + std::to_string(parsed.rejects.size()) +
                               " malformed rows; run `clean` first");
    const ContactSequence contacts = infer_contacts(parsed.table);
    write_contacts_csv_file(contacts, infer_opts.out);
    log() << "events=" << contacts.events.size()
          << " imaginary_discarded=" << contacts.imaginary_discarded << '\n';
  });

  // ---- simulate -------------------------------------------------------
  struct {
    std::string in, out, model;
    TrialConfig cfg;
    int threads = 1;
  } sim_opts;
  auto* cmd_sim = app.add_subcommand("simulate", "run an SI spreading ensemble");
  cmd_sim->add_option("--in", sim_opts.in, "contact CSV")->required();
  cmd_sim->add_option("--out", sim_opts.out, "prevalence CSV")->required();
  cmd_sim->add_option("--model", sim_opts.model,
                      "label for the output header (default: input's model)");
  cmd_sim->add_option("--trials", sim_opts.cfg.trials, "trial count");
  cmd_sim->add_option("--seed", sim_opts.cfg.master_seed, "master seed");
  cmd_sim->add_option("--seed-window-days", sim_opts.cfg.seed_window_days,
                      "seed events drawn from this initial window");
  cmd_sim->add_option("--runway-days", sim_opts.cfg.runway_days, "horizon after the seed");
  cmd_sim->add_option("--grid-step", sim_opts.cfg.grid_step_seconds,
                      "output grid resolution, seconds");
  cmd_sim->add_option("--threads", sim_opts.threads, "worker threads");
  cmd_sim->callback([&] {
    const ContactSequence contacts = read_contacts_csv_file(sim_opts.in);
    const PrevalenceEnsemble ens = run_ensemble(contacts, sim_opts.cfg, sim_opts.threads);
    const std::string label =
        sim_opts.model.empty() ? contacts.source_model : sim_opts.model;
    auto out = open_out(sim_opts.out);
    write_prevalence_csv(ens, out, label);
    const std::size_t day_idx = std::min<std::size_t>(
        ens.grid.size() - 1,
        static_cast<std::size_t>(86400 / std::max<std::int64_t>(1, sim_opts.cfg.grid_step_seconds)));
    log() << "trials=" << ens.trials.size() << " P(1d)=" << fmt_double(ens.mean[day_idx])
          << " sem=" << fmt_double(ens.sem[day_idx]) << '\n';
  });

  // ---- stats ----------------------------------------------------------
  struct {
    std::string in, out, metric;
    std::int64_t step = 3600;
  } stats_opts;
  auto* cmd_stats = app.add_subcommand("stats", "compute one derived statistic as CSV");
  cmd_stats->add_option("--in", stats_opts.in, "session or contact CSV (metric-dependent)")
      ->required();
  cmd_stats->add_option("--out", stats_opts.out, "output CSV")->required();
  cmd_stats
      ->add_option("--metric", stats_opts.metric,
                   "one of: active-sessions, ecdf-locations-per-node, ecdf-intersession, "
                   "ecdf-contacts-total, ecdf-contacts-unique, contact-counts, "
                   "repeat-contacts")
      ->required();
  cmd_stats->add_option("--step", stats_opts.step, "grid step for time series, seconds");
  cmd_stats->callback([&] {
    const std::string& metric = stats_opts.metric;
    auto out = open_out(stats_opts.out);
    auto load_sessions = [&] {
      ParseResult parsed = parse_sessions_file(stats_opts.in);
      if (!parsed.rejects.empty())
        throw std::runtime_error("input has " + std::to_string(parsed.rejects.size()) +
                                 " malformed rows; run `clean` first");
      return parsed.table;
    };
    if (metric == "active-sessions") {
      write_timeseries_csv(active_sessions_over_time(load_sessions(), stats_opts.step), out,
                           "active_sessions");
    } else if (metric == "ecdf-locations-per-node") {
      write_ecdf_csv(ecdf_locations_per_node(load_sessions()), out);
    } else if (metric == "ecdf-intersession") {
      const IntersessionEcdf e = ecdf_intersession_time(load_sessions());
      out << "# negative_gaps_excluded=" << e.negative_gaps_excluded << '\n';
      write_ecdf_csv(e.ecdf, out);
    } else if (metric == "ecdf-contacts-total") {
      write_ecdf_csv(ecdf_contacts_per_node(read_contacts_csv_file(stats_opts.in),
                                            ContactCountMode::kTotal),
                     out);
    } else if (metric == "ecdf-contacts-unique") {
      write_ecdf_csv(ecdf_contacts_per_node(read_contacts_csv_file(stats_opts.in),
                                            ContactCountMode::kUnique),
                     out);
    } else if (metric == "contact-counts") {
      const ContactSequence seq = read_contacts_csv_file(stats_opts.in);
      write_contact_counts_csv(
          cumulative_contacts_series(seq, stats_opts.step, ContactCountMode::kTotal),
          cumulative_contacts_series(seq, stats_opts.step, ContactCountMode::kUnique), out);
    } else if (metric == "repeat-contacts") {
      const RepeatHistogram h =
          repeat_contact_histogram(read_contacts_csv_file(stats_opts.in));
      out << "repeats,count\n1," << h.once << "\n2," << h.twice << "\n>2," << h.more << '\n';
    } else {
      throw CLI::ValidationError("--metric", "unknown metric '" + metric + "'");
    }
  });

  // ---- pipeline -------------------------------------------------------
  struct {
    std::string manifest, in, out_dir, models = "original";
    RunManifest m;
  } pipe_opts;
  auto* cmd_pipe = app.add_subcommand("pipeline", "run models end to end from a manifest");
  cmd_pipe->add_option("--manifest", pipe_opts.manifest, "manifest file (key=value lines)");
  cmd_pipe->add_option("--in", pipe_opts.in, "session CSV (overrides manifest)");
  cmd_pipe->add_option("--out-dir", pipe_opts.out_dir, "output directory (overrides manifest)");
  cmd_pipe->add_option("--models", pipe_opts.models, "comma-separated model ids");
  cmd_pipe->add_option("--seed", pipe_opts.m.seed, "master seed");
  cmd_pipe->add_option("--trials", pipe_opts.m.trial.trials, "trial count");
  cmd_pipe->add_option("--seed-window-days", pipe_opts.m.trial.seed_window_days,
                       "seed window, days");
  cmd_pipe->add_option("--runway-days", pipe_opts.m.trial.runway_days, "runway, days");
  cmd_pipe->add_option("--grid-step", pipe_opts.m.trial.grid_step_seconds,
                       "grid step, seconds");
  cmd_pipe->add_option("--threads", pipe_opts.m.threads, "worker threads");
  cmd_pipe->callback([&] {
    RunManifest manifest;
    auto parse_models = [&] {
      std::vector<NullModel> models;
      std::stringstream ss(pipe_opts.models);
      std::string id;
      while (std::getline(ss, id, ','))
        models.push_back(null_model_from_string(id));
      if (models.empty())
        throw CLI::ValidationError("--models", "at least one model required");
      return models;
    };
    if (!pipe_opts.manifest.empty()) {
      manifest = parse_manifest_file(pipe_opts.manifest);
      // flags given alongside --manifest override its fields, so a stamped
      // manifest reruns into a fresh directory or at a new trial count
      if (cmd_pipe->count("--in")) manifest.input = pipe_opts.in;
      if (cmd_pipe->count("--out-dir")) manifest.out_dir = pipe_opts.out_dir;
      if (cmd_pipe->count("--models")) manifest.models = parse_models();
      if (cmd_pipe->count("--seed")) manifest.seed = pipe_opts.m.seed;
      if (cmd_pipe->count("--trials")) manifest.trial.trials = pipe_opts.m.trial.trials;
      if (cmd_pipe->count("--seed-window-days"))
        manifest.trial.seed_window_days = pipe_opts.m.trial.seed_window_days;
      if (cmd_pipe->count("--runway-days"))
        manifest.trial.runway_days = pipe_opts.m.trial.runway_days;
      if (cmd_pipe->count("--grid-step"))
        manifest.trial.grid_step_seconds = pipe_opts.m.trial.grid_step_seconds;
      if (cmd_pipe->count("--threads")) manifest.threads = pipe_opts.m.threads;
    } else {
      if (pipe_opts.in.empty() || pipe_opts.out_dir.empty())
        throw CLI::ValidationError("pipeline",
                                   "either --manifest or both --in and --out-dir required");
      manifest = pipe_opts.m;
      manifest.input = pipe_opts.in;
      manifest.out_dir = pipe_opts.out_dir;
      manifest.models = parse_models();
    }
    exit_code = run_pipeline(manifest, log());
  });

  // ---- synth ----------------------------------------------------------
  struct {
    SynthConfig cfg;
    std::string out;
  } synth_opts;
  auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic session trace");
  cmd_synth->add_option("--out", synth_opts.out, "session CSV")->required();
  cmd_synth->add_option("--nodes", synth_opts.cfg.nodes, "node count");
  cmd_synth->add_option("--locations", synth_opts.cfg.locations, "location count");
  cmd_synth->add_option("--days", synth_opts.cfg.days, "trace length, days");
  cmd_synth->add_option("--rate", synth_opts.cfg.sessions_per_node_per_day,
                        "sessions per node per day");
  cmd_synth->add_option("--window-hours", synth_opts.cfg.activity_window_hours,
                        "per-node daily activity window width");
  cmd_synth->add_option("--affinity", synth_opts.cfg.location_affinity,
                        "home-location probability, 0..1");
  cmd_synth->add_option("--min-minutes", synth_opts.cfg.session_min_minutes,
                        "shortest session");
  cmd_synth->add_option("--max-minutes", synth_opts.cfg.session_max_minutes,
                        "longest session");
  cmd_synth->add_option("--seed", synth_opts.cfg.seed, "RNG seed");
  cmd_synth->add_option("--site", synth_opts.cfg.site, "site id stamped on rows");
  cmd_synth->callback([&] {
    const SessionTable table = synthesize_sessions(synth_opts.cfg);
    write_sessions_csv_file(table, synth_opts.out);
    log() << "records=" << table.records.size() << '\n';
  });

  // let global flags (--quiet) appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
