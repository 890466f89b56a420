#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "coloc/contact_inference.hpp"
#include "coloc/inducement.hpp"
#include "coloc/link_sequences.hpp"
#include "coloc/si.hpp"
#include "coloc/synth.hpp"
#include "coloc/trace_io.hpp"
#include "coloc/types.hpp"
#include "coloc/version.hpp"

namespace py = pybind11;
using namespace coloc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Colocation contact networks: cleaning, null-model shuffles, "
            "contact inference, SI spreading";

  py::class_<SessionTable>(m, "SessionTable")
      .def(py::init<>())
      .def("__len__", [](const SessionTable& t) { return t.records.size(); })
      .def_readonly("provenance", &SessionTable::provenance)
      .def_readonly("rng_seed", &SessionTable::rng_seed)
      .def("rows",
           [](const SessionTable& t) {
             py::list out;
             for (const auto& r : t.records)
               out.append(py::make_tuple(r.node, r.start,
                                         r.end ? py::cast(*r.end) : py::none(),
                                         r.location, r.site));
             return out;
           },
           "List of (node, start, end, location, site) tuples; end is None "
           "when the record is unterminated.")
      .def("__repr__", [](const SessionTable& t) {
        return "<SessionTable records=" + std::to_string(t.records.size()) + " provenance=" +
               t.provenance + ">";
      });

  py::class_<ContactSequence>(m, "ContactSequence")
      .def(py::init<>())
      .def("__len__", [](const ContactSequence& s) { return s.events.size(); })
      .def_readonly("imaginary_discarded", &ContactSequence::imaginary_discarded)
      .def_readonly("source_model", &ContactSequence::source_model)
      .def("events",
           [](const ContactSequence& s) {
             py::list out;
             for (const auto& e : s.events)
               out.append(py::make_tuple(e.node_a, e.node_b, e.t_start, e.location));
             return out;
           },
           "List of (node_a, node_b, t_start, location) tuples.")
      .def("__repr__", [](const ContactSequence& s) {
        return "<ContactSequence events=" + std::to_string(s.events.size()) + " model=" +
               s.source_model + ">";
      });

  m.def("version", [] { return std::string(kVersion); });

  m.def("null_models", [] {
    py::list out;
    for (NullModel model : all_null_models())
      out.append(to_string(model));
    return out;
  });

  m.def(
      "load_sessions",
      [](const std::string& path) {
        ParseResult r = parse_sessions_file(path);
        py::list rejects;
        for (const auto& rej : r.rejects)
          rejects.append(py::make_tuple(rej.line, rej.reason));
        return py::make_tuple(r.table, rejects);
      },
      py::arg("path"),
      "Parse a session CSV. Returns (table, rejects) where rejects is a "
      "list of (line, reason).");

  m.def(
      "clean_sessions",
      [](const SessionTable& table) {
        auto [cleaned, report] = clean_sessions(table);
        py::dict d;
        d["dropped_no_end"] = report.dropped_no_end;
        d["dropped_zero_duration"] = report.dropped_zero_duration;
        d["dropped_no_location"] = report.dropped_no_location;
        d["retained"] = report.retained;
        return py::make_tuple(cleaned, d);
      },
      py::arg("table"), "Apply the cleaning rules. Returns (table, report dict).");

  m.def(
      "synthesize",
      [](int nodes, int locations, int days, double sessions_per_node_per_day,
         double activity_window_hours, double location_affinity, std::uint64_t seed) {
        SynthConfig cfg;
        cfg.nodes = nodes;
        cfg.locations = locations;
        cfg.days = days;
        cfg.sessions_per_node_per_day = sessions_per_node_per_day;
        cfg.activity_window_hours = activity_window_hours;
        cfg.location_affinity = location_affinity;
        cfg.seed = seed;
        return synthesize_sessions(cfg);
      },
      py::arg("nodes") = 500, py::arg("locations") = 50, py::arg("days") = 14,
      py::arg("sessions_per_node_per_day") = 6.0, py::arg("activity_window_hours") = 2.0,
      py::arg("location_affinity") = 0.8, py::arg("seed") = 0,
      "Generate a synthetic session trace with plantable correlations.");

  m.def(
      "apply_null_model",
      [](const SessionTable& table, const std::string& model, std::uint64_t seed) {
        return apply_null_model(table, null_model_from_string(model), seed);
      },
      py::arg("table"), py::arg("model"), py::arg("seed"),
      "Apply a session-level (inducement) null model: ln-tn, tl-ln, ln, tn, "
      "tl, or empty.");

  m.def("infer_contacts", &infer_contacts, py::arg("table"),
        "Infer colocation contact events from a cleaned session table.");

  m.def(
      "apply_contact_model",
      [](const ContactSequence& seq, const std::string& model, std::uint64_t seed) {
        return apply_contact_model(seq, null_model_from_string(model), seed);
      },
      py::arg("contacts"), py::arg("model"), py::arg("seed"),
      "Apply a contact-level shuffle: dcwb, dcb, dcw, or d.");

  m.def(
      "simulate",
      [](const ContactSequence& seq, int trials, std::uint64_t seed, double seed_window_days,
         double runway_days, std::int64_t grid_step_seconds, int threads) {
        TrialConfig cfg;
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.seed_window_days = seed_window_days;
        cfg.runway_days = runway_days;
        cfg.grid_step_seconds = grid_step_seconds;
        PrevalenceEnsemble ens = run_ensemble(seq, cfg, threads);
        py::dict d;
        d["t_seconds"] = ens.grid;
        d["mean_prevalence"] = ens.mean;
        d["sem"] = ens.sem;
        py::list denominators;
        for (const auto& trial : ens.trials)
          denominators.append(trial.denominator);
        d["denominators"] = denominators;
        return d;
      },
      py::arg("contacts"), py::arg("trials") = 250, py::arg("seed") = 0,
      py::arg("seed_window_days") = 4.0, py::arg("runway_days") = 10.0,
      py::arg("grid_step_seconds") = 600, py::arg("threads") = 1,
      "Run an SI spreading ensemble. Returns a dict of aligned lists.");

  m.def("write_sessions", &write_sessions_csv_file, py::arg("table"), py::arg("path"));
  m.def(
      "load_contacts", [](const std::string& path) { return read_contacts_csv_file(path); },
      py::arg("path"));
  m.def("write_contacts", &write_contacts_csv_file, py::arg("contacts"), py::arg("path"));
}
