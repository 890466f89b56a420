#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "coloc/csv.hpp"
#include "coloc/pipeline.hpp"
#include "coloc/trace_io.hpp"

#include "test_support.hpp"

using namespace coloc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("colocnet_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

// the two-contact fixture as raw sessions: A-B overlap at L1, A-C at L2
void write_fixture_sessions(const fs::path& file) {
  std::ofstream out(file);
  out << "node,start,end,location,site\n"
      << "A,0,10,L1,s\n"
      << "B,5,15,L1,s\n"
      << "C,20,30,L2,s\n"
      << "A,25,28,L2,s\n";
}

std::string slurp(const fs::path& p) { return read_file_bytes(p.string()); }

} // namespace

TEST_CASE("manifests round-trip through their text form") {
  RunManifest m;
  m.input = "sessions.csv";
  m.models = {NullModel::kOriginal, NullModel::kTlLn, NullModel::kDcw};
  m.seed = 42;
  m.trial.trials = 7;
  m.trial.seed_window_days = 0.5;
  m.trial.runway_days = 2.0;
  m.trial.grid_step_seconds = 300;
  m.out_dir = "out";
  m.threads = 3;
  std::ostringstream text;
  write_manifest(m, text);
  std::istringstream in(text.str());
  const RunManifest back = parse_manifest(in);
  CHECK(back.input == m.input);
  CHECK(back.models == m.models);
  CHECK(back.seed == m.seed);
  CHECK(back.trial.trials == m.trial.trials);
  CHECK(back.trial.seed_window_days == m.trial.seed_window_days);
  CHECK(back.trial.runway_days == m.trial.runway_days);
  CHECK(back.trial.grid_step_seconds == m.trial.grid_step_seconds);
  CHECK(back.out_dir == m.out_dir);
  CHECK(back.threads == m.threads);
}

TEST_CASE("manifest parsing validates keys and required fields") {
  std::istringstream bad_key("input=x\nout_dir=y\nmodels=original\nwhat=1\n");
  CHECK_THROWS_AS(parse_manifest(bad_key), ParseError);
  std::istringstream no_input("out_dir=y\nmodels=original\n");
  CHECK_THROWS_AS(parse_manifest(no_input), ParseError);
  std::istringstream no_models("input=x\nout_dir=y\n");
  CHECK_THROWS_AS(parse_manifest(no_models), ParseError);
  std::istringstream bad_model("input=x\nout_dir=y\nmodels=warp\n");
  CHECK_THROWS_AS(parse_manifest(bad_model), std::invalid_argument);
  std::istringstream comments("# comment\ninput=x\nout_dir=y\nmodels=ln-tn, tl\n");
  const RunManifest m = parse_manifest(comments);
  CHECK(m.models == std::vector<NullModel>{NullModel::kLnTn, NullModel::kTl});
}

TEST_CASE("the pipeline reproduces the fixture's hand-traced prevalence") {
  TempDir tmp;
  write_fixture_sessions(tmp.path / "sessions.csv");
  RunManifest m;
  m.input = (tmp.path / "sessions.csv").string();
  m.out_dir = (tmp.path / "out").string();
  m.models = {NullModel::kOriginal};
  m.trial.trials = 1;
  m.trial.seed_window_days = 0.0001; // only the t=5 event is eligible
  m.trial.runway_days = 0.001;       // 86-second horizon
  m.trial.grid_step_seconds = 10;
  std::ostringstream log;
  const int rc = run_pipeline(m, log);
  CHECK(rc == 0);
  const std::string prevalence = slurp(tmp.path / "out" / "original" / "prevalence.csv");
  // the single trial is forced onto the (A,B,5) seed, so the curve is exact:
  // two of the three LCC nodes at once, C infected 20 seconds later
  CHECK(prevalence.find("t_seconds,mean_prevalence,sem\n"
                        "0,0.6666666666666666,0\n"
                        "10,0.6666666666666666,0\n"
                        "20,1,0\n") != std::string::npos);
  CHECK(fs::exists(tmp.path / "out" / "manifest.txt"));
  CHECK(fs::exists(tmp.path / "out" / "original" / "contacts.csv"));
}

TEST_CASE("identical manifests produce identical output trees") {
  TempDir tmp;
  write_fixture_sessions(tmp.path / "sessions.csv");
  Rng gen(131);
  const SessionTable table = test_support::random_table(gen, 600, 30, 8, 86400, 5400);
  write_sessions_csv_file(table, (tmp.path / "big.csv").string());

  RunManifest m;
  m.input = (tmp.path / "big.csv").string();
  m.models = {NullModel::kOriginal, NullModel::kTn, NullModel::kDcb};
  m.seed = 99;
  m.trial.trials = 8;
  m.trial.seed_window_days = 0.25;
  m.trial.runway_days = 0.5;
  m.trial.grid_step_seconds = 600;

  auto run_into = [&](const char* dir) {
    RunManifest copy = m;
    copy.out_dir = (tmp.path / dir).string();
    std::ostringstream log;
    REQUIRE(run_pipeline(copy, log) == 0);
  };
  run_into("out1");
  run_into("out2");

  for (const auto& entry : fs::recursive_directory_iterator(tmp.path / "out1")) {
    if (!entry.is_regular_file() || entry.path().filename() == "manifest.txt")
      continue;
    const fs::path rel = fs::relative(entry.path(), tmp.path / "out1");
    CAPTURE(rel.string());
    CHECK(slurp(entry.path()) == slurp(tmp.path / "out2" / rel));
  }
}

TEST_CASE("a failing branch leaves a marker and a nonzero exit") {
  TempDir tmp;
  // two events, disconnected contact graph: the rewiring model must fail
  std::ofstream out(tmp.path / "sessions.csv");
  out << "node,start,end,location,site\n"
      << "A,0,10,L1,s\nB,5,15,L1,s\nC,0,10,L2,s\nD,5,15,L2,s\n";
  out.close();
  RunManifest m;
  m.input = (tmp.path / "sessions.csv").string();
  m.out_dir = (tmp.path / "out").string();
  m.models = {NullModel::kOriginal, NullModel::kD};
  m.trial.trials = 2;
  m.trial.seed_window_days = 0.0001;
  m.trial.runway_days = 0.001;
  m.trial.grid_step_seconds = 10;
  std::ostringstream log;
  const int rc = run_pipeline(m, log);
  CHECK(rc == 1);
  CHECK(fs::exists(tmp.path / "out" / "d" / "FAILED.txt"));
  // the healthy branch still completed
  CHECK(fs::exists(tmp.path / "out" / "original" / "prevalence.csv"));
}

TEST_CASE("the manifest stamps tool version and input hash") {
  TempDir tmp;
  write_fixture_sessions(tmp.path / "sessions.csv");
  RunManifest m;
  m.input = (tmp.path / "sessions.csv").string();
  m.out_dir = (tmp.path / "out").string();
  m.models = {NullModel::kOriginal};
  m.trial.trials = 1;
  m.trial.seed_window_days = 0.0001;
  m.trial.runway_days = 0.001;
  m.trial.grid_step_seconds = 10;
  std::ostringstream log;
  REQUIRE(run_pipeline(m, log) == 0);
  const std::string manifest = slurp(tmp.path / "out" / "manifest.txt");
  CHECK(manifest.find("tool_version=") != std::string::npos);
  CHECK(manifest.find("input_hash=") != std::string::npos);
}
