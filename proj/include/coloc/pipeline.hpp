#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coloc/si.hpp"
#include "coloc/types.hpp"

namespace coloc {

/// Everything needed to reproduce a run: re-executing with an identical
/// manifest rebuilds a byte-identical output tree. Serialized as flat
/// key=value lines.
struct RunManifest {
  std::string input;             // session CSV path
  std::vector<NullModel> models; // branches to run
  std::uint64_t seed = 0;        // master seed; stage seeds derive from it
  TrialConfig trial;             // trials / windows / grid (master_seed unused)
  std::string out_dir;
  int threads = 1;
  std::string tool_version;   // stamped on write
  std::string input_hash_hex; // FNV-1a of input bytes, stamped on run
};

RunManifest parse_manifest(std::istream& in);
RunManifest parse_manifest_file(const std::string& path);
void write_manifest(const RunManifest& m, std::ostream& out);

/// Run every requested model end to end: shuffle (session-level models) or
/// contact-shuffle (contact-level models), infer, simulate, metrics. Each
/// model's outputs land under <out_dir>/<model>/, pairwise prevalence
/// deltas under <out_dir>/deltas/, and the stamped manifest at
/// <out_dir>/manifest.txt. A failed branch leaves a FAILED.txt marker and
/// the run exits nonzero; other branches still run.
int run_pipeline(RunManifest manifest, std::ostream& log);

} // namespace coloc
