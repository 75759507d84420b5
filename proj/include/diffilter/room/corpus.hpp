#pragma once

#include <string>
#include <vector>

#include "diffilter/room/mixture.hpp"

namespace diffilter {

struct CorpusEntry {
  std::string id;
  std::string noisy_path;         // relative to the manifest directory
  std::string speech_image_path;
  std::string noise_image_path;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  std::string source_utterance_id;
  std::string noise_id;
  RoomSpec room;
};

// JSON-lines manifest, one object per example, in entry order.
struct CorpusManifest {
  std::vector<CorpusEntry> entries;
  std::string root_dir;  // directory the relative paths resolve against

  void save(const std::string& path) const;
  static CorpusManifest load(const std::string& path);

  MixtureExample load_example(std::size_t index) const;
  MultichannelWaveform load_noisy(std::size_t index) const;
};

struct SourcePool {
  std::vector<std::string> ids;
  std::vector<std::string> paths;  // mono WAV per id
};

SourcePool scan_wav_dir(const std::string& dir);

struct CorpusBuildConfig {
  long count = 100;
  std::uint64_t seed = 0;
  double snr_lo_db = 0.0;
  double snr_hi_db = 20.0;
  int n_workers = 0;  // 0 = hardware concurrency
};

// Unlabeled multichannel corpus: each entry gets a freshly sampled room,
// clean utterance, noise crop and SNR, all derived from (seed, index) so
// parallel and serial builds produce identical corpora. No speaker labels
// are stored.
CorpusManifest build_ssl_corpus(const SourcePool& clean, const SourcePool& noise,
                                const CorpusBuildConfig& cfg, const std::string& out_dir);

}  // namespace diffilter
