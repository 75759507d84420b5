#include "diffilter/room/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "diffilter/signal/wav.hpp"
#include "diffilter/util/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace diffilter {

namespace {

ordered_json room_to_json(const RoomSpec& r) {
  ordered_json j;
  j["length"] = r.length;
  j["width"] = r.width;
  j["height"] = r.height;
  j["rt60"] = r.rt60;
  j["source_pos"] = {r.source_pos.x(), r.source_pos.y(), r.source_pos.z()};
  j["noise_pos"] = {r.noise_pos.x(), r.noise_pos.y(), r.noise_pos.z()};
  ordered_json mics = ordered_json::array();
  for (const auto& m : r.mic_positions) mics.push_back({m.x(), m.y(), m.z()});
  j["mic_positions"] = mics;
  j["seed"] = r.seed;
  return j;
}

RoomSpec room_from_json(const ordered_json& j) {
  RoomSpec r;
  r.length = j.at("length");
  r.width = j.at("width");
  r.height = j.at("height");
  r.rt60 = j.at("rt60");
  auto v3 = [](const ordered_json& a) {
    return Eigen::Vector3d(a.at(0), a.at(1), a.at(2));
  };
  r.source_pos = v3(j.at("source_pos"));
  r.noise_pos = v3(j.at("noise_pos"));
  for (int m = 0; m < kNumMics; ++m) r.mic_positions[m] = v3(j.at("mic_positions").at(m));
  r.seed = j.at("seed");
  return r;
}

}  // namespace

void CorpusManifest::save(const std::string& path) const {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("CorpusManifest: cannot open " + path);
  for (const auto& e : entries) {
    ordered_json j;
    j["id"] = e.id;
    j["noisy"] = e.noisy_path;
    j["speech_image"] = e.speech_image_path;
    j["noise_image"] = e.noise_image_path;
    j["snr_db"] = e.snr_db;
    j["seed"] = e.seed;
    j["source_utterance_id"] = e.source_utterance_id;
    j["noise_id"] = e.noise_id;
    j["room"] = room_to_json(e.room);
    f << j.dump() << "\n";
  }
  if (!f) throw std::runtime_error("CorpusManifest: write failed: " + path);
}

CorpusManifest CorpusManifest::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("CorpusManifest: cannot open " + path);
  CorpusManifest m;
  m.root_dir = fs::path(path).parent_path().string();
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line);
    CorpusEntry e;
    e.id = j.at("id");
    e.noisy_path = j.at("noisy");
    e.speech_image_path = j.at("speech_image");
    e.noise_image_path = j.at("noise_image");
    e.snr_db = j.at("snr_db");
    e.seed = j.at("seed");
    e.source_utterance_id = j.at("source_utterance_id");
    e.noise_id = j.at("noise_id");
    e.room = room_from_json(j.at("room"));
    m.entries.push_back(std::move(e));
  }
  return m;
}

MultichannelWaveform CorpusManifest::load_noisy(std::size_t index) const {
  const auto& e = entries.at(index);
  return read_wav((fs::path(root_dir) / e.noisy_path).string());
}

MixtureExample CorpusManifest::load_example(std::size_t index) const {
  const auto& e = entries.at(index);
  MixtureExample ex;
  ex.speech_image = read_wav((fs::path(root_dir) / e.speech_image_path).string());
  ex.noise_image = read_wav((fs::path(root_dir) / e.noise_image_path).string());
  // rebuild the mixture from the stored images so the reference-channel
  // decomposition stays sample-exact across the float32 file round trip
  ex.noisy = MultichannelWaveform(ex.speech_image.channels + ex.noise_image.channels,
                                  ex.speech_image.sample_rate);
  ex.clean_reverberant_ref = ex.speech_image.channel(0);
  ex.noise_ref = ex.noise_image.channel(0);
  ex.snr_db = e.snr_db;
  ex.source_utterance_id = e.source_utterance_id;
  return ex;
}

SourcePool scan_wav_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("scan_wav_dir: not a directory: " + dir);
  SourcePool pool;
  std::vector<std::string> files;
  for (const auto& p : fs::directory_iterator(dir))
    if (p.path().extension() == ".wav") files.push_back(p.path().string());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    pool.ids.push_back(fs::path(f).stem().string());
    pool.paths.push_back(f);
  }
  return pool;
}

CorpusManifest build_ssl_corpus(const SourcePool& clean, const SourcePool& noise,
                                const CorpusBuildConfig& cfg, const std::string& out_dir) {
  if (clean.paths.empty() || noise.paths.empty())
    throw std::invalid_argument("build_ssl_corpus: empty source pool");
  if (cfg.count <= 0) throw std::invalid_argument("build_ssl_corpus: count must be positive");
  fs::create_directories(out_dir);

  CorpusManifest manifest;
  manifest.root_dir = out_dir;
  manifest.entries.resize(cfg.count);

  parallel_for(
      cfg.count,
      [&](long i) {
        Rng rng = Rng::derive(cfg.seed, {0x51u, static_cast<std::uint64_t>(i)});
        const auto ci = rng.integer(clean.paths.size());
        const auto ni = rng.integer(noise.paths.size());
        RoomSpec room = sample_room(rng);
        room.seed = cfg.seed ^ static_cast<std::uint64_t>(i);
        const double snr = rng.uniform(cfg.snr_lo_db, cfg.snr_hi_db);

        Waveform cw = read_wav_mono(clean.paths[ci]);
        Waveform nw = read_wav_mono(noise.paths[ni]);
        RirSet rirs = simulate_rir(room);
        MixtureExample ex = synthesize_mixture(cw, rirs, nw, snr, rng);

        char name[32];
        std::snprintf(name, sizeof(name), "entry_%06ld", i);
        CorpusEntry e;
        e.id = name;
        e.noisy_path = std::string(name) + "_noisy.wav";
        e.speech_image_path = std::string(name) + "_speech.wav";
        e.noise_image_path = std::string(name) + "_noise.wav";
        e.snr_db = snr;
        e.seed = room.seed;
        e.source_utterance_id = clean.ids[ci];
        e.noise_id = noise.ids[ni];
        e.room = room;
        write_wav((fs::path(out_dir) / e.noisy_path).string(), ex.noisy);
        write_wav((fs::path(out_dir) / e.speech_image_path).string(), ex.speech_image);
        write_wav((fs::path(out_dir) / e.noise_image_path).string(), ex.noise_image);
        manifest.entries[i] = std::move(e);
      },
      cfg.n_workers);

  manifest.save((fs::path(out_dir) / "manifest.jsonl").string());
  return manifest;
}

}  // namespace diffilter
