#pragma once

#include <string>

#include "diffilter/signal/waveform.hpp"

namespace diffilter {

// PCM WAV reader/writer: 16-bit integer and 32-bit float, any channel count.
// Multichannel corpora are stored as one C-channel file per utterance.

enum class WavFormat { pcm16, float32 };

MultichannelWaveform read_wav(const std::string& path);
Waveform read_wav_mono(const std::string& path);  // errors if file is multichannel

void write_wav(const std::string& path, const MultichannelWaveform& w,
               WavFormat fmt = WavFormat::float32);
void write_wav(const std::string& path, const Waveform& w,
               WavFormat fmt = WavFormat::float32);

}  // namespace diffilter
