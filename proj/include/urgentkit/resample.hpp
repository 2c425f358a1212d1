// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "urgentkit/waveform.hpp"

namespace urgentkit {

// Kaiser-windowed sinc polyphase resampler, cutoff 0.95 of the lower
// Nyquist. Output length = round(len * target / source); identity when the
// rates match. Total on valid inputs.
Waveform resample(const Waveform& w, int target_rate);

}  // namespace urgentkit
