// Timing comparison of the serial reference frame loop against the OpenMP
// path, per corruption kernel. Outputs one line per kernel.

#include <chrono>
#include <cstdio>

#include "robustgait/engine.hpp"
#include "robustgait/rng.hpp"

using namespace robustgait;

namespace {

FrameSequence make_sequence(std::size_t frames, int h, int w) {
    SeededRng rng(7);
    FrameSequence seq;
    seq.height = h;
    seq.width = w;
    seq.source_id = "bench";
    for (std::size_t t = 0; t < frames; ++t) {
        Frame f(h, w);
        for (auto& p : f.pixels) p = static_cast<std::uint8_t>(rng.next() & 0xFF);
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

double time_ms(const FrameSequence& seq, const CorruptionSpec& spec, Exec exec) {
    const auto start = std::chrono::steady_clock::now();
    auto out = apply_corruption(seq, spec, nullptr, exec);
    const auto end = std::chrono::steady_clock::now();
    volatile auto sink = out.sequence.frames[0].pixels[0];
    (void)sink;
    return std::chrono::duration<double, std::milli>(end - start).count();
}

} // namespace

int main() {
    const auto seq = make_sequence(30, 128, 128);
    std::printf("%-16s %10s %10s %8s\n", "kernel", "serial ms", "openmp ms", "speedup");
    for (auto kind : all_corruption_kinds()) {
        if (kind == CorruptionKind::Occlusion) continue; // needs a mask pack
        const CorruptionSpec spec{kind, Severity(3), 42};
        const double serial = time_ms(seq, spec, Exec::Serial);
        const double parallel = time_ms(seq, spec, Exec::Parallel);
        std::printf("%-16s %10.2f %10.2f %7.2fx\n", to_string(kind).c_str(), serial,
                    parallel, serial / parallel);
    }
    return 0;
}
