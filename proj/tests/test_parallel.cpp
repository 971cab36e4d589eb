#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "robustgait/dataset_io.hpp"
#include "robustgait/engine.hpp"
#include "test_util.hpp"

using namespace robustgait;
using namespace testutil;

namespace {

occlusion::MaskPack test_pack() {
    occlusion::MaskPack pack;
    for (int i = 0; i < 5; ++i) {
        occlusion::MaskEntry e;
        e.mask_id = "blob" + std::to_string(i);
        e.mask = BinaryMask(16, 16, 0);
        for (int y = 0; y <= 3 + i * 2; ++y)
            for (int x = 0; x <= 3 + i; ++x) e.mask.at(y, x) = 1;
        pack.entries.push_back(std::move(e));
    }
    pack.finalize();
    return pack;
}

} // namespace

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
    const auto seq = natural_sequence(24, 48, 40);
    const auto pack = test_pack();
    for (auto kind : all_corruption_kinds()) {
        for (int s : {1, 3, 5}) {
            CAPTURE(to_string(kind));
            CAPTURE(s);
            const CorruptionSpec spec{kind, Severity(s), 0xC0FFEEULL + static_cast<std::uint64_t>(s)};
            const auto serial = apply_corruption(seq, spec, &pack, Exec::Serial);
            const auto parallel = apply_corruption(seq, spec, &pack, Exec::Parallel);
            CHECK(serial.sequence == parallel.sequence);
            CHECK(serial.occluder_mask == parallel.occluder_mask);
            CHECK(serial.resolved_params == parallel.resolved_params);
        }
    }
}

TEST_CASE("parallel output does not depend on the worker count") {
    const auto seq = natural_sequence(16, 32, 32);
    const auto pack = test_pack();
    const CorruptionSpec spec{CorruptionKind::Rain, Severity(3), 777};

    const int original = max_workers();
    set_workers(1);
    const auto one = apply_corruption(seq, spec, &pack, Exec::Parallel);
    set_workers(8);
    const auto eight = apply_corruption(seq, spec, &pack, Exec::Parallel);
    set_workers(original);
    CHECK(one.sequence == eight.sequence);
    CHECK(io::sequence_digest(one.sequence) == io::sequence_digest(eight.sequence));
}

TEST_CASE("digest of a corrupted batch is stable across repeated parallel runs") {
    const auto seq = natural_sequence(20, 40, 32);
    const auto pack = test_pack();
    for (auto kind : all_corruption_kinds()) {
        const CorruptionSpec spec{kind, Severity(2), 99};
        const auto a = apply_corruption(seq, spec, &pack, Exec::Parallel);
        const auto b = apply_corruption(seq, spec, &pack, Exec::Parallel);
        CHECK(io::sequence_digest(a.sequence) == io::sequence_digest(b.sequence));
    }
}
