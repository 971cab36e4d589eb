#include "robustgait/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "robustgait/pixel.hpp"

namespace robustgait::protocols {

ProtocolSpec builtin_protocol(const std::string& name) {
    if (name == "casia_b")
        return {"casia_b",
                {"nm-01", "nm-02", "nm-03", "nm-04"},
                {"nm-05", "nm-06", "bg-01", "bg-02", "cl-01", "cl-02"}};
    if (name == "ccpg")
        return {"ccpg",
                {"U1_D1", "U2_D2", "U3_D3", "U0_D3", "U0_D0"},
                {"U0_D0_BG", "U0_D0", "U3_D3", "U1_D0"}};
    if (name == "sustech1k")
        return {"sustech1k",
                {"00-nm"},
                {"01-nm", "bg", "cl", "cr", "ub", "uf", "oc", "nt", "01", "02", "03",
                 "04"}};
    throw InvalidConfig("unknown built-in protocol: " + name);
}

ProtocolSpec protocol_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open protocol file: " + path);
    nlohmann::json j;
    in >> j;
    ProtocolSpec spec;
    spec.dataset = j.value("dataset", std::string{"custom"});
    spec.gallery_conditions = j.at("gallery_conditions").get<std::vector<std::string>>();
    spec.probe_conditions = j.at("probe_conditions").get<std::vector<std::string>>();
    if (spec.gallery_conditions.empty() || spec.probe_conditions.empty())
        throw InvalidConfig("protocol condition lists must be nonempty");
    return spec;
}

SplitResult split(const std::vector<ManifestRecord>& records,
                  const ProtocolSpec& spec) {
    const std::set<std::string> gal(spec.gallery_conditions.begin(),
                                    spec.gallery_conditions.end());
    const std::set<std::string> prb(spec.probe_conditions.begin(),
                                    spec.probe_conditions.end());
    SplitResult result;
    for (const auto& rec : records) {
        if (gal.count(rec.condition))
            result.gallery.push_back(rec);
        else if (prb.count(rec.condition))
            result.probe.push_back(rec);
        else
            ++result.excluded;
    }
    if (result.gallery.empty() || result.probe.empty())
        throw EmptySplit("split produced an empty gallery or probe set");
    return result;
}

void SeverityDistribution::validate() const {
    double sum = 0.0;
    for (const auto& [level, p] : probabilities) {
        if (level < 1 || level > 5)
            throw InvalidConfig("severity distribution level out of range");
        if (p < 0.0) throw InvalidConfig("severity probability negative");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw InvalidConfig("severity probabilities must sum to 1");
}

std::vector<ManifestRecord> build_noisy_gallery(
    const std::vector<ManifestRecord>& gallery,
    const std::vector<CorruptionKind>& kinds, const SeverityDistribution& dist,
    std::uint64_t seed) {
    if (gallery.empty()) throw EmptyGallery("gallery manifest is empty");
    if (kinds.empty()) throw InvalidConfig("corruption kind list is empty");
    dist.validate();

    SeededRng root(seed);
    std::vector<ManifestRecord> out;
    out.reserve(gallery.size());
    for (std::size_t i = 0; i < gallery.size(); ++i) {
        SeededRng rng = root.child(i);
        const CorruptionKind kind = kinds[rng.uniform_index(kinds.size())];
        const double u = rng.uniform();
        double cum = 0.0;
        int level = dist.probabilities.rbegin()->first;
        for (const auto& [lvl, p] : dist.probabilities) {
            cum += p;
            if (u < cum) {
                level = lvl;
                break;
            }
        }
        ManifestRecord rec = gallery[i];
        rec.corruption = CorruptionTag{to_string(kind), level, rng.next()};
        out.push_back(std::move(rec));
    }
    return out;
}

void MixRatio::validate() const {
    if (clean_fraction < 0.0 || clean_fraction > 1.0 || noisy_fraction < 0.0 ||
        noisy_fraction > 1.0 ||
        std::fabs(clean_fraction + noisy_fraction - 1.0) > 1e-12)
        throw InvalidConfig("mix ratio fractions must be in [0,1] and sum to 1");
}

std::vector<ManifestRecord> build_training_mix(
    const std::vector<ManifestRecord>& clean,
    const std::vector<ManifestRecord>& noisy, const MixRatio& ratio,
    std::uint64_t seed) {
    if (clean.empty() || noisy.empty())
        throw InvalidConfig("training mix manifests must be nonempty");
    ratio.validate();

    const auto total = static_cast<std::size_t>(round_half_away(
        ratio.noisy_fraction * static_cast<double>(clean.size())));
    std::vector<ManifestRecord> out = clean;
    if (total == 0) return out;

    std::map<std::string, std::size_t> noisy_by_id; // sequence_id -> noisy index
    for (std::size_t i = 0; i < noisy.size(); ++i)
        noisy_by_id[noisy[i].sequence_id] = i;

    // Group clean indices per identity, then apportion the replacement count
    // with largest remainders so each identity stays within +-1 of the global
    // fraction.
    std::map<std::string, std::vector<std::size_t>> by_identity;
    for (std::size_t i = 0; i < clean.size(); ++i)
        by_identity[clean[i].identity].push_back(i);

    struct Alloc {
        std::string identity;
        std::size_t base;
        double remainder;
    };
    std::vector<Alloc> allocs;
    std::size_t assigned = 0;
    for (const auto& [identity, idxs] : by_identity) {
        const double exact = ratio.noisy_fraction * static_cast<double>(idxs.size());
        const auto base = static_cast<std::size_t>(std::floor(exact));
        allocs.push_back({identity, base, exact - std::floor(exact)});
        assigned += base;
    }
    std::stable_sort(allocs.begin(), allocs.end(),
                     [](const Alloc& a, const Alloc& b) { return a.remainder > b.remainder; });
    for (auto& a : allocs) {
        if (assigned >= total) break;
        if (a.base < by_identity[a.identity].size()) {
            ++a.base;
            ++assigned;
        }
    }

    SeededRng root(seed);
    std::size_t stream = 0;
    for (const auto& a : allocs) {
        auto& idxs = by_identity[a.identity];
        SeededRng rng = root.child(stream++);
        // Partial Fisher-Yates picks a.base indices per identity.
        for (std::size_t i = 0; i < a.base && i < idxs.size(); ++i) {
            const std::size_t j = i + rng.uniform_index(idxs.size() - i);
            std::swap(idxs[i], idxs[j]);
            const auto& seq_id = clean[idxs[i]].sequence_id;
            auto it = noisy_by_id.find(seq_id);
            if (it == noisy_by_id.end())
                throw MissingCounterpart("no noisy counterpart for sequence " + seq_id);
            out[idxs[i]] = noisy[it->second];
        }
    }
    return out;
}

const std::vector<CorruptionKind>& default_seen_corruptions() {
    // One kind per family plus a second digital kind.
    static const std::vector<CorruptionKind> kinds = {
        CorruptionKind::GaussianNoise, CorruptionKind::DefocusBlur,
        CorruptionKind::Sampling, CorruptionKind::Fog, CorruptionKind::Occlusion};
    return kinds;
}

} // namespace robustgait::protocols
