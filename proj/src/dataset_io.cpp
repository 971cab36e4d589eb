#include "robustgait/dataset_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace robustgait::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kBinaryMagic[4] = {'R', 'G', 'E', 'B'};

void fnv1a(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

} // namespace

std::string sequence_digest(const FrameSequence& seq) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const std::int64_t dims[3] = {static_cast<std::int64_t>(seq.size()), seq.height,
                                  seq.width};
    fnv1a(h, dims, sizeof(dims));
    for (const auto& f : seq.frames) fnv1a(h, f.pixels.data(), f.pixels.size());
    return hex64(h);
}

std::string CorruptionManifest::to_json() const {
    json j{{"source_id", source_id},
           {"kind", kind},
           {"severity", severity},
           {"seed", seed},
           {"engine_version", engine_version},
           {"resolved_params", resolved_params},
           {"output_digest", output_digest}};
    return j.dump(2);
}

CorruptionManifest CorruptionManifest::from_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());
    json j;
    in >> j;
    CorruptionManifest m;
    m.source_id = j.value("source_id", std::string{});
    m.kind = j.value("kind", std::string{});
    m.severity = j.value("severity", 1);
    m.seed = j.value("seed", std::uint64_t{0});
    m.engine_version = j.value("engine_version", std::string{});
    if (j.contains("resolved_params"))
        m.resolved_params = j["resolved_params"].get<std::map<std::string, double>>();
    m.output_digest = j.value("output_digest", std::string{});
    return m;
}

Frame load_frame_png(const fs::path& path) {
    cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (img.empty()) throw IoError("cannot read image: " + path.string());
    cv::Mat bgr;
    if (img.channels() == 1)
        cv::cvtColor(img, bgr, cv::COLOR_GRAY2BGR);
    else if (img.channels() == 4)
        cv::cvtColor(img, bgr, cv::COLOR_BGRA2BGR);
    else
        bgr = img;
    Frame f(bgr.rows, bgr.cols);
    for (int y = 0; y < bgr.rows; ++y)
        for (int x = 0; x < bgr.cols; ++x) {
            const auto& px = bgr.at<cv::Vec3b>(y, x);
            f.at(y, x, 0) = px[2];
            f.at(y, x, 1) = px[1];
            f.at(y, x, 2) = px[0];
        }
    return f;
}

void save_frame_png(const Frame& frame, const fs::path& path) {
    cv::Mat bgr(frame.height, frame.width, CV_8UC3);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x)
            bgr.at<cv::Vec3b>(y, x) =
                cv::Vec3b(frame.at(y, x, 2), frame.at(y, x, 1), frame.at(y, x, 0));
    if (!cv::imwrite(path.string(), bgr))
        throw IoError("cannot write image: " + path.string());
}

BinaryMask load_mask_png(const fs::path& path) {
    cv::Mat img = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (img.empty()) throw IoError("cannot read mask: " + path.string());
    BinaryMask m(img.rows, img.cols);
    for (int y = 0; y < img.rows; ++y)
        for (int x = 0; x < img.cols; ++x)
            m.at(y, x) = img.at<std::uint8_t>(y, x) >= 128 ? 1 : 0;
    return m;
}

void save_mask_png(const BinaryMask& mask, const fs::path& path) {
    cv::Mat img(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            img.at<std::uint8_t>(y, x) = mask.at(y, x) ? 255 : 0;
    if (!cv::imwrite(path.string(), img))
        throw IoError("cannot write mask: " + path.string());
}

FrameSequence load_sequence(const fs::path& dir) {
    if (!fs::is_directory(dir))
        throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".png")
            files.push_back(e.path());
    if (files.empty()) throw EmptySequence("no PNG frames in " + dir.string());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });

    FrameSequence seq;
    seq.source_id = dir.filename().string();
    for (const auto& p : files) {
        Frame f = load_frame_png(p);
        if (seq.frames.empty()) {
            seq.height = f.height;
            seq.width = f.width;
        } else if (f.height != seq.height || f.width != seq.width) {
            throw DimMismatch("mixed frame dimensions in " + dir.string());
        }
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

void save_sequence(const FrameSequence& seq, const fs::path& dir,
                   const CorruptionManifest* manifest) {
    seq.validate();
    // Stage into a sibling temp dir, then rename; no partial output at `dir`.
    std::random_device rd;
    const fs::path tmp =
        dir.parent_path() / (dir.filename().string() + ".tmp-" + hex64(rd()));
    fs::create_directories(tmp);
    try {
        char name[32];
        for (std::size_t t = 0; t < seq.size(); ++t) {
            std::snprintf(name, sizeof(name), "frame_%06zu.png", t);
            save_frame_png(seq.frames[t], tmp / name);
        }
        if (manifest) {
            std::ofstream out(tmp / "manifest.json");
            out << manifest->to_json() << '\n';
            if (!out) throw IoError("cannot write manifest in " + tmp.string());
        }
        fs::remove_all(dir);
        fs::rename(tmp, dir);
    } catch (...) {
        fs::remove_all(tmp);
        throw;
    }
}

std::vector<metrics::EmbeddingRecord> load_embeddings(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open embeddings: " + path.string());
    char magic[4] = {};
    in.read(magic, 4);
    std::vector<metrics::EmbeddingRecord> records;

    if (in.gcount() == 4 && std::memcmp(magic, kBinaryMagic, 4) == 0) {
        std::uint32_t dim = 0;
        std::uint64_t count = 0;
        in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
        in.read(reinterpret_cast<char*>(&count), sizeof(count));
        auto read_string = [&in, &path]() {
            std::uint32_t len = 0;
            in.read(reinterpret_cast<char*>(&len), sizeof(len));
            std::string s(len, '\0');
            in.read(s.data(), len);
            if (!in) throw IoError("truncated embedding file: " + path.string());
            return s;
        };
        for (std::uint64_t i = 0; i < count; ++i) {
            metrics::EmbeddingRecord r;
            r.identity = read_string();
            r.condition = read_string();
            r.view = read_string();
            r.sequence_id = read_string();
            r.vector.resize(dim);
            in.read(reinterpret_cast<char*>(r.vector.data()),
                    static_cast<std::streamsize>(dim * sizeof(double)));
            if (!in) throw IoError("truncated embedding file: " + path.string());
            records.push_back(std::move(r));
        }
        return records;
    }

    // Text format.
    in.clear();
    in.seekg(0);
    std::string line;
    if (!std::getline(in, line) || line.rfind("id,condition,view,", 0) != 0)
        throw IoError("bad embedding header in " + path.string());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        metrics::EmbeddingRecord r;
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, r.identity, ',');
        std::getline(ss, r.condition, ',');
        std::getline(ss, r.view, ',');
        while (std::getline(ss, tok, ',')) r.vector.push_back(std::stod(tok));
        if (r.vector.empty())
            throw IoError("embedding record without values in " + path.string());
        records.push_back(std::move(r));
    }
    return records;
}

void save_embeddings_text(const std::vector<metrics::EmbeddingRecord>& records,
                          const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write embeddings: " + path.string());
    out << "id,condition,view,dim\n";
    out.precision(17);
    for (const auto& r : records) {
        out << r.identity << ',' << r.condition << ',' << r.view;
        for (double v : r.vector) out << ',' << v;
        out << '\n';
    }
}

void save_embeddings_binary(const std::vector<metrics::EmbeddingRecord>& records,
                            const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write embeddings: " + path.string());
    out.write(kBinaryMagic, 4);
    const std::uint32_t dim =
        records.empty() ? 0 : static_cast<std::uint32_t>(records.front().vector.size());
    const std::uint64_t count = records.size();
    out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    auto write_string = [&out](const std::string& s) {
        const auto len = static_cast<std::uint32_t>(s.size());
        out.write(reinterpret_cast<const char*>(&len), sizeof(len));
        out.write(s.data(), len);
    };
    for (const auto& r : records) {
        write_string(r.identity);
        write_string(r.condition);
        write_string(r.view);
        write_string(r.sequence_id);
        out.write(reinterpret_cast<const char*>(r.vector.data()),
                  static_cast<std::streamsize>(r.vector.size() * sizeof(double)));
    }
}

occlusion::MaskPack load_mask_pack(const fs::path& dir) {
    std::ifstream in(dir / "index.json");
    if (!in) throw IoError("cannot open mask pack index in " + dir.string());
    json j;
    in >> j;
    occlusion::MaskPack pack;
    for (const auto& e : j.at("entries")) {
        occlusion::MaskEntry entry;
        entry.mask_id = e.at("mask_id").get<std::string>();
        entry.mask = load_mask_png(dir / e.at("mask").get<std::string>());
        entry.area = e.value("area", std::size_t{0});
        if (e.contains("texture"))
            entry.texture = load_frame_png(dir / e["texture"].get<std::string>());
        pack.entries.push_back(std::move(entry));
    }
    pack.finalize();
    return pack;
}

void save_mask_pack(const occlusion::MaskPack& pack, const fs::path& dir) {
    fs::create_directories(dir);
    json entries = json::array();
    for (const auto& e : pack.entries) {
        const std::string mask_file = e.mask_id + "_mask.png";
        save_mask_png(e.mask, dir / mask_file);
        json rec{{"mask_id", e.mask_id}, {"mask", mask_file}, {"area", e.mask.area()}};
        if (e.texture) {
            const std::string tex_file = e.mask_id + "_tex.png";
            save_frame_png(*e.texture, dir / tex_file);
            rec["texture"] = tex_file;
        }
        entries.push_back(rec);
    }
    std::ofstream out(dir / "index.json");
    out << json{{"entries", entries}}.dump(2) << '\n';
    if (!out) throw IoError("cannot write mask pack index in " + dir.string());
}

BinaryMask polygon_to_mask(const std::vector<double>& polygon, int height, int width) {
    if (polygon.size() < 6 || polygon.size() % 2 != 0)
        throw InvalidConfig("polygon needs at least 3 (x, y) vertex pairs");
    BinaryMask mask(height, width);
    const std::size_t n = polygon.size() / 2;
    // Even-odd scanline fill.
    for (int y = 0; y < height; ++y) {
        const double yc = y + 0.5;
        std::vector<double> crossings;
        for (std::size_t i = 0; i < n; ++i) {
            const double x0 = polygon[2 * i], y0 = polygon[2 * i + 1];
            const double x1 = polygon[2 * ((i + 1) % n)],
                         y1 = polygon[2 * ((i + 1) % n) + 1];
            if ((y0 <= yc && y1 > yc) || (y1 <= yc && y0 > yc))
                crossings.push_back(x0 + (yc - y0) / (y1 - y0) * (x1 - x0));
        }
        std::sort(crossings.begin(), crossings.end());
        for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
            const int xs = std::max(0, static_cast<int>(std::ceil(crossings[i] - 0.5)));
            const int xe =
                std::min(width - 1, static_cast<int>(std::floor(crossings[i + 1] - 0.5)));
            for (int x = xs; x <= xe; ++x) mask.at(y, x) = 1;
        }
    }
    return mask;
}

} // namespace robustgait::io
