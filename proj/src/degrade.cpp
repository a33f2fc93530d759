#include "dod/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dod/png_io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dod {

const char* kind_name(DegradationKind k) {
    switch (k) {
        case DegradationKind::noise: return "noise";
        case DegradationKind::rain: return "rain";
        case DegradationKind::haze: return "haze";
        case DegradationKind::blur: return "blur";
        case DegradationKind::lowlight: return "lowlight";
    }
    throw std::logic_error("unknown degradation kind");
}

DegradationKind kind_from_name(const std::string& name) {
    if (name == "noise") return DegradationKind::noise;
    if (name == "rain") return DegradationKind::rain;
    if (name == "haze") return DegradationKind::haze;
    if (name == "blur") return DegradationKind::blur;
    if (name == "lowlight") return DegradationKind::lowlight;
    throw std::invalid_argument("unknown degradation kind: " + name);
}

const char* split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    throw std::logic_error("unknown split");
}

namespace {

void check_image(const Tensor& img) {
    if (img.ndim() != 3 && img.ndim() != 4)
        throw std::invalid_argument("degrade: expected [C,H,W] or [N,C,H,W], got " +
                                    shape_str(img.shape()));
}

// reflect-101 index (edge pixel not repeated)
int64_t reflect_index(int64_t i, int64_t n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

void validate_kernel(const Tensor& kernel) {
    if (kernel.ndim() != 2)
        throw std::invalid_argument("blur: kernel must be 2-d, got " + shape_str(kernel.shape()));
    if (kernel.dim(0) % 2 == 0 || kernel.dim(1) % 2 == 0)
        throw std::invalid_argument("blur: kernel extent must be odd");
    double s = kernel.sum();
    if (std::fabs(s - 1.0) > 1e-6)
        throw std::invalid_argument("blur: kernel entries must sum to 1 (got sum=" +
                                    std::to_string(s) + ")");
    if (kernel.min() < 0.0) throw std::invalid_argument("blur: kernel entries must be >= 0");
}

}  // namespace

void DegradationSpec::validate() const {
    switch (kind) {
        case DegradationKind::noise: {
            const auto& p = std::get<NoiseParams>(params);
            if (p.sigma < 0.0) throw std::invalid_argument("noise: sigma must be >= 0");
            break;
        }
        case DegradationKind::rain: {
            const auto& p = std::get<RainParams>(params);
            if (p.num_streaks < 0) throw std::invalid_argument("rain: num_streaks must be >= 0");
            if (p.length_px <= 0.0) throw std::invalid_argument("rain: length_px must be > 0");
            if (p.intensity < 0.0) throw std::invalid_argument("rain: intensity must be >= 0");
            break;
        }
        case DegradationKind::haze: {
            const auto& p = std::get<HazeParams>(params);
            if (p.beta < 0.0) throw std::invalid_argument("haze: beta must be >= 0");
            if (p.airlight < 0.0 || p.airlight > 1.0)
                throw std::invalid_argument("haze: airlight must lie in [0,1]");
            break;
        }
        case DegradationKind::blur: {
            validate_kernel(std::get<BlurParams>(params).kernel);
            break;
        }
        case DegradationKind::lowlight: {
            const auto& p = std::get<LowlightParams>(params);
            if (p.gamma < 1.0) throw std::invalid_argument("lowlight: gamma must be >= 1");
            if (p.scale <= 0.0 || p.scale > 1.0)
                throw std::invalid_argument("lowlight: scale must lie in (0,1]");
            break;
        }
    }
}

Tensor add_gaussian_noise(const Tensor& img, double sigma, uint64_t seed) {
    check_image(img);
    if (sigma < 0.0) throw std::invalid_argument("noise: sigma must be >= 0");
    Tensor out = img;
    Philox rng(seed);
    const double s = sigma / 255.0;
    double* d = out.data();
    const int64_t n = out.numel();
    for (int64_t i = 0; i < n; ++i) d[i] = std::clamp(d[i] + s * rng.gaussian(), 0.0, 1.0);
    return out;
}

Tensor add_blur(const Tensor& img, const Tensor& kernel) {
    check_image(img);
    validate_kernel(kernel);
    const bool batched = img.ndim() == 4;
    const int64_t N = batched ? img.dim(0) : 1;
    const int64_t C = batched ? img.dim(1) : img.dim(0);
    const int64_t H = batched ? img.dim(2) : img.dim(1);
    const int64_t W = batched ? img.dim(3) : img.dim(2);
    const int64_t kh = kernel.dim(0), kw = kernel.dim(1);
    const int64_t rh = kh / 2, rw = kw / 2;

    Tensor out(img.shape());
    const double* src = img.data();
    const double* k = kernel.data();
    double* dst = out.data();
    for (int64_t nc = 0; nc < N * C; ++nc) {
        const double* plane = src + nc * H * W;
        double* oplane = dst + nc * H * W;
        for (int64_t y = 0; y < H; ++y) {
            for (int64_t x = 0; x < W; ++x) {
                double acc = 0.0;
                for (int64_t dy = -rh; dy <= rh; ++dy) {
                    const int64_t sy = reflect_index(y + dy, H);
                    for (int64_t dx = -rw; dx <= rw; ++dx) {
                        const int64_t sx = reflect_index(x + dx, W);
                        acc += plane[sy * W + sx] * k[(dy + rh) * kw + (dx + rw)];
                    }
                }
                oplane[y * W + x] = std::clamp(acc, 0.0, 1.0);
            }
        }
    }
    return out;
}

Tensor darken(const Tensor& img, double gamma, double scale, uint64_t seed, bool read_noise) {
    check_image(img);
    if (gamma < 1.0) throw std::invalid_argument("lowlight: gamma must be >= 1");
    if (scale <= 0.0 || scale > 1.0)
        throw std::invalid_argument("lowlight: scale must lie in (0,1]");
    Tensor out = img;
    Philox rng(seed);
    const double read_sigma = 2.0 / 255.0;
    double* d = out.data();
    const int64_t n = out.numel();
    for (int64_t i = 0; i < n; ++i) {
        double v = scale * std::pow(d[i], gamma);
        if (read_noise) v += read_sigma * rng.gaussian();
        d[i] = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

namespace {

void splat_streaks(double* plane, int64_t H, int64_t W, const RainParams& p, Philox& rng) {
    for (int s = 0; s < p.num_streaks; ++s) {
        const double cx = rng.uniform() * static_cast<double>(W - 1);
        const double cy = rng.uniform() * static_cast<double>(H - 1);
        const double jitter = (rng.uniform() - 0.5) * 6.0;  // +/- 3 degrees
        const double ang = (p.angle_deg + jitter) * M_PI / 180.0;
        const double dx = std::cos(ang), dy = std::sin(ang);
        const double half = p.length_px / 2.0;
        for (double t = -half; t <= half; t += 0.5) {
            const double px = cx + t * dx;
            const double py = cy + t * dy;
            const int64_t x0 = static_cast<int64_t>(std::floor(px));
            const int64_t y0 = static_cast<int64_t>(std::floor(py));
            const double fx = px - static_cast<double>(x0);
            const double fy = py - static_cast<double>(y0);
            // bilinear splat, tapered toward the streak ends
            const double taper = 1.0 - std::fabs(t) / (half + 0.5);
            const double a = p.intensity * 0.5 * taper;
            const double w00 = (1 - fx) * (1 - fy), w10 = fx * (1 - fy);
            const double w01 = (1 - fx) * fy, w11 = fx * fy;
            auto put = [&](int64_t x, int64_t y, double w) {
                if (x >= 0 && x < W && y >= 0 && y < H) plane[y * W + x] += a * w;
            };
            put(x0, y0, w00);
            put(x0 + 1, y0, w10);
            put(x0, y0 + 1, w01);
            put(x0 + 1, y0 + 1, w11);
        }
    }
}

}  // namespace

Tensor add_rain(const Tensor& img, const DegradationSpec& spec) {
    check_image(img);
    if (spec.kind != DegradationKind::rain)
        throw std::invalid_argument("add_rain: spec kind is not rain");
    spec.validate();
    const auto& p = std::get<RainParams>(spec.params);
    const bool batched = img.ndim() == 4;
    const int64_t N = batched ? img.dim(0) : 1;
    const int64_t C = batched ? img.dim(1) : img.dim(0);
    const int64_t H = batched ? img.dim(2) : img.dim(1);
    const int64_t W = batched ? img.dim(3) : img.dim(2);

    Tensor out = img;
    for (int64_t n = 0; n < N; ++n) {
        Philox rng(spec.seed, static_cast<uint64_t>(n));
        Tensor streaks({H, W});
        splat_streaks(streaks.data(), H, W, p, rng);
        for (int64_t c = 0; c < C; ++c) {
            double* plane = out.data() + (n * C + c) * H * W;
            const double* sk = streaks.data();
            for (int64_t i = 0; i < H * W; ++i) plane[i] = std::clamp(plane[i] + sk[i], 0.0, 1.0);
        }
    }
    return out;
}

Tensor add_haze(const Tensor& img, const DegradationSpec& spec) {
    check_image(img);
    if (spec.kind != DegradationKind::haze)
        throw std::invalid_argument("add_haze: spec kind is not haze");
    spec.validate();
    const auto& p = std::get<HazeParams>(spec.params);
    const bool batched = img.ndim() == 4;
    const int64_t N = batched ? img.dim(0) : 1;
    const int64_t C = batched ? img.dim(1) : img.dim(0);
    const int64_t H = batched ? img.dim(2) : img.dim(1);
    const int64_t W = batched ? img.dim(3) : img.dim(2);

    Tensor out = img;
    for (int64_t n = 0; n < N; ++n) {
        for (int64_t c = 0; c < C; ++c) {
            double* plane = out.data() + (n * C + c) * H * W;
            for (int64_t y = 0; y < H; ++y) {
                // fixed vertical depth ramp: d(top)=0, d(bottom)=1
                const double depth = H > 1 ? static_cast<double>(y) / static_cast<double>(H - 1) : 0.0;
                const double t = std::exp(-p.beta * depth);
                for (int64_t x = 0; x < W; ++x) {
                    double v = plane[y * W + x] * t + p.airlight * (1.0 - t);
                    plane[y * W + x] = std::clamp(v, 0.0, 1.0);
                }
            }
        }
    }
    return out;
}

Tensor apply_degradation(const Tensor& img, const DegradationSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case DegradationKind::noise:
            return add_gaussian_noise(img, std::get<NoiseParams>(spec.params).sigma, spec.seed);
        case DegradationKind::blur:
            return add_blur(img, std::get<BlurParams>(spec.params).kernel);
        case DegradationKind::lowlight: {
            const auto& p = std::get<LowlightParams>(spec.params);
            return darken(img, p.gamma, p.scale, spec.seed, true);
        }
        case DegradationKind::rain:
            return add_rain(img, spec);
        case DegradationKind::haze:
            return add_haze(img, spec);
    }
    throw std::logic_error("apply_degradation: unhandled kind");
}

Tensor gaussian_kernel(int size, double sigma) {
    if (size < 1 || size % 2 == 0) throw std::invalid_argument("gaussian_kernel: size must be odd");
    if (sigma <= 0.0) throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
    Tensor k({size, size});
    const int r = size / 2;
    double sum = 0.0;
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x) {
            double v = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
            k.at2(y + r, x + r) = v;
            sum += v;
        }
    k.scale(1.0 / sum);
    return k;
}

Tensor box_kernel(int size) {
    if (size < 1 || size % 2 == 0) throw std::invalid_argument("box_kernel: size must be odd");
    return Tensor({size, size}, 1.0 / (size * size));
}

namespace {

json params_to_json(const DegradationSpec& spec) {
    json j;
    switch (spec.kind) {
        case DegradationKind::noise:
            j["sigma"] = std::get<NoiseParams>(spec.params).sigma;
            break;
        case DegradationKind::rain: {
            const auto& p = std::get<RainParams>(spec.params);
            j["num_streaks"] = p.num_streaks;
            j["length_px"] = p.length_px;
            j["angle_deg"] = p.angle_deg;
            j["intensity"] = p.intensity;
            break;
        }
        case DegradationKind::haze: {
            const auto& p = std::get<HazeParams>(spec.params);
            j["beta"] = p.beta;
            j["airlight"] = p.airlight;
            break;
        }
        case DegradationKind::blur: {
            const auto& k = std::get<BlurParams>(spec.params).kernel;
            std::vector<std::vector<double>> rows;
            for (int64_t y = 0; y < k.dim(0); ++y) {
                std::vector<double> row;
                for (int64_t x = 0; x < k.dim(1); ++x) row.push_back(k.at2(y, x));
                rows.push_back(std::move(row));
            }
            j["kernel"] = rows;
            break;
        }
        case DegradationKind::lowlight: {
            const auto& p = std::get<LowlightParams>(spec.params);
            j["gamma"] = p.gamma;
            j["scale"] = p.scale;
            break;
        }
    }
    return j;
}

}  // namespace

void save_manifest(const DatasetManifest& m, const std::string& path) {
    json arr = json::array();
    for (const auto& e : m.entries) {
        json j;
        j["clean_path"] = e.clean_path;
        j["degraded_path"] = e.degraded_path;
        j["kind"] = e.kind;
        j["params"] = json::parse(e.params_json);
        j["seed"] = e.seed;
        arr.push_back(std::move(j));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("manifest: cannot write " + path);
    out << arr.dump(2) << "\n";
}

DatasetManifest load_manifest(const std::string& path, bool validate_files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("manifest: cannot open " + path);
    json arr = json::parse(in);
    if (!arr.is_array()) throw std::runtime_error("manifest: expected a JSON array in " + path);

    DatasetManifest m;
    const std::string stem = fs::path(path).stem().string();
    if (stem.find("val") != std::string::npos) m.split = Split::val;
    else if (stem.find("test") != std::string::npos) m.split = Split::test;

    for (const auto& j : arr) {
        ManifestEntry e;
        e.clean_path = j.at("clean_path").get<std::string>();
        e.degraded_path = j.at("degraded_path").get<std::string>();
        e.kind = j.at("kind").get<std::string>();
        kind_from_name(e.kind);  // validates the name
        e.params_json = j.at("params").dump();
        e.seed = j.at("seed").get<uint64_t>();
        if (validate_files) {
            if (!fs::exists(e.clean_path))
                throw std::runtime_error("manifest: missing clean file " + e.clean_path);
            if (!fs::exists(e.degraded_path))
                throw std::runtime_error("manifest: missing degraded file " + e.degraded_path);
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

DegradationSpec DegradationSampler::sample(DegradationKind kind, Philox& rng,
                                           uint64_t spec_seed) const {
    DegradationSpec spec;
    spec.kind = kind;
    spec.seed = spec_seed;
    auto span = [&rng](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    switch (kind) {
        case DegradationKind::noise: {
            NoiseParams p;
            p.sigma = noise_sigmas.at(static_cast<size_t>(
                rng.uniform_int(static_cast<int64_t>(noise_sigmas.size()))));
            spec.params = p;
            break;
        }
        case DegradationKind::blur: {
            BlurParams p;
            p.kernel = gaussian_kernel(blur_kernel_size, span(blur_sigma_min, blur_sigma_max));
            spec.params = p;
            break;
        }
        case DegradationKind::lowlight: {
            LowlightParams p;
            p.gamma = span(lowlight_gamma_min, lowlight_gamma_max);
            p.scale = span(lowlight_scale_min, lowlight_scale_max);
            spec.params = p;
            break;
        }
        case DegradationKind::haze: {
            HazeParams p;
            p.beta = span(haze_beta_min, haze_beta_max);
            p.airlight = span(haze_airlight_min, haze_airlight_max);
            spec.params = p;
            break;
        }
        case DegradationKind::rain: {
            RainParams p;
            p.num_streaks =
                rain_streaks_min +
                static_cast<int>(rng.uniform_int(rain_streaks_max - rain_streaks_min + 1));
            p.angle_deg = span(rain_angle_min, rain_angle_max);
            spec.params = p;
            break;
        }
    }
    return spec;
}

DatasetManifest make_dataset(const std::string& clean_dir,
                             const std::vector<DegradationKind>& kinds, int per_kind,
                             uint64_t seed, const std::string& out_dir, Split split,
                             const DegradationSampler& sampler) {
    if (per_kind < 0) throw std::invalid_argument("make_dataset: per_kind must be >= 0");
    std::vector<std::string> clean_files;
    if (fs::exists(clean_dir))
        for (const auto& ent : fs::directory_iterator(clean_dir))
            if (ent.path().extension() == ".png") clean_files.push_back(ent.path().string());
    std::sort(clean_files.begin(), clean_files.end());
    if (clean_files.empty())
        throw std::runtime_error("make_dataset: no PNG images in " + clean_dir);

    DatasetManifest m;
    m.split = split;
    if (per_kind == 0) return m;

    const std::string degraded_dir = (fs::path(out_dir) / "degraded").string();
    std::error_code ec;
    fs::create_directories(degraded_dir, ec);
    if (!fs::exists(degraded_dir))
        throw std::runtime_error("make_dataset: cannot create " + degraded_dir);

    uint64_t idx = 0;
    for (DegradationKind kind : kinds) {
        for (int i = 0; i < per_kind; ++i, ++idx) {
            Philox rng(seed, idx);
            const auto& clean_path =
                clean_files[static_cast<size_t>(rng.uniform_int(
                    static_cast<int64_t>(clean_files.size())))];
            const uint64_t spec_seed = rng.next_u64();
            DegradationSpec spec = sampler.sample(kind, rng, spec_seed);

            Tensor clean = read_png(clean_path);
            Tensor degraded = apply_degradation(clean, spec);

            const std::string stem = fs::path(clean_path).stem().string();
            const std::string out_name = std::string(kind_name(kind)) + "_" +
                                         std::to_string(i) + "_" + stem + ".png";
            const std::string out_path = (fs::path(degraded_dir) / out_name).string();
            write_png(out_path, degraded);

            ManifestEntry e;
            e.clean_path = clean_path;
            e.degraded_path = out_path;
            e.kind = kind_name(kind);
            e.params_json = params_to_json(spec).dump();
            e.seed = spec_seed;
            m.entries.push_back(std::move(e));
        }
    }
    return m;
}

}  // namespace dod
