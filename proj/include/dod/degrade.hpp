#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dod/rng.hpp"
#include "dod/tensor.hpp"

namespace dod {

enum class DegradationKind { noise, rain, haze, blur, lowlight };

const char* kind_name(DegradationKind k);
DegradationKind kind_from_name(const std::string& name);

struct NoiseParams {
    double sigma = 25.0;  // 8-bit units
};

struct RainParams {
    int num_streaks = 80;
    double length_px = 9.0;
    double angle_deg = 70.0;
    double intensity = 0.35;
};

struct HazeParams {
    double beta = 1.2;
    double airlight = 0.85;  // in [0,1]
};

struct BlurParams {
    Tensor kernel;  // [kh,kw], nonnegative, sums to 1, odd extent
};

struct LowlightParams {
    double gamma = 2.0;   // >= 1
    double scale = 0.4;   // in (0,1]
};

using DegradationParams =
    std::variant<NoiseParams, RainParams, HazeParams, BlurParams, LowlightParams>;

struct DegradationSpec {
    DegradationKind kind = DegradationKind::noise;
    DegradationParams params = NoiseParams{};
    uint64_t seed = 0;

    void validate() const;
};

// Pixel-space degradation generators. All take [C,H,W] or [N,C,H,W] tensors in
// [0,1], preserve shape, and clip the result back to [0,1]. Identical
// (params, seed, input) triples give bit-identical outputs.
Tensor add_gaussian_noise(const Tensor& img, double sigma, uint64_t seed);
Tensor add_blur(const Tensor& img, const Tensor& kernel);
Tensor darken(const Tensor& img, double gamma, double scale, uint64_t seed,
              bool read_noise = true);
Tensor add_rain(const Tensor& img, const DegradationSpec& spec);
Tensor add_haze(const Tensor& img, const DegradationSpec& spec);

Tensor apply_degradation(const Tensor& img, const DegradationSpec& spec);

// Normalized odd-sized Gaussian kernel (sums to 1).
Tensor gaussian_kernel(int size, double sigma);
// Uniform box kernel of odd size.
Tensor box_kernel(int size);

struct ManifestEntry {
    std::string clean_path;
    std::string degraded_path;
    std::string kind;
    std::string params_json;  // kind-specific params as canonical JSON text
    uint64_t seed = 0;
};

enum class Split { train, val, test };
const char* split_name(Split s);

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    Split split = Split::train;
};

// Serialized form is a JSON array of entry objects; the split lives in the
// manifest filename (manifest_<split>.json).
void save_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest load_manifest(const std::string& path, bool validate_files = true);

// Per-kind parameter choices used when synthesizing a dataset. Values are
// repo-chosen (the source paper only fixes noise sigma levels); every field is
// exposed in the config file.
struct DegradationSampler {
    std::vector<double> noise_sigmas = {15.0, 25.0, 50.0};
    int blur_kernel_size = 5;
    double blur_sigma_min = 0.8, blur_sigma_max = 1.6;
    double lowlight_gamma_min = 1.6, lowlight_gamma_max = 2.4;
    double lowlight_scale_min = 0.3, lowlight_scale_max = 0.6;
    double haze_beta_min = 0.8, haze_beta_max = 2.0;
    double haze_airlight_min = 0.75, haze_airlight_max = 0.95;
    int rain_streaks_min = 50, rain_streaks_max = 120;
    double rain_angle_min = 60.0, rain_angle_max = 80.0;

    DegradationSpec sample(DegradationKind kind, Philox& rng, uint64_t spec_seed) const;
};

// Builds a balanced degraded dataset from the PNGs in clean_dir: per_kind
// entries per kind, degraded images written under out_dir/degraded, manifest
// returned (not yet saved). Deterministic under seed.
DatasetManifest make_dataset(const std::string& clean_dir, const std::vector<DegradationKind>& kinds,
                             int per_kind, uint64_t seed, const std::string& out_dir,
                             Split split = Split::train,
                             const DegradationSampler& sampler = DegradationSampler{});

}  // namespace dod
