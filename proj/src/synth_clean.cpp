#include "dod/synth_clean.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "dod/png_io.hpp"
#include "dod/rng.hpp"

namespace fs = std::filesystem;

namespace dod {

namespace {

double smoothstep(double e0, double e1, double x) {
    double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

}  // namespace

Tensor make_clean_image(uint64_t seed, int size) {
    Philox rng(seed);
    const int64_t S = size;
    Tensor img({3, S, S});

    // two-color linear gradient background
    double c0[3], c1[3];
    for (int c = 0; c < 3; ++c) {
        c0[c] = 0.15 + 0.5 * rng.uniform();
        c1[c] = 0.25 + 0.6 * rng.uniform();
    }
    const double ang = rng.uniform() * 2.0 * M_PI;
    const double gx = std::cos(ang), gy = std::sin(ang);
    for (int64_t y = 0; y < S; ++y)
        for (int64_t x = 0; x < S; ++x) {
            const double u = 0.5 + 0.5 * ((x / double(S - 1) - 0.5) * gx +
                                          (y / double(S - 1) - 0.5) * gy) * 2.0;
            for (int64_t c = 0; c < 3; ++c)
                img.at(0, c, y, x) = c0[c] * (1.0 - u) + c1[c] * u;
        }

    // low-frequency wave overlay
    const double wf = 1.0 + 2.0 * rng.uniform();
    const double wp = rng.uniform() * 2.0 * M_PI;
    const double wamp = 0.04 + 0.05 * rng.uniform();
    const double wang = rng.uniform() * 2.0 * M_PI;
    const double wx = std::cos(wang), wy = std::sin(wang);
    for (int64_t y = 0; y < S; ++y)
        for (int64_t x = 0; x < S; ++x) {
            const double ph = (x * wx + y * wy) / double(S) * 2.0 * M_PI * wf + wp;
            const double dv = wamp * std::sin(ph);
            for (int64_t c = 0; c < 3; ++c) img.at(0, c, y, x) += dv;
        }

    // soft-edged shapes: circles and boxes
    const int n_shapes = 2 + static_cast<int>(rng.uniform_int(3));
    for (int s = 0; s < n_shapes; ++s) {
        const bool circle = rng.uniform() < 0.6;
        const double cx = rng.uniform() * (S - 1);
        const double cy = rng.uniform() * (S - 1);
        const double r = (0.08 + 0.17 * rng.uniform()) * S;
        const double edge = 1.0 + 1.5 * rng.uniform();
        double col[3];
        for (int c = 0; c < 3; ++c) col[c] = 0.1 + 0.8 * rng.uniform();
        const double rot = rng.uniform() * M_PI;
        const double ca = std::cos(rot), sa = std::sin(rot);
        const double ar = 0.5 + rng.uniform();  // box aspect
        for (int64_t y = 0; y < S; ++y)
            for (int64_t x = 0; x < S; ++x) {
                double a;
                if (circle) {
                    const double d = std::hypot(x - cx, y - cy);
                    a = 1.0 - smoothstep(r - edge, r + edge, d);
                } else {
                    const double rx = (x - cx) * ca - (y - cy) * sa;
                    const double ry = (x - cx) * sa + (y - cy) * ca;
                    const double dx = std::fabs(rx) - r;
                    const double dy = std::fabs(ry) - r * ar;
                    const double d = std::max(dx, dy);
                    a = 1.0 - smoothstep(-edge, edge, d);
                }
                if (a <= 0.0) continue;
                for (int64_t c = 0; c < 3; ++c) {
                    double& v = img.at(0, c, y, x);
                    v = v * (1.0 - 0.9 * a) + col[c] * 0.9 * a;
                }
            }
    }

    img.clamp_(0.02, 0.98);
    return img;
}

std::string synth_clean_dir(const std::string& dir, int count, int size, uint64_t seed) {
    fs::create_directories(dir);
    char name[64];
    for (int i = 0; i < count; ++i) {
        Tensor img = make_clean_image(seed + static_cast<uint64_t>(i) * 7919u, size);
        std::snprintf(name, sizeof(name), "clean_%04d.png", i);
        write_png((fs::path(dir) / name).string(), img);
    }
    return dir;
}

}  // namespace dod
