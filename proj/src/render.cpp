#include "vekua/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace vekua {

namespace {

struct Rgb {
    std::uint8_t r, g, b;
};

// Palette entry i (0..255): blue at 0, white at 128, red at 255, linear in
// between.
Rgb palette(std::size_t i) {
    const double t = static_cast<double>(i) / 255.0;
    auto u8 = [](double v) {
        return static_cast<std::uint8_t>(std::lround(255.0 * v));
    };
    if (t <= 0.5) {
        const double s = 2.0 * t;
        return {u8(s), u8(s), 255};
    }
    const double s = 2.0 * (t - 0.5);
    return {255, u8(1.0 - s), u8(1.0 - s)};
}

void write_ppm(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<std::uint8_t>& rgb) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P6\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(rgb.data()),
              static_cast<std::streamsize>(rgb.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Min-max normalization; a constant field maps to the palette midpoint.
std::size_t palette_index(double v, double lo, double hi) {
    if (hi <= lo) return 128;
    double t = (v - lo) / (hi - lo);
    t = std::clamp(t, 0.0, 1.0);
    return static_cast<std::size_t>(std::lround(t * 255.0));
}

} // namespace

void render_heatmap(const std::string& path, std::size_t resolution,
                    const std::vector<double>& values) {
    if (values.size() != resolution * resolution)
        throw DimensionMismatch("render_heatmap: values != resolution^2");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<std::uint8_t> rgb(resolution * resolution * 3);
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        // Grid row 0 is the bottom of the field; image row 0 is the top.
        const std::size_t img_row = resolution - 1 - iy;
        for (std::size_t ix = 0; ix < resolution; ++ix) {
            const Rgb c =
                palette(palette_index(values[iy * resolution + ix], lo, hi));
            std::uint8_t* px = rgb.data() + (img_row * resolution + ix) * 3;
            px[0] = c.r;
            px[1] = c.g;
            px[2] = c.b;
        }
    }
    write_ppm(path, resolution, resolution, rgb);
}

void render_polyline(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& values) {
    if (xs.size() != values.size() || xs.empty())
        throw DimensionMismatch("render_polyline: xs/values mismatch");
    constexpr std::size_t kWidth = 512, kHeight = 256;
    std::vector<std::uint8_t> rgb(kWidth * kHeight * 3, 255);

    double xlo = xs[0], xhi = xs[0], ylo = values[0], yhi = values[0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xlo = std::min(xlo, xs[i]);
        xhi = std::max(xhi, xs[i]);
        ylo = std::min(ylo, values[i]);
        yhi = std::max(yhi, values[i]);
    }
    const double xspan = xhi > xlo ? xhi - xlo : 1.0;
    const double yspan = yhi > ylo ? yhi - ylo : 1.0;

    auto to_px = [&](double x, double y, long& px, long& py) {
        px = std::lround((x - xlo) / xspan * (kWidth - 1));
        py = std::lround((1.0 - (y - ylo) / yspan) * (kHeight - 1));
    };
    auto put = [&](long px, long py) {
        if (px < 0 || py < 0 || px >= static_cast<long>(kWidth) ||
            py >= static_cast<long>(kHeight))
            return;
        std::uint8_t* p = rgb.data() + (py * kWidth + px) * 3;
        p[0] = p[1] = p[2] = 0;
    };
    // Bresenham segments between consecutive samples.
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        long x0, y0, x1, y1;
        to_px(xs[i], values[i], x0, y0);
        to_px(xs[i + 1], values[i + 1], x1, y1);
        const long dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        const long dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        long err = dx + dy;
        for (;;) {
            put(x0, y0);
            if (x0 == x1 && y0 == y1) break;
            const long e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }
    write_ppm(path, kWidth, kHeight, rgb);
}

} // namespace vekua
