#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "coamoeba/cli.hpp"

namespace coamoeba::cli {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 56.0;
constexpr double kPlot = 460.0;
constexpr double kStrokePerWeight = 4.0;

struct Point2 {
    double x, y;
};

Point2 to_screen(double y1, double y2) {
    return {kMargin + y1 / kTwoPi * kPlot, kMargin + (1.0 - y2 / kTwoPi) * kPlot};
}

std::string pi_label(int quarter) {
    static const char* labels[] = {"0", "π/2", "π", "3π/2", "2π"};
    return labels[quarter];
}

// Pieces of {p y1 + q y2 = c} inside the square [0, 2pi]^2 for every
// c = b + 2 pi k.
std::vector<std::pair<Point2, Point2>> clip_family(Int p, Int q, double b) {
    const double dp = static_cast<double>(p), dq = static_cast<double>(q);
    const double corners[4] = {0.0, dp * kTwoPi, dq * kTwoPi, (dp + dq) * kTwoPi};
    const double lo = *std::min_element(corners, corners + 4), hi = *std::max_element(corners, corners + 4);
    std::vector<std::pair<Point2, Point2>> out;
    for (auto k = static_cast<long>(std::floor((lo - b) / kTwoPi)); b + kTwoPi * static_cast<double>(k) <= hi + 1e-12;
         ++k) {
        const double c = b + kTwoPi * static_cast<double>(k);
        std::vector<Point2> hits;
        auto add = [&](double y1, double y2) {
            if (y1 < -1e-12 || y1 > kTwoPi + 1e-12 || y2 < -1e-12 || y2 > kTwoPi + 1e-12)
                return;
            for (const auto& h : hits)
                if (std::hypot(h.x - y1, h.y - y2) < 1e-9)
                    return;
            hits.push_back({y1, y2});
        };
        if (q != 0) {
            add(0.0, c / dq);
            add(kTwoPi, (c - dp * kTwoPi) / dq);
        }
        if (p != 0) {
            add(c / dp, 0.0);
            add((c - dq * kTwoPi) / dp, kTwoPi);
        }
        if (hits.size() < 2)
            continue;
        std::pair<Point2, Point2> best{hits[0], hits[1]};
        double len = -1.0;
        for (std::size_t i = 0; i < hits.size(); ++i)
            for (std::size_t j = i + 1; j < hits.size(); ++j) {
                const double d = std::hypot(hits[i].x - hits[j].x, hits[i].y - hits[j].y);
                if (d > len) {
                    len = d;
                    best = {hits[i], hits[j]};
                }
            }
        if (len > 1e-9)
            out.push_back(best);
    }
    return out;
}

}  // namespace

std::string render_svg(const ShellArrangement& sh, const IntersectionSet* vertices, const SampleCloud* cloud) {
    if (sh.n != 2)
        throw InputError("unsupported: plots need n = 2");

    const auto groups = sh.coinciding_groups();
    std::vector<double> family_weight;
    for (const auto& g : groups) {
        double w = 0.0;
        for (auto i : g)
            w += sh.planes[i].weight;
        family_weight.push_back(w);
    }
    const double legend_h = 18.0 * static_cast<double>(sh.planes.size());
    const double height = kMargin + kPlot + 48.0 + legend_h + 16.0;
    std::ostringstream os;
    os << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)",
                      kSize, height, kSize, height)
       << "\n";
    os << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n";
    os << fmt::format(R"(<rect class="frame" x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="black"/>)",
                      kMargin, kMargin, kPlot, kPlot)
       << "\n";

    for (int k = 0; k <= 4; ++k) {
        const double t = kTwoPi * k / 4.0;
        const Point2 bx = to_screen(t, 0.0), ly = to_screen(0.0, t);
        os << fmt::format(R"(<line class="tick" x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="black"/>)", bx.x,
                          bx.y, bx.x, bx.y + 5.0)
           << "\n";
        os << fmt::format(R"(<text class="tick-label" x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle">{}</text>)",
                          bx.x, bx.y + 20.0, pi_label(k))
           << "\n";
        os << fmt::format(R"(<line class="tick" x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="black"/>)", ly.x - 5.0,
                          ly.y, ly.x, ly.y)
           << "\n";
        os << fmt::format(R"(<text class="tick-label" x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="end">{}</text>)",
                          ly.x - 8.0, ly.y + 4.0, pi_label(k))
           << "\n";
    }
    const Point2 xl = to_screen(kPi, 0.0), yl = to_screen(0.0, kPi);
    os << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="13" text-anchor="middle">θ₁</text>)", xl.x, xl.y + 38.0)
       << "\n";
    os << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="13" text-anchor="middle">θ₂</text>)", yl.x - 42.0, yl.y)
       << "\n";

    if (cloud) {
        os << R"(<g class="cloud" fill="#7a9cc6" fill-opacity="0.5">)" << "\n";
        for (const auto& p : cloud->points) {
            const Point2 s = to_screen(p.y1, p.y2);
            os << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="0.8"/>)", s.x, s.y) << "\n";
        }
        os << "</g>\n";
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& h = sh.planes[groups[g].front()];
        const double stroke = std::max(0.5, kStrokePerWeight * family_weight[g]);
        os << fmt::format(R"(<g class="shell-family" data-family="{}" data-weight="{:.12g}" stroke="#b03030" stroke-width="{:.3f}">)",
                          g, family_weight[g], stroke)
           << "\n";
        for (const auto& [a, b] : clip_family(h.beta[0], h.beta[1], h.b)) {
            const Point2 sa = to_screen(a.x, a.y), sb = to_screen(b.x, b.y);
            os << fmt::format(R"(<line class="shell-line" x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}"/>)", sa.x, sa.y,
                              sb.x, sb.y)
               << "\n";
        }
        os << "</g>\n";
    }

    if (vertices) {
        for (const auto& p : vertices->points) {
            const Point2 s = to_screen(p.y[0], p.y[1]);
            os << fmt::format(R"(<circle class="vertex" data-mult="{}" cx="{:.2f}" cy="{:.2f}" r="3.5" fill="black"/>)",
                              p.mult, s.x, s.y)
               << "\n";
            os << fmt::format(R"(<text class="vertex-label" x="{:.2f}" y="{:.2f}" font-size="11">{}</text>)", s.x + 5.0,
                              s.y - 5.0, p.mult)
               << "\n";
        }
    }

    double y = kMargin + kPlot + 56.0;
    os << R"(<g class="legend" font-size="12" font-family="monospace">)" << "\n";
    for (const auto& h : sh.planes) {
        os << fmt::format(R"(<text class="legend-entry" x="{:.2f}" y="{:.2f}">β={} b={:.6g} ({:.6g}π) d={} γ={:.6g} w={:.6g}</text>)",
                          kMargin, y, format_vector(h.beta), h.b, h.b / kPi, h.mult, h.gamma, h.weight)
           << "\n";
        y += 18.0;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace coamoeba::cli
