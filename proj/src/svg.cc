// Copyright 2026 The magicflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "magicflow/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace magicflow {

namespace {

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Axis {
    bool log = false;
    double lo = 0;
    double hi = 1;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0); }
    double map(double v) const { return log ? std::log10(v) : v; }

    void fit(const std::vector<double> &values) {
        double a = std::numeric_limits<double>::infinity();
        double b = -a;
        for (double v : values) {
            a = std::min(a, map(v));
            b = std::max(b, map(v));
        }
        if (!std::isfinite(a)) {
            a = 0;
            b = 1;
        }
        if (b - a < 1e-12) {
            a -= 0.5;
            b += 0.5;
        }
        double pad = log ? 0.0 : 0.04 * (b - a);
        lo = a - pad;
        hi = b + pad;
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1) {
                out.push_back(std::pow(10.0, e));
            }
            return out;
        }
        double span = hi - lo;
        double raw = span / 6;
        double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
            out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
        }
        return out;
    }
};

}  // namespace

std::string render_svg(const PlotSpec &spec, const std::vector<PlotSeries> &series) {
    const double left = 70, right = 170, top = 40, bottom = 55;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;

    Axis ax{spec.log_x};
    Axis ay{spec.log_y};
    std::vector<double> xs, ys;
    for (const PlotSeries &s : series) {
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); i++) {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) {
                continue;
            }
            xs.push_back(s.x[i]);
            ys.push_back(s.y[i]);
            if (i < s.err.size() && std::isfinite(s.err[i])) {
                if (ay.usable(s.y[i] - s.err[i])) {
                    ys.push_back(s.y[i] - s.err[i]);
                }
                ys.push_back(s.y[i] + s.err[i]);
            }
        }
    }
    ax.fit(xs);
    ay.fit(ys);
    auto px = [&](double v) { return left + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return top + ph - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string o;
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    if (!spec.metadata.empty()) {
        o += "<metadata>" + escape(spec.metadata) + "</metadata>\n";
    }
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + num(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(spec.title) + "</text>\n";
    o += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ax.ticks()) {
        double x = px(t);
        o += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(top + ph + 5) + "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" +
             tick_label(t) + "</text>\n";
    }
    for (double t : ay.ticks()) {
        double y = py(t);
        o += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y) +
             "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
             "</text>\n";
    }
    o += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(spec.height - 12.0) + "\" text-anchor=\"middle\">" +
         escape(spec.x_label) + "</text>\n";
    o += "<text transform=\"translate(18," + num(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(spec.y_label) + "</text>\n";

    for (size_t k = 0; k < series.size(); k++) {
        const PlotSeries &s = series[k];
        std::string color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); i++) {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) {
                continue;
            }
            double x = px(s.x[i]);
            double y = py(s.y[i]);
            if (i < s.err.size() && std::isfinite(s.err[i]) && s.err[i] > 0) {
                double lo = s.y[i] - s.err[i];
                double y_lo = ay.usable(lo) ? py(lo) : top + ph;
                o += "<line x1=\"" + num(x) + "\" y1=\"" + num(y_lo) + "\" x2=\"" + num(x) + "\" y2=\"" +
                     num(py(s.y[i] + s.err[i])) + "\" stroke=\"" + color + "\" stroke-opacity=\"0.5\"/>\n";
            }
            if (s.markers) {
                o += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
            } else {
                points += num(x) + "," + num(y) + " ";
            }
        }
        if (!points.empty()) {
            points.pop_back();
            o += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points +
                 "\"/>\n";
        }
        double ly = top + 14 + 18.0 * static_cast<double>(k);
        o += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(left + pw + 32) +
             "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        o += "<text x=\"" + num(left + pw + 38) + "\" y=\"" + num(ly) + "\">" + escape(s.label) + "</text>\n";
    }
    o += "</svg>\n";
    return o;
}

}  // namespace magicflow
