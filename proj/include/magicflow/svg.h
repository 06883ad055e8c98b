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

#ifndef MAGICFLOW_SVG_H
#define MAGICFLOW_SVG_H

#include <string>
#include <vector>

namespace magicflow {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    /// Optional symmetric error band; empty or same length as y.
    std::vector<double> err;
    /// Draw markers instead of a line.
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    /// Embedded verbatim (escaped) in a <metadata> element.
    std::string metadata;
    int width = 720;
    int height = 480;
};

/// Self-contained SVG line plot. Points with non-finite coordinates, or
/// non-positive ones on a log axis, are skipped.
std::string render_svg(const PlotSpec &spec, const std::vector<PlotSeries> &series);

}  // namespace magicflow

#endif
