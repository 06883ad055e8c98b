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

#include "magicflow/output.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace magicflow {

namespace {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

Json config_to_json(const ExperimentConfig &config) {
    Json j;
    j["n"] = config.n;
    j["theta_m"] = config.theta_m;
    j["steps"] = config.steps;
    j["trajectories"] = config.trajectories;
    j["initial"] = to_string(config.initial);
    j["gue_time"] = config.gue_time;
    j["master_seed"] = config.master_seed;
    j["schedule"] = config.schedule.str();
    j["observables"] = config.observables.names();
    j["cut"] = config.effective_cut();
    j["nullity_tolerance"] = config.nullity_tolerance;
    j["workers"] = config.workers;
    return j;
}

ExperimentConfig config_from_json(const Json &j) {
    ExperimentConfig c;
    c.n = j.at("n").get<int>();
    c.theta_m = j.at("theta_m").get<double>();
    c.steps = j.at("steps").get<int>();
    c.trajectories = j.at("trajectories").get<int>();
    c.initial = parse_initial_state(j.at("initial").get<std::string>());
    c.gue_time = j.value("gue_time", c.gue_time);
    c.master_seed = j.at("master_seed").get<uint64_t>();
    c.schedule = Schedule::parse(j.at("schedule").get<std::string>());
    std::string obs;
    for (const auto &name : j.at("observables")) {
        if (!obs.empty()) {
            obs += ",";
        }
        obs += name.get<std::string>();
    }
    c.observables = ObservableSet::parse(obs);
    c.observables.cut = j.value("cut", 0);
    c.nullity_tolerance = j.value("nullity_tolerance", c.nullity_tolerance);
    c.workers = j.value("workers", c.workers);
    return c;
}

Provenance make_provenance(uint64_t seed, double wall_time_seconds) {
    return {seed, MAGICFLOW_VERSION, wall_time_seconds};
}

Json record_to_json(const TrajectoryRecord &record, const std::vector<std::string> &observables) {
    Json r;
    r["index"] = record.index;
    r["seed"] = record.seed;
    Json steps = Json::array();
    Json outcomes = Json::array();
    for (const Checkpoint &c : record.checkpoints) {
        steps.push_back(c.step);
        outcomes.push_back(c.outcome);
    }
    r["step"] = steps;
    r["outcome"] = outcomes;
    Json values = Json::object();
    for (size_t k = 0; k < observables.size(); k++) {
        Json col = Json::array();
        for (const Checkpoint &c : record.checkpoints) {
            col.push_back(c.values.at(k));
        }
        values[observables[k]] = col;
    }
    r["values"] = values;
    return r;
}

Json summary_bundle(const ExperimentConfig &config, const EnsembleSummary &summary,
                    const std::vector<TrajectoryRecord> *records, const Provenance &provenance) {
    Json b;
    b["config"] = config_to_json(config);
    b["trajectories"] = summary.trajectories;
    Json arrays;
    arrays["step"] = summary.steps;
    Json obs = Json::object();
    for (size_t k = 0; k < summary.observables.size(); k++) {
        Json mean = Json::array();
        Json std = Json::array();
        Json err = Json::array();
        for (const Stats &s : summary.stats[k]) {
            mean.push_back(s.mean);
            std.push_back(s.std);
            err.push_back(s.stderr_);
        }
        obs[summary.observables[k]] = {{"mean", mean}, {"std", std}, {"stderr", err}};
    }
    arrays["observables"] = obs;
    b["arrays"] = arrays;
    if (records != nullptr) {
        Json rs = Json::array();
        for (const TrajectoryRecord &r : *records) {
            rs.push_back(record_to_json(r, summary.observables));
        }
        b["records"] = rs;
    }
    b["provenance"] = {{"seed", provenance.seed},
                       {"version", provenance.version},
                       {"wall_time_seconds", provenance.wall_time_seconds}};
    return b;
}

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match the column count");
    }
    rows.push_back(std::move(row));
}

Table summary_table(const EnsembleSummary &summary) {
    Table t;
    t.columns.push_back("step");
    for (const std::string &name : summary.observables) {
        t.columns.push_back(name + "_mean");
        t.columns.push_back(name + "_std");
        t.columns.push_back(name + "_stderr");
    }
    for (size_t c = 0; c < summary.steps.size(); c++) {
        std::vector<double> row = {static_cast<double>(summary.steps[c])};
        for (size_t k = 0; k < summary.observables.size(); k++) {
            const Stats &s = summary.stats[k][c];
            row.push_back(s.mean);
            row.push_back(s.std);
            row.push_back(s.stderr_);
        }
        t.add_row(std::move(row));
    }
    return t;
}

std::string csv_string(const Table &table, const Json &config) {
    std::string out = "# config: " + config.dump() + "\n";
    for (size_t i = 0; i < table.columns.size(); i++) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += "\n";
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out += (i ? "," : "") + format_number(row[i]);
        }
        out += "\n";
    }
    return out;
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace magicflow
