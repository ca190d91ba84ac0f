#include "xps/harness/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xps::harness {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ensure_parent_dir(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

std::string trajectory_to_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "step,tau,t";
    for (const auto& label : traj.state_labels) out << ',' << label;
    out << ",invariant,evals\n";
    for (const auto& row : traj.rows) {
        out << row.step << ',' << fmt(row.tau) << ',' << fmt(row.t);
        for (double v : row.state) out << ',' << fmt(v);
        out << ',' << fmt(row.invariant) << ',' << row.evals << '\n';
    }
    return out.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    ensure_parent_dir(path);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << trajectory_to_csv(traj);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    Trajectory traj;
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty CSV: " + path);

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 5 || header[0] != "step")
        throw std::runtime_error("unrecognized trajectory CSV header: " + path);
    traj.state_labels.assign(header.begin() + 3, header.end() - 2);

    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size())
            throw std::runtime_error("ragged trajectory CSV row: " + path);
        TrajectoryRow row;
        row.step = std::stol(cells[0]);
        row.tau = std::stod(cells[1]);
        row.t = std::stod(cells[2]);
        for (std::size_t i = 3; i + 2 < cells.size(); ++i) row.state.push_back(std::stod(cells[i]));
        row.invariant = std::stod(cells[cells.size() - 2]);
        row.evals = std::stoull(cells.back());
        traj.rows.push_back(std::move(row));
    }
    return traj;
}

std::string summary_to_json(const RunSummary& summary) {
    nlohmann::json j;
    j["problem"] = summary.problem;
    j["method"] = summary.method;
    j["n_steps"] = summary.n_steps;
    j["h"] = summary.h;
    j["duration"] = summary.duration;
    j["evaluations"] = summary.evaluations;
    j["max_abs_dH"] = summary.max_abs_dH;
    j["max_abs_err"] = summary.max_abs_err;
    j["final_err"] = summary.final_err;
    j["final_state"] = summary.final_state;
    j["diverged"] = summary.diverged;
    j["diagnostic"] = summary.diagnostic;
    return j.dump(2) + "\n";
}

void write_summary_json(const std::string& path, const RunSummary& summary) {
    ensure_parent_dir(path);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << summary_to_json(summary);
}

}  // namespace xps::harness
