#include "degenpde/report.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace degenpde {

namespace {

std::ofstream openOut(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("report: cannot write '" + path + "'");
    out << std::setprecision(17);
    return out;
}

std::string faceKindName(FaceKind kind) {
    switch (kind) {
        case FaceKind::Top: return "top";
        case FaceKind::Side: return "side";
        case FaceKind::Corner: return "corner";
    }
    return "?";
}

} // namespace

void write_partition_csv(const std::string& path, const BoundaryPartition& partition) {
    auto out = openOut(path);
    out << "face_id,kind,axis,side,fixed,n0,normal,degenerate,truncation\n";
    for (const auto& face : partition.faces) {
        out << face.id << ',' << faceKindName(face.kind) << ',' << face.axis << ','
            << face.side << ',' << face.fixed << ',' << face.n0 << ',';
        for (size_t i = 0; i < face.nvec.size(); ++i)
            out << (i ? ";" : "") << face.nvec[i];
        out << ',' << (face.degenerate ? 1 : 0) << ',' << (face.truncation ? 1 : 0)
            << '\n';
    }
}

void write_sigma_csv(const std::string& path, const SigmaPartition& partition) {
    auto out = openOut(path);
    out << "face_id,class,sample_t,sample_x,fb\n";
    for (const auto& face : partition.faces) {
        for (const auto& sample : face.samples) {
            out << face.face_id << ',' << to_string(face.sigma_class) << ','
                << sample.point.t << ',';
            for (size_t i = 0; i < sample.point.x.size(); ++i)
                out << (i ? ";" : "") << sample.point.x[i];
            out << ',' << sample.fb << '\n';
        }
    }
}

void write_beta_json(const std::string& path, const BetaReport& report) {
    nlohmann::json j;
    j["beta"] = report.beta;
    j["fb_floor"] = report.fb_floor;
    j["dirichlet_locus_fichera"] = report.dirichlet_locus_fichera;
    j["dirichlet_locus_partial_data"] = report.dirichlet_locus_partial_data;
    j["loci_agree"] = report.loci_agree;
    auto out = openOut(path);
    out << j.dump(2) << '\n';
}

void write_solution_csv(const std::string& path, const Grid& grid,
                        const Trajectory& u) {
    auto out = openOut(path);
    out << "level,t,node";
    for (int ax = 0; ax < grid.dim(); ++ax) out << ",x" << ax + 1;
    out << ",value\n";
    for (int level = 0; level <= grid.nt; ++level) {
        for (int flat = 0; flat < grid.num_nodes(); ++flat) {
            if (!grid.active[static_cast<size_t>(flat)]) continue;
            out << level << ',' << grid.time(level) << ',' << flat;
            for (double x : grid.coords(flat)) out << ',' << x;
            out << ',' << u[static_cast<size_t>(level)][static_cast<size_t>(flat)]
                << '\n';
        }
    }
}

void write_exercise_csv(const std::string& path, const Grid& grid,
                        const std::vector<std::vector<char>>& exercise) {
    auto out = openOut(path);
    out << "level,t,node";
    for (int ax = 0; ax < grid.dim(); ++ax) out << ",x" << ax + 1;
    out << ",exercised\n";
    for (int level = 0; level <= grid.nt; ++level) {
        for (int flat = 0; flat < grid.num_nodes(); ++flat) {
            if (!grid.active[static_cast<size_t>(flat)]) continue;
            out << level << ',' << grid.time(level) << ',' << flat;
            for (double x : grid.coords(flat)) out << ',' << x;
            out << ','
                << static_cast<int>(
                       exercise[static_cast<size_t>(level)][static_cast<size_t>(flat)])
                << '\n';
        }
    }
}

void write_report_json(const std::string& path, const VerificationReport& report) {
    nlohmann::json j;
    j["summary"] = report.summary;
    j["monotone"] = report.monotone;
    j["runtime_seconds"] = report.runtime_seconds;
    j["passed"] = report.passed();
    j["failed"] = report.failed();
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : report.verdicts) {
        nlohmann::json vj;
        vj["property"] = v.property_ref;
        vj["instance"] = v.instance;
        vj["pass"] = v.pass;
        vj["inconclusive"] = v.inconclusive;
        vj["violation"] = v.violation;
        vj["tolerance"] = v.tolerance;
        vj["witness"] = {{"level", v.witness.level},
                         {"node", v.witness.node},
                         {"t", v.witness.point.t},
                         {"x", v.witness.point.x},
                         {"value", v.witness.value},
                         {"note", v.witness.note}};
        verdicts.push_back(std::move(vj));
    }
    j["verdicts"] = std::move(verdicts);
    auto out = openOut(path);
    out << j.dump(2) << '\n';
}

std::string format_report_text(const VerificationReport& report) {
    std::ostringstream out;
    out << report.summary << '\n';
    out << std::left << std::setw(44) << "property" << std::setw(34) << "instance"
        << std::setw(8) << "result" << std::setw(14) << "violation"
        << "tolerance\n";
    for (const auto& v : report.verdicts) {
        const char* result = v.inconclusive ? "inconcl" : (v.pass ? "pass" : "FAIL");
        out << std::left << std::setw(44) << v.property_ref << std::setw(34)
            << v.instance << std::setw(8) << result << std::setw(14)
            << std::setprecision(4) << std::scientific << v.violation
            << v.tolerance << std::defaultfloat << '\n';
    }
    out << report.passed() << " passed, " << report.failed() << " failed ("
        << std::setprecision(3) << report.runtime_seconds << " s)\n";
    return out.str();
}

std::uint64_t checksum_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("report: cannot read '" + path + "'");
    std::uint64_t hash = 1469598103934665603ULL;
    char buffer[4096];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ULL;
        }
        if (!in) break;
    }
    return hash;
}

void write_manifest(const std::string& dir, const std::vector<std::string>& files) {
    nlohmann::json j;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& file : files) {
        std::ostringstream hex;
        hex << std::hex << std::setw(16) << std::setfill('0')
            << checksum_file(dir + "/" + file);
        entries.push_back({{"file", file}, {"fnv1a64", hex.str()}});
    }
    j["artifacts"] = std::move(entries);
    auto out = openOut(dir + "/manifest.json");
    out << j.dump(2) << '\n';
}

} // namespace degenpde
