#include "aalab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aalab {

MapSpec mapspec_from_json(const nlohmann::json& j) {
    MapSpec spec;
    try {
        const auto& A = j.at("A");
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) spec.A[r][c] = A.at(r).at(c).get<long>();
        spec.a = j.at("a").get<double>();
        spec.b = j.at("b").get<double>();
        spec.c = j.at("c").get<double>();
        spec.d = j.at("d").get<double>();
        spec.r0 = j.at("r0").get<double>();
        spec.r1 = j.at("r1").get<double>();
        if (j.contains("bump")) {
            const std::string b = j.at("bump").get<std::string>();
            if (b == "smooth")
                spec.bump = BumpProfile::Smooth;
            else if (b == "poly9")
                spec.bump = BumpProfile::Poly9;
            else
                throw std::runtime_error("unknown bump profile: " + b);
        }
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed map spec: ") + e.what());
    }
    return spec;
}

nlohmann::json mapspec_to_json(const MapSpec& spec) {
    nlohmann::json j;
    j["A"] = {{spec.A[0][0], spec.A[0][1]}, {spec.A[1][0], spec.A[1][1]}};
    j["a"] = spec.a;
    j["b"] = spec.b;
    j["c"] = spec.c;
    j["d"] = spec.d;
    j["r0"] = spec.r0;
    j["r1"] = spec.r1;
    j["bump"] = spec.bump == BumpProfile::Smooth ? "smooth" : "poly9";
    j["seed"] = spec.seed;
    return j;
}

MapSpec load_mapspec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse config file " + path + ": " +
                                 e.what());
    }
    return mapspec_from_json(j);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out)
        throw std::runtime_error("cannot open output file: " + path);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << fields[i];
    }
    impl_->out << "\r\n";
}

void CsvWriter::numeric_row(const std::vector<double>& fields) {
    std::vector<std::string> s;
    s.reserve(fields.size());
    for (double x : fields) s.push_back(format_double(x));
    row(s);
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["config"] = config;
    j["version"] = version;
    j["seed"] = seed;
    j["stages"] = nlohmann::json::array();
    for (const auto& s : stages) {
        nlohmann::json js;
        js["name"] = s.name;
        js["seconds"] = s.seconds;
        js["outputs"] = s.outputs;
        js["ran"] = s.ran;
        if (!s.note.empty()) js["note"] = s.note;
        j["stages"].push_back(js);
    }
    j["criteria"] = nlohmann::json::array();
    for (const auto& c : criteria) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["pass"] = c.pass;
        jc["value"] = c.value;
        jc["detail"] = c.detail;
        j["criteria"].push_back(jc);
    }
    return j;
}

void RunManifest::write(const std::string& path) const {
    write_text_file(path, to_json().dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

}  // namespace aalab
