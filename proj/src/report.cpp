#include "hx/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace hx {

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename report into place: " + path);
    }
}

std::string records_to_json(const std::vector<CheckRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json o;
        o["theorem_id"] = r.theorem_id;
        o["refinement"] = {r.refinement.a, r.refinement.b, r.refinement.c};
        o["tolerance"] = r.tolerance;
        o["measured"] = r.measured;
        o["pass"] = r.pass;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string records_to_csv(const std::vector<CheckRecord>& records) {
    std::string out = "theorem_id,ref_a,ref_b,ref_c,tolerance,measured,pass\n";
    char line[256];
    for (const auto& r : records) {
        std::snprintf(line, sizeof(line), "%s,%d,%d,%d,%.17g,%.17g,%d\n",
                      r.theorem_id.c_str(), r.refinement.a, r.refinement.b,
                      r.refinement.c, r.tolerance, r.measured, r.pass ? 1 : 0);
        out += line;
    }
    return out;
}

std::string losses_to_csv(const std::vector<double>& losses) {
    std::string out = "epoch,loss\n";
    char line[64];
    for (std::size_t e = 0; e < losses.size(); ++e) {
        std::snprintf(line, sizeof(line), "%zu,%.17g\n", e, losses[e]);
        out += line;
    }
    return out;
}

}  // namespace hx
