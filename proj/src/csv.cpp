#include "fbm/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fbm {

void write_path_csv(std::ostream& out, const ObservationPath& path) {
    out << "index,time,value\n";
    char buf[128];
    for (std::size_t k = 0; k < path.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k + 1, path.grid().time(k + 1),
                      path.values()[k]);
        out << buf;
    }
}

void write_path_csv(const std::filesystem::path& file, const ObservationPath& path) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    write_path_csv(out, path);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

ObservationPath read_path_csv(std::istream& in, double step_h) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty path file");
    if (line.rfind("index,time,value", 0) != 0)
        throw std::runtime_error("missing 'index,time,value' header, got: " + line);

    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto first = line.find(',');
        const auto second = first == std::string::npos ? first : line.find(',', first + 1);
        if (second == std::string::npos)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected 3 columns");
        const char* begin = line.data() + second + 1;
        const char* end = line.data() + line.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end)
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad value field");
        values.push_back(value);
    }
    if (values.size() < 2)
        throw std::invalid_argument("path file needs at least 2 observations");
    const SamplingGrid grid(step_h, values.size());
    return ObservationPath(grid, std::move(values));
}

ObservationPath read_path_csv(const std::filesystem::path& file, double step_h) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open path file: " + file.string());
    return read_path_csv(in, step_h);
}

}  // namespace fbm
