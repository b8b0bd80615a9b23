#include "fie23/csv.hpp"

#include "fie23/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace fie23 {
namespace {

void put_number(std::ostream& os, double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    os.write(buf, n);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw SolverError(ErrorKind::ParseError,
                          "line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

void write_csv(const Trajectory& traj, std::ostream& os) {
    const Eigen::Index d = traj.dimension();
    os << 't';
    for (Eigen::Index i = 0; i < d; ++i) os << ",y" << i;
    os << ",est,k\n";
    for (std::size_t r = 0; r < traj.size(); ++r) {
        put_number(os, traj.times[r]);
        for (Eigen::Index i = 0; i < d; ++i) {
            os << ',';
            put_number(os, traj.states[r][i]);
        }
        os << ',';
        put_number(os, traj.est[r]);
        os << ',';
        put_number(os, traj.steps[r]);
        os << '\n';
    }
}

void emit_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SolverError(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    }
    write_csv(traj, out);
    out.flush();
    if (!out) {
        throw SolverError(ErrorKind::IoError, "failed writing '" + path.string() + "'");
    }
}

Trajectory parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw SolverError(ErrorKind::ParseError, "missing header");
    }
    const std::vector<std::string_view> header = split_fields(strip_cr(line));
    const std::size_t columns = header.size();
    if (columns < 4 || header.front() != "t" || header[columns - 2] != "est" || header[columns - 1] != "k") {
        throw SolverError(ErrorKind::ParseError, "header must read t,y0,...,est,k");
    }
    const std::size_t d = columns - 3;
    for (std::size_t i = 0; i < d; ++i) {
        if (header[i + 1] != "y" + std::to_string(i)) {
            throw SolverError(ErrorKind::ParseError, "unexpected header column '" + std::string(header[i + 1]) + "'");
        }
    }

    Trajectory traj;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        const std::vector<std::string_view> fields = split_fields(row);
        if (fields.size() != columns) {
            throw SolverError(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                         std::to_string(columns) + " fields");
        }
        State y(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) y[static_cast<Eigen::Index>(i)] = parse_number(fields[i + 1], line_no);
        try {
            traj.append(parse_number(fields[0], line_no), std::move(y), parse_number(fields[columns - 2], line_no),
                        parse_number(fields[columns - 1], line_no));
        } catch (const SolverError& e) {
            throw SolverError(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    traj.steps_taken = traj.empty() ? 0 : traj.size() - 1;
    return traj;
}

Trajectory read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SolverError(ErrorKind::IoError, "cannot open '" + path.string() + "'");
    }
    return parse_csv(in);
}

}  // namespace fie23
