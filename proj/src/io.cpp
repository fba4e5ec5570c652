#include "dskg/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dskg/errors.hpp"

namespace dskg::io {

namespace {

// shortest text that restores the exact double
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string series_csv(const std::vector<double>& t,
                       const std::vector<double>& primary,
                       const std::vector<double>& secondary) {
    if (t.empty()) throw DomainError("series has no rows");
    if (primary.size() != t.size() || secondary.size() != t.size())
        throw DomainError("series columns differ in length");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw DomainError("series time column must increase strictly");

    std::ostringstream out;
    out << "t,h_s_norm,weighted_norm\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out << num(t[i]) << ',' << num(primary[i]) << ',' << num(secondary[i])
            << '\n';
    return out.str();
}

std::string plot_script(const std::string& csv_name,
                        const std::string& title) {
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set logscale y\n"
        << "set xlabel 't'\n"
        << "set title '" << title << "'\n"
        << "plot '" << csv_name << "' using 1:2 with linespoints, \\\n"
        << "     '" << csv_name << "' using 1:3 with linespoints\n";
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw Error("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot move temporary file onto '" + path + "'");
    }
}

}  // namespace dskg::io
