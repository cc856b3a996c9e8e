#include "klab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace klab {

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string fmt_opt(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string csv_header() {
    return "mode,p,k,q,a,X,M,N,U,V,seed,s,value,n_terms,trivial_bound,delta,"
           "wall_ms,version";
}

std::string format_csv_row(const ResultRow& r) {
    std::string line;
    line.reserve(160);
    line += r.mode;
    line += ',';
    line += fmt_opt(r.p);
    line += ',';
    line += fmt_opt(r.k);
    line += ',';
    line += std::to_string(r.q);
    line += ',';
    line += std::to_string(r.a);
    line += ',';
    line += fmt_opt(r.X);
    line += ',';
    line += fmt_opt(r.M);
    line += ',';
    line += fmt_opt(r.N);
    line += ',';
    line += fmt_opt(r.U);
    line += ',';
    line += fmt_opt(r.V);
    line += ',';
    line += fmt_opt(r.seed);
    line += ',';
    line += fmt_opt(r.s);
    line += ',';
    line += fmt_real(r.value);
    line += ',';
    line += std::to_string(r.n_terms);
    line += ',';
    line += fmt_real(r.trivial_bound);
    line += ',';
    line += fmt_real(r.delta);
    line += ',';
    line += fmt_real(r.wall_ms);
    line += ',';
    line += r.version;
    return line;
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::string body = csv_header();
    body += '\n';
    for (const ResultRow& r : rows) {
        body += format_csv_row(r);
        body += '\n';
    }
    if (path.empty() || path == "-") {
        std::cout << body;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("write_csv: cannot open '" + path + "' for writing");
    f << body;
    f.flush();
    if (!f) throw IoError("write_csv: write to '" + path + "' failed");
}

}  // namespace klab
