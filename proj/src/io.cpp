#include "stp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stp {

std::string format_sig12(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

GrowthFunction parse_psi(const std::string& spec) {
    if (spec == "nlogn") return GrowthFunction::n_log_n();
    auto parse_param = [&](const std::string& text) {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument("psi spec: trailing characters in '" + spec + "'");
        return v;
    };
    if (spec.rfind("2^n^", 0) == 0) return GrowthFunction::double_exp(parse_param(spec.substr(4)));
    if (spec.rfind("n^", 0) == 0) return GrowthFunction::power(parse_param(spec.substr(2)));
    throw std::invalid_argument("psi spec: expected nlogn | n^A | 2^n^G, got '" + spec + "'");
}

std::string format_psi(const GrowthFunction& psi) {
    switch (psi.kind) {
        case GrowthFunction::Kind::NLogN: return "nlogn";
        case GrowthFunction::Kind::Power: return "n^" + format_sig12(psi.param);
        case GrowthFunction::Kind::DoubleExp: return "2^n^" + format_sig12(psi.param);
    }
    throw std::logic_error("format_psi: unreachable");
}

BinaryWord read_digit_line(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("digit line: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return BinaryWord::parse(line);
}

void write_digit_line(std::ostream& out, const BinaryWord& word) {
    out << word.str() << "\n";
}

BinaryWord read_digit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open digit file: " + path);
    // the first line of a digit file is the prefix; construct files carry a
    // JSON header line first, which starts with '{'
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '{') continue;
        return BinaryWord::parse(line);
    }
    throw std::invalid_argument("digit file has no digit line: " + path);
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSample>& rows) {
    out << "alpha,q0,t_q0,dimension\n";
    for (const SpectrumSample& r : rows) {
        out << format_sig12(r.alpha) << ','
            << (r.q0_at_infinity ? "inf" : format_sig12(r.q0)) << ','
            << format_sig12(r.t_q0) << ',' << format_sig12(r.dimension) << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_cell(const std::string& s) {
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
    return v;
}

}  // namespace

std::vector<SpectrumSample> read_spectrum_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) !=
        std::vector<std::string>{"alpha", "q0", "t_q0", "dimension"})
        throw std::invalid_argument("spectrum csv: bad header");
    std::vector<SpectrumSample> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 4) throw std::invalid_argument("spectrum csv: bad row");
        SpectrumSample s;
        s.alpha = parse_cell(cells[0]);
        s.q0 = parse_cell(cells[1]);
        s.q0_at_infinity = std::isinf(s.q0);
        s.t_q0 = parse_cell(cells[2]);
        s.dimension = parse_cell(cells[3]);
        rows.push_back(s);
    }
    return rows;
}

void write_trace_csv(std::ostream& out, const RatioTrace& trace) {
    out << "n,log2_S,log2_psi,log_ratio\n";
    for (const RatioCheckpoint& c : trace.checkpoints) {
        out << c.n << ',' << format_sig12(c.log2_S) << ','
            << format_sig12(c.log2_psi) << ',' << format_sig12(c.log_ratio) << "\n";
    }
}

RatioTrace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) !=
        std::vector<std::string>{"n", "log2_S", "log2_psi", "log_ratio"})
        throw std::invalid_argument("trace csv: bad header");
    RatioTrace t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 4) throw std::invalid_argument("trace csv: bad row");
        RatioCheckpoint c;
        c.n = static_cast<std::uint64_t>(std::stoull(cells[0]));
        c.log2_S = parse_cell(cells[1]);
        c.log2_psi = parse_cell(cells[2]);
        c.log_ratio = parse_cell(cells[3]);
        t.checkpoints.push_back(c);
    }
    return t;
}

}  // namespace stp
