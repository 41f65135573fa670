#include "groverian/state_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace groverian {

namespace {

std::string trimmed(const std::string& line) {
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    return line.substr(b, e - b);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("state file line " + std::to_string(line_no) + ": " + what);
}

// %.12g without locale surprises
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

QuditRegisterState read_state(std::istream& in, bool normalize) {
    std::string line;
    std::size_t line_no = 0;

    int d = 0, n = 0;
    bool have_header = false;
    std::vector<Complex> amps;
    std::unordered_set<std::size_t> seen;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trimmed(line);
        if (body.empty() || body[0] == '#') continue;

        if (!have_header) {
            std::istringstream hs(body);
            std::string tag, d_field, n_field;
            if (!(hs >> tag >> d_field >> n_field) || tag != "qudit" ||
                d_field.rfind("d=", 0) != 0 || n_field.rfind("n=", 0) != 0)
                fail(line_no, "expected header 'qudit d=<int> n=<int>'");
            std::string extra;
            if (hs >> extra) fail(line_no, "trailing tokens after header");
            try {
                std::size_t pos = 0;
                d = std::stoi(d_field.substr(2), &pos);
                if (pos != d_field.size() - 2) throw std::invalid_argument("d");
                n = std::stoi(n_field.substr(2), &pos);
                if (pos != n_field.size() - 2) throw std::invalid_argument("n");
            } catch (const std::exception&) {
                fail(line_no, "header fields d and n must be integers");
            }
            if (d < 2 || n < 1) fail(line_no, "header requires d >= 2 and n >= 1");
            std::size_t dim;
            try {
                dim = register_dim(d, n);
            } catch (const Error& e) {
                fail(line_no, e.what());
            }
            amps.assign(dim, Complex{0.0, 0.0});
            have_header = true;
            continue;
        }

        std::istringstream ls(body);
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            if (!(ls >> labels[static_cast<std::size_t>(k)]))
                fail(line_no, "expected " + std::to_string(n) + " basis labels");
        }
        double re = 0.0, im = 0.0;
        if (!(ls >> re >> im))
            fail(line_no, "expected real and imaginary parts after the labels");
        std::string extra;
        if (ls >> extra) fail(line_no, "trailing tokens after amplitude");

        std::size_t flat;
        try {
            flat = basis_index(d, labels);
        } catch (const Error& e) {
            fail(line_no, e.what());
        }
        if (!seen.insert(flat).second) fail(line_no, "duplicate basis label tuple");
        amps[flat] = Complex{re, im};
    }

    if (!have_header) throw ParseError("state file has no 'qudit d=... n=...' header");
    return QuditRegisterState(d, n, std::move(amps), normalize);
}

QuditRegisterState read_state_file(const std::filesystem::path& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open state file: " + path.string());
    return read_state(in, normalize);
}

void write_state(std::ostream& out, const QuditRegisterState& psi) {
    out << "qudit d=" << psi.level_count() << " n=" << psi.qudit_count() << "\n";
    for (std::size_t flat = 0; flat < psi.dim(); ++flat) {
        const Complex a = psi[flat];
        if (a == Complex{0.0, 0.0}) continue;
        for (int label : basis_labels(psi.level_count(), psi.qudit_count(), flat))
            out << label << " ";
        out << format_double(a.real()) << " " << format_double(a.imag()) << "\n";
    }
}

void write_state_file(const std::filesystem::path& path, const QuditRegisterState& psi) {
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out) throw IoError("cannot open output file: " + path.string());
    write_state(out, psi);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace groverian
