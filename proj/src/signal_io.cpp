#include "sparselab/signal_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sparselab::io {

namespace {

constexpr std::uint64_t kMaxBinaryLength = std::uint64_t{1} << 36;

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), 8);
    if (!in) throw std::runtime_error("binary signal: truncated input");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

Signal read_signal_text(std::istream& in) {
    std::map<std::int64_t, double> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::int64_t x = 0;
        double v = 0.0;
        if (!(ls >> x)) {
            std::string rest;
            ls.clear();
            if (ls >> rest) throw std::runtime_error("text signal: bad index on line " + std::to_string(line_no));
            continue;  // blank line
        }
        if (!(ls >> v)) throw std::runtime_error("text signal: missing value on line " + std::to_string(line_no));
        std::string extra;
        if (ls >> extra) throw std::runtime_error("text signal: trailing data on line " + std::to_string(line_no));
        if (!entries.emplace(x, v).second) {
            throw std::runtime_error("text signal: duplicate index " + std::to_string(x));
        }
    }
    if (entries.empty()) return Signal();
    const std::int64_t lo = entries.begin()->first;
    const std::int64_t hi = entries.rbegin()->first + 1;
    Signal f = Signal::zeros({lo, hi});
    for (const auto& [x, v] : entries) f.at(x) = v;
    return f;
}

void write_signal_text(std::ostream& out, const Signal& f) {
    out << std::setprecision(17);
    const Interval e = f.extent();
    for (std::int64_t x = e.lo; x < e.hi; ++x) out << x << ' ' << f(x) << '\n';
}

Signal read_signal_binary(std::istream& in) {
    const auto offset = static_cast<std::int64_t>(get_u64(in));
    const std::uint64_t n = get_u64(in);
    if (n > kMaxBinaryLength) throw std::runtime_error("binary signal: implausible length");
    std::vector<double> values(static_cast<std::size_t>(n));
    for (double& v : values) v = get_f64(in);
    return Signal(offset, std::move(values));
}

void write_signal_binary(std::ostream& out, const Signal& f) {
    put_u64(out, static_cast<std::uint64_t>(f.offset()));
    put_u64(out, f.size());
    for (double v : f.values()) put_f64(out, v);
}

MeshSignal read_mesh_binary(std::istream& in) {
    MeshSignal m;
    m.x0 = get_f64(in);
    m.h = get_f64(in);
    const std::uint64_t n = get_u64(in);
    if (n > kMaxBinaryLength) throw std::runtime_error("mesh signal: implausible length");
    if (!(m.h > 0.0)) throw std::runtime_error("mesh signal: step must be positive");
    m.values.resize(static_cast<std::size_t>(n));
    for (cdouble& v : m.values) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        v = {re, im};
    }
    return m;
}

void write_mesh_binary(std::ostream& out, const MeshSignal& f) {
    put_f64(out, f.x0);
    put_f64(out, f.h);
    put_u64(out, f.values.size());
    for (const cdouble& v : f.values) {
        put_f64(out, v.real());
        put_f64(out, v.imag());
    }
}

Signal load_signal(const std::filesystem::path& path) {
    const bool binary = path.extension() == ".bin";
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return binary ? read_signal_binary(in) : read_signal_text(in);
}

void save_signal(const std::filesystem::path& path, const Signal& f) {
    const bool binary = path.extension() == ".bin";
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (binary) {
        write_signal_binary(out, f);
    } else {
        write_signal_text(out, f);
    }
}

}  // namespace sparselab::io
