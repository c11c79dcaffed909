#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coding.hpp"
#include "determinant.hpp"
#include "errors.hpp"
#include "operator.hpp"
#include "period.hpp"

namespace hecke {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// "2", "0.5+9.5337i", "-1.5e-3-2i", "3i"
inline cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex num(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    static const std::regex full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i)?$)");
    static const std::regex imag_only(R"(^([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i$)");
    std::smatch m;
    if (s.empty()) throw DomainError("empty complex literal");
    if (std::regex_match(s, m, imag_only)) {
        std::string im = m[1].str();
        if (im.empty() || im == "+") return {0.0, 1.0};
        if (im == "-") return {0.0, -1.0};
        return {0.0, std::stod(im)};
    }
    if (std::regex_match(s, m, full) && m[1].matched) {
        double re = std::stod(m[1].str());
        double im = 0.0;
        if (m[2].matched) {
            std::string t = m[2].str();
            im = (t == "+") ? 1.0 : (t == "-") ? -1.0 : std::stod(t);
        }
        return {re, im};
    }
    throw DomainError("cannot parse complex number '" + text + "'");
}

inline std::string format_complex(cplx z, int digits = 15) {
    std::ostringstream os;
    os.precision(digits);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// ---------------------------------------------------------------- spectrum cache

inline json symbol_to_json(const BranchSymbol& b) {
    int kind = b.kind == SymbolKind::parabolic_left ? 0 : (b.kind == SymbolKind::hyperbolic ? 1 : 2);
    return json::array({kind, b.k, b.m});
}

inline BranchSymbol symbol_from_json(const json& j) {
    int kind = j.at(0).get<int>();
    BranchSymbol b;
    b.kind = kind == 0 ? SymbolKind::parabolic_left : (kind == 1 ? SymbolKind::hyperbolic : SymbolKind::parabolic_right);
    b.k = j.at(1).get<int>();
    b.m = j.at(2).get<int>();
    return b;
}

inline json spectrum_entry_to_json(const LengthSpectrumEntry& e) {
    json syms = json::array();
    for (const auto& b : e.word.symbols) syms.push_back(symbol_to_json(b));
    return json{{"word", e.word.str()}, {"symbols", syms},      {"trace", e.trace},
                {"length", e.length},   {"primitive", e.primitive}, {"multiplicity", e.multiplicity}};
}

inline LengthSpectrumEntry spectrum_entry_from_json(const json& j) {
    LengthSpectrumEntry e;
    for (const auto& b : j.at("symbols")) e.word.symbols.push_back(symbol_from_json(b));
    e.trace = j.at("trace").get<double>();
    e.length = j.at("length").get<double>();
    e.primitive = j.at("primitive").get<bool>();
    e.multiplicity = j.at("multiplicity").get<int>();
    return e;
}

inline std::filesystem::path spectrum_cache_path(const std::filesystem::path& dir, int q, double L, const std::string& precision) {
    std::ostringstream name;
    name << "spectrum_L" << L;
    if (precision != "double") name << "_" << precision;
    name << ".jsonl";
    return dir / ("q" + std::to_string(q)) / name.str();
}

inline void write_spectrum_jsonl(const std::filesystem::path& path, const std::vector<LengthSpectrumEntry>& spec) {
    std::filesystem::create_directories(path.parent_path());
    // write-once: build in a temporary file and rename into place
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw EvaluationError("cannot write cache file " + tmp.string());
        for (const auto& e : spec) out << spectrum_entry_to_json(e).dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

inline std::vector<LengthSpectrumEntry> read_spectrum_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EvaluationError("cannot read cache file " + path.string());
    std::vector<LengthSpectrumEntry> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(spectrum_entry_from_json(json::parse(line)));
    return out;
}

// length spectrum through the cache directory when one is given
inline std::vector<LengthSpectrumEntry> cached_length_spectrum(int q, double L, const std::string& cache_dir,
                                                              const std::string& precision = "double",
                                                              bool* hit = nullptr) {
    if (hit) *hit = false;
    std::filesystem::path path;
    if (!cache_dir.empty()) {
        path = spectrum_cache_path(cache_dir, q, L, precision);
        if (std::filesystem::exists(path)) {
            if (hit) *hit = true;
            return read_spectrum_jsonl(path);
        }
    }
    auto spec = precision == "dd" ? length_spectrum<DoubleDouble>(q, L) : length_spectrum<double>(q, L);
    if (!cache_dir.empty()) {
        // round-trip through JSON so warm and cold runs hand out identical values
        write_spectrum_jsonl(path, spec);
        return read_spectrum_jsonl(path);
    }
    return spec;
}

// ---------------------------------------------------------------- operator dump

inline json operator_header(const OperatorMatrix& om) {
    json lay = json::array();
    for (const auto& c : om.layout)
        lay.push_back({{"component", component_name(c.comp)}, {"offset", c.offset}, {"degrees", c.degrees}});
    return json{{"q", om.q},
                {"s", to_json(om.s)},
                {"M", om.M},
                {"mode", to_string(om.mode)},
                {"symmetry", to_string(om.symmetry)},
                {"form", to_string(om.form)},
                {"c_param", om.c_param},
                {"N_tail", om.N_tail},
                {"quadrature_points", om.quadrature_points},
                {"tail_bound", om.tail_bound},
                {"raw_tail_bound", om.raw_tail_bound},
                {"rows", om.A.rows()},
                {"cols", om.A.cols()},
                {"layout", lay}};
}

// one JSON header line, then rows*cols (re, im) doubles in row-major order
inline void dump_operator(const std::filesystem::path& path, const OperatorMatrix& om) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EvaluationError("cannot write " + path.string());
    out << operator_header(om).dump() << "\n";
    for (Eigen::Index i = 0; i < om.A.rows(); ++i)
        for (Eigen::Index j = 0; j < om.A.cols(); ++j) {
            double v[2] = {om.A(i, j).real(), om.A(i, j).imag()};
            out.write(reinterpret_cast<const char*>(v), sizeof v);
        }
}

inline Eigen::MatrixXcd load_operator(const std::filesystem::path& path, json* header = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EvaluationError("cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    json h = json::parse(line);
    Eigen::MatrixXcd A(h.at("rows").get<Eigen::Index>(), h.at("cols").get<Eigen::Index>());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            double v[2];
            in.read(reinterpret_cast<char*>(v), sizeof v);
            if (!in) throw EvaluationError("truncated operator dump");
            A(i, j) = cplx(v[0], v[1]);
        }
    if (header) *header = h;
    return A;
}

// ---------------------------------------------------------------- eigenfunctions, scans

// coefficients in the basis ((z - center)/radius)^k; degrees missing from a parity layout are 0
inline json eigenfunction_to_json(const FastEigenfunction& fe) {
    json disks = json::array();
    for (const auto& c : fe.layout) {
        const Disk& D = fe.disks.disk(c.comp);
        std::vector<cplx> co(std::size_t(fe.M + 1), cplx(0.0));
        for (std::size_t i = 0; i < c.degrees.size(); ++i) co[std::size_t(c.degrees[i])] = fe.coeffs(c.offset + Eigen::Index(i));
        json arr = json::array();
        for (auto z : co) arr.push_back(to_json(z));
        disks.push_back({{"component", component_name(c.comp)},
                         {"center", D.center.real()},
                         {"radius", D.radius},
                         {"basis", "((z-center)/radius)^k"},
                         {"coeffs", arr}});
    }
    return json{{"q", fe.q},
                {"s", to_json(fe.s)},
                {"symmetry", to_string(fe.symmetry)},
                {"form", to_string(fe.form)},
                {"M", fe.M},
                {"c_param", fe.disks.c_param},
                {"residual", fe.residual},
                {"sigma_min", fe.sigma_min},
                {"sigma_ratio", fe.sigma_ratio},
                {"multiplicity_warning", fe.multiplicity_warning},
                {"decay_rho", fe.decay.rho},
                {"determination_residual", std::isnan(fe.determination_residual) ? json(nullptr) : json(fe.determination_residual)},
                {"disks", disks}};
}

inline std::string scan_to_csv(const SpectralScan& sc) {
    std::ostringstream os;
    os.precision(17);
    os << "t,re_det,im_det,abs_det\n";
    for (std::size_t i = 0; i < sc.t_grid.size(); ++i)
        os << sc.t_grid[i] << "," << sc.det_values[i].real() << "," << sc.det_values[i].imag() << ","
           << std::abs(sc.det_values[i]) << "\n";
    return os.str();
}

inline json zeros_to_json(const SpectralScan& sc) {
    json zs = json::array();
    for (const auto& z : sc.zeros)
        zs.push_back({{"t", z.t},
                      {"residual", z.residual},
                      {"stability", z.stability},
                      {"winding", z.winding},
                      {"validated", z.validated},
                      {"note", z.note},
                      {"symmetry", to_string(sc.symmetry)},
                      {"q", sc.q},
                      {"M", sc.M}});
    return zs;
}

// tabulated psi from JSON {"t": [...], "re": [...], "im": [...]} or CSV lines t,re[,im]
inline void read_tabulated(const std::filesystem::path& path, std::vector<double>& t, std::vector<cplx>& v) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read input file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    t.clear();
    v.clear();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j = json::parse(text);
        auto ts = j.at("t").get<std::vector<double>>();
        auto re = j.at("re").get<std::vector<double>>();
        std::vector<double> im(re.size(), 0.0);
        if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
        if (ts.size() != re.size() || im.size() != re.size()) throw DomainError("input arrays differ in length");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            t.push_back(ts[i]);
            v.emplace_back(re[i], im[i]);
        }
        return;
    }
    std::istringstream ls(text);
    std::string line;
    while (std::getline(ls, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a, b, c = 0.0;
        if (!(row >> a >> b)) throw DomainError("malformed input line: " + line);
        row >> c;
        t.push_back(a);
        v.emplace_back(b, c);
    }
}

} // namespace hecke
