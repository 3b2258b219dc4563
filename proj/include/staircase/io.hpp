#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "staircase/blocks.hpp"

namespace staircase {

// --------------------------------------------------------------------------
// Native text format
//
//   complex-matrix v1 <rows> <cols>
//   re im re im ...          (row-major, one matrix row per line)
//
// Entries are written with enough digits to round-trip doubles exactly.
// --------------------------------------------------------------------------

inline void write_matrix(std::ostream& os, const ComplexMatrix& a) {
    os << "complex-matrix v1 " << a.rows() << ' ' << a.cols() << '\n';
    os << std::setprecision(17);
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            if (j > 0) os << ' ';
            os << a(i, j).real() << ' ' << a(i, j).imag();
        }
        os << '\n';
    }
}

inline ComplexMatrix read_matrix(std::istream& is) {
    std::string magic, version;
    long long rows = -1, cols = -1;
    if (!(is >> magic >> version >> rows >> cols) || magic != "complex-matrix" ||
        version != "v1")
        throw ParseError("read_matrix: expected a 'complex-matrix v1 <rows> <cols>' header");
    if (rows < 0 || cols < 0)
        throw ParseError("read_matrix: negative dimensions");
    ComplexMatrix out(rows, cols);
    for (Index i = 0; i < out.rows(); ++i)
        for (Index j = 0; j < out.cols(); ++j) {
            double re = 0.0, im = 0.0;
            if (!(is >> re >> im))
                throw ParseError("read_matrix: truncated or malformed entry data");
            if (!std::isfinite(re) || !std::isfinite(im))
                throw ParseError("read_matrix: non-finite entry");
            out(i, j) = Complex(re, im);
        }
    std::string tail;
    if (is >> tail)
        throw ParseError("read_matrix: unexpected trailing data");
    return out;
}

// --------------------------------------------------------------------------
// Matrix Market convenience reader: dense "array" files with complex, real,
// or integer field and general symmetry. Values are stored column-major in
// the file, per that format's convention.
// --------------------------------------------------------------------------

namespace detail {

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace detail

inline ComplexMatrix read_matrix_market(std::istream& is) {
    std::string banner;
    if (!std::getline(is, banner))
        throw ParseError("read_matrix_market: missing banner");
    std::istringstream bs(banner);
    std::string tag, object, format, field, symmetry;
    bs >> tag >> object >> format >> field >> symmetry;
    if (detail::lower(tag) != "%%matrixmarket")
        throw ParseError("read_matrix_market: missing %%MatrixMarket banner");
    if (detail::lower(object) != "matrix")
        throw ParseError("read_matrix_market: only matrix objects are supported");
    if (detail::lower(format) != "array")
        throw ParseError("read_matrix_market: only the dense array format is supported");
    const std::string f = detail::lower(field);
    if (f != "complex" && f != "real" && f != "integer")
        throw ParseError("read_matrix_market: unsupported field '" + field + "'");
    if (detail::lower(symmetry) != "general")
        throw ParseError("read_matrix_market: only general symmetry is supported");

    std::string line;
    long long rows = -1, cols = -1;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> rows >> cols))
            throw ParseError("read_matrix_market: malformed size line");
        break;
    }
    if (rows < 0 || cols < 0)
        throw ParseError("read_matrix_market: missing or negative dimensions");

    ComplexMatrix out(rows, cols);
    for (Index j = 0; j < out.cols(); ++j)
        for (Index i = 0; i < out.rows(); ++i) {
            double re = 0.0, im = 0.0;
            if (!(is >> re))
                throw ParseError("read_matrix_market: truncated entry data");
            if (f == "complex" && !(is >> im))
                throw ParseError("read_matrix_market: truncated complex entry");
            if (!std::isfinite(re) || !std::isfinite(im))
                throw ParseError("read_matrix_market: non-finite entry");
            out(i, j) = Complex(re, im);
        }
    std::string tail;
    if (is >> tail)
        throw ParseError("read_matrix_market: unexpected trailing data");
    return out;
}

/// Reads either supported format, dispatching on the first bytes.
inline ComplexMatrix read_matrix_auto(std::istream& is) {
    std::stringstream buf;
    buf << is.rdbuf();
    const std::string& s = buf.str();
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && s[first] == '%') {
        std::istringstream mm(s.substr(first));
        mm.imbue(std::locale::classic());
        return read_matrix_market(mm);
    }
    std::istringstream native(s);
    native.imbue(std::locale::classic());
    return read_matrix(native);
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    f.imbue(std::locale::classic());
    return read_matrix_auto(f);
}

inline void write_matrix_file(const std::string& path, const ComplexMatrix& a) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open file for writing: " + path);
    f.imbue(std::locale::classic());
    write_matrix(f, a);
    if (!f) throw Error("write failed: " + path);
}

// --------------------------------------------------------------------------
// JSON serialization (lossless: doubles round-trip exactly)
// --------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const ComplexMatrix& a) {
    std::vector<double> flat;
    flat.reserve(a.entries().size() * 2);
    for (const Complex& z : a.entries()) {
        flat.push_back(z.real());
        flat.push_back(z.imag());
    }
    j = nlohmann::json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(flat)}};
}

inline void from_json(const nlohmann::json& j, ComplexMatrix& a) {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const auto flat = j.at("entries").get<std::vector<double>>();
    if (rows < 0 || cols < 0 ||
        flat.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * 2)
        throw ParseError("ComplexMatrix: entry payload does not match dimensions");
    std::vector<Complex> entries(flat.size() / 2);
    for (std::size_t i = 0; i < entries.size(); ++i)
        entries[i] = Complex(flat[2 * i], flat[2 * i + 1]);
    a = ComplexMatrix(rows, cols, std::move(entries));
}

inline void to_json(nlohmann::json& j, const MatrixPair& p) {
    j = nlohmann::json{{"first", p.first}, {"second", p.second}};
}

inline void from_json(const nlohmann::json& j, MatrixPair& p) {
    p = MatrixPair(j.at("first").get<ComplexMatrix>(), j.at("second").get<ComplexMatrix>());
}

inline void to_json(nlohmann::json& j, const Tolerance& t) {
    j = nlohmann::json{
        {"mode", t.mode() == Tolerance::Mode::relative ? "relative" : "absolute"},
        {"value", t.value()}};
}

inline void from_json(const nlohmann::json& j, Tolerance& t) {
    const auto mode = j.at("mode").get<std::string>();
    const auto value = j.at("value").get<double>();
    if (mode == "relative")
        t = Tolerance::relative(value);
    else if (mode == "absolute")
        t = Tolerance::absolute(value);
    else
        throw ParseError("Tolerance: unknown mode '" + mode + "'");
}

inline std::string to_string(BlockKind k) {
    switch (k) {
        case BlockKind::jordan_zero: return "jordan_zero";
        case BlockKind::jordan_lambda: return "jordan_lambda";
        case BlockKind::mu: return "mu";
        case BlockKind::fg: return "fg";
        case BlockKind::fgt: return "fgt";
        case BlockKind::ji: return "ji";
        case BlockKind::ij: return "ij";
        case BlockKind::ij_lambda: return "ij_lambda";
        case BlockKind::i_mu: return "i_mu";
    }
    return "?";
}

inline BlockKind block_kind_from_string(const std::string& s) {
    if (s == "jordan_zero") return BlockKind::jordan_zero;
    if (s == "jordan_lambda") return BlockKind::jordan_lambda;
    if (s == "mu") return BlockKind::mu;
    if (s == "fg") return BlockKind::fg;
    if (s == "fgt") return BlockKind::fgt;
    if (s == "ji") return BlockKind::ji;
    if (s == "ij") return BlockKind::ij;
    if (s == "ij_lambda") return BlockKind::ij_lambda;
    if (s == "i_mu") return BlockKind::i_mu;
    throw ParseError("unknown block kind '" + s + "'");
}

inline std::string to_string(ProblemKind k) {
    return k == ProblemKind::consimilarity ? "consimilarity" : "mixed_pair";
}

inline ProblemKind problem_kind_from_string(const std::string& s) {
    if (s == "consimilarity") return ProblemKind::consimilarity;
    if (s == "mixed_pair") return ProblemKind::mixed_pair;
    throw ParseError("unknown problem kind '" + s + "'");
}

inline void to_json(nlohmann::json& j, const BlockDescriptor& b) {
    j = nlohmann::json{{"kind", to_string(b.kind)},
                       {"n", b.n},
                       {"param", {b.param.real(), b.param.imag()}},
                       {"multiplicity", b.multiplicity}};
}

inline void from_json(const nlohmann::json& j, BlockDescriptor& b) {
    b.kind = block_kind_from_string(j.at("kind").get<std::string>());
    b.n = j.value("n", Index{1});
    b.multiplicity = j.value("multiplicity", Index{1});
    if (j.contains("param")) {
        const auto p = j.at("param").get<std::vector<double>>();
        if (p.size() != 2) throw ParseError("BlockDescriptor: param must be [re, im]");
        b.param = Complex(p[0], p[1]);
    } else {
        b.param = Complex{};
    }
}

inline void to_json(nlohmann::json& j, const DecompositionDescriptor& d) {
    j = nlohmann::json{{"kind", to_string(d.kind)}, {"blocks", d.blocks}};
    if (d.kind == ProblemKind::consimilarity)
        j["regular_matrix"] = d.regular_matrix;
    else
        j["regular_pair"] = d.regular_pair;
}

inline void from_json(const nlohmann::json& j, DecompositionDescriptor& d) {
    d = DecompositionDescriptor{};
    d.kind = problem_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("blocks")) d.blocks = j.at("blocks").get<std::vector<BlockDescriptor>>();
    if (j.contains("regular_matrix"))
        d.regular_matrix = j.at("regular_matrix").get<ComplexMatrix>();
    if (j.contains("regular_pair")) d.regular_pair = j.at("regular_pair").get<MatrixPair>();
}

inline DecompositionDescriptor read_descriptor(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
        DecompositionDescriptor d = j.get<DecompositionDescriptor>();
        for (const BlockDescriptor& b : d.blocks) validate_block(b);
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("descriptor: ") + e.what());
    }
}

inline void write_descriptor(const std::string& path, const DecompositionDescriptor& d) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open file for writing: " + path);
    const nlohmann::json j = d;
    f << j.dump(2) << '\n';
    if (!f) throw Error("write failed: " + path);
}

} // namespace staircase
