#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "staircase/io.hpp"
#include "staircase/testgen.hpp"

namespace staircase {

/// Everything an analysis produces, flat enough to serialize losslessly.
/// Consimilarity analyses fill r_seq and jordan_multiplicities; pair analyses
/// fill the kl sequences and the four family maps. transforms is empty unless
/// requested: one accumulated unitary for consimilarity, the row and column
/// factors of each pass (in that order) for pairs.
struct AnalysisReport {
    ProblemKind kind = ProblemKind::consimilarity;
    Tolerance tolerance_used;
    double residual = 0.0;
    double transform_unitarity_defect = 0.0;

    std::vector<Index> r_seq;
    std::map<Index, Index> jordan_multiplicities;

    std::vector<std::pair<Index, Index>> kl_first;
    std::vector<std::pair<Index, Index>> kl_second;
    std::map<Index, Index> fg, ji, fgt, ij;

    Index regular_rows = 0;
    Index regular_cols = 0;

    std::vector<ComplexMatrix> transforms;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

inline AnalysisReport analyze_consim(const ComplexMatrix& a, const Tolerance& tol = {},
                                     bool emit_transforms = false) {
    const ConsimResult res = consim_regularize(a, tol);
    const ConsimStructure st = consim_structure(res);
    AnalysisReport rep;
    rep.kind = ProblemKind::consimilarity;
    rep.tolerance_used = tol;
    rep.residual = res.residual;
    rep.transform_unitarity_defect = res.accumulated.defect();
    rep.r_seq = res.r_seq;
    rep.jordan_multiplicities = st.jordan_multiplicities;
    rep.regular_rows = res.regular.rows();
    rep.regular_cols = res.regular.cols();
    if (emit_transforms) rep.transforms = {res.accumulated.matrix()};
    return rep;
}

inline AnalysisReport analyze_pair(const MatrixPair& p, const Tolerance& tol = {},
                                   bool emit_transforms = false) {
    const FullRegularization full = full_regularize(p, tol);
    AnalysisReport rep;
    rep.kind = ProblemKind::mixed_pair;
    rep.tolerance_used = tol;
    rep.residual = std::sqrt(full.first_pass.residual * full.first_pass.residual +
                             full.second_pass.residual * full.second_pass.residual);
    rep.transform_unitarity_defect =
        std::max({full.first_pass.left.defect(), full.first_pass.right.defect(),
                  full.second_pass.left.defect(), full.second_pass.right.defect()});
    rep.kl_first = full.first_pass.kl_seq;
    rep.kl_second = full.second_pass.kl_seq;
    rep.fg = full.structure.fg;
    rep.ji = full.structure.ji;
    rep.fgt = full.structure.fgt;
    rep.ij = full.structure.ij;
    rep.regular_rows = full.structure.regular.rows();
    rep.regular_cols = full.structure.regular.cols();
    if (emit_transforms)
        rep.transforms = {full.first_pass.left.matrix(), full.first_pass.right.matrix(),
                          full.second_pass.left.matrix(), full.second_pass.right.matrix()};
    return rep;
}

namespace detail {

inline void render_multiplicities(std::ostream& os, const char* label,
                                  const std::map<Index, Index>& m) {
    os << label;
    if (m.empty()) {
        os << " (none)\n";
        return;
    }
    for (const auto& [n, count] : m) os << " n=" << n << " x" << count;
    os << '\n';
}

inline void render_kl(std::ostream& os, const char* label,
                      const std::vector<std::pair<Index, Index>>& kl) {
    os << label;
    if (kl.empty()) {
        os << " (empty)\n";
        return;
    }
    for (const auto& [k, l] : kl) os << " (" << k << ',' << l << ')';
    os << '\n';
}

} // namespace detail

inline void render_text(std::ostream& os, const AnalysisReport& r) {
    os << "problem: " << to_string(r.kind) << '\n';
    os << "tolerance: "
       << (r.tolerance_used.mode() == Tolerance::Mode::relative ? "relative" : "absolute")
       << ' ' << std::setprecision(17) << r.tolerance_used.value() << '\n';
    if (r.kind == ProblemKind::consimilarity) {
        os << "r-sequence:";
        if (r.r_seq.empty())
            os << " (empty)";
        else
            for (Index v : r.r_seq) os << ' ' << v;
        os << '\n';
        detail::render_multiplicities(os, "nilpotent blocks:", r.jordan_multiplicities);
        os << "regular size: " << r.regular_rows << '\n';
    } else {
        detail::render_kl(os, "first-pass (k,l):", r.kl_first);
        detail::render_kl(os, "second-pass (k,l):", r.kl_second);
        detail::render_multiplicities(os, "blocks FG:", r.fg);
        detail::render_multiplicities(os, "blocks JI:", r.ji);
        detail::render_multiplicities(os, "blocks FGT:", r.fgt);
        detail::render_multiplicities(os, "blocks IJ:", r.ij);
        os << "regular size: " << r.regular_rows << 'x' << r.regular_cols << '\n';
    }
    os << "residual: " << std::scientific << std::setprecision(6) << r.residual << '\n';
    os << "unitarity defect: " << r.transform_unitarity_defect << '\n';
    os.unsetf(std::ios_base::floatfield);
    if (!r.transforms.empty()) {
        os << "transforms: " << r.transforms.size() << '\n';
        for (std::size_t i = 0; i < r.transforms.size(); ++i) {
            os << "transform " << i + 1 << ":\n";
            write_matrix(os, r.transforms[i]);
        }
    }
}

inline void to_json(nlohmann::json& j, const AnalysisReport& r) {
    j = nlohmann::json{{"problem", to_string(r.kind)},
                       {"tolerance", r.tolerance_used},
                       {"residual", r.residual},
                       {"transform_unitarity_defect", r.transform_unitarity_defect},
                       {"r_seq", r.r_seq},
                       {"jordan_multiplicities", r.jordan_multiplicities},
                       {"kl_first", r.kl_first},
                       {"kl_second", r.kl_second},
                       {"fg", r.fg},
                       {"ji", r.ji},
                       {"fgt", r.fgt},
                       {"ij", r.ij},
                       {"regular_rows", r.regular_rows},
                       {"regular_cols", r.regular_cols},
                       {"transforms", r.transforms}};
}

inline void from_json(const nlohmann::json& j, AnalysisReport& r) {
    r.kind = problem_kind_from_string(j.at("problem").get<std::string>());
    r.tolerance_used = j.at("tolerance").get<Tolerance>();
    r.residual = j.at("residual").get<double>();
    r.transform_unitarity_defect = j.at("transform_unitarity_defect").get<double>();
    r.r_seq = j.at("r_seq").get<std::vector<Index>>();
    r.jordan_multiplicities = j.at("jordan_multiplicities").get<std::map<Index, Index>>();
    r.kl_first = j.at("kl_first").get<std::vector<std::pair<Index, Index>>>();
    r.kl_second = j.at("kl_second").get<std::vector<std::pair<Index, Index>>>();
    r.fg = j.at("fg").get<std::map<Index, Index>>();
    r.ji = j.at("ji").get<std::map<Index, Index>>();
    r.fgt = j.at("fgt").get<std::map<Index, Index>>();
    r.ij = j.at("ij").get<std::map<Index, Index>>();
    r.regular_rows = j.at("regular_rows").get<Index>();
    r.regular_cols = j.at("regular_cols").get<Index>();
    r.transforms = j.at("transforms").get<std::vector<ComplexMatrix>>();
}

} // namespace staircase
