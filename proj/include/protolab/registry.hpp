#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "protolab/base_matrix.hpp"

namespace protolab {

/// Built-in protograph, with the nominal threshold it was designed to.
/// nominal_bec_threshold is an erasure probability; nominal_snr_db is
/// 10*log10(1/sigma^2) for the BIAWGN designs.
struct BuiltinProto {
    std::string name;
    std::string description;
    BaseMatrix matrix;
    double nominal_bec_threshold = std::nan("");
    double nominal_snr_db = std::nan("");
    std::string note;
};

inline const std::vector<BuiltinProto>& builtin_protographs() {
    static const std::vector<BuiltinProto> reg = [] {
        std::vector<BuiltinProto> v;
        v.push_back({"ex-2x4", "2x4 rate-1/2 running example",
                     parse_base_matrix("1 1 1 2\n"
                                       "1 1 1 1\n"),
                     std::nan(""), std::nan(""), "degree-2 subgraph has cycles"});
        v.push_back({"r34-3x12", "3x12 rate-3/4, BEC-optimized",
                     parse_base_matrix("1 1 0 0 7 4 1 1 0 0 0 0\n"
                                       "1 2 3 0 7 1 0 0 3 1 0 0\n"
                                       "1 5 5 3 4 0 1 2 0 1 3 3\n"),
                     0.238, std::nan(""), ""});
        v.push_back({"r23-4x12", "4x12 rate-2/3, BEC-optimized",
                     parse_base_matrix("1 1 1 5 3 1 0 2 3 1 1 1\n"
                                       "0 1 0 6 0 0 0 2 0 1 1 1\n"
                                       "0 0 2 6 0 0 1 1 0 1 0 0\n"
                                       "2 0 1 2 0 1 2 4 0 4 1 1\n"),
                     0.32, std::nan(""), ""});
        v.push_back({"r12-4x8", "4x8 rate-1/2, BEC-optimized",
                     parse_base_matrix("1 2 2 3 4 1 1 0\n"
                                       "0 1 0 0 5 0 0 1\n"
                                       "1 0 0 0 3 0 4 1\n"
                                       "1 0 1 0 6 1 0 0\n"),
                     0.479, std::nan(""), ""});
        v.push_back({"r12-8x16", "8x16 rate-1/2, BEC-optimized",
                     parse_base_matrix("1 2 0 0 1 0 0 4 0 0 0 0 0 0 0 1\n"
                                       "0 1 0 0 0 1 0 0 2 2 1 0 0 0 1 1\n"
                                       "0 3 1 2 1 0 0 0 4 0 0 3 2 2 0 3\n"
                                       "0 5 0 0 0 0 1 1 0 0 1 0 0 1 0 0\n"
                                       "1 3 1 1 1 2 0 0 1 0 0 0 0 0 0 0\n"
                                       "1 5 0 0 0 3 1 0 0 0 1 0 0 0 0 0\n"
                                       "0 4 0 0 0 0 0 1 1 0 0 0 0 0 0 1\n"
                                       "0 5 0 0 0 0 0 0 0 1 0 0 1 0 1 0\n"),
                     0.486, std::nan(""), ""});
        v.push_back({"r12-16x32", "16x32 rate-1/2, BEC-optimized",
                     parse_base_matrix(
                         "3 1 0 0 0 0 0 0 0 0 0 0 0 0 0 2 1 0 1 0 0 0 0 0 0 1 0 0 0 0 0 0\n"
                         "4 0 2 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                         "1 0 0 0 1 1 1 1 0 0 0 0 1 1 0 1 0 0 1 0 0 0 0 0 1 0 0 0 0 1 2 0\n"
                         "4 0 0 0 1 1 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0\n"
                         "2 1 1 1 1 0 0 0 0 0 0 0 0 1 0 0 0 2 0 0 0 0 0 0 0 1 0 0 0 0 0 0\n"
                         "2 0 0 0 0 1 1 2 1 0 0 0 1 0 0 0 0 0 1 1 0 0 0 0 0 0 0 1 1 1 0 0\n"
                         "4 2 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0\n"
                         "4 1 1 1 0 0 0 0 0 0 2 0 0 1 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0\n"
                         "4 0 1 0 1 0 1 0 0 0 0 0 0 0 0 1 1 0 0 0 0 1 1 0 0 0 0 0 1 0 0 0\n"
                         "4 0 0 0 1 0 0 2 0 1 0 0 1 0 0 0 0 0 0 0 0 0 0 1 0 2 0 0 0 0 0 1\n"
                         "0 0 0 0 0 0 0 1 0 0 0 0 0 3 0 0 0 0 1 0 1 0 0 0 0 1 0 0 0 0 1 0\n"
                         "2 0 0 0 0 1 0 0 0 0 0 1 2 1 1 0 0 0 0 0 0 0 0 0 0 0 0 1 0 1 0 0\n"
                         "1 0 1 0 1 1 0 1 1 0 0 0 2 0 2 0 0 0 0 1 1 0 1 0 1 1 0 0 1 0 3 1\n"
                         "4 0 0 0 0 0 0 0 0 0 0 1 0 2 0 0 0 0 2 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                         "4 0 1 0 0 0 0 0 0 0 0 1 1 1 0 0 0 1 1 0 0 0 0 0 0 0 0 0 0 1 0 0\n"
                         "3 0 2 0 0 0 0 0 0 0 1 0 0 1 0 2 0 0 0 0 0 1 0 0 0 0 1 0 0 0 0 0\n"),
                     0.4953, std::nan(""),
                     "threshold also quoted as 0.4952; columns 9 and 20 form a degree-2 4-cycle "
                     "through checks 6 and 13"});
        v.push_back({"awgn-r23-4x12", "4x12 rate-2/3, BIAWGN-optimized",
                     parse_base_matrix("2 0 0 1 7 0 1 0 0 0 1 1\n"
                                       "0 0 1 1 7 0 0 1 2 0 0 1\n"
                                       "4 1 1 1 5 0 1 0 0 0 1 3\n"
                                       "5 1 1 6 1 3 1 1 1 3 0 1\n"),
                     std::nan(""), 2.429, ""});
        v.push_back({"awgn-r34-3x12", "3x12 rate-3/4, BIAWGN-optimized",
                     parse_base_matrix("0 0 7 0 2 1 0 1 0 2 3 0\n"
                                       "2 3 7 2 2 3 1 3 2 3 5 3\n"
                                       "1 0 8 1 0 2 1 1 1 4 0 0\n"),
                     std::nan(""), 3.551, ""});
        v.push_back({"awgn-r12-16x32", "16x32 rate-1/2, BIAWGN-optimized",
                     parse_base_matrix(
                         "0 1 0 0 1 0 2 1 0 0 0 0 2 0 2 0 1 1 0 2 1 0 0 0 2 0 2 0 0 0 0 0\n"
                         "0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 1 0 4 0 1 0 0 0 0 0 1 0 0 0 0 0 0\n"
                         "0 0 1 2 1 0 0 0 2 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                         "0 0 0 1 1 0 2 0 1 0 0 0 1 0 1 0 0 0 0 1 0 0 0 0 1 0 0 0 0 0 2 2\n"
                         "1 0 1 0 0 0 0 0 0 0 1 0 1 0 0 0 1 3 0 1 1 0 0 0 0 0 0 0 0 0 0 0\n"
                         "0 0 1 1 0 0 0 0 1 2 0 0 0 0 0 0 0 3 1 0 0 1 0 0 0 1 0 0 1 1 1 0\n"
                         "1 0 0 0 0 0 0 0 0 0 0 3 1 0 0 0 0 1 0 0 0 2 1 0 0 1 0 0 0 0 0 0\n"
                         "0 0 2 0 0 0 0 1 0 0 0 0 0 0 0 0 1 4 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                         "0 0 2 0 0 0 0 1 0 1 1 0 0 1 0 0 2 0 0 0 0 0 0 1 0 0 1 2 0 0 2 1\n"
                         "0 0 2 1 0 1 0 1 0 0 0 0 0 1 0 1 0 2 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                         "0 0 1 1 0 0 2 0 0 0 0 0 0 0 0 0 0 4 0 0 0 0 0 0 0 0 0 0 0 0 0 1\n"
                         "0 0 0 0 0 0 0 1 0 0 0 0 1 0 0 0 0 4 0 1 0 0 0 2 0 0 0 0 0 0 0 1\n"
                         "0 0 0 0 1 0 0 0 1 0 0 0 0 0 1 0 0 1 2 1 0 0 1 0 1 0 0 0 2 1 0 0\n"
                         "0 0 2 0 0 1 2 0 0 0 0 0 0 0 2 0 0 1 0 0 0 0 0 1 0 0 0 0 0 0 0 0\n"
                         "1 0 1 2 2 0 0 0 0 0 0 0 0 0 0 1 0 4 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                         "0 1 0 0 0 0 0 1 1 0 0 0 1 0 0 0 0 1 2 0 0 0 0 0 0 0 0 1 0 0 0 2\n"),
                     std::nan(""), 0.3, ""});
        return v;
    }();
    return reg;
}

inline const BuiltinProto* find_builtin(std::string_view name) {
    for (const auto& e : builtin_protographs())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace protolab
