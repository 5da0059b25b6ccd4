#pragma once

// Generated by `tfpack fixtures regen`. Do not edit by hand.

#include <array>
#include <string_view>

namespace tfpack::frozen {

struct FixtureRow {
  std::string_view name;
  std::string_view permutation;
};

struct LadderRow {
  std::string_view name;
  int r, s, pc, qc, pd, qd;
  int l_first;
};

inline constexpr std::array<FixtureRow, 20> fixture_rows{{
    {"c7_c3c4", "0 2 5 1 3 6 4"},
    {"c3c6_planar", "0 3 5 1 6 4 8 2 7"},
    {"c3c6_nonplanar", "0 3 5 1 4 6 8 2 7"},
    {"c3c7_planar", "0 3 5 1 6 4 7 9 2 8"},
    {"c3c7_nonplanar", "0 3 5 1 4 2 7 9 6 8"},
    {"c4c5_planar", "0 4 6 8 1 3 5 2 7"},
    {"c4c5_nonplanar", "0 2 4 6 1 3 7 5 8"},
    {"c4c6_planar", "0 4 6 9 1 3 5 7 2 8"},
    {"c4c6_nonplanar", "0 2 4 6 1 3 7 9 5 8"},
    {"c4c7_k4free", "0 2 4 6 1 5 7 9 3 8 10"},
    {"c3c4c4_k4", "0 3 5 1 4 7 9 2 6 8 10"},
    {"c3c4c4_k4free", "0 3 5 1 4 7 9 2 8 6 10"},
    {"c3c3c4_k4", "0 6 8 5 7 9 1 3 2 4"},
    {"c3c3c4_k4free", "0 3 6 1 4 7 2 8 5 9"},
    {"c3c3c5_p4", "0 3 6 1 4 7 2 8 10 5 9"},
    {"c3c3c5_nop4", "0 3 6 1 4 8 2 7 9 5 10"},
    {"c3c3c3c4_cut", "0 3 6 1 9 11 2 10 12 4 7 5 8"},
    {"c3c3c3c4_2conn", "0 3 6 1 4 7 2 9 11 5 8 10 12"},
    {"c3c3c7_k4free", "0 3 6 1 4 7 2 5 9 11 8 12 10"},
    {"c3c3c8_k4free", "0 3 6 1 4 7 2 5 8 10 12 9 13 11"},
}};

inline constexpr std::array<LadderRow, 10> ladder_rows{{
    {"c3c6_planar", 1, 6, 5, 6, 5, 4, 1},
    {"c3c6_nonplanar", 1, 4, 3, 4, 5, 6, 1},
    {"c3c7_planar", 1, 6, 5, 6, 5, 4, 1},
    {"c3c7_nonplanar", 1, 4, 3, 4, 5, 6, 1},
    {"c4c5_planar", 3, 5, 5, 4, 5, 6, 2},
    {"c4c5_nonplanar", 1, 3, 4, 5, 5, 6, 1},
    {"c4c6_planar", 5, 7, 6, 7, 9, 8, 1},
    {"c4c6_nonplanar", 1, 3, 4, 5, 5, 6, 1},
    {"c3c3c7_k4free", 2, 5, 6, 7, 7, 8, 1},
    {"c3c3c8_k4free", 2, 5, 6, 7, 7, 8, 1},
}};

}  // namespace tfpack::frozen
