#pragma once

// Handmade desk-scale instances shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "csolve/model.hpp"

namespace csp::testing {

// x != y with both domains {1}: wiped out at the root
inline const char* kRootUnsat = R"(cspi 1
var x 1
var y 1
con c0 neq x y
)";

inline const char* kTwoVarNeq = R"(cspi 1
var x 1 2
var y 1 2
con c0 neq x y
)";

// 4 pigeons, 3 holes
inline const char* kPigeons = R"(cspi 1
var p0 range 0 2
var p1 range 0 2
var p2 range 0 2
var p3 range 0 2
con c0 neq p0 p1
con c1 neq p0 p2
con c2 neq p0 p3
con c3 neq p1 p2
con c4 neq p1 p3
con c5 neq p2 p3
)";

// 5-cycle, 3 colors: 30 proper colorings
inline const char* kCycleColoring = R"(cspi 1
var v0 range 0 2
var v1 range 0 2
var v2 range 0 2
var v3 range 0 2
var v4 range 0 2
con e01 neq v0 v1
con e12 neq v1 v2
con e23 neq v2 v3
con e34 neq v3 v4
con e40 neq v4 v0
)";

// frequency-assignment flavor: separations via absdiffgt, one eq link
inline const char* kFreqLinks = R"(cspi 1
var f0 range 0 6
var f1 range 0 6
var f2 range 0 6
var f3 range 0 6
con s01 absdiffgt f0 f1 2
con s12 absdiffgt f1 f2 1
con s23 absdiffgt f2 f3 2
con s03 absdiffne f0 f3 3
con dup eq f0 f2
)";

// mixed table arities, incl. a unary allow and a ternary forbid
inline const char* kMixedTables = R"(cspi 1
var a 0 1 2
var b 0 1 2
var c 0 1 2
con u allow a : 0 ; 1
con t2 allow a b : 0,1 ; 1,0 ; 1,2
con t3 forbid a b c : 1,0,0 ; 1,0,1 ; 0,1,2
con n neq b c
)";

// chain of binary allows, exactly the increasing sequences
inline const char* kChainAllow = R"(cspi 1
var x0 range 0 3
var x1 range 0 3
var x2 range 0 3
con s0 allow x0 x1 : 0,1 ; 0,2 ; 0,3 ; 1,2 ; 1,3 ; 2,3
con s1 allow x1 x2 : 0,1 ; 0,2 ; 0,3 ; 1,2 ; 1,3 ; 2,3
)";

// unsat only after search (no root wipeout): 3 vars, 2 values, all different
inline const char* kSearchUnsat = R"(cspi 1
var x range 0 1
var y range 0 1
var z range 0 1
con c0 neq x y
con c1 neq x z
con c2 neq y z
)";

// eq chain with staggered domains
inline const char* kEqChain = R"(cspi 1
var a 1 2 3 4
var b 2 3 4 5
var c 3 4 5 6
con e0 eq a b
con e1 eq b c
)";

inline std::vector<std::pair<std::string, std::string>> handmade_instances() {
    return {
        {"hand_root_unsat", kRootUnsat},   {"hand_two_var_neq", kTwoVarNeq},
        {"hand_pigeons", kPigeons},        {"hand_cycle_coloring", kCycleColoring},
        {"hand_freq_links", kFreqLinks},   {"hand_mixed_tables", kMixedTables},
        {"hand_chain_allow", kChainAllow}, {"hand_search_unsat", kSearchUnsat},
        {"hand_eq_chain", kEqChain},
    };
}

}  // namespace csp::testing
