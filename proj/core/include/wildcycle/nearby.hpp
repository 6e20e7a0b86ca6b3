#pragma once

#include "wildcycle/regular.hpp"
#include "wildcycle/turrittin.hpp"

#include <string>
#include <vector>

namespace wildcycle {

struct DeligneEntry {
    NearbyCycleDatum datum;  // phi key at minimal ramification, beta normalized in t_Q
    int summand = -1;        // provenance in the decomposition, -1 when transported or folded
    int orbit_size = 1;      // number of Galois conjugate keys folded into this entry
    std::vector<int> jordan_sizes;
};

struct DeligneTable {
    std::vector<DeligneEntry> entries;
    int q_used = 1;   // working coordinate t_Q in which beta is measured
    int input_q = 1;
    bool folded = false;
    std::optional<Cyclotomic> lambda0;
    int total_dim() const;
};

DeligneTable deligne_nearby_cycles(const LambdaConnection& m, const DecompOptions& opt = {});
DeligneTable deligne_from_decomposition(const FormalDecomposition& d);
// predicted table of the pull-back by t = s^r
DeligneTable ramification_transport(const DeligneTable& t, int r);
// merge Galois-conjugate keys phi(zeta t_q) into one orbit record
DeligneTable fold_galois(const DeligneTable& t);
// canonical representative of the orbit {phi(zeta t_q)}
ExpFactor orbit_representative(const ExpFactor& phi);
bool entry_less(const DeligneEntry& a, const DeligneEntry& b);

}  // namespace wildcycle
